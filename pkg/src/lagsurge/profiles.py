"""Surgery profiles: the 1-d reparametrization laws driving every handle.

All profiles come from one analytic template family built on exp(-1/x)
mollifier steps, so vanishing of all derivatives at the support radius holds
by construction and is only spot-checked numerically.  Admissible profiles
additionally carry a square-root dip at the origin giving the unbounded
initial slope that the handle grading requires; its coefficient is tiny so
the value stays within 1e-6 of lambda down to r = 1e-9.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable

import numpy as np

from .errors import BandMismatch, InvalidParameter, NotInvertible

DIP = 1e-3  # relative square-root dip of the admissible template


def _E(x):
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    pos = x > 0
    with np.errstate(over="ignore", under="ignore"):
        out[pos] = np.exp(-1.0 / x[pos])
    return out


def _dE(x):
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    pos = x > 1e-6
    out[pos] = _E(x[pos]) / x[pos] ** 2
    return out


def smooth_step(x):
    """Monotone step: 0 for x <= 0, 1 for x >= 1, flat to all orders at both ends."""
    x = np.asarray(x, dtype=float)
    a = _E(x)
    b = _E(1.0 - x)
    return np.where(x <= 0.0, 0.0, np.where(x >= 1.0, 1.0, a / (a + b)))


def d_smooth_step(x):
    x = np.asarray(x, dtype=float)
    a, b = _E(x), _E(1.0 - x)
    da, db = _dE(x), _dE(1.0 - x)
    denom = (a + b) ** 2
    mid = (x > 0.0) & (x < 1.0) & (denom > 0)
    out = np.zeros_like(x)
    out[mid] = (da[mid] * b[mid] + a[mid] * db[mid]) / denom[mid]
    return out


class Kind(Enum):
    ADMISSIBLE = "admissible"
    SEMI_ADMISSIBLE = "semi"
    DEHN = "dehn"
    DEHN_SPHERICAL = "dehn_spherical"


@dataclass(frozen=True)
class Profile:
    """A surgery profile nu with exact evaluators for nu and nu'."""

    kind: Kind
    lam: float
    eps: float
    alpha: float
    k: int
    nu: Callable = None
    dnu: Callable = None

    def __call__(self, r):
        return self.nu(r)

    def band(self):
        """Index k with lam in ((k-1) pi, k pi); endpoint values sit on None."""
        q = self.lam / np.pi
        k = int(np.ceil(q - 1e-12))
        if abs(q - round(q)) < 1e-12:
            return None
        return k

    def spec(self):
        if self.kind is Kind.ADMISSIBLE:
            return f"admissible:lambda={self.lam:.17g},eps={self.eps:.17g}"
        if self.kind is Kind.SEMI_ADMISSIBLE:
            return f"semi:k={self.k},alpha={self.alpha:.17g},eps={self.eps:.17g}"
        sph = "true" if self.kind is Kind.DEHN_SPHERICAL else "false"
        return f"dehn:eps={self.eps:.17g},spherical={sph}"


def make_admissible(lam, eps):
    """Admissible profile: nu(0+) = lam, nu' < 0 on (0, eps), flat at eps."""
    if lam <= 0 or eps <= 0:
        raise InvalidParameter("lambda and eps must be positive")
    lam, eps = float(lam), float(eps)

    def nu(r):
        r = np.asarray(r, dtype=float)
        x = np.clip(r / eps, 0.0, None)
        body = smooth_step(1.0 - x) - DIP * np.sqrt(x) * smooth_step(1.0 - 4.0 * x)
        return np.where(r >= eps, 0.0, lam * body)

    def dnu(r):
        r = np.asarray(r, dtype=float)
        x = r / eps
        safe = np.where(x > 0, x, 1.0)
        dd = (smooth_step(1.0 - 4.0 * x) / (2.0 * np.sqrt(safe))
              - 4.0 * np.sqrt(safe) * d_smooth_step(1.0 - 4.0 * x))
        body = -d_smooth_step(1.0 - x) - DIP * np.where(x > 0, dd, 0.0)
        return np.where((r <= 0) | (r >= eps), 0.0, lam * body / eps)

    return Profile(Kind.ADMISSIBLE, lam, eps, np.inf, 0, nu, dnu)


def make_semi_admissible(k, alpha, eps, kind=None):
    """Semi-admissible profile: k pi - alpha r on [0, eps/4], flat zero at eps."""
    if k < 1 or alpha < 0 or eps <= 0:
        raise InvalidParameter("need k >= 1, alpha >= 0, eps > 0")
    if alpha * eps >= k * np.pi:
        raise InvalidParameter("alpha * eps must stay below k pi")
    k = int(k)
    alpha, eps = float(alpha), float(eps)
    r1 = eps / 4.0
    lam = k * np.pi

    def nu(r):
        r = np.asarray(r, dtype=float)
        g = smooth_step((eps - r) / (eps - r1))
        return np.where(r >= eps, 0.0, (lam - alpha * r) * g)

    def dnu(r):
        r = np.asarray(r, dtype=float)
        g = smooth_step((eps - r) / (eps - r1))
        dg = -d_smooth_step((eps - r) / (eps - r1)) / (eps - r1)
        return np.where(r >= eps, 0.0, -alpha * g + (lam - alpha * r) * dg)

    return Profile(kind or Kind.SEMI_ADMISSIBLE, lam, eps, alpha, k, nu, dnu)


def make_dehn(eps, spherical=False):
    """Dehn twist profile: k pi - r near 0 (k = 1 spherical, k = 2 projective)."""
    k = 1 if spherical else 2
    kind = Kind.DEHN_SPHERICAL if spherical else Kind.DEHN
    return make_semi_admissible(k, 1.0, eps, kind=kind)


def matched_admissible(dehn, lam, delta, dip=1e-4, validate=True):
    """Admissible profile equal to the given Dehn profile on r >= delta.

    Only a small gap k pi - lam fits under the monotonicity budget; the
    constructor verifies nu' < 0 on a dense grid and rejects otherwise.
    """
    kpi = dehn.k * np.pi
    if not (0 < lam < kpi):
        raise InvalidParameter("lam must lie in (0, k pi)")
    if not (0 < delta < dehn.eps / 4.0):
        raise InvalidParameter("delta must sit inside the linear region of the profile")
    lam, delta = float(lam), float(delta)
    gap = lam - kpi  # negative

    def bump(r):
        r = np.asarray(r, dtype=float)
        x = np.clip(r / delta, 0.0, None)
        return (gap * smooth_step(1.0 - x)
                - lam * dip * np.sqrt(x) * smooth_step(1.0 - 4.0 * x))

    def dbump(r):
        r = np.asarray(r, dtype=float)
        x = r / delta
        safe = np.where(x > 0, x, 1.0)
        dd = (smooth_step(1.0 - 4.0 * x) / (2.0 * np.sqrt(safe))
              - 4.0 * np.sqrt(safe) * d_smooth_step(1.0 - 4.0 * x))
        out = (-gap * d_smooth_step(1.0 - x) / delta
               - lam * dip * np.where(x > 0, dd, 0.0) / delta)
        return np.where((r <= 0) | (r >= delta), 0.0, out)

    def nu(r):
        return dehn.nu(r) + bump(r)

    def dnu(r):
        return dehn.dnu(r) + dbump(r)

    prof = Profile(Kind.ADMISSIBLE, lam, dehn.eps, np.inf, 0, nu, dnu)
    if validate:
        rr = np.linspace(dehn.eps * 1e-6, dehn.eps * (1 - 1e-9), 2000)
        if np.any(prof.dnu(rr) >= 0):
            raise InvalidParameter(
                "matched profile is not monotone; reduce k pi - lam or enlarge delta")
    return prof


def profile_isotopy(p0, p1, t):
    """Pointwise convex combination of two admissible profiles in one band."""
    if p0.kind is not Kind.ADMISSIBLE or p1.kind is not Kind.ADMISSIBLE:
        raise InvalidParameter("isotopy is defined for admissible profiles")
    if not (0.0 <= t <= 1.0):
        raise InvalidParameter("t must lie in [0, 1]")
    b0, b1 = p0.band(), p1.band()
    if b0 is None or b1 is None or b0 != b1:
        raise BandMismatch(f"bands differ: {b0} vs {b1}")
    lam_t = (1 - t) * p0.lam + t * p1.lam
    eps_t = max(p0.eps, p1.eps)

    def nu(r):
        return (1 - t) * p0.nu(r) + t * p1.nu(r)

    def dnu(r):
        return (1 - t) * p0.dnu(r) + t * p1.dnu(r)

    return Profile(Kind.ADMISSIBLE, float(lam_t), float(eps_t), np.inf, 0, nu, dnu)


def is_admissible_sampled(profile, samples=1000):
    """Predicate check of the admissible conditions on log-spaced radii."""
    eps, lam = profile.eps, profile.lam
    r = eps * np.logspace(-9, 0, samples, endpoint=False)
    if np.any(profile.dnu(r) >= 0):
        return False
    if abs(float(profile.nu(1e-9 * eps)) - lam) > 1e-6 * max(1.0, lam):
        return False
    if float(profile.nu(eps)) != 0.0 or float(profile.nu(eps * 2)) != 0.0:
        return False
    # flat tail spot check: low-order derivatives vanish near eps
    h = 1e-3
    if eps > 10 * h:
        fd = [abs(_fd_deriv(profile.nu, eps - h, j)) for j in range(1, 5)]
        if max(fd) > 1e-6:
            return False
    return True


_FD_WEIGHTS = {
    1: np.array([-0.5, 0.0, 0.5]),
    2: np.array([1.0, -2.0, 1.0]),
    3: np.array([-0.5, 1.0, 0.0, -1.0, 0.5]),
    4: np.array([1.0, -4.0, 6.0, -4.0, 1.0]),
}


def _fd_deriv(f, x, order, h=1e-4):
    """Central finite difference of small order, for flatness spot checks."""
    w = _FD_WEIGHTS[order]
    half = (len(w) - 1) // 2
    vals = f(x + (np.arange(len(w)) - half) * h)
    return float(np.dot(w, vals)) / h ** order


@dataclass(frozen=True)
class AdmissibleCurve:
    """Plane curve s -> (a(s), b(s)): ray (lam - s, 0) for s <= 0, handle arc
    on (0, eps), ray (0, -s) for s >= eps."""

    a: Callable
    b: Callable
    da: Callable
    db: Callable
    lam: float
    eps: float


def curve_from_profile(p):
    """Canonical curve realization (nu(s), -s) of an admissible profile."""
    lam, eps = p.lam, p.eps

    def a(s):
        s = np.asarray(s, dtype=float)
        return np.where(s <= 0, lam - s, np.where(s >= eps, 0.0, p.nu(np.clip(s, 1e-300, None))))

    def b(s):
        s = np.asarray(s, dtype=float)
        return np.where(s <= 0, 0.0, -s)

    def da(s):
        s = np.asarray(s, dtype=float)
        return np.where(s <= 0, -1.0, np.where(s >= eps, 0.0, p.dnu(np.clip(s, 1e-300, None))))

    def db(s):
        s = np.asarray(s, dtype=float)
        return np.where(s <= 0, 0.0, -1.0)

    return AdmissibleCurve(a, b, da, db, lam, eps)


def profile_from_curve(c, grid=4096):
    """Recover nu(r) = a(b^{-1}(-r)) by monotone inversion of b on (0, eps)."""
    ss = np.linspace(c.eps * 1e-9, c.eps, grid)
    bs = c.b(ss)
    if np.any(np.diff(bs) >= 0):
        raise NotInvertible("b is not strictly decreasing on (0, eps)")
    lam = float(c.a(0.0))
    if not np.isfinite(lam) or lam <= 0:
        raise NotInvertible("curve has no admissible endpoint value")

    def s_of_r(r):
        r = np.asarray(r, dtype=float)
        return np.interp(r, -bs, ss)

    def nu(r):
        r = np.asarray(r, dtype=float)
        return np.where(r >= c.eps, 0.0, c.a(s_of_r(np.clip(r, 0, c.eps))))

    # r = -b(s), so dr/ds = -b'(s) and d nu / dr = a'(s) / (-b'(s))
    def dnu(r):
        s = s_of_r(np.asarray(r, dtype=float))
        return c.da(s) / (-c.db(s))

    return Profile(Kind.ADMISSIBLE, lam, c.eps, np.inf, 0, nu, dnu)
