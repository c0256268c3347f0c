"""Exact-phase linear algebra of graded Lagrangian planes.

A Lagrangian plane of standard C^n is U.R^n for a unitary U, and the gauge
freedom of the frame is exactly right multiplication by O(n).  Negated
factors of a product space are handled by conjugating their coordinates once
at the boundary of the module, so every internal computation runs against
the standard form Im<u, v> and the standard squared volume phase det(U)^2.

Phases of the relative symmetric unitary S = W W^T, W = U0^H U1, carry the
sector angles between two planes; eigenvalue 1 of S marks intersection
directions and is excluded from the angle sum.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import DegenerateAngle, InvalidFrame, InvalidParameter, InvalidSpace

TOL_LIN = 1e-10
TOL_EIG = 1e-8
TOL_INT = 1e-6


@dataclass(frozen=True)
class SymplecticSpace:
    """Signed product of standard symplectic vector spaces.

    factor_signs of -1 mean the factor carries the negated form; planes are
    stored in internal coordinates where those factors are conjugated, so a
    single code path serves both signs.
    """

    factor_dims: tuple
    factor_signs: tuple

    def __post_init__(self):
        if len(self.factor_dims) != len(self.factor_signs):
            raise InvalidSpace("factor_dims and factor_signs lengths differ")
        if any(d <= 0 for d in self.factor_dims):
            raise InvalidSpace("factor dimensions must be positive")
        if any(s not in (-1, 1) for s in self.factor_signs):
            raise InvalidSpace("factor signs must be +1 or -1")
        object.__setattr__(self, "factor_dims", tuple(int(d) for d in self.factor_dims))
        object.__setattr__(self, "factor_signs", tuple(int(s) for s in self.factor_signs))

    @property
    def dim(self):
        return sum(self.factor_dims)

    def conj_mask(self):
        """Boolean mask of coordinates belonging to negated factors."""
        mask = np.zeros(self.dim, dtype=bool)
        at = 0
        for d, s in zip(self.factor_dims, self.factor_signs):
            if s < 0:
                mask[at:at + d] = True
            at += d
        return mask

    def to_internal(self, vectors):
        """Map literal coordinates to internal ones (conjugate negated rows)."""
        v = np.array(vectors, dtype=complex)
        m = self.conj_mask()
        v[m] = np.conj(v[m])
        return v

    to_literal = to_internal  # conjugation is an involution


def standard_space(n):
    return SymplecticSpace((n,), (1,))


def omega(u, v):
    """Standard symplectic form on C^n in internal coordinates."""
    return float(np.imag(np.vdot(u, v)))


class Index(NamedTuple):
    raw: float
    rounded: int


@dataclass(frozen=True)
class GradedLagrangianPlane:
    space: SymplecticSpace
    frame: np.ndarray  # internal coordinates, unitary
    theta: float
    _skip_checks: bool = field(default=False, repr=False)

    def __post_init__(self):
        u = np.asarray(self.frame, dtype=complex)
        object.__setattr__(self, "frame", u)
        if self._skip_checks:
            return
        n = self.space.dim
        if u.shape != (n, n):
            raise InvalidFrame(f"frame must be {n}x{n}")
        if np.max(np.abs(u.conj().T @ u - np.eye(n))) > TOL_LIN:
            raise InvalidFrame("frame not unitary within tolerance")
        d2 = _det2(u)
        if abs(np.exp(2j * np.pi * self.theta) - d2) > 100 * TOL_LIN:
            raise InvalidFrame("grading inconsistent with squared determinant phase")

    @property
    def n(self):
        return self.space.dim

    def shift(self, k):
        """Degree shift: [k] subtracts k from the grading."""
        return GradedLagrangianPlane(self.space, self.frame, self.theta - k, True)

    def gauge(self, o):
        """Right-multiply the frame by a real orthogonal matrix (same plane)."""
        return GradedLagrangianPlane(self.space, self.frame @ o, self.theta, True)

    def to_json(self):
        f = self.frame
        return json.dumps({
            "dims": list(self.space.factor_dims),
            "signs": list(self.space.factor_signs),
            "frame": [[[float(f[i, j].real), float(f[i, j].imag)]
                       for j in range(f.shape[1])] for i in range(f.shape[0])],
            "theta": float(self.theta),
        }, sort_keys=True)

    @staticmethod
    def from_json(text):
        d = json.loads(text)
        space = SymplecticSpace(tuple(d["dims"]), tuple(d["signs"]))
        f = np.array([[complex(re, im) for re, im in row] for row in d["frame"]])
        return GradedLagrangianPlane(space, f, float(d["theta"]))


def _det2(u):
    d = np.linalg.det(u)
    m = abs(d)
    if m < 1e-300:
        raise InvalidFrame("frame is singular")
    return (d / m) ** 2


def det_squared_phase(plane):
    """Unit-modulus squared determinant phase of the plane."""
    return _det2(plane.frame)


def plane_from_real_basis(space, columns, theta=None):
    """Build a plane from any real basis given in literal coordinates.

    The basis is mapped to internal coordinates, orthonormalized over R, and
    the result is unitary exactly when the span is Lagrangian for the signed
    form.  theta=None picks the grading in [0, 1).
    """
    v = space.to_internal(np.asarray(columns, dtype=complex))
    n = space.dim
    if v.shape != (n, n):
        raise InvalidFrame("need n real basis vectors in C^n")
    # Gram-Schmidt over R against Re<u, v>
    cols = []
    for j in range(n):
        w = v[:, j].copy()
        for u in cols:
            w = w - np.real(np.vdot(u, w)) * u
        nw = np.linalg.norm(w)
        if nw < 1e-12:
            raise InvalidFrame("basis not linearly independent over R")
        cols.append(w / nw)
    u = np.stack(cols, axis=1)
    if np.max(np.abs(u.conj().T @ u - np.eye(n))) > 1e-8:
        raise InvalidFrame("real span is not Lagrangian")
    if theta is None:
        theta = float(np.angle(_det2(u)) / (2 * np.pi) % 1.0)
    return GradedLagrangianPlane(space, u, float(theta))


def plane_rn(n, theta=0.0):
    """The real plane R^n with an integer grading."""
    if abs(theta - round(theta)) > TOL_INT:
        raise InvalidParameter("R^n carries integer gradings only")
    return GradedLagrangianPlane(standard_space(n), np.eye(n), float(theta))


def plane_phases(betas, theta=None):
    """span{ e^{2 pi i beta_j} e_j } with a consistent grading."""
    betas = np.asarray(betas, dtype=float)
    u = np.diag(np.exp(2j * np.pi * betas))
    if theta is None:
        theta = float(2 * np.sum(betas))
    return GradedLagrangianPlane(standard_space(len(betas)), u, theta)


def plane_partial_fiber(n, k, theta=None):
    """The plane i R^{n-k} x R^k: first n-k coordinates imaginary, last k real.

    Default grading is (n-k)/2, matching the handle seam convention.
    """
    betas = np.concatenate([np.full(n - k, 0.25), np.zeros(k)])
    u = np.diag(np.exp(2j * np.pi * betas))
    if theta is None:
        theta = (n - k) / 2.0
    return GradedLagrangianPlane(standard_space(n), u, float(theta))


def _sym_unitary_eigen(s):
    """Phases and a real orthogonal eigenbasis of a symmetric unitary matrix.

    Writes S = X + iY with commuting real symmetric X, Y and diagonalizes
    them simultaneously; returns (phases in [-pi, pi), columns of V).
    Ties in the phase ordering are broken by lexicographic comparison of the
    eigenvector entries for determinism.
    """
    s = 0.5 * (s + s.T)
    x = s.real.copy()
    y = s.imag.copy()
    n = s.shape[0]
    vals, vecs = np.linalg.eigh(x)
    v = np.zeros((n, n))
    # cluster eigenvalues of X, then diagonalize Y within each cluster
    order = np.argsort(vals, kind="stable")
    vals = vals[order]
    vecs = vecs[:, order]
    i = 0
    while i < n:
        j = i + 1
        while j < n and vals[j] - vals[i] < 1e-9:
            j += 1
        block = vecs[:, i:j]
        yb = block.T @ y @ block
        _, w = np.linalg.eigh(0.5 * (yb + yb.T))
        v[:, i:j] = block @ w
        i = j
    phases = np.empty(n)
    for j in range(n):
        val = v[:, j] @ s @ v[:, j]
        phases[j] = np.arctan2(val.imag, val.real)
    # determinism: sort by phase, then lexicographically by eigenvector
    keys = [tuple(np.round(v[:, j], 12)) for j in range(n)]
    order = sorted(range(n), key=lambda j: (phases[j], keys[j]))
    return phases[order], v[:, order]


def angle(p0, p1):
    """Ordered sector angle Angle(p0, p1) = sum of eigenphases / 4 pi.

    Eigenvalue-1 directions of S = W W^T are the intersection directions of
    the two planes and are excluded; they are verified to genuinely lie in
    both planes, else DegenerateAngle is raised.
    """
    if p0.space != p1.space:
        raise InvalidSpace("planes live in different spaces")
    w = p0.frame.conj().T @ p1.frame
    s = w @ w.T
    phases, v = _sym_unitary_eigen(s)
    total = 0.0
    for j, phi in enumerate(phases):
        ev = complex(np.cos(phi), np.sin(phi))
        if abs(ev - 1.0) < TOL_EIG:
            # candidate intersection direction; verify membership in p1
            vec = p0.frame @ v[:, j]
            resid = np.linalg.norm(np.imag(p1.frame.conj().T @ vec))
            if resid > 1e-6:
                raise DegenerateAngle(
                    f"eigenvalue within {TOL_EIG} of 1 but direction not shared "
                    f"(residual {resid:.3e}); perturb the input")
            continue
        total += phi % (2 * np.pi)
    return total / (4 * np.pi)


def index(p0, p1):
    """Intersection index n + theta1 - theta0 - 2 Angle(p0, p1)."""
    raw = p0.n + p1.theta - p0.theta - 2 * angle(p0, p1)
    return Index(float(raw), int(round(raw)))


def canonical_diagonal(n):
    """Diagonal plane of the (+,-) signed product C^n x C^n, grading -n/2."""
    space = SymplecticSpace((n, n), (1, -1))
    eye = np.eye(n)
    u = np.block([[eye, 1j * eye], [eye, -1j * eye]]) / np.sqrt(2.0)
    return GradedLagrangianPlane(space, u, -n / 2.0)


def product_plane(lam):
    """The plane (set) L x L inside the (+,-) product, canonical grading 0.

    In internal coordinates the second-factor frame is conjugated, which makes
    det^2 = |det|^4 = 1 for every unitary input frame; the canonical grading
    is therefore 0 independently of L.
    """
    n = lam.n
    if lam.space != standard_space(n):
        raise InvalidSpace("product_plane expects a plane of a standard factor")
    space = SymplecticSpace((n, n), (1, -1))
    z = np.zeros((n, n))
    u = np.block([[lam.frame, z], [z, np.conj(lam.frame)]])
    return GradedLagrangianPlane(space, u, 0.0)


def direct_sum(p0, p1):
    """Block sum of two planes; gradings add."""
    space = SymplecticSpace(p0.space.factor_dims + p1.space.factor_dims,
                            p0.space.factor_signs + p1.space.factor_signs)
    z01 = np.zeros((p0.n, p1.n))
    u = np.block([[p0.frame, z01], [z01.T, p1.frame]])
    return GradedLagrangianPlane(space, u, p0.theta + p1.theta)


def _lift_det2_along(frames, theta0):
    """Continuous lift of arg det^2 along a discrete frame path, anchored so
    the lift starts at theta0.  Refuses steps larger than pi/4."""
    args = np.angle(np.array([_det2(f) for f in frames])) / (2 * np.pi)
    lift = np.empty(len(args))
    lift[0] = theta0
    for i in range(1, len(args)):
        step = args[i] - args[i - 1]
        step -= round(step)
        if abs(step) > 0.125:  # pi/4 cap in det^2-phase units
            raise InvalidParameter("phase step exceeded cap; refine the path")
        lift[i] = lift[i - 1] + step
    return lift


def graph_plane(a, base, steps=512):
    """Tangent plane of Graph(dh), h(q) = q^T A q / 2, at the origin.

    The grading is transported continuously from the base plane R^n along the
    linear isotopy t -> Graph(t dh) under the identification z = q - i p.
    """
    a = np.asarray(a, dtype=float)
    n = base.n
    if a.shape != (n, n) or np.max(np.abs(a - a.T)) > 1e-12:
        raise InvalidParameter("quadratic form must be a symmetric n x n matrix")
    if np.max(np.abs(base.frame - np.eye(n))) > 1e-9:
        raise InvalidParameter("base must be the zero-section plane R^n")
    eye = np.eye(n)
    ts = np.linspace(0.0, 1.0, steps + 1)
    raw_frames = [eye - 1j * t * a for t in ts]
    lift = _lift_det2_along(raw_frames, base.theta)
    space = base.space
    plane = plane_from_real_basis(space, eye - 1j * a, theta=None)
    # re-anchor the grading at the lifted endpoint
    frac = plane.theta
    k = round(lift[-1] - frac)
    return GradedLagrangianPlane(space, plane.frame, frac + k)
