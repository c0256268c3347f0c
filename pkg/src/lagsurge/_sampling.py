"""Deterministic sample grids.

All stochastic-looking sweeps in the package draw from these helpers so that
a (seed, count) pair reproduces byte-identical reports.
"""

import numpy as np


def rng(seed):
    return np.random.default_rng(0 if seed is None else int(seed))


def unit_directions(dim, count, seed=0):
    """Deterministic points on S^{dim-1}, seeded Gaussian normalization."""
    g = rng(seed).standard_normal((count, dim))
    norms = np.linalg.norm(g, axis=1)
    # resample rows that collapsed (probability ~0, but determinism demands care)
    bad = norms < 1e-12
    g[bad] = 1.0
    norms = np.linalg.norm(g, axis=1)
    return g / norms[:, None]


def radii(eps, count, rmin_frac=1e-4):
    """Log-spaced radii in (0, eps], denser near 0 where charts degenerate."""
    return eps * np.logspace(np.log10(rmin_frac), 0.0, count)


def box_points(dim, count, lo, hi, seed=0):
    """Low-discrepancy-ish box sample: jittered lattice, seeded."""
    r = rng(seed)
    n_side = max(1, int(np.ceil(count ** (1.0 / dim))))
    axes = [np.linspace(lo, hi, n_side, endpoint=False) for _ in range(dim)]
    mesh = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, dim)
    step = (hi - lo) / n_side
    mesh = mesh + r.uniform(0.0, step, size=mesh.shape)
    return mesh[:count] if len(mesh) >= count else mesh


def random_orthogonal(n, seed=0):
    """Haar-ish real orthogonal matrix via QR with sign fix."""
    a = rng(seed).standard_normal((n, n))
    q, r = np.linalg.qr(a)
    return q * np.sign(np.diag(r))


def random_unitary(n, seed=0):
    g = rng(seed).standard_normal((n, n)) + 1j * rng(seed + 10_007).standard_normal((n, n))
    q, r = np.linalg.qr(g)
    d = np.diag(r)
    return q * (d / np.abs(d))
