"""Gramians of normalized kernel functions and separation/Carleson diagnostics.

For a finite point set the normalized Gramian has entries
``K(p_i, p_j) / sqrt(K(p_i, p_i) K(p_j, p_j))``; its extreme eigenvalues are
the finite-prefix Riesz bounds, and the top eigenvalue doubles as the Carleson
(Bessel) constant of the weighted point-mass measure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from ._linalg import eigvalsh_hermitian, hermitian_part, min_eigenvalue
from .errors import ArgumentError, NumericError

# Euclidean distance below which two points are treated as the same point;
# below meaningful resolution for double-precision kernel evaluation.
DUPLICATE_TOL = 1e-12

# Scale for "PSD within tolerance" feasibility margins: min eigenvalue >= -PSD_TOL_PER_POINT * n.
PSD_TOL_PER_POINT = 1e-10


def point_distance(x, y) -> float:
    """Euclidean distance between points of the disk or of a common polydisc."""
    xs = x if isinstance(x, tuple) else (x,)
    ys = y if isinstance(y, tuple) else (y,)
    if len(xs) != len(ys):
        raise ArgumentError(f"points of different dimension: {len(xs)} vs {len(ys)}")
    return math.sqrt(sum(abs(complex(a) - complex(b)) ** 2 for a, b in zip(xs, ys)))


def check_distinct(points, tol: float = DUPLICATE_TOL) -> None:
    """Raise :class:`ArgumentError` if two points coincide within ``tol``."""
    pts = list(points)
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if point_distance(pts[i], pts[j]) <= tol:
                raise ArgumentError(f"points {i} and {j} coincide within {tol:g}")


@dataclass(frozen=True)
class RieszReport:
    """Extreme eigenvalues of a normalized Gramian and the Riesz verdict."""

    lambda_min: float
    lambda_max: float
    carleson_constant: float
    is_riesz: bool
    tolerance: float


def normalized_gramian(points, kernel) -> np.ndarray:
    """Normalized Gramian of a finite point set under a kernel evaluator.

    The result has exact unit diagonal and is Hermitian by construction
    (only the upper triangle is evaluated, the rest is mirrored).
    """
    pts = list(points)
    if not pts:
        raise ArgumentError("need at least one point")
    check_distinct(pts)
    n = len(pts)
    diag = []
    for p in pts:
        v = complex(kernel(p, p)).real
        if v <= 0.0:
            raise NumericError(f"kernel diagonal not positive at {p!r}: {v}")
        diag.append(v)
    g = np.empty((n, n), dtype=complex)
    for i in range(n):
        g[i, i] = 1.0
        for j in range(i + 1, n):
            v = complex(kernel(pts[i], pts[j])) / math.sqrt(diag[i] * diag[j])
            g[i, j] = v
            g[j, i] = v.conjugate()
    return g


def riesz_bounds(g, tolerance: float = 1e-3) -> RieszReport:
    """Extreme eigenvalues of a normalized Gramian.

    ``carleson_constant`` is the top eigenvalue (the Bessel bound of the
    finite prefix); ``is_riesz`` holds when the bottom eigenvalue clears
    ``tolerance``.
    """
    g = np.asarray(g, dtype=complex)
    if g.ndim != 2 or g.shape[0] != g.shape[1]:
        raise ArgumentError(f"expected a square matrix, got shape {g.shape}")
    if np.max(np.abs(np.diagonal(g) - 1.0)) > 1e-8:
        raise ArgumentError("expected a normalized Gramian (unit diagonal)")
    w = eigvalsh_hermitian(g)
    lam_min = float(w[0])
    lam_max = float(w[-1])
    return RieszReport(lam_min, lam_max, lam_max, bool(lam_min > tolerance), float(tolerance))


def weak_separation(points, kernel) -> float:
    """Minimum pairwise kernel semimetric over a point set (needs n >= 2)."""
    pts = list(points)
    if len(pts) < 2:
        raise ArgumentError("weak separation needs at least two points")
    check_distinct(pts)
    best = 1.0
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            best = min(best, kernels.rho_semimetric(kernel, pts[i], pts[j]))
    return best


def strong_separation_disk(points) -> float:
    """min over j of prod_{k != j} of the pseudo-hyperbolic distances.

    The empty product (a single point) is 1.  Szego-kernel quantity: the
    points are plain disk points.
    """
    pts = [kernels.as_disk_point(p) for p in points]
    if not pts:
        raise ArgumentError("need at least one point")
    check_distinct(pts)
    best = 1.0
    for j in range(len(pts)):
        prod = 1.0
        for k in range(len(pts)):
            if k != j:
                prod *= kernels.pseudo_hyperbolic(pts[j], pts[k])
        best = min(best, prod)
    return best


def multiplier_distance(x, s_points, spec: kernels.KernelSpec, alpha: float = 1.0,
                        tol: float = 1e-7, max_iters: int = 60) -> float:
    """Largest value at ``x`` of a unit multiplier vanishing on ``s_points``.

    Computed by bisection over the feasibility of the Pick matrix for the
    data (delta at x, 0 on S) with norm bound 1, scaled by ``alpha``.  With
    ``alpha=1`` and a complete-Pick disk kernel this is exact; for other
    settings the caller supplies the scaling.  Returns 0 when ``x`` lies in
    ``s_points`` and 1 when ``s_points`` is empty.
    """
    if alpha <= 0.0:
        raise ArgumentError(f"alpha must be positive, got {alpha}")
    x = kernels.as_disk_point(x)
    s = [kernels.as_disk_point(p) for p in s_points]
    if any(abs(x - p) <= DUPLICATE_TOL for p in s):
        return 0.0
    if not s:
        return 1.0
    check_distinct(s)
    pts = [x, *s]
    n = len(pts)
    k = kernels.kernel_matrix(spec, pts)
    margin_tol = -PSD_TOL_PER_POINT * n
    alpha2 = alpha * alpha

    def feasible(delta: float) -> bool:
        w = np.zeros(n)
        w[0] = delta
        pick = (alpha2 - np.outer(w, w)) * k
        return min_eigenvalue(hermitian_part(pick)) >= margin_tol

    if feasible(1.0):
        return 1.0
    lo, hi = 0.0, 1.0
    for _ in range(max_iters):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if feasible(mid):
            lo = mid
        else:
            hi = mid
    return lo
