"""Alternating-projection engine for Schur-product semidefinite feasibility.

The feasibility problem: find positive semidefinite blocks ``G_1..G_d`` with

    sum_l  G_l ∘ R_l  =  T          (∘ is the entrywise product)

for fixed Hermitian ``R_l`` with no zero entries and Hermitian target ``T``.
Dykstra's algorithm alternates two Frobenius projections with correction
terms: the projection onto the affine slice has a closed form because the
constraint map acts entrywise, and the PSD projection is an eigenvalue clip.
Success verdicts are re-checked from scratch (residual and eigenvalue margin
recomputed from the returned blocks) so a certificate never depends on solver
internals.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._linalg import eigh_hermitian, eigvalsh_hermitian, frobenius, hermitian_part
from .errors import ArgumentError

# Failure exits that bound runtime on infeasible instances inside bisection
# loops.  STALL_IMPROVEMENT alone cannot fire on infeasible problems (their
# residual keeps creeping toward its positive limit like 1/k), so a
# projected-budget rule backs it up: when the iterations still needed at the
# current improvement rate exceed the remaining budget by STALL_SAFETY, the
# run cannot succeed within max_iters and exits now.  Improvement per window
# does not accelerate for these projection methods, so every run killed this
# way would also have been killed by the iteration cap.
STALL_WINDOW = 500
STALL_IMPROVEMENT = 1e-14
STALL_SAFETY = 2.0

DEFAULT_TOL = 1e-7
DEFAULT_MAX_ITERS = 50000


@dataclass(eq=False)
class AffineConstraint:
    """The affine slice  sum_l G_l ∘ R_l = target  of the block space.

    Inputs are symmetrized on construction; every entry of every R matrix
    must be nonzero (automatic for reciprocal kernels on the open disk), so
    the entrywise denominator ``sum_l |R_l|^2`` never vanishes.
    """

    r_matrices: np.ndarray  # (d, n, n)
    target: np.ndarray      # (n, n)
    denom: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        r = np.asarray(self.r_matrices, dtype=complex)
        if r.ndim == 2:
            r = r[None, :, :]
        if r.ndim != 3 or r.shape[1] != r.shape[2]:
            raise ArgumentError(f"R matrices must be square and stacked, got shape {r.shape}")
        t = np.asarray(self.target, dtype=complex)
        if t.shape != r.shape[1:]:
            raise ArgumentError(f"target shape {t.shape} does not match R matrices {r.shape[1:]}")
        if np.min(np.abs(r)) == 0.0:
            raise ArgumentError("every entry of every R matrix must be nonzero")
        self.r_matrices = hermitian_part(r)
        self.target = hermitian_part(t)
        self.denom = np.sum(np.abs(self.r_matrices) ** 2, axis=0)

    @property
    def num_blocks(self) -> int:
        return self.r_matrices.shape[0]

    @property
    def size(self) -> int:
        return self.r_matrices.shape[1]

    def apply(self, blocks) -> np.ndarray:
        """Image of the blocks under the constraint map sum_l G_l ∘ R_l."""
        return np.einsum("lij,lij->ij", np.asarray(blocks, dtype=complex), self.r_matrices)

    def adjoint(self, s) -> np.ndarray:
        """Adjoint of the constraint map: S -> (conj(R_l) ∘ S)_l."""
        return np.conj(self.r_matrices) * np.asarray(s, dtype=complex)[None, :, :]

    def zero_blocks(self) -> np.ndarray:
        return np.zeros_like(self.r_matrices)


def project_psd(a) -> np.ndarray:
    """Frobenius-nearest PSD matrix (batched over leading axes).

    Clips negative eigenvalues of the symmetrized input to zero.
    """
    w, v = eigh_hermitian(a)
    w = np.clip(w, 0.0, None)
    out = np.einsum("...ik,...k,...jk->...ij", v, w, np.conj(v))
    return hermitian_part(out)


def project_affine(blocks, constraint: AffineConstraint) -> np.ndarray:
    """Frobenius projection of a block tuple onto the affine slice.

    Closed form: G_l += conj(R_l) ∘ S with S = (T - sum_m G_m ∘ R_m) ⊘ sum_m |R_m|^2,
    the least-norm correction because the constraint map composed with its
    adjoint is entrywise multiplication by the denominator.
    """
    blocks = np.asarray(blocks, dtype=complex)
    residual = constraint.target - constraint.apply(blocks)
    s = residual / constraint.denom
    return blocks + constraint.adjoint(s)


def check_certificate(blocks, constraint: AffineConstraint) -> tuple[float, float]:
    """Recompute (affine residual, PSD margin) directly from the blocks."""
    blocks = np.asarray(blocks, dtype=complex)
    residual = frobenius(constraint.target - constraint.apply(blocks))
    margin = float(np.min(eigvalsh_hermitian(blocks)))
    return residual, margin


@dataclass(eq=False)
class SdpResult:
    """Outcome of a feasibility solve.

    A failure verdict is not a certificate of infeasibility: it carries the
    best iterate reached, and the problem may still be feasible beyond the
    iteration budget.
    """

    feasible: bool
    blocks: np.ndarray
    affine_residual: float
    psd_margin: float
    iterations: int
    residual_history: list[float] | None = None


def dykstra_solve(constraint: AffineConstraint, tol: float = DEFAULT_TOL,
                  max_iters: int = DEFAULT_MAX_ITERS,
                  record_residuals: bool = False) -> SdpResult:
    """Dykstra's alternating projections between the affine slice and the PSD cone.

    Blocks start at zero (deterministic, reproducible runs).  The iterate
    reported after each sweep is the PSD-projected one, so its residual
    measures infeasibility; success requires the from-scratch certificate
    ``affine_residual <= tol`` and ``psd_margin >= -tol``.
    """
    x = constraint.zero_blocks()
    p = constraint.zero_blocks()
    q = constraint.zero_blocks()
    history: list[float] | None = [] if record_residuals else None
    best_res = np.inf
    best_blocks = x.copy()
    window_best = np.inf
    iterations = 0
    for k in range(1, max_iters + 1):
        iterations = k
        y = project_affine(x + p, constraint)
        p = x + p - y
        x = project_psd(y + q)
        q = y + q - x
        res = frobenius(constraint.target - constraint.apply(x))
        if history is not None:
            history.append(res)
        if res < best_res:
            best_res = res
            best_blocks = x.copy()
        if res <= tol:
            res2, margin = check_certificate(x, constraint)
            if res2 <= tol and margin >= -tol:
                return SdpResult(True, x, res2, margin, k, history)
        if k % STALL_WINDOW == 0:
            improvement = window_best - best_res
            if improvement < STALL_IMPROVEMENT:
                break
            projected = (best_res - tol) / improvement * STALL_WINDOW
            if projected > STALL_SAFETY * (max_iters - k):
                break
            window_best = best_res
    res2, margin = check_certificate(best_blocks, constraint)
    return SdpResult(False, best_blocks, res2, margin, iterations, history)
