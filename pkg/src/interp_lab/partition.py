"""Split a point set into kernel-separated classes and verify each is Riesz.

Greedy first-fit coloring of the proximity graph (edges join points whose
kernel semimetric falls below epsilon) in input order, followed by a
per-class check that the bottom eigenvalue of the normalized Gramian clears
a tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from . import kernels
from .errors import ArgumentError
from .gramian import check_distinct, normalized_gramian, riesz_bounds

DEFAULT_RIESZ_TOL = 1e-3


@dataclass(frozen=True)
class PartitionResult:
    """Epsilon-separated classes of the input, with optional Riesz verdicts.

    ``classes`` holds the points; ``class_indices`` the matching positions in
    the input.  ``per_class_lambda_min`` and ``all_riesz`` stay None until
    :func:`verify_partition` fills them.
    """

    classes: tuple[tuple, ...]
    class_indices: tuple[tuple[int, ...], ...]
    epsilon: float
    per_class_lambda_min: tuple[float, ...] | None = None
    all_riesz: bool | None = None
    tolerance: float | None = None


def partition_separated(points, kernel, epsilon: float) -> PartitionResult:
    """Greedy first-fit partition into classes with pairwise semimetric >= epsilon.

    Deterministic in the input order; the class count never exceeds one plus
    the maximum degree of the proximity graph.
    """
    if not 0.0 < epsilon < 1.0:
        raise ArgumentError(f"epsilon must lie in (0, 1), got {epsilon}")
    pts = list(points)
    if not pts:
        raise ArgumentError("need at least one point")
    check_distinct(pts)
    classes: list[list] = []
    indices: list[list[int]] = []
    for i, p in enumerate(pts):
        placed = False
        for cls, idx in zip(classes, indices):
            if all(kernels.rho_semimetric(kernel, p, q) >= epsilon for q in cls):
                cls.append(p)
                idx.append(i)
                placed = True
                break
        if not placed:
            classes.append([p])
            indices.append([i])
    return PartitionResult(
        classes=tuple(tuple(c) for c in classes),
        class_indices=tuple(tuple(i) for i in indices),
        epsilon=float(epsilon),
    )


def verify_partition(result: PartitionResult, kernel,
                     tolerance: float = DEFAULT_RIESZ_TOL) -> PartitionResult:
    """Fill in per-class bottom eigenvalues; a class passes when it exceeds ``tolerance``."""
    if not result.classes:
        raise ArgumentError("partition has no classes")
    lambda_mins = []
    for cls in result.classes:
        if not cls:
            raise ArgumentError("partition contains an empty class")
        if len(cls) == 1:
            lambda_mins.append(1.0)
            continue
        report = riesz_bounds(normalized_gramian(cls, kernel), tolerance)
        lambda_mins.append(report.lambda_min)
    return replace(
        result,
        per_class_lambda_min=tuple(lambda_mins),
        all_riesz=bool(all(lm > tolerance for lm in lambda_mins)),
        tolerance=float(tolerance),
    )
