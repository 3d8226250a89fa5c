"""Shared samplers for the test suite; all randomness is seeded per test."""

import numpy as np
import pytest

from interp_lab import KernelSpec


def random_disk_point(rng, max_radius=0.9):
    r = max_radius * np.sqrt(rng.uniform())
    phi = rng.uniform(0.0, 2.0 * np.pi)
    return complex(r * np.cos(phi), r * np.sin(phi))


def random_disk_points(rng, n, max_radius=0.9, min_separation=0.0):
    """Sample n points; optionally enforce a pseudo-hyperbolic separation."""
    pts = []
    attempts = 0
    while len(pts) < n:
        attempts += 1
        if attempts > 10000:
            raise RuntimeError("sampler failed to place separated points")
        z = random_disk_point(rng, max_radius)
        if min_separation > 0.0 and any(
            abs((z - w) / (1 - w.conjugate() * z)) < min_separation for w in pts
        ):
            continue
        pts.append(z)
    return pts


def random_kernel_spec(rng, max_terms=4):
    """Coefficients nonnegative, summing to at most 1, at least one positive."""
    m = int(rng.integers(1, max_terms + 1))
    raw = rng.uniform(0.0, 1.0, size=m)
    total = rng.uniform(0.3, 1.0)
    coeffs = raw / raw.sum() * total
    return KernelSpec(tuple(coeffs))


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
