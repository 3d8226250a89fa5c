import numpy as np
import pytest

from interp_lab import (
    SZEGO,
    ArgumentError,
    BudgetError,
    MobiusMap,
    analyze_gamma_sequence,
    composition_matrix,
    enumerate_group,
    gamma_kernel,
    invariance_residual,
    mobius_apply,
    normalized_gramian,
    orbit_set,
    riesz_bounds,
    strong_separation_disk,
    weak_separation,
)
from interp_lab.fuchsian import IDENTITY, compose, generator_warnings, interior_fixed_point
from conftest import random_disk_point

HYPERBOLIC = MobiusMap(0.0, 0.5)


def random_mobius(rng):
    return MobiusMap(rng.uniform(0, 2 * np.pi), random_disk_point(rng, 0.8))


class TestMobiusMap:
    def test_identity(self):
        assert mobius_apply(IDENTITY, 0.3) == 0.3

    def test_sends_parameter_to_zero(self):
        assert mobius_apply(HYPERBOLIC, 0.5) == 0

    def test_sends_zero_to_minus_parameter(self):
        assert mobius_apply(HYPERBOLIC, 0) == -0.5

    def test_stays_in_disk(self, rng):
        for _ in range(100):
            m = random_mobius(rng)
            z = random_disk_point(rng, 0.99)
            assert abs(mobius_apply(m, z)) < 1.0

    def test_inverse_cancels(self, rng):
        for _ in range(50):
            m = random_mobius(rng)
            z = random_disk_point(rng)
            assert abs(m.inverse()(m(z)) - z) < 1e-12

    def test_group_law(self, rng):
        for _ in range(50):
            g, h = random_mobius(rng), random_mobius(rng)
            z = random_disk_point(rng)
            assert abs(compose(g, h)(z) - g(h(z))) < 1e-12


class TestEnumerateGroup:
    def test_no_generators(self):
        grp = enumerate_group([], 3)
        assert grp.size == 1

    def test_cyclic_length_two(self):
        grp = enumerate_group([HYPERBOLIC], 2)
        assert grp.size == 5

    def test_two_free_generators_length_one(self):
        grp = enumerate_group([HYPERBOLIC, MobiusMap(0.0, 0.5j)], 1)
        assert grp.size == 5

    def test_involution_collapses(self):
        # z -> -z composed with itself is the identity
        grp = enumerate_group([MobiusMap(np.pi, 0)], 4)
        assert grp.size == 2

    def test_budget_error(self):
        with pytest.raises(BudgetError):
            enumerate_group([HYPERBOLIC, MobiusMap(0.1, 0.4j)], 6, max_elements=20)


class TestOrbitSet:
    def test_cyclic_orbit_of_zero(self):
        grp = enumerate_group([HYPERBOLIC], 2)
        orbit = orbit_set([0], grp)
        pts = sorted(round(o.point.real, 10) for o in orbit)
        assert pts == [-0.8, -0.5, 0.0, 0.5, 0.8]
        assert all(abs(o.point.imag) < 1e-15 for o in orbit)

    def test_same_orbit_collision(self):
        grp = enumerate_group([HYPERBOLIC], 2)
        with pytest.raises(ArgumentError):
            orbit_set([0, -0.5], grp)

    def test_trivial_group(self):
        orbit = orbit_set([0], enumerate_group([], 0))
        assert len(orbit) == 1 and orbit[0].point == 0


class TestCompositionMatrix:
    def test_identity_matrix(self):
        assert np.allclose(composition_matrix(IDENTITY, 6), np.eye(7))

    def test_rotation_is_diagonal(self):
        theta = 0.7
        m = composition_matrix(MobiusMap(theta, 0), 5)
        assert np.allclose(m, np.diag(np.exp(1j * theta * np.arange(6))))

    def test_first_column_series(self):
        m = composition_matrix(HYPERBOLIC, 3)
        assert np.allclose(m[:, 1], [-0.5, 0.75, 0.375, 0.1875], atol=1e-14)
        assert np.allclose(m[:, 0], [1, 0, 0, 0])

    def test_composition_consistency_for_rotations(self):
        # rotations compose exactly on the truncated space
        a, b = MobiusMap(0.4, 0), MobiusMap(1.1, 0)
        lhs = composition_matrix(compose(a, b), 8)
        rhs = composition_matrix(b, 8) @ composition_matrix(a, 8)
        assert np.allclose(lhs, rhs, atol=1e-12)


class TestGammaKernel:
    def test_trivial_group_is_truncated_szego(self):
        k = gamma_kernel([], 50)
        assert k(0, 0) == 1
        assert abs(k(0.5, 0.5) - 4 / 3) < 1e-8
        for z, w in [(0.3, 0.2), (0.1j, -0.4), (0.25 + 0.3j, 0.5)]:
            truncated = sum((z * np.conj(w)) ** j for j in range(51))
            assert abs(k(z, w) - truncated) < 1e-10

    def test_constants_always_kept(self):
        k = gamma_kernel([HYPERBOLIC], 20)
        assert k.rank >= 1
        assert k.residuals[0] <= 1e-10

    def test_basis_orthonormal_and_residuals_honest(self):
        k = gamma_kernel([HYPERBOLIC], 25)
        gram = k.basis @ k.basis.conj().T
        assert np.max(np.abs(gram - np.eye(k.rank))) < 1e-10
        stack = composition_matrix(HYPERBOLIC, 25) - np.eye(26)
        for vec, recorded in zip(k.basis, k.residuals):
            assert np.linalg.norm(stack @ vec) == pytest.approx(recorded, abs=1e-10)

    def test_psd_on_point_sets(self, rng):
        k = gamma_kernel([HYPERBOLIC], 30)
        pts = [random_disk_point(rng, 0.7) for _ in range(6)]
        m = np.array([[k(zi, zj) for zj in pts] for zi in pts])
        assert np.linalg.eigvalsh(0.5 * (m + m.conj().T)).min() >= -1e-9 * len(pts)

    def test_invariance_residual_small(self):
        k = gamma_kernel([HYPERBOLIC], 40)
        assert invariance_residual(k, [HYPERBOLIC]) < 1e-8


class TestEllipticDetection:
    def test_rotation_flagged(self):
        warns = generator_warnings([MobiusMap(1.0, 0)])
        assert len(warns) == 1 and "elliptic" in warns[0]

    def test_hyperbolic_clean(self):
        assert generator_warnings([HYPERBOLIC]) == []
        assert interior_fixed_point(HYPERBOLIC) is None

    def test_identity_flagged(self):
        warns = generator_warnings([IDENTITY])
        assert len(warns) == 1 and "identity" in warns[0]


class TestAnalyzeGammaSequence:
    def test_trivial_group_reduces_to_disk_analysis(self):
        rep = analyze_gamma_sequence([0, 0.5], [], 50, 2)
        disk = riesz_bounds(normalized_gramian([0, 0.5], SZEGO))
        assert rep.gamma_riesz.lambda_min == pytest.approx(disk.lambda_min, abs=1e-8)
        assert rep.gamma_riesz.lambda_max == pytest.approx(disk.lambda_max, abs=1e-8)
        assert rep.gamma_weak_separation == pytest.approx(
            weak_separation([0, 0.5], SZEGO), abs=1e-8
        )
        assert rep.orbit_strong_separation == pytest.approx(
            strong_separation_disk([0, 0.5]), abs=1e-12
        )
        assert rep.orbit_point_count == 2

    def test_single_point_riesz_trivial(self):
        rep = analyze_gamma_sequence([0.2], [HYPERBOLIC], 20, 1)
        assert rep.gamma_riesz.lambda_min == rep.gamma_riesz.lambda_max == 1.0
        assert rep.gamma_weak_separation is None

    def test_cyclic_smoke_all_fields(self):
        rep = analyze_gamma_sequence([0.2, 0.2j], [HYPERBOLIC], 40, 2)
        assert rep.group_size == 5
        assert rep.orbit_point_count == 10
        assert rep.invariance_residual < 1e-4
        assert rep.orbit_weak_separation is not None and rep.orbit_weak_separation > 0
        assert 0 < rep.orbit_strong_separation <= 1
        assert rep.orbit_riesz.lambda_max >= 1.0
        assert np.isfinite(rep.gamma_riesz.lambda_min)

    def test_collision_propagates(self):
        with pytest.raises(ArgumentError):
            analyze_gamma_sequence([0, -0.5], [HYPERBOLIC], 20, 2)
