import math

import numpy as np
import pytest

from entcap.core import (
    BipartitePureState,
    DensityOperator,
    DomainError,
    density_from_pure,
    haar_random_pure,
    relative_entropy,
    trace_distance,
)
from entcap.measures import capacity_pure
from entcap.mixed import (
    capacity_mixed,
    closest_separable_family1,
    closest_separable_family2,
    closest_separable_numeric,
    closest_separable_pure,
    family1_closest,
    family1_relative_entropy,
    family1_state,
    family2_closest,
    family2_relative_entropy,
    family2_state,
    is_ppt,
    partial_transpose,
)

BELL = BipartitePureState(np.array([1.0, 0, 0, 1.0]) / np.sqrt(2), 2, 2)


def two_term_state(p):
    return BipartitePureState(np.array([np.sqrt(p), 0, 0, np.sqrt(1 - p)]), 2, 2)


class TestPartialTranspose:
    def test_product_state_stays_psd(self):
        rho_a = np.diag([0.7, 0.3])
        rho_b = np.diag([0.2, 0.8])
        rho = DensityOperator(np.kron(rho_a, rho_b), d_a=2, d_b=2)
        assert np.linalg.eigvalsh(partial_transpose(rho)).min() >= -1e-12

    def test_bell_negative_eigenvalue(self):
        rho = density_from_pure(BELL)
        rho = DensityOperator(rho.matrix, d_a=2, d_b=2)
        w = np.linalg.eigvalsh(partial_transpose(rho))
        assert w.min() == pytest.approx(-0.5, abs=1e-12)

    def test_involution_exact(self):
        rng = np.random.default_rng(0)
        g = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        rho = DensityOperator((g @ g.conj().T) / np.trace(g @ g.conj().T).real, d_a=2, d_b=2)
        twice = partial_transpose(partial_transpose(rho))
        assert np.array_equal(twice, rho.matrix)

    def test_subsystem_a(self):
        rho = density_from_pure(BELL)
        rho = DensityOperator(rho.matrix, d_a=2, d_b=2)
        wa = np.linalg.eigvalsh(partial_transpose(rho, "A"))
        wb = np.linalg.eigvalsh(partial_transpose(rho, "B"))
        assert np.allclose(wa, wb, atol=1e-12)


class TestIsPPT:
    def test_maximally_mixed(self):
        assert is_ppt(DensityOperator(np.eye(4) / 4, d_a=2, d_b=2))

    def test_bell_fails(self):
        rho = DensityOperator(density_from_pure(BELL).matrix, d_a=2, d_b=2)
        assert not is_ppt(rho)

    def test_family1_product_endpoint(self):
        assert is_ppt(family1_state(0.0))

    def test_family_closest_states_are_ppt(self):
        for lam in (0.0, 0.3, 0.7, 1.0):
            assert is_ppt(family1_closest(lam))
            assert is_ppt(family2_closest(lam))


class TestClosestSeparablePure:
    def test_product_state(self):
        psi = BipartitePureState(np.array([0, 1.0, 0, 0]), 2, 2)
        approx = closest_separable_pure(psi)
        assert approx.relative_entropy == pytest.approx(0.0, abs=1e-12)
        assert np.abs(approx.sigma_star.matrix - density_from_pure(psi).matrix).max() < 1e-12

    def test_bell(self):
        approx = closest_separable_pure(BELL, base="e")
        assert approx.relative_entropy == pytest.approx(math.log(2), abs=1e-12)

    def test_two_term_binary_entropy(self):
        for p in (0.1, 0.3, 0.45):
            approx = closest_separable_pure(two_term_state(p), base="e")
            expected = -(p * math.log(p) + (1 - p) * math.log(1 - p))
            assert approx.relative_entropy == pytest.approx(expected, abs=1e-10)

    def test_haar_states_match_entanglement_entropy(self):
        rng = np.random.default_rng(1)
        for _ in range(10):
            psi = haar_random_pure(2, 2, rng)
            approx = closest_separable_pure(psi, base="e")
            assert approx.relative_entropy == pytest.approx(
                capacity_pure(psi, "e").entropy, abs=1e-10
            )
            assert is_ppt(approx.sigma_star)


class TestAnalyticFamilies:
    def test_family1_endpoints(self):
        assert closest_separable_family1(0.0).relative_entropy == pytest.approx(0.0, abs=1e-12)
        assert closest_separable_family1(1.0).relative_entropy == pytest.approx(math.log(2), abs=1e-10)
        assert family1_relative_entropy(1.0) == pytest.approx(math.log(2), abs=1e-14)

    def test_family1_closed_form_matches_numeric(self):
        for lam in np.linspace(0.0, 1.0, 101):
            numeric = relative_entropy(family1_state(lam), family1_closest(lam), "e")
            assert numeric == pytest.approx(family1_relative_entropy(lam), abs=1e-8)

    def test_family2_closed_form_matches_numeric(self):
        for lam in np.linspace(0.0, 1.0, 101):
            numeric = relative_entropy(family2_state(lam), family2_closest(lam), "e")
            assert numeric == pytest.approx(family2_relative_entropy(lam), abs=1e-8)

    def test_family2_endpoint_is_bell_value(self):
        # lam = 1 reduces to the Bell state, so the value must match the
        # pure-state relative entropy of entanglement
        assert family2_relative_entropy(1.0) == pytest.approx(math.log(2), abs=1e-14)
        assert closest_separable_family2(1.0).relative_entropy == pytest.approx(math.log(2), abs=1e-10)

    def test_printed_weights_normalize(self):
        for lam in (0.2, 0.5, 0.9):
            assert np.trace(family1_closest(lam).matrix).real == pytest.approx(1.0, abs=1e-12)
            assert np.trace(family2_closest(lam).matrix).real == pytest.approx(1.0, abs=1e-12)

    def test_base_conversion(self):
        assert family1_relative_entropy(0.7, 2) == pytest.approx(
            family1_relative_entropy(0.7, "e") / math.log(2), abs=1e-12
        )


class TestNumericSolver:
    def test_separable_input(self):
        rho_a = np.diag([0.7, 0.3])
        rho_b = np.diag([0.2, 0.8])
        rho = DensityOperator(np.kron(rho_a, rho_b), d_a=2, d_b=2)
        result = closest_separable_numeric(rho)
        assert result.relative_entropy == pytest.approx(0.0, abs=1e-6)
        assert trace_distance(result.sigma_star, rho) < 1e-4
        assert result.converged

    def test_family1_midpoint(self):
        rho = family1_state(0.5)
        result = closest_separable_numeric(rho)
        assert result.relative_entropy == pytest.approx(family1_relative_entropy(0.5), abs=1e-5)
        assert trace_distance(result.sigma_star, family1_closest(0.5)) <= 1e-3

    def test_bell(self):
        rho = DensityOperator(density_from_pure(BELL).matrix, d_a=2, d_b=2)
        result = closest_separable_numeric(rho)
        assert result.relative_entropy == pytest.approx(math.log(2), abs=1e-5)

    def test_never_beats_analytic_families(self):
        for fam_state, fam_er in ((family1_state, family1_relative_entropy),
                                  (family2_state, family2_relative_entropy)):
            for lam in (0.25, 0.5, 0.75):
                result = closest_separable_numeric(fam_state(lam))
                analytic = fam_er(lam)
                assert result.relative_entropy >= analytic - 1e-6
                assert result.relative_entropy <= analytic + 1e-6

    def test_sigma_star_feasible(self):
        result = closest_separable_numeric(family2_state(0.6))
        sigma = result.sigma_star
        assert np.linalg.eigvalsh(partial_transpose(sigma)).min() >= -1e-8
        assert np.trace(sigma.matrix).real == pytest.approx(1.0, abs=1e-12)

    def test_objective_monotone_within_stage(self):
        result = closest_separable_numeric(family1_state(0.4))
        trace = result.objective_trace
        assert len(trace) > 0
        by_stage: dict = {}
        for delta, f in trace:
            by_stage.setdefault(delta, []).append(f)
        for fs in by_stage.values():
            assert all(b <= a + 1e-12 for a, b in zip(fs, fs[1:]))


class TestCapacityMixed:
    def test_pure_reduction(self):
        rng = np.random.default_rng(2)
        for _ in range(20):
            psi = haar_random_pure(2, 2, rng)
            rho = DensityOperator(density_from_pure(psi).matrix, d_a=2, d_b=2)
            sigma = closest_separable_pure(psi).sigma_star
            assert capacity_mixed(rho, sigma, "e") == pytest.approx(
                capacity_pure(psi, "e").capacity, abs=1e-8
            )

    def test_family_flat_endpoints(self):
        for fam_state, fam_closest in ((family1_state, family1_closest),
                                       (family2_state, family2_closest)):
            for lam in (0.0, 1.0):
                cap = capacity_mixed(fam_state(lam), fam_closest(lam), "e")
                assert cap == pytest.approx(0.0, abs=1e-8)

    def test_matches_observable_variance(self):
        from entcap.core import log_on_support
        from entcap.measures import observable_variance

        rho = family1_state(0.6)
        sigma = family1_closest(0.6)
        shift = log_on_support(rho, "e") - log_on_support(sigma, "e")
        assert capacity_mixed(rho, sigma, "e") == pytest.approx(
            observable_variance(shift, rho), abs=1e-10
        )

    def test_support_violation_raises(self):
        rho = DensityOperator(np.diag([0.5, 0.5, 0.0, 0.0]), d_a=2, d_b=2)
        sigma = DensityOperator(np.diag([0.0, 0.0, 0.5, 0.5]), d_a=2, d_b=2)
        with pytest.raises(DomainError):
            capacity_mixed(rho, sigma, "e")

    def test_positive_midpoint(self):
        cap = capacity_mixed(family2_state(0.5), family2_closest(0.5), "e")
        assert cap > 0.01


class TestFigureCurves:
    @pytest.mark.parametrize("fam_state,fam_closest", [
        (family1_state, family1_closest),
        (family2_state, family2_closest),
    ])
    def test_continuity_and_endpoints(self, fam_state, fam_closest):
        # the capacity curve falls like (1-lam) log^2(1-lam) near lam = 1, so
        # adjacent jumps stay below 0.05 only at 1e-3 spacing, not at the
        # 101-point figure resolution
        lams = np.linspace(0.0, 1.0, 1001)
        caps = np.array([capacity_mixed(fam_state(l), fam_closest(l), "e") for l in lams])
        ers = np.array([relative_entropy(fam_state(l), fam_closest(l), "e") for l in lams])
        assert caps[0] == pytest.approx(0.0, abs=1e-8)
        assert caps[-1] == pytest.approx(0.0, abs=1e-8)
        assert ers[0] == pytest.approx(0.0, abs=1e-10)
        assert np.abs(np.diff(caps)).max() < 0.05
        assert np.abs(np.diff(ers)).max() < 0.05
