import math

import numpy as np
import pytest

from entcap.core import BipartitePureState, DensityOperator, DomainError, density_from_pure, haar_random_pure, partial_trace, spectrum_of, von_neumann_entropy
from entcap.dynamics import evolve_matrix
from entcap.self_inverse import (
    CapacityRateBounds,
    build_self_inverse,
    capacity_rate_bounds,
    evolve_self_inverse,
    liouville_rhs,
    liouville_rhs_reduced,
    max_entropy_rate_constant,
    operator_norm,
)

SZ = np.diag([1.0, -1.0])
SX = np.array([[0.0, 1.0], [1.0, 0.0]])
HADAMARD_LIKE = (SX + SZ) / math.sqrt(2)


class TestConstruction:
    def test_ising(self):
        ham = build_self_inverse(SZ, SZ)
        assert np.allclose(ham.matrix(), np.kron(SZ, SZ))
        assert np.abs(ham.matrix() @ ham.matrix() - np.eye(4)).max() < 1e-9

    def test_hadamard_like_accepted(self):
        ham = build_self_inverse(HADAMARD_LIKE, SX)
        assert np.abs(ham.matrix() @ ham.matrix() - np.eye(4)).max() < 1e-9

    def test_non_involutory_rejected_with_name(self):
        with pytest.raises(DomainError, match="X_A"):
            build_self_inverse(np.diag([1.0, 2.0]), SZ)
        with pytest.raises(DomainError, match="X_B"):
            build_self_inverse(SZ, np.diag([1.0, 2.0]))


class TestEvolution:
    def test_time_zero_identity(self):
        ham = build_self_inverse(SZ, SX)
        psi = haar_random_pure(2, 2, 0)
        assert np.allclose(evolve_self_inverse(ham, psi, 0.0).amplitudes, psi.amplitudes)

    def test_half_period_global_phase(self):
        ham = build_self_inverse(SZ, SX)
        psi = haar_random_pure(2, 2, 1)
        out = evolve_self_inverse(ham, psi, math.pi)
        assert np.allclose(out.amplitudes, -psi.amplitudes, atol=1e-12)

    def test_full_period(self):
        ham = build_self_inverse(HADAMARD_LIKE, HADAMARD_LIKE)
        psi = haar_random_pure(2, 2, 2)
        out = evolve_self_inverse(ham, psi, 2 * math.pi)
        assert np.allclose(out.amplitudes, psi.amplitudes, atol=1e-12)

    def test_matches_eigendecomposition_path(self):
        rng = np.random.default_rng(3)
        ham = build_self_inverse(SZ, HADAMARD_LIKE)
        for _ in range(10):
            psi = haar_random_pure(2, 2, rng)
            t = rng.uniform(0.0, 4.0)
            closed = evolve_self_inverse(ham, psi, t).amplitudes
            generic = evolve_matrix(ham.matrix(), psi.amplitudes, t)
            assert np.abs(closed - generic).max() < 1e-10

    def test_unitary_closed_form(self):
        ham = build_self_inverse(SX, SX)
        for t in (0.0, 0.4, 1.7, 3.3):
            u = ham.unitary(t)
            assert np.abs(u @ u.conj().T - np.eye(4)).max() < 1e-10
            w, v = np.linalg.eigh(ham.matrix())
            u_exact = (v * np.exp(-1j * w * t)) @ v.conj().T
            assert np.abs(u - u_exact).max() < 1e-10

    def test_ising_plus_plus_entropy_cross_path(self):
        plus = np.array([1.0, 1.0]) / math.sqrt(2)
        psi = BipartitePureState(np.kron(plus, plus), 2, 2)
        ham = build_self_inverse(SZ, SZ)
        t = math.pi / 4
        closed = evolve_self_inverse(ham, psi, t)
        generic = evolve_matrix(ham.matrix(), psi.amplitudes, t)
        s_closed = von_neumann_entropy(partial_trace(density_from_pure(closed), "A"), 2)
        generic_state = BipartitePureState(generic / np.linalg.norm(generic), 2, 2)
        s_generic = von_neumann_entropy(partial_trace(density_from_pure(generic_state), "A"), 2)
        assert s_closed == pytest.approx(s_generic, abs=1e-10)
        assert s_closed == pytest.approx(1.0, abs=1e-10)  # CZ-like kick entangles |++> maximally


class TestLiouville:
    def test_commuting_zero(self):
        rho = DensityOperator(np.diag([0.4, 0.1, 0.3, 0.2]), d_a=2, d_b=2)
        h = np.kron(SZ, SZ)
        assert np.abs(liouville_rhs(h, rho)).max() < 1e-14

    def test_traceless_hermitian(self):
        rng = np.random.default_rng(4)
        g = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        rho = DensityOperator((g @ g.conj().T) / np.trace(g @ g.conj().T).real, d_a=2, d_b=2)
        ham = build_self_inverse(SZ, SX)
        rhs = liouville_rhs(ham, rho)
        assert abs(np.trace(rhs)) < 1e-12
        assert np.abs(rhs - rhs.conj().T).max() < 1e-12

    def test_finite_difference_of_evolution(self):
        ham = build_self_inverse(SZ, HADAMARD_LIKE)
        psi = haar_random_pure(2, 2, 5)
        t, h = 0.6, 1e-6
        rho_t = density_from_pure(evolve_self_inverse(ham, psi, t))
        rho_p = density_from_pure(evolve_self_inverse(ham, psi, t + h)).matrix
        rho_m = density_from_pure(evolve_self_inverse(ham, psi, t - h)).matrix
        fd = (rho_p - rho_m) / (2 * h)
        assert np.abs(fd - liouville_rhs(ham, rho_t)).max() < 1e-6

    def test_reduced_version(self):
        ham = build_self_inverse(SZ, SX)
        psi = haar_random_pure(2, 2, 6)
        rho = density_from_pure(psi)
        full = liouville_rhs(ham, rho).reshape(2, 2, 2, 2)
        assert np.allclose(liouville_rhs_reduced(ham, rho, "B"), np.einsum("abad->bd", full))
        assert abs(np.trace(liouville_rhs_reduced(ham, rho, "A"))) < 1e-12


class TestRateConstant:
    def test_base2_value(self):
        assert max_entropy_rate_constant(2) == pytest.approx(1.9123, abs=1e-4)

    def test_base_e_value(self):
        assert max_entropy_rate_constant("e") == pytest.approx(1.3255, abs=1e-4)

    def test_base_ratio_exact(self):
        assert max_entropy_rate_constant(2) == pytest.approx(
            max_entropy_rate_constant("e") / math.log(2), abs=1e-10
        )

    def test_maximizer_symmetry(self):
        def f(x):
            return 2 * math.sqrt(x * (1 - x)) * abs(math.log(x / (1 - x)))

        from entcap.dynamics import grid_argmax

        x_star, val = grid_argmax(lambda x: np.where((x > 0) & (x < 1),
                                                     2 * np.sqrt(np.clip(x * (1 - x), 1e-300, None))
                                                     * np.abs(np.log(np.clip(x, 1e-300, None) / np.clip(1 - x, 1e-300, None))),
                                                     0.0), 0.0, 1.0, 10**6)
        assert f(x_star) == pytest.approx(f(1 - x_star), abs=1e-9)


class TestBounds:
    def test_zero_rate_zero_first_bound(self):
        b = capacity_rate_bounds(2, gamma=0.0, capacity=0.3, speed=1.0, op_norm=1.0, d=2, base=2)
        assert b.entanglement_rate_bound == 0.0

    def test_ising_self_inverse_bound(self):
        b = capacity_rate_bounds(2, gamma=0.1, capacity=0.3, speed=1.0, op_norm=1.0, d=2, base=2)
        assert b.self_inverse_bound == pytest.approx(4 * 1.9123, abs=4e-4)
        assert b.self_inverse_bound == pytest.approx(7.649, abs=2e-3)

    def test_operator_norm(self):
        assert operator_norm(np.eye(3)) == 1.0
        assert operator_norm(np.kron(SZ, SZ)) == 1.0
        assert operator_norm(np.diag([3.0, -5.0])) == 5.0
        assert operator_norm(build_self_inverse(SZ, SX)) == pytest.approx(1.0, abs=1e-12)

    def test_operator_norm_canonical_interaction(self):
        # eigen oracle: the 4x4 canonical matrix with mu = (1, 0.5, 0.2) has
        # block eigenvalues mu3 ± (mu1-mu2) and -mu3 ± (mu1+mu2)
        from entcap.dynamics import NonlocalHamiltonian

        ham = NonlocalHamiltonian(mu=(1.0, 0.5, 0.2))
        w = np.linalg.eigvalsh(ham.canonical_matrix())
        assert np.allclose(np.sort(w), [-1.7, -0.3, 0.7, 1.3], atol=1e-12)
        assert operator_norm(ham.canonical_matrix()) == pytest.approx(1.7, abs=1e-12)

    def test_c_range_guard(self):
        with pytest.raises(DomainError):
            capacity_rate_bounds(2, gamma=0.1, capacity=0.1, speed=1.0, op_norm=1.0, c=1.5, d=2)


class TestBoundSweep:
    def test_rate_bound_rigorous_along_self_inverse(self):
        # hard: |Gamma| <= 2 sqrt(C) Delta H along self-inverse evolutions;
        # the capacity-rate chain is derivational and only counted
        from entcap.measures import capacity_from_spectrum
        from entcap.core import schmidt_decompose, spectrum_entropy
        from entcap.speed_limits import hamiltonian_fluctuation

        rng = np.random.default_rng(7)
        chain_violations = np.zeros(4, dtype=int)
        samples = 0
        for _ in range(40):
            g = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
            q, _ = np.linalg.qr(g)
            x_a = q @ np.diag([1.0, -1.0]) @ q.conj().T
            g = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
            q, _ = np.linalg.qr(g)
            x_b = q @ np.diag([1.0, -1.0]) @ q.conj().T
            ham = build_self_inverse(0.5 * (x_a + x_a.conj().T), 0.5 * (x_b + x_b.conj().T))
            psi = haar_random_pure(2, 2, rng)
            for t in (0.2, 0.8):
                step = 1e-6

                def diag_at(tt):
                    state = evolve_self_inverse(ham, psi, tt)
                    w, _, _ = schmidt_decompose(state)
                    return spectrum_entropy(w, "e"), capacity_from_spectrum(w, "e").capacity

                s_p, c_p = diag_at(t + step)
                s_m, c_m = diag_at(t - step)
                gamma = (s_p - s_m) / (2 * step)
                gamma_c = (c_p - c_m) / (2 * step)
                state = evolve_self_inverse(ham, psi, t)
                _, cap = diag_at(t)
                dh = hamiltonian_fluctuation(ham.matrix(), state)
                assert abs(gamma) <= 2.0 * math.sqrt(cap) * dh + 1e-6
                bounds = capacity_rate_bounds(2, gamma=abs(gamma), capacity=cap,
                                              speed=2 * dh, op_norm=1.0, d=2, base="e")
                vals = (bounds.entanglement_rate_bound, bounds.speed_bound,
                        bounds.norm_bound, bounds.self_inverse_bound)
                chain_violations += np.array([abs(gamma_c) > b + 1e-6 for b in vals])
                samples += 1
        assert samples == 80
        # the loosest, state-independent bound should never be beaten
        assert chain_violations[3] == 0
