"""Seeded ensemble checks behind the verify command.

Hard checks gate the exit code; soft checks only report numbers (empirical
constants, violation counts for the derivational capacity-rate bounds).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    DensityOperator,
    density_from_pure,
    haar_random_pure,
    partial_trace,
    relative_entropy,
    schmidt_decompose,
    spectrum_entropy,
    spectrum_of,
    von_neumann_entropy,
)
from .dynamics import NonlocalHamiltonian, simulate_trajectory
from .measures import (
    capacity_from_spectrum,
    capacity_of,
    is_flat,
    modular_hamiltonian,
    smallest_continuity_constant,
    smallest_subadditivity_constant,
    solve_max_variance_spectrum,
    uncertainty,
)
from .mixed import family1_closest, family2_closest, is_ppt
from .self_inverse import (
    build_self_inverse,
    capacity_rate_bounds,
    evolve_self_inverse,
    max_entropy_rate_constant,
    operator_norm,
)
from .speed_limits import (
    family_entropy,
    family_qsl_curve,
    family_sqrt_capacity,
    hamiltonian_fluctuation,
    rate_bound_check,
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    hard: bool
    passed: bool
    detail: str


def _random_density(rng: np.random.Generator, d: int, rank: int | None = None) -> DensityOperator:
    k = rank or d
    g = rng.standard_normal((d, k)) + 1j * rng.standard_normal((d, k))
    m = g @ g.conj().T
    return DensityOperator(m / np.trace(m).real)


def _random_split_density(rng: np.random.Generator, d_a: int, d_b: int) -> DensityOperator:
    base = _random_density(rng, d_a * d_b)
    return DensityOperator(base.matrix, d_a=d_a, d_b=d_b)


def _random_mu(rng: np.random.Generator) -> NonlocalHamiltonian:
    mu = np.sort(rng.uniform(0.0, 2.0, 3))[::-1]
    return NonlocalHamiltonian(mu=(float(mu[0]), float(mu[1]), float(mu[2])))


def _random_involution(rng: np.random.Generator) -> np.ndarray:
    g = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    q, _ = np.linalg.qr(g)
    signs = np.array([1.0, -1.0]) if rng.random() < 0.5 else np.array([1.0, 1.0])
    return q @ np.diag(signs) @ q.conj().T


def run_properties(n_samples: int, seed: int, base="e") -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    results: list[CheckResult] = []

    # tensor-factor recovery of the partial trace
    dev = 0.0
    for _ in range(max(n_samples // 10, 10)):
        rho_a = _random_density(rng, 2)
        rho_b = _random_density(rng, 3)
        joint = DensityOperator(np.kron(rho_a.matrix, rho_b.matrix), d_a=2, d_b=3)
        dev = max(dev, np.abs(partial_trace(joint, "A").matrix - rho_a.matrix).max())
    results.append(CheckResult("partial-trace-factor-recovery", True, dev <= 1e-12, f"max_dev={dev:.3e}"))

    # Schmidt weights equal the reduced spectrum
    dev = 0.0
    for _ in range(max(n_samples // 10, 10)):
        psi = haar_random_pure(2, 2, rng)
        w, _, _ = schmidt_decompose(psi)
        spec = spectrum_of(partial_trace(density_from_pure(psi), "A")).eigenvalues
        dev = max(dev, np.abs(w - spec).max())
    results.append(CheckResult("schmidt-equals-reduced-spectrum", True, dev <= 1e-10, f"max_dev={dev:.3e}"))

    # base conversion by ln 2
    dev = 0.0
    for _ in range(max(n_samples // 10, 10)):
        rho = _random_density(rng, 4)
        dev = max(dev, abs(von_neumann_entropy(rho, 2) - von_neumann_entropy(rho, "e") / np.log(2.0)))
    results.append(CheckResult("entropy-base-conversion", True, dev <= 1e-12, f"max_dev={dev:.3e}"))

    # relative entropy non-negative, zero only at equality
    worst = np.inf
    for _ in range(n_samples):
        rho = _random_density(rng, 3)
        sig = _random_density(rng, 3)
        worst = min(worst, relative_entropy(rho, sig, base))
    results.append(CheckResult("relative-entropy-nonnegative", True, worst >= 0.0, f"min_value={worst:.3e}"))

    # additivity of the capacity under tensor products
    dev = 0.0
    for _ in range(max(n_samples // 10, 10)):
        rho_a = _random_density(rng, 2)
        rho_b = _random_density(rng, 3)
        joint = DensityOperator(np.kron(rho_a.matrix, rho_b.matrix))
        lhs = capacity_of(joint, base).capacity
        rhs = capacity_of(rho_a, base).capacity + capacity_of(rho_b, base).capacity
        dev = max(dev, abs(lhs - rhs))
    results.append(CheckResult("capacity-additivity", True, dev <= 1e-9, f"max_dev={dev:.3e}"))

    # positivity and flat-state zero
    min_cap = np.inf
    for _ in range(n_samples):
        min_cap = min(min_cap, capacity_of(_random_density(rng, 4), base).capacity)
    results.append(CheckResult("capacity-positivity", True, min_cap >= 0.0, f"min_value={min_cap:.3e}"))
    flat_dev = max(
        capacity_from_spectrum([0.5, 0.5, 0.0, 0.0], base).capacity,
        capacity_from_spectrum([1.0], base).capacity,
        capacity_from_spectrum(np.full(8, 1.0 / 8.0), base).capacity,
    )
    flat_ok = flat_dev <= 1e-10 and is_flat([0.5, 0.5, 0.0, 0.0]) and not is_flat([0.6, 0.4])
    results.append(CheckResult("flat-state-zero-capacity", True, flat_ok, f"max_dev={flat_dev:.3e}"))

    # uncertainty convexity and the linear-perturbation bound, in a fixed state
    conv_dev = -np.inf
    pert_dev = -np.inf
    for _ in range(max(n_samples // 10, 10)):
        tau = _random_density(rng, 3)
        k1 = modular_hamiltonian(_random_density(rng, 3), base).matrix
        k2 = modular_hamiltonian(_random_density(rng, 3), base).matrix
        p = rng.uniform(0.0, 1.0)
        mix = uncertainty(p * k1 + (1.0 - p) * k2, tau)
        conv_dev = max(conv_dev, mix - (p * uncertainty(k1, tau) + (1.0 - p) * uncertainty(k2, tau)))
        x = rng.uniform(0.0, 2.0)
        pert_dev = max(pert_dev, uncertainty(k1 + x * k2, tau) - (uncertainty(k1, tau) + x * uncertainty(k2, tau)))
    results.append(CheckResult("uncertainty-convexity", True, conv_dev <= 1e-10, f"max_excess={conv_dev:.3e}"))
    results.append(CheckResult("uncertainty-perturbation", True, pert_dev <= 1e-10, f"max_excess={pert_dev:.3e}"))

    # capacity through either subsystem of a pure state
    dev = 0.0
    for _ in range(max(n_samples // 10, 10)):
        psi = haar_random_pure(2, 2, rng)
        rho = density_from_pure(psi)
        ca = capacity_of(partial_trace(rho, "A"), base).capacity
        cb = capacity_of(partial_trace(rho, "B"), base).capacity
        dev = max(dev, abs(ca - cb))
    results.append(CheckResult("capacity-subsystem-symmetry", True, dev <= 1e-10, f"max_dev={dev:.3e}"))

    # maximal-variance spectrum bracket (printed with base-2 logs)
    ok = True
    details = []
    for d in (3, 4, 8, 16):
        _, weights = solve_max_variance_spectrum(d)
        cap = capacity_from_spectrum(weights, 2).capacity
        lo = 0.25 * np.log2(d - 1) ** 2
        hi = lo + 1.0 / np.log(2.0) ** 2
        ok &= lo < cap < hi
        details.append(f"d{d}={cap:.4f}")
    results.append(CheckResult("max-variance-bracket", True, ok, ",".join(details)))

    # analytic family references stay PPT
    ppt_ok = all(
        is_ppt(f(lam))
        for f in (family1_closest, family2_closest)
        for lam in (0.0, 0.3, 0.7, 1.0)
    )
    results.append(CheckResult("family-closest-states-ppt", True, ppt_ok, "lam in {0,0.3,0.7,1}"))

    # empirical constants (reporters, not gates)
    pairs = []
    states = []
    for _ in range(max(n_samples // 10, 10)):
        pairs.append((_random_density(rng, 4), _random_density(rng, 4)))
        states.append(_random_split_density(rng, 2, 2))
    xi = smallest_continuity_constant(pairs, base)
    chi = smallest_subadditivity_constant(states, base)
    results.append(CheckResult("continuity-constant-estimate", False, True, f"xi_hat={xi:.6f}"))
    results.append(CheckResult("subadditivity-constant-estimate", False, True, f"chi_hat={chi:.6f}"))
    return results


def run_bounds(n_samples: int, seed: int, base="e") -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    results: list[CheckResult] = []

    # Heisenberg-Robertson rate bound along random canonical evolutions
    violations = 0
    worst_margin = np.inf
    times = np.linspace(0.05, 0.5, 4)
    for _ in range(n_samples):
        ham = _random_mu(rng)
        psi = haar_random_pure(2, 2, rng)
        traj = simulate_trajectory(ham, psi, times, base)
        check = rate_bound_check(ham, traj, margin=1e-8)
        violations += check.violations
        worst_margin = min(worst_margin, float(check.margins.min()))
    results.append(CheckResult("entanglement-rate-bound", True, violations == 0,
                               f"violations={violations},min_margin={worst_margin:.3e}"))

    # speed-limit validity on the closed-form family grid
    worst = -np.inf
    ratios = []
    t_grid = np.linspace(0.45 / 45.0, 0.45, 45)
    for p in np.linspace(0.0, 1.0, 20):
        for theta in (0.5, 1.0):
            snapped, tqsl = family_qsl_curve(p, theta, t_grid, samples_total=200001)
            worst = max(worst, float((tqsl - snapped).max()))
            if p in (0.0, 1.0):
                ratios.append(float((tqsl / snapped).min()))
    results.append(CheckResult("qsl-validity", True, worst <= 1e-9, f"max_excess={worst:.3e}"))
    results.append(CheckResult("qsl-tightness", False, min(ratios) >= 0.95,
                               f"min_ratio={min(ratios):.6f}"))

    # closed forms match spectrum recomputation
    dev = 0.0
    for p in np.linspace(0.0, 1.0, 11):
        for theta in (0.5, 1.0):
            for t in np.linspace(0.0, 1.5, 11):
                eta = (1.0 - 2.0 * p) * np.cos(2.0 * theta * t)
                lam1 = (1.0 - eta) / 2.0
                cap = capacity_from_spectrum([lam1, 1.0 - lam1], 2)
                dev = max(dev, abs(cap.capacity - family_sqrt_capacity(p, theta, t) ** 2))
                dev = max(dev, abs(cap.entropy - family_entropy(p, theta, t)))
    results.append(CheckResult("closed-form-consistency", True, dev <= 1e-10, f"max_dev={dev:.3e}"))

    # derivational capacity-rate bounds: violation counts are reported, not gated
    counts = np.zeros(4, dtype=int)
    total = 0
    h_step = 1e-6
    for _ in range(max(n_samples // 5, 20)):
        ham = build_self_inverse(_random_involution(rng), _random_involution(rng))
        psi = haar_random_pure(2, 2, rng)
        for t in (0.1, 0.3, 0.7):
            def cap_at(tt):
                state = evolve_self_inverse(ham, psi, tt)
                w, _, _ = schmidt_decompose(state)
                return capacity_from_spectrum(w, base).capacity

            def ent_at(tt):
                state = evolve_self_inverse(ham, psi, tt)
                w, _, _ = schmidt_decompose(state)
                return spectrum_entropy(w, base)

            gamma_c = (cap_at(t + h_step) - cap_at(t - h_step)) / (2.0 * h_step)
            gamma = (ent_at(t + h_step) - ent_at(t - h_step)) / (2.0 * h_step)
            state = evolve_self_inverse(ham, psi, t)
            w, _, _ = schmidt_decompose(state)
            cap = capacity_from_spectrum(w, base).capacity
            speed = 2.0 * hamiltonian_fluctuation(ham.matrix(), state)
            bounds = capacity_rate_bounds(
                2, gamma=abs(gamma), capacity=cap, speed=speed,
                op_norm=operator_norm(ham), c=1.0, d=2, base=base,
            )
            vals = (bounds.entanglement_rate_bound, bounds.speed_bound,
                    bounds.norm_bound, bounds.self_inverse_bound)
            counts += np.array([abs(gamma_c) > b + 1e-7 for b in vals], dtype=int)
            total += 1
    results.append(CheckResult(
        "capacity-rate-bound-chain", False, True,
        f"samples={total},violations=rate:{counts[0]},speed:{counts[1]},norm:{counts[2]},selfinv:{counts[3]}",
    ))

    beta2 = max_entropy_rate_constant(2)
    betae = max_entropy_rate_constant("e")
    ok = abs(beta2 - betae / np.log(2.0)) <= 1e-10
    results.append(CheckResult("rate-constant-base-ratio", True, ok,
                               f"base2={beta2:.6f},base_e={betae:.6f}"))
    return results


def run_suite(suite: str, n_samples: int, seed: int, base="e") -> list[CheckResult]:
    if suite == "properties":
        return run_properties(n_samples, seed, base)
    if suite == "bounds":
        return run_bounds(n_samples, seed, base)
    if suite == "all":
        return run_properties(n_samples, seed, base) + run_bounds(n_samples, seed, base)
    raise ValueError(f"unknown suite {suite!r}")


def format_report(results: list[CheckResult]) -> str:
    lines = []
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        kind = "hard" if r.hard else "soft"
        lines.append(f"{status} {kind} {r.name} {r.detail}")
    hard_fail = sum(1 for r in results if r.hard and not r.passed)
    lines.append(f"SUMMARY checks={len(results)} hard_failures={hard_fail}")
    return "\n".join(lines) + "\n"


def hard_failures(results: list[CheckResult]) -> int:
    return sum(1 for r in results if r.hard and not r.passed)
