"""Acceptance gate: thirteen pinned criteria, one verdict line each.

Every test prints `ACCEPTANCE-nn <name>: PASS/FAIL (<measurement>)` so a
`pytest tests/test_acceptance.py -s` run reads as a checklist.  Tolerances
and runtime budgets are fixed here and nowhere else.
"""

import math
import time

import numpy as np
import pytest

from torusqi.experiments import ExperimentConfig, build_test_function, run_rate_study
from torusqi.kernels import (
    average,
    compat_order,
    corrected_dirichlet,
    delta,
    differential,
    dirichlet,
    discrete_weights,
    first_derivative,
    functional_lqj_norm,
    riesz_kernel,
    vallee_poussin_kernel,
)
from torusqi.lattice import DilationLattice
from torusqi.quasiinterp import (
    apply_spatial,
    apply_spectral,
    approximation_error,
    quasi_interpolant,
)
from torusqi.smoothness import (
    besov_tail_sum,
    best_approx,
    class_Dnjp_ratio,
    difference_sup,
    fractional,
    k_functional,
    mixed,
    modulus,
    nsr_check,
    total,
    total_sample_deltas,
)
from torusqi.spectrum import (
    fractional_difference,
    fractional_difference_series,
    l2_norm,
    lp_norm,
    sequence_norm,
    spectral_function,
    synthesize,
)

from conftest import random_poly

LINE = DilationLattice((2,))
LINE3 = DilationLattice((3,))
PLANE = DilationLattice((2, 2))


def _verdict(num: int, name: str, ok: bool, detail: str) -> None:
    print(f"\nACCEPTANCE-{num:02d} {name}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, f"ACCEPTANCE-{num:02d} {name}: {detail}"


def _coeff_gap(a, b) -> float:
    keys = set(a.coeffs) | set(b.coeffs)
    return max(abs(a.coeffs.get(k, 0.0) - b.coeffs.get(k, 0.0)) for k in keys)


def test_acceptance_01_reproduction():
    t0 = time.perf_counter()
    rng = np.random.default_rng(101)
    combos = (
        [(LINE, j) for j in range(1, 7)]
        + [(PLANE, j) for j in (1, 2, 3)]
        + [(LINE3, j) for j in (1, 2, 3)]
    )  # m^j <= 64 throughout
    pairs = [
        (dirichlet(), delta()),
        (corrected_dirichlet(0.5), average(0.5)),
    ]
    worst = 0.0
    for trial in range(100):
        lat, j = combos[trial % len(combos)]
        kernel, functional = pairs[trial % 2]
        op = quasi_interpolant(kernel, functional, lat, j)
        T = random_poly(lat, j, rng)
        worst = max(worst, _coeff_gap(apply_spectral(op, T), T))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-10 and elapsed < 10.0
    _verdict(
        1, "polynomial reproduction",
        ok, f"max coeff err {worst:.3e} <= 1e-10 over 100 trials, {elapsed:.2f}s < 10s",
    )


def test_acceptance_02_route_equivalence():
    t0 = time.perf_counter()
    rng = np.random.default_rng(202)
    kernels_ = [
        dirichlet(),
        corrected_dirichlet(0.5),
        vallee_poussin_kernel(),
        riesz_kernel(1.5, 1.0),
    ]
    functionals = [
        delta(),
        average(0.5),
        discrete_weights((0.25, 0.5, 0.25), ((-1,), (0,), (1,))),
        differential({(0,): 1.0, (1,): 0.5}),
    ]
    lattices = [(LINE, (2, 5)), (LINE3, (2, 3)), (DilationLattice((2, 3)), (1, 2))]
    worst = 0.0
    for trial in range(50):
        lat, (jlo, jhi) = lattices[trial % len(lattices)]
        j = int(rng.integers(jlo, jhi + 1))
        kernel = kernels_[int(rng.integers(len(kernels_)))]
        functional = functionals[int(rng.integers(len(functionals)))]
        if functional.variant in ("discrete_weights", "differential") and lat.d != 1:
            functional = delta()
        op = quasi_interpolant(kernel, functional, lat, j)
        f = random_poly(lat, min(j + 1, jhi + 1), rng)
        worst = max(worst, _coeff_gap(apply_spectral(op, f), apply_spatial(op, f)))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-8 and elapsed < 30.0
    _verdict(
        2, "alias-fold vs node-sum routes",
        ok, f"max coeff gap {worst:.3e} <= 1e-8 over 50 pairs, {elapsed:.2f}s < 30s",
    )


def test_acceptance_03_discrete_parseval_and_mz():
    rng = np.random.default_rng(303)
    combos = [(LINE, j) for j in range(1, 6)] + [(PLANE, 1), (PLANE, 2)]
    parseval_worst = 0.0
    mz_worst = 0.0
    for trial in range(200):
        lat, j = combos[trial % len(combos)]
        T = random_poly(lat, j, rng)
        samples = synthesize(T, lat.axis_extents(j)).values.ravel()
        parseval_worst = max(
            parseval_worst, abs(sequence_norm(samples, 2) - l2_norm(T)) / l2_norm(T)
        )
        for p in (1.0, math.inf):
            r = sequence_norm(samples, p) / lp_norm(T, p, oversample=16)
            mz_worst = max(mz_worst, r, 1.0 / r)
    ok = parseval_worst <= 1e-12 and mz_worst <= 3.0
    _verdict(
        3, "discrete Parseval / MZ constants",
        ok, f"Parseval rel err {parseval_worst:.3e} <= 1e-12, MZ constant {mz_worst:.4f} <= 3",
    )


def test_acceptance_04_error_vs_best_approx():
    t0 = time.perf_counter()
    f = build_test_function({"kind": "power", "alpha": 2.5, "cutoff": 512}, 1)
    ratios = []
    for j in range(3, 9):
        op = quasi_interpolant(corrected_dirichlet(0.5), average(0.5), LINE, j)
        err = approximation_error(op, f, 2, 16)
        ratios.append(err / best_approx(f, LINE, j, 2).value)
    spread = max(ratios) / min(ratios)
    elapsed = time.perf_counter() - t0
    ok = all(math.isfinite(r) for r in ratios) and spread <= 4.0 and elapsed < 60.0
    _verdict(
        4, "error ~ best approximation",
        ok, f"ratio bracket max/min {spread:.4f} <= 4 over j=3..8, {elapsed:.1f}s < 60s",
    )


def test_acceptance_05_error_vs_total_modulus():
    t0 = time.perf_counter()
    f = build_test_function({"kind": "power", "alpha": 2.0, "cutoff": 512}, 1)
    ratios = []
    for j in range(3, 9):
        op = quasi_interpolant(dirichlet(), average(0.5), LINE, j)
        err = approximation_error(op, f, 2, 16)
        om = modulus(f, total(2), LINE, j, 2)
        ratios.append(err / om)
    spread = max(ratios) / min(ratios)
    elapsed = time.perf_counter() - t0
    ok = all(math.isfinite(r) for r in ratios) and spread <= 6.0 and elapsed < 120.0
    _verdict(
        5, "error ~ total modulus",
        ok, f"ratio bracket max/min {spread:.4f} <= 6 over j=3..8, {elapsed:.1f}s < 120s",
    )


def test_acceptance_06_error_vs_k_functional():
    f = build_test_function({"kind": "power", "alpha": 1.8, "cutoff": 512}, 1)
    ratios = []
    for j in range(3, 9):
        op = quasi_interpolant(riesz_kernel(1.5, 1.0), average(0.5), LINE, j)
        err = approximation_error(op, f, 2, 16)
        ratios.append(err / k_functional(f, 1.5, LINE, j, 2))
    spread = max(ratios) / min(ratios)
    ok = all(math.isfinite(r) for r in ratios) and spread <= 6.0
    _verdict(
        6, "error ~ fractional K-functional",
        ok, f"ratio bracket max/min {spread:.4f} <= 6 over j=3..8",
    )


def test_acceptance_07_order_diagnostics():
    # m = 3 keeps D(delta M^j) nonempty from j = 2 on (m = 2 starts at j = 5)
    details = []
    ok = True
    for sigma in (0.25, 0.5, 1.0):
        s2 = [compat_order(dirichlet(), average(sigma), LINE3, [j], 0.375, 2.0)
              for j in range(2, 9)]
        s3 = [compat_order(dirichlet(), average(sigma), LINE3, [j], 0.375, 3.0)
              for j in range(2, 9)]
        spread = max(s2) / min(s2)
        growth = s3[-1] / s3[0]
        ok = ok and spread <= 2.0 and growth >= 4.0
        details.append(f"sigma={sigma:g}: s2 spread {spread:.4f}, s3 growth {growth:.0f}")
    _verdict(7, "compatibility order flatness", ok, "; ".join(details))


def test_acceptance_08_nsr_saturation():
    eq_worst = 0.0
    for n in range(1, 9):
        T = spectral_function(1, {(n,): 1.0})
        for s in (1, 2):
            lhs, rhs = nsr_check(T, s, 1.0 / (2 * n))
            eq_worst = max(eq_worst, abs(lhs - rhs) / rhs)
    rng = np.random.default_rng(808)
    violations = 0
    checked = 0
    while checked < 200:
        T = random_poly(LINE, int(rng.integers(1, 5)), rng)
        n = max(abs(k[0]) for k in T.coeffs)
        if n == 0:
            continue
        delta_step = float(rng.uniform(0.05, 1.0)) / (2 * n)
        for s in (1, 2):
            lhs, rhs = nsr_check(T, s, delta_step)
            if lhs > rhs * (1 + 1e-9):
                violations += 1
        checked += 1
    ok = eq_worst <= 1e-9 and violations == 0
    _verdict(
        8, "sharp derivative-difference comparison",
        ok, f"equality defect {eq_worst:.2e} <= 1e-9, {violations}/200 inequality violations",
    )


def test_acceptance_09_fractional_machinery():
    f = spectral_function(1, {(1,): 1.0})
    spectral = fractional_difference(f, (0.125,), 1.5)
    series = fractional_difference_series(f, (0.125,), 1.5, 200)
    series_gap = _coeff_gap(spectral, series)

    g = build_test_function({"kind": "power", "alpha": 1.8, "cutoff": 512}, 1)
    ratios = []
    for j in range(3, 9):
        kf = k_functional(g, 1.5, LINE, j, 2)
        om = modulus(g, fractional(1.5), LINE, j, 2)
        ratios.append(kf / om)
    spread = max(ratios) / min(ratios)
    ok = series_gap <= 1e-6 and spread <= 6.0
    _verdict(
        9, "fractional difference / K ~ omega",
        ok, f"series gap {series_gap:.3e} <= 1e-6, K/omega bracket {spread:.4f} <= 6",
    )


def test_acceptance_10_moduli_identities():
    rng = np.random.default_rng(1010)
    deltas = total_sample_deltas(LINE, 3, direction_samples=4, step_samples=12)
    s, p = 2, 2.0
    prop_violations = 0
    for _ in range(50):
        f = random_poly(LINE, 4, rng)
        g = random_poly(LINE, 4, rng)
        of = difference_sup(f, deltas, s, p)
        og = difference_sup(g, deltas, s, p)
        if difference_sup(f + g, deltas, s, p) > of + og + 1e-9:
            prop_violations += 1
        if of > 2**s * l2_norm(f) + 1e-9:
            prop_violations += 1
        if difference_sup(f, [2 * d for d in deltas], s, p) > 3**s * of + 1e-9:
            prop_violations += 1

    mixed_worst = 0.0
    for j in (1, 2, 3):
        f = random_poly(PLANE, 3, rng)
        om = modulus(f, total(2), PLANE, j, 2, direction_samples=8, step_samples=16)
        msum = sum(
            modulus(f, mixed(tuple(2 if i == a else 0 for i in range(2))), PLANE, j, 2,
                    step_samples=16)
            for a in range(2)
        )
        r = om / msum
        mixed_worst = max(mixed_worst, r, 1.0 / r)
    ok = prop_violations == 0 and mixed_worst <= 8.0
    _verdict(
        10, "moduli identities",
        ok, f"{prop_violations}/150 property violations, total-vs-mixed factor {mixed_worst:.3f} <= 8",
    )


def test_acceptance_11_lqj_closed_form():
    worst = 0.0
    for lat, j in ((LINE, 3), (PLANE, 2)):
        for sigma in (0.25, 0.5, 1.0):
            for q in (2.0, math.inf):
                conj = 1.0 if q == math.inf else q / (q - 1.0)
                expected = sigma ** (-lat.d / conj)
                got = functional_lqj_norm(average(sigma), q, lat, j)
                worst = max(worst, abs(got - expected))
    ok = worst <= 1e-3
    _verdict(
        11, "averaging-functional norm closed form",
        ok, f"max abs deviation {worst:.2e} <= 1e-3 over 12 cases",
    )


def test_acceptance_12_besov_route():
    delta_ratio = class_Dnjp_ratio(delta(), 0, 2, LINE, 2, range(2, 5), trials=5)
    deriv_ratio = class_Dnjp_ratio(first_derivative(), 1, 2, LINE, 2, range(2, 6), trials=10)

    f = build_test_function({"kind": "power", "alpha": 2.0, "cutoff": 512}, 1)
    ratios = []
    for j in range(3, 9):
        op = quasi_interpolant(dirichlet(), delta(), LINE, j)
        err = approximation_error(op, f, 2, 16)
        tail = besov_tail_sum(f, LINE, j, 0, 2, nu_max=11)
        ratios.append(err / tail)
    spread = max(ratios) / min(ratios)
    ok = (
        abs(delta_ratio - 1.0) <= 1e-12
        and deriv_ratio <= 2 * math.pi * (1 + 1e-9)
        and all(math.isfinite(r) and r > 0 for r in ratios)
        and spread <= 2.0
    )
    _verdict(
        12, "functional classes and Besov tail",
        ok,
        f"delta ratio {delta_ratio:.12f} = 1, derivative ratio {deriv_ratio:.4f} <= 2pi, "
        f"error/tail bracket {spread:.4f} <= 2",
    )


def test_acceptance_13_analytic_rate():
    cfg = ExperimentConfig(
        label="acc13",
        kernel=dirichlet(),
        functional=delta(),
        lattice=LINE,
        j_range=(3, 7),
        p_values=(2.0,),
        test_function={"kind": "analytic", "cutoff": 64},
    )
    report = run_rate_study(cfg)
    row = [r for r in report.rows if r["kind"] == "slope"][0]
    ok = row["slope"] >= 4.0 and row["residual"] <= 0.2
    _verdict(
        13, "analytic-spectrum decay rate",
        ok, f"fitted slope {row['slope']:.2f} >= 4, residual {row['residual']:.4f} <= 0.2",
    )
