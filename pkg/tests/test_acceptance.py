"""Acceptance gate: ten end-to-end checks with one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines as the
criteria execute; without ``-s`` they appear in pytest's captured output.
"""

import csv
import time
from fractions import Fraction
from itertools import combinations, permutations

import numpy as np
import pytest

from ghzlbc import (
    ChannelSpec,
    GhzSpec,
    NoiseConfig,
    classify_conditions,
    death_probability,
    evolve,
    ghz_density,
    lbc_closed_form,
    lbc_spectral,
    predict_lbc,
    xstate_view,
)
from ghzlbc.cli import run_preset

from reference import exact_completeness_defect

ISQ2 = 1.0 / np.sqrt(2.0)
GRID_101 = [i / 100.0 for i in range(101)]


def _finish(number, ok, detail):
    status = "PASS" if ok else "FAIL"
    print(f"criterion {number}: {status} — {detail}")
    assert ok, f"criterion {number}: {detail}"


def balanced(n):
    return GhzSpec(n, ISQ2, ISQ2, "0" * n)


def direct_total(spec, config, probs):
    rho = evolve(ghz_density(spec), config, probs)
    return lbc_closed_form(xstate_view(rho, spec)).total


def read_csv(path):
    with open(path, newline="", encoding="utf-8") as f:
        rows = list(csv.reader(f))
    return rows[0], rows[1:]


def test_criterion_01_damping_family_matches_power_law(tmp_path):
    start = time.perf_counter()
    paths = run_preset("fig1", 101, tmp_path)
    worst_law = 0.0
    for m in range(1, 6):
        header, rows = read_csv(tmp_path / f"fig1_M{m}.csv")
        assert len(rows) == 101
        for row in rows:
            p = float(row[0])
            worst_law = max(worst_law, abs(float(row[1]) - (1.0 - p) ** (m / 2.0)))
    worst_oracle = 0.0
    for m in (1, 2, 3):  # N = M+1 <= 4
        n = m + 1
        spec = balanced(n)
        cfg = NoiseConfig.uniform(n, "AD", qubits=tuple(range(1, m + 1)))
        for p in GRID_101:
            rho = evolve(ghz_density(spec), cfg, (p,) * m)
            diff = abs(lbc_spectral(rho).total - (1.0 - p) ** (m / 2.0))
            worst_oracle = max(worst_oracle, diff)
    elapsed = time.perf_counter() - start
    ok = worst_law <= 1e-12 and worst_oracle <= 1e-8 and elapsed < 10.0
    _finish(1, ok,
            f"closed-form vs (1-p)^(M/2) max {worst_law:.2e} (tol 1e-12), "
            f"spectral max {worst_oracle:.2e} (tol 1e-8), {elapsed:.1f}s of 10s, "
            f"{len(paths)} preset files")


def test_criterion_02_depolarizing_family_prediction_and_ordering(tmp_path):
    start = time.perf_counter()
    run_preset("fig2a", 101, tmp_path)
    curves = {}
    worst_pred = 0.0
    for m in (1, 2, 3):
        header, rows = read_csv(tmp_path / f"fig2a_M{m}.csv")
        assert header[:3] == ["p", "lbc_direct", "lbc_factorized"]
        curves[m] = [float(r[1]) for r in rows]
        for row in rows:
            worst_pred = max(worst_pred, abs(float(row[1]) - float(row[2])))
    monotone = all(
        curves[1][i] >= curves[2][i] - 1e-12 and curves[2][i] >= curves[3][i] - 1e-12
        for i in range(101)
    )
    worst_oracle = 0.0
    for m in (1, 2, 3):
        spec = balanced(4)
        cfg = NoiseConfig.uniform(4, "D", qubits=tuple(range(1, m + 1)))
        for p in np.linspace(0.0, 1.0, 11):
            rho = evolve(ghz_density(spec), cfg, (float(p),) * m)
            diff = abs(lbc_spectral(rho).total - lbc_closed_form(xstate_view(rho, spec)).total)
            worst_oracle = max(worst_oracle, diff)
    elapsed = time.perf_counter() - start
    ok = (worst_pred <= 1e-10 and monotone and worst_oracle <= 1e-8
          and elapsed < 60.0)
    _finish(2, ok,
            f"direct vs prediction max {worst_pred:.2e} (tol 1e-10), "
            f"nonincreasing in M: {monotone}, spectral max {worst_oracle:.2e} "
            f"(tol 1e-8), {elapsed:.1f}s of 60s")


def test_criterion_03_depolarizing_qubit_count_ordering(tmp_path):
    run_preset("fig2b", 101, tmp_path)
    run_preset("fig2c", 101, tmp_path)
    b_curves = {}
    for n in (2, 3, 4):
        _, rows = read_csv(tmp_path / f"fig2b_N{n}.csv")
        b_curves[n] = [float(r[1]) for r in rows]
    b_ordered = all(
        b_curves[2][i] <= b_curves[3][i] + 1e-12
        and b_curves[3][i] <= b_curves[4][i] + 1e-12
        for i in range(101)
    )
    c_curves = {}
    for n in (3, 4):
        _, rows = read_csv(tmp_path / f"fig2c_N{n}.csv")
        c_curves[n] = [float(r[1]) for r in rows]
    c_ordered = all(
        c_curves[3][i] <= c_curves[4][i] + 1e-12 for i in range(101)
    )
    ok = b_ordered and c_ordered
    _finish(3, ok,
            f"one-channel curves nondecreasing in N: {b_ordered}, "
            f"two-channel N=4 >= N=3: {c_ordered} (101 points each)")


def test_criterion_04_one_sided_damping_size_independence():
    worst_pair = 0.0
    worst_law = 0.0
    for p in GRID_101:
        values = []
        for n in (2, 3, 4):
            cfg = NoiseConfig.uniform(n, "AD", qubits=(1,))
            values.append(direct_total(balanced(n), cfg, (p,)))
        worst_pair = max(worst_pair, max(values) - min(values))
        worst_law = max(worst_law, abs(values[0] - np.sqrt(1.0 - p)))
    ok = worst_pair <= 1e-10 and worst_law <= 1e-10
    _finish(4, ok,
            f"N=2/3/4 curve spread max {worst_pair:.2e} (tol 1e-10), "
            f"vs 2|ab|sqrt(1-p) max {worst_law:.2e}")


def test_criterion_05_asymmetric_pattern_full_damping():
    alpha = np.sqrt(0.3) * np.exp(1j * np.pi / 3.0)
    beta = np.sqrt(0.7)
    worst = 0.0
    for n, pattern in ((3, "001"), (4, "0011")):
        spec = GhzSpec(n, alpha, beta, pattern)
        cfg = NoiseConfig.uniform(n, "AD")
        for p in GRID_101:
            got = direct_total(spec, cfg, (p,) * n)
            want = 2.0 * abs(alpha * beta) * (1.0 - p) ** (n / 2.0)
            worst = max(worst, abs(got - want))
    ok = worst <= 1e-10
    _finish(5, ok,
            f"asymmetric-pattern damping vs 2|ab|(1-p)^(N/2) max {worst:.2e} "
            f"(tol 1e-10, alpha phase pi/3, N in {{3,4}})")


def test_criterion_06_phase_damping_exact_factorization():
    rng = np.random.default_rng(606)
    alpha = np.sqrt(0.4) * np.exp(0.9j)
    beta = np.sqrt(0.6)
    worst = 0.0
    conditions = set()
    checked = 0
    for n in (2, 3, 4):
        spec = GhzSpec(n, alpha, beta, "0" * n)
        for m in range(1, n + 1):
            for qubits in combinations(range(1, n + 1), m):
                cfg = NoiseConfig.uniform(n, "PD", qubits=qubits)
                for _ in range(3):
                    probs = tuple(rng.uniform(0.0, 1.0, size=m))
                    got = direct_total(spec, cfg, probs)
                    want = 2.0 * abs(alpha * beta) * np.prod(
                        [1.0 - p for p in probs]
                    )
                    worst = max(worst, abs(got - want))
                    rho = evolve(ghz_density(spec), cfg, probs)
                    conditions.add(classify_conditions(rho, spec, cfg, probs).kind)
                    checked += 1
    ok = worst <= 1e-12 and conditions == {"first"}
    _finish(6, ok,
            f"dephasing vs 2|ab|prod(1-p_j) max {worst:.2e} (tol 1e-12) over "
            f"{checked} configs, conditions seen: {sorted(conditions)}")


def test_criterion_07_sudden_death_threshold(tmp_path):
    run_preset("esd", 101, tmp_path)
    _, rows = read_csv(tmp_path / "esd_b080.csv")
    heavy = {float(r[0]): float(r[1]) for r in rows}
    _, rows = read_csv(tmp_path / "esd_b050.csv")
    balanced_curve = {float(r[0]): float(r[1]) for r in rows}
    _, rows = read_csv(tmp_path / "esd_thresholds.csv")
    p_star = {float(b): float(p) for b, p in rows}[0.8]

    analytic = 0.5 ** (2.0 / 3.0)
    bisection_ok = abs(p_star - analytic) <= 1e-6
    dead_beyond = all(v == 0.0 for p, v in heavy.items() if p >= p_star)
    alive_before = all(v > 0.0 for p, v in heavy.items() if p < p_star)
    balanced_alive = all(v > 0.0 for p, v in balanced_curve.items() if p < 1.0)

    # independent confirmation of the threshold with the spectral route
    spec = GhzSpec(3, np.sqrt(0.2), np.sqrt(0.8), "000")
    cfg = NoiseConfig.uniform(3, "AD")
    step = 1e-4
    grid = np.arange(analytic - 20 * step, analytic + 20 * step, step)
    alive = []
    for p in grid:
        rho = evolve(ghz_density(spec), cfg, (float(p),) * 3)
        alive.append(lbc_spectral(rho).total > 1e-10)
    flips = [i for i in range(1, len(alive)) if alive[i - 1] and not alive[i]]
    oracle_ok = (
        len(flips) == 1
        and abs(float(grid[flips[0]]) - p_star) <= 2.0 * step
        and not any(alive[flips[0]:])
    )
    ok = (bisection_ok and dead_beyond and alive_before and balanced_alive
          and oracle_ok)
    _finish(7, ok,
            f"p* = {p_star:.9f} vs analytic {analytic:.9f} "
            f"(diff {abs(p_star - analytic):.2e}, tol 1e-6), dead for p >= p*: "
            f"{dead_beyond}, alive before: {alive_before}, balanced survives: "
            f"{balanced_alive}, spectral threshold within 2e-4: {oracle_ok}")


def test_criterion_08_randomized_route_equivalence():
    rng = np.random.default_rng(20240814)
    cases = 60
    worst = 0.0
    failures = []
    for case in range(cases):
        n = int(rng.integers(2, 5))
        m = int(rng.integers(1, n + 1))
        qubits = tuple(sorted(rng.choice(range(1, n + 1), size=m, replace=False)))
        kinds = [str(k) for k in rng.choice(["AD", "D", "PD"], size=m)]
        probs = tuple(float(p) for p in rng.uniform(0.0, 1.0, size=m))
        asq = float(rng.uniform(0.05, 0.95))
        alpha = np.sqrt(asq) * np.exp(1j * rng.uniform(0.0, 2.0 * np.pi))
        beta = np.sqrt(1.0 - asq) * np.exp(1j * rng.uniform(0.0, 2.0 * np.pi))
        pattern = "".join(str(b) for b in rng.integers(0, 2, size=n))
        spec = GhzSpec(n, alpha, beta, pattern)
        cfg = NoiseConfig(n, tuple(
            (q, ChannelSpec(k)) for q, k in zip(qubits, kinds)
        ))
        rho = evolve(ghz_density(spec), cfg, probs)
        closed = lbc_closed_form(xstate_view(rho, spec)).total
        spectral_report = lbc_spectral(rho, keep_generator_terms=True)
        diff = abs(spectral_report.total - closed)
        worst = max(worst, diff)
        if diff >= 1e-8:
            dump = {
                part.label: terms
                for part, terms in spectral_report.per_generator_terms.items()
            }
            failures.append(
                f"case {case}: N={n} qubits={qubits} kinds={kinds} "
                f"probs={probs} pattern={pattern} diff={diff:.3e} terms={dump}"
            )
    ok = not failures
    detail = (f"{cases} randomized cases, max |spectral - closed| = "
              f"{worst:.2e} (tol 1e-8)")
    if failures:
        detail += "; " + " | ".join(failures)
    _finish(8, ok, detail)


def test_criterion_09_channel_property_suite():
    rng = np.random.default_rng(909)
    worst_trace = 0.0
    worst_eig = 0.0
    worst_order = 0.0
    for kind in ("AD", "D", "PD"):
        for _ in range(6):
            n = int(rng.integers(2, 5))
            asq = float(rng.uniform(0.1, 0.9))
            spec = GhzSpec(
                n, np.sqrt(asq), np.sqrt(1.0 - asq),
                "".join(str(b) for b in rng.integers(0, 2, size=n)),
            )
            cfg = NoiseConfig.uniform(n, kind)
            probs = tuple(float(p) for p in rng.uniform(0.0, 1.0, size=n))
            out = evolve(ghz_density(spec), cfg, probs)
            worst_trace = max(worst_trace, abs(np.trace(out.data).real - 1.0))
            worst_eig = max(worst_eig, -float(np.linalg.eigvalsh(out.data)[0]))

    exact_ok = all(
        exact_completeness_defect(kind, p) == [0, 0]
        for kind in ("AD", "D", "PD")
        for p in (Fraction(0), Fraction(1, 4), Fraction(1, 2),
                  Fraction(3, 4), Fraction(1))
    )

    spec = GhzSpec(3, np.sqrt(0.35), np.sqrt(0.65), "010")
    rho0 = ghz_density(spec)
    assignments = (
        (1, ChannelSpec("AD")), (2, ChannelSpec("D")), (3, ChannelSpec("PD")),
    )
    probs = (0.33, 0.61, 0.84)
    reference_order = evolve(rho0, NoiseConfig(3, assignments), probs).data
    for perm in permutations(range(3)):
        cfg = NoiseConfig(3, tuple(assignments[i] for i in perm))
        out = evolve(rho0, cfg, tuple(probs[i] for i in perm)).data
        worst_order = max(worst_order, float(np.max(np.abs(out - reference_order))))

    ok = (worst_trace <= 1e-13 and worst_eig <= 1e-10 and exact_ok
          and worst_order <= 1e-13)
    _finish(9, ok,
            f"trace defect max {worst_trace:.2e} (tol 1e-13), negativity max "
            f"{worst_eig:.2e} (tol 1e-10), exact completeness at 5 rational "
            f"p values x 3 kinds: {exact_ok}, order spread max "
            f"{worst_order:.2e} (tol 1e-13)")


def test_criterion_10_preset_determinism(tmp_path):
    identical = True
    compared = 0
    for name, grid in (("esd", 41), ("fig1", 31)):
        dir1 = tmp_path / f"{name}_run1"
        dir2 = tmp_path / f"{name}_run2"
        paths1 = run_preset(name, grid, dir1)
        paths2 = run_preset(name, grid, dir2)
        for p1, p2 in zip(paths1, paths2):
            compared += 1
            if p1.read_bytes() != p2.read_bytes():
                identical = False
    ok = identical and compared >= 8
    _finish(10, ok, f"{compared} preset files byte-identical on repeat: {identical}")
