"""One test per acceptance criterion, each at its stated tolerance."""
import dataclasses
import math
import time

import numpy as np

from antinorm.blockdecomp import decompose_block
from antinorm.checks import DEFAULT_DIMS, CheckConfig, run_check, run_suite, superweak_pair
from antinorm.matfile import load
from antinorm.norms import antinorm_catalog
from antinorm.randmat import random_psd, random_unitary, trial_rng
from antinorm.report import le, to_csv
from antinorm.search import save_result, search_counterexample, verify_instance
from antinorm.spectral import eigvalsh, frob, singular_values
from antinorm.tracefunc import criterion as phi_criterion
from antinorm.tracefunc import search_eq51_violation

SLACK = 1e-9
TRIALS = 1000


def _bad(lhs, rhs, tol=SLACK):
    """Violations of lhs <= rhs beyond tol * (|lhs| + |rhs| + 1), elementwise."""
    lhs, rhs = np.asarray(lhs), np.asarray(rhs)
    return int(np.sum(lhs - rhs > tol * (np.abs(lhs) + np.abs(rhs) + 1)))


def test_01_catalog_soundness(criterion):
    start = time.perf_counter()
    failures, checked = [], 0
    for n in (2, 4, 8):
        cat = antinorm_catalog(n)
        mu_a, mu_b, mu_s, mu_u, scales = [], [], [], [], []
        for t in range(TRIALS):
            r = trial_rng(1, "catalog", n, t)
            a, b = random_psd(n, "uniform01", r), random_psd(n, "exp", r)
            u = random_unitary(n, r)
            mu_a.append(singular_values(a))
            mu_b.append(singular_values(b))
            mu_s.append(singular_values(a + b))
            mu_u.append(singular_values(u @ a @ u.conj().T))
            scales.append(r.uniform(0, 10))
        mu_a, mu_b, mu_s, mu_u, c = map(np.array, (mu_a, mu_b, mu_s, mu_u, scales))
        for spec in cat:
            va, vb, vs, vu = (spec.gauge(m) for m in (mu_a, mu_b, mu_s, mu_u))
            vc = spec.gauge(c[:, None] * mu_a)
            bad = (_bad(va + vb, vs)                        # superadditivity
                   + _bad(np.abs(vc - c * va), 0.0)         # homogeneity
                   + _bad(np.abs(vu - va), 0.0))            # unitary invariance
            checked += 1
            if bad:
                failures.append(f"{spec} n={n}: {bad}")
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed <= 300
    criterion(1, "anti-norm catalog: homogeneity, unitary invariance, superadditivity", ok,
              f"{checked} (spec, n) sweeps x {TRIALS} pairs, {elapsed:.1f}s" + (f"; {failures[:3]}" if failures else ""))


def _sweep(check_id, cases, trials=TRIALS, dims=DEFAULT_DIMS):
    reports = [run_check(check_id, CheckConfig(dims=dims, trials=trials, bindings=b)) for b in cases]
    bad = [(r.bindings, r.status, r.violations) for r in reports if not r.passed]
    worst = min(r.worst_rel_margin for r in reports)
    return reports, bad, worst


def test_02_power_norm_inequality(criterion):
    cases = [{"g": "poly(0, 1, 0, 1)", "q": "1/3"}, {"g": "ramp_plus", "q": "1/2"},
             {"g": "poly(0, 1, 0, 2)", "q": "1/3"}]
    reports, bad, worst = _sweep("thm41_norm", cases)
    criterion(2, "|g(A+B)|^q <= |g(A)|^q + |g(B)|^q, Ky Fan and Schatten norms", not bad,
              f"3 functions x dims {list(DEFAULT_DIMS)} x {TRIALS} pairs, worst rel margin {worst:.3g}" + (f"; {bad}" if bad else ""))


def test_03_power_antinorm_inequality(criterion):
    cases = [{"f": "roots(1, 1)", "p": "2"}, {"f": "ramp_minus_half", "p": "2"}]
    reports, bad, worst = _sweep("thm41_antinorm", cases)
    criterion(3, "|f(A+B)|_!^p >= |f(A)|_!^p + |f(B)|_!^p, catalog anti-norms", not bad,
              f"2 functions x dims {list(DEFAULT_DIMS)} x {TRIALS} pairs, worst rel margin {worst:.3g}" + (f"; {bad}" if bad else ""))


def test_04_majorization_witness(criterion):
    from antinorm.majorization import lemma42_witness
    worst_res = worst_sum = 0.0
    too_many = 0
    for t in range(TRIALS):
        n = 1 + t % 8
        a, b = superweak_pair(n, trial_rng(4, "witness", t), "uniform01")
        w = lemma42_witness(a, b)
        worst_res = max(worst_res, frob(w.reconstruct() - a) / (1 + frob(a)))
        worst_sum = max(worst_sum, abs(w.alphas.sum() - 1))
        too_many += len(w.combo) > n
    ok = worst_res <= 1e-8 and worst_sum <= 1e-12 and too_many == 0
    criterion(4, "super-weak majorization witness reconstructs A", ok,
              f"{TRIALS} pairs n<=8, max residual/(1+|A|) {worst_res:.2e}, max |sum alpha - 1| {worst_sum:.1e}")


def test_05_block_decomposition(criterion):
    worst_res = worst_unit = 0.0
    for n in (1, 2, 3, 4):
        for t in range(TRIALS):
            r = trial_rng(5, "block", n, t)
            law = "rank_deficient(1)" if t % 4 == 0 else "uniform01"
            m = random_psd(2 * n, law, r)
            dec = decompose_block(m, n)
            worst_res = max(worst_res, dec.residual(m) / (1 + frob(m)))
            worst_unit = max(worst_unit, dec.unitarity())
    ok = worst_res <= 1e-8 and worst_unit <= 1e-10
    criterion(5, "block matrix = U(A+0)U* + V(0+B)V*", ok,
              f"{4 * TRIALS} matrices n=m in 1..4, max residual {worst_res:.2e}, max unitarity {worst_unit:.2e}")


def test_06_minkowski_family(criterion):
    worst_eq = 0.0
    from antinorm.norms import Minkowski
    mk = Minkowski()
    for n in range(1, 9):
        for c in (0.1, 1.0, 3.7):
            a = c * np.eye(n)
            lhs = mk.evaluate(a + a)
            rhs = mk.evaluate(a) + mk.evaluate(a)
            worst_eq = max(worst_eq, abs(le("eq", rhs, lhs).margin))
    _, bad, worst = _sweep("minkowski", [{}])
    _, bad2, worst2 = _sweep("minkowski_convex", [{"g": "pow(2)"}])
    _, bad3, worst3 = _sweep("jensen_det", [{"f": "sqrt"}])
    ok = worst_eq <= 1e-12 and not (bad or bad2 or bad3)
    criterion(6, "Minkowski determinant inequality and its g, f forms", ok,
              f"equality |margin| {worst_eq:.1e}; worst rel margins {worst:.2g}, {worst2:.2g}, {worst3:.2g}")


def test_07_diagonal_trace_bounds(criterion):
    worst = math.inf
    for t in range(10 * TRIALS):
        r = trial_rng(7, "sqrt-trace", t)
        n = 1 + t % 8
        a = random_psd(n, "uniform01" if t % 2 else "exp", r)
        gap = np.sqrt(np.clip(eigvalsh(a), 0, None)).sum() - math.sqrt(np.trace(a).real)
        worst = min(worst, gap)
    rep410 = run_check("cor410", CheckConfig(dims=(2, 3, 4, 6, 8), trials=2 * TRIALS))
    rep45 = run_check("cor45", CheckConfig(trials=TRIALS, bindings={"g": "pow(2)", "q": "1/2"}))
    ok = worst >= -1e-9 and rep410.passed and rep45.passed
    criterion(7, "Tr sqrt(A) >= (Tr A)^(1/2) and Tr A^2 <= (Tr A)^2", ok,
              f"10^4 direct samples, min gap {worst:.3g}; cor410 {rep410.trials} trials {rep410.status}, "
              f"cor45 {rep45.trials} trials {rep45.status}")


def test_08_counterexamples(criterion, tmp_path):
    notes, ok = [], True
    for target, budget in (("cex_nonconvex_g", 10_000), ("cex_expansive_antinorm", 100_000)):
        res = search_counterexample(target, budget)
        path = save_result(tmp_path / f"{target}.json", res)
        again, *_ = verify_instance(path)
        reloaded = load(path)
        good = (res.found and res.violation > 1e-6 and res.evaluations <= budget
                and again == res.violation and reloaded["instance"] is not None)
        if target == "cex_expansive_antinorm":
            z = reloaded["instance"]["Z"]
            good &= bool(np.all(singular_values(z) >= 1)) and "kyfan_anti" in res.label
        ok &= good
        notes.append(f"{target}: violation {res.violation:.3g} after {res.evaluations} evaluations")
    criterion(8, "counterexamples found, saved, reloaded and re-verified", ok, "; ".join(notes))


def test_09_trace_functionals(criterion):
    reps = [run_check(c, CheckConfig(trials=TRIALS)) for c in ("ex53_pressure", "ex54_det", "ex55_schatten")]
    eq51 = run_check("eq51", CheckConfig(dims=(1, 2, 3, 4, 6), trials=TRIALS))
    mode, _ = phi_criterion("neg_exp_mix")
    _, _, term = search_eq51_violation("neg_exp_mix", (-3.0, math.log(4.0)), budget=2000)
    detected = mode is None and term.violated(SLACK)
    ok = all(r.passed for r in reps) and eq51.passed and detected
    criterion(9, "trace functionals midpoint checks, vector inequality, negative control", ok,
              ", ".join(f"{r.check_id} {r.status}" for r in reps + [eq51])
              + f"; negative control rel margin {term.rel_margin:.3g}")


def _strip_seconds(csv_text):
    return [",".join(line.split(",")[:-1]) for line in csv_text.splitlines()]


def test_10_determinism(criterion):
    t0 = time.perf_counter()
    first = to_csv(run_suite())
    t1 = time.perf_counter()
    second = to_csv(run_suite())
    t2 = time.perf_counter()
    same = _strip_seconds(first) == _strip_seconds(second)
    all_pass = all(",pass," in line for line in first.splitlines()[1:])
    ok = same and max(t1 - t0, t2 - t1) <= 900
    criterion(10, "default suite twice: identical CSV apart from timing", ok,
              f"{len(first.splitlines()) - 1} checks, runs {t1 - t0:.0f}s and {t2 - t1:.0f}s, all pass: {all_pass}")
