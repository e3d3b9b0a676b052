import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from antinorm.errors import DomainError, ParameterError
from antinorm.functions import compose, parse_fn
from antinorm.norms import Schatten, eval_norm
from antinorm.randmat import random_psd, random_unitary, trial_rng
from antinorm.tracefunc import (CONCAVE, CONVEX, TraceFunctional, criterion, eq51_check, eq51_sides,
                                eval_functional, midpoint_convexity_check, prop56_check, reflect,
                                sample_eq51, search_eq51_violation, search_midpoint_violation, tau)

# the ratio phi'/phi'' of neg_exp_mix is concave left of log 4
NEG_CONTROL_REGION = (-3.0, math.log(4.0))


def test_tau_examples():
    assert tau(np.eye(5)) == 1
    assert tau(np.diag([2.0, 4.0])) == 3


def test_exp_log_is_geometric_mean(rng):
    F = TraceFunctional(parse_fn("exp"), parse_fn("log"), CONCAVE)
    for n in (1, 3, 6):
        a = random_psd(n, "uniform01", rng) + 0.05 * np.eye(n)
        assert eval_functional(F, a) == pytest.approx(np.linalg.det(a).real ** (1 / n), rel=1e-10)


def test_log_exp_at_zero():
    F = TraceFunctional(parse_fn("log"), parse_fn("exp"), CONVEX)
    assert F(np.zeros((2, 2))) == 0


@pytest.mark.parametrize("r", [0.25, 0.5, 2.0, 3.0])
def test_power_functional_is_normalized_schatten(rng, r):
    n = 4
    a = random_psd(n, "exp", rng)
    F = TraceFunctional(parse_fn(f"pow({r})"), parse_fn(f"pow({1 / r})"), CONVEX)
    # F(A) = tau(A^(1/r))^r = n^(-r) (sum mu^(1/r))^r; for r <= 1 that is n^(-r) |A|_(1/r)
    mu = np.linalg.eigvalsh(a)
    assert F(a) == pytest.approx((np.mean(mu ** (1 / r))) ** r, rel=1e-10)
    if r <= 1:
        assert F(a) == pytest.approx(n ** (-r) * eval_norm(Schatten(1 / r), a), rel=1e-10)


def test_criterion_classification():
    assert criterion("log")[0] == CONVEX
    assert criterion("exp")[0] == CONCAVE
    assert criterion("pow(0.5)")[0] == CONVEX
    assert criterion("pow(2)")[0] == CONCAVE
    mode, rep = criterion("neg_exp_mix")
    assert mode is None and not rep.passed
    with pytest.raises(DomainError):
        TraceFunctional.inverse_pair("neg_exp_mix")


def test_reflect():
    r = reflect(parse_fn("exp"))
    assert r(1.0) == pytest.approx(math.exp(-1))
    assert r.domain.lo == -math.inf


@pytest.mark.parametrize("phi", ["log", "exp", "pow(0.5)", "pow(2)"])
@pytest.mark.parametrize("source", ["hermitian", "diagonal"])
def test_midpoint_inverse_pairs(phi, source):
    F = TraceFunctional.inverse_pair(phi)
    rep = midpoint_convexity_check(F, source, trials=300, seed=1, n=3)
    assert rep.passed, rep.summary_line()


def test_example_functionals():
    pressure = TraceFunctional(parse_fn("log"), parse_fn("exp"), CONVEX)
    det_root = TraceFunctional(parse_fn("exp"), compose(parse_fn("log"), parse_fn("sqrt")), CONCAVE)
    schatten_convex = TraceFunctional(parse_fn("pow(0.5)"), parse_fn("pow(4)"), CONVEX)
    schatten_concave = TraceFunctional(parse_fn("pow(2)"), parse_fn("sqrt"), CONCAVE)
    for F in (pressure, det_root, schatten_convex, schatten_concave):
        assert midpoint_convexity_check(F, trials=300, seed=2, n=4).passed, str(F)


def test_geometric_mean_is_not_convex_on_diagonals():
    # the criterion only allows the concave reading for phi = exp; declaring the
    # convex one must be refuted already by diagonal pairs
    F = TraceFunctional(parse_fn("exp"), parse_fn("log"), CONVEX)
    rep = midpoint_convexity_check(F, "diagonal", trials=200, seed=3, n=3)
    assert not rep.passed and rep.violations > 0


def test_eq51_is_equality_for_one_point():
    for phi in ("log", "exp", "pow(0.5)", "pow(2)", "neg_exp_mix"):
        lhs, rhs = eq51_sides(phi, [0.7], [1.3])
        assert lhs == pytest.approx(rhs, rel=1e-12)


@pytest.mark.parametrize("phi", ["log", "exp", "pow(0.5)", "pow(2)"])
def test_eq51_holds_for_criterion_functions(phi):
    f = parse_fn(phi)
    rng = np.random.default_rng(4)
    for _ in range(300):
        n = int(rng.integers(1, 7))
        t, x = sample_eq51(f, n, rng)
        assert eq51_check(f, t, x).passed


def test_eq51_input_validation():
    with pytest.raises(ParameterError):
        eq51_sides("log", [1.0, 2.0], [1.0])


def test_negative_control_is_detected():
    t, x, term = search_eq51_violation("neg_exp_mix", NEG_CONTROL_REGION, budget=500)
    assert term.violated(1e-9) and term.rel_margin < -1e-3
    a, b, term = search_midpoint_violation("neg_exp_mix", NEG_CONTROL_REGION, budget=300)
    assert term.violated(1e-9)
    # outside the concave stretch the same search finds nothing
    _, _, ok = search_eq51_violation("neg_exp_mix", (math.log(4.0) + 0.5, 4.0), budget=300)
    assert not ok.violated(1e-9)


def test_prop56_defaults():
    assert prop56_check("pow(1/3)", "kyfan(k=2)", "poly(0, 1, 0, 1)", trials=200).passed
    assert prop56_check("pow(2)", "trace", "sqrt", trials=200).passed
    rep = prop56_check("pow(2)", "kyfan(k=2)", "sqrt", trials=10)
    assert rep.status == "hypotheses-not-met"


@given(st.integers(1, 6), st.integers(0, 10**6))
def test_functional_unitarily_invariant(n, seed):
    r = trial_rng(seed, "F")
    a = random_psd(n, "exp", r) + 0.01 * np.eye(n)
    u = random_unitary(n, r)
    F = TraceFunctional.inverse_pair("log")
    assert F(u @ a @ u.conj().T) == pytest.approx(F(a), rel=1e-10, abs=1e-12)
