"""Functionals A -> phi(tau(f(A))) built on the normalized trace.

Convexity or concavity of such a functional on Hermitian matrices with
spectrum in an interval is tested by midpoints; the scalar criterion behind
it (convexity of phi'/phi'') is tested directly and through the equivalent
vector inequality

    (mean x_i / phi'(t_i))^2 <= [phi'/phi''](mean t_i) * mean(phi''(t_i) x_i^2 / phi'(t_i)^3),

which must hold for every t in the domain and real x.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, ParameterError
from .functions import Interval, ScalarFn, as_fn, compose, phi_ratio, phi_ratio_convexity
from .norms import as_antinorm, as_norm
from .randmat import random_diagonal_in, random_hermitian_in, trial_rng
from .report import CheckReport, Tally, Term, ge, le
from .spectral import eigvalsh

CONVEX, CONCAVE = "convex", "concave"
DEFAULT_WINDOW = (-3.0, 3.0)


def tau(a) -> float:
    """Normalized trace Tr(A) / n (real part)."""
    a = np.asarray(a)
    return float(np.real(np.trace(a))) / a.shape[0]


def reflect(phi: ScalarFn) -> ScalarFn:
    """t -> phi(-t) on the reflected domain, turning a decreasing phi increasing."""
    d = phi.domain
    dom = Interval(-d.hi, -d.lo, d.hi_closed, d.lo_closed)
    return ScalarFn(
        f"reflect({phi.name})", lambda t: phi(-t), dom,
        lambda t: -phi.derivative(-t, 1), lambda t: phi.derivative(-t, 2),
        inv=(lambda y: -phi.inv(y)) if phi.inv is not None else None,
    )


def increasing_form(phi: ScalarFn, grid=None) -> tuple[ScalarFn, bool]:
    """(phi, False) if phi' > 0 on the grid, (reflect(phi), True) if phi' < 0.

    With f -> -f the functional is unchanged, so the criterion for a
    decreasing phi is read off its reflection.
    """
    g = phi.default_grid() if grid is None else np.asarray(grid, dtype=float)
    d1 = phi.derivative(g, 1)
    if np.all(d1 > 0):
        return phi, False
    if np.all(d1 < 0):
        r = reflect(phi)
        return r, True
    raise DomainError(f"{phi.name} is not strictly monotone on the grid")


def criterion(phi, grid=None, tol: float = 1e-9):
    """Which midpoint property the scalar criterion predicts for phi.

    Returns ``(mode, report)``: mode is "convex" when phi'' < 0 and phi'/phi''
    is convex, "concave" when phi'' > 0 and phi'/phi'' is concave, None when
    the criterion fails.  The report is the underlying grid certificate.
    """
    phi = as_fn(phi)
    base, _ = increasing_form(phi, grid)
    g = base.default_grid() if grid is None else np.asarray(grid, dtype=float)
    sign = float(np.sign(np.median(base.derivative(g, 2))))
    want = CONVEX if sign < 0 else CONCAVE
    rep = phi_ratio_convexity(base, g, want=want, tol=tol)
    return (want if rep.passed else None), rep


@dataclass(frozen=True)
class TraceFunctional:
    """F(A) = phi(tau(f(A))) for Hermitian A with spectrum in the domain of f."""

    phi: ScalarFn
    f: ScalarFn
    mode: str = CONVEX

    def __post_init__(self):
        object.__setattr__(self, "phi", as_fn(self.phi))
        object.__setattr__(self, "f", as_fn(self.f))
        if self.mode not in (CONVEX, CONCAVE):
            raise ParameterError("mode must be 'convex' or 'concave'")

    @classmethod
    def inverse_pair(cls, phi, mode: str | None = None) -> "TraceFunctional":
        """phi o tau o phi^{-1}, the functional the criterion is about."""
        phi = as_fn(phi)
        if mode is None:
            mode, _ = criterion(phi)
            if mode is None:
                raise DomainError(f"{phi.name} satisfies neither form of the criterion")
        return cls(phi, phi.inverse(), mode)

    @property
    def omega(self) -> Interval:
        return self.f.domain

    def compact(self, window=DEFAULT_WINDOW, margin: float = 0.01) -> tuple[float, float]:
        """Compact sub-interval of the domain used for random instances."""
        return self.omega.compact(window, margin)

    def __call__(self, a) -> float:
        return self.of_spectrum(eigvalsh(a))

    def of_spectrum(self, w) -> float:
        w = self.f.validate(w)
        return float(self.phi(np.mean(self.f(w))))

    def midpoint_term(self, a, b) -> Term:
        """Midpoint inequality for the declared mode as a term."""
        fa, fb, fm = self(a), self(b), self(0.5 * (a + b))
        avg = 0.5 * (fa + fb)
        return le("midpoint", fm, avg) if self.mode == CONVEX else ge("midpoint", fm, avg)

    def __str__(self) -> str:
        return f"{self.phi.name} o tau o {self.f.name} ({self.mode})"


def eval_functional(F: TraceFunctional, a) -> float:
    return F(a)


def sample_pair(F: TraceFunctional, n: int, rng, source: str = "hermitian", window=DEFAULT_WINDOW):
    lo, hi = F.compact(window)
    if source == "hermitian":
        return random_hermitian_in(n, lo, hi, rng), random_hermitian_in(n, lo, hi, rng)
    if source == "diagonal":
        return random_diagonal_in(n, lo, hi, rng), random_diagonal_in(n, lo, hi, rng)
    raise ParameterError(f"unknown instance source {source!r}")


def midpoint_convexity_check(F: TraceFunctional, instance_source: str = "hermitian", trials: int = 1000,
                             seed: int = 0, n: int = 4, tol: float = 1e-9, check_id: str = "midpoint") -> CheckReport:
    """Random midpoint test of F on pairs with spectra in a compact sub-interval."""
    start = time.perf_counter()
    tally = Tally(tol)
    for t in range(trials):
        rng = trial_rng(seed, check_id, n, t)
        a, b = sample_pair(F, n, rng, instance_source)
        tally.add([F.midpoint_term(a, b)], {"n": n, "trial": t}, lambda: {"A": a, "B": b})
    return CheckReport.from_tally(check_id, tally, [n], seed, {"functional": str(F), "source": instance_source},
                                  wall_time=time.perf_counter() - start)


# ---------------------------------------------------------------------------
# the scalar inequality


def eq51_sides(phi, t, x) -> tuple[float, float]:
    """Both sides of the vector inequality for one tuple (t, x)."""
    phi = as_fn(phi)
    t = np.asarray(t, dtype=float).ravel()
    x = np.asarray(x, dtype=float).ravel()
    if t.shape != x.shape or t.size == 0:
        raise ParameterError("t and x must be non-empty vectors of equal length")
    d1, d2 = phi.derivative(t, 1), phi.derivative(t, 2)
    lhs = float(np.mean(x / d1) ** 2)
    rhs = float(phi_ratio(phi, np.mean(t)) * np.mean(d2 * x**2 / d1**3))
    return lhs, rhs


def eq51_term(phi, t, x) -> Term:
    lhs, rhs = eq51_sides(phi, t, x)
    return le("eq51", lhs, rhs)


def eq51_check(phi, t_points, x_points, tol: float = 1e-9) -> CheckReport:
    """The vector inequality for one tuple; margin = rhs - lhs."""
    tally = Tally(tol)
    tally.add([eq51_term(phi, t_points, x_points)], {"n": len(np.ravel(t_points))},
              {"t": np.asarray(t_points, float), "x": np.asarray(x_points, float)})
    return CheckReport.from_tally("eq51", tally, [len(np.ravel(t_points))], 0, {"phi": as_fn(phi).name})


def sample_eq51(phi: ScalarFn, n: int, rng, window=DEFAULT_WINDOW):
    lo, hi = phi.domain.compact(window, 0.01)
    return rng.uniform(lo, hi, n), rng.standard_normal(n)


def targeted_eq51(phi, rng, region: tuple[float, float], n: int = 2):
    """A tuple aimed at the weak spot of a phi whose ratio is not convex.

    With x_i = phi'(t_i)^2 / phi''(t_i) and r = phi'/phi'' the two sides
    become mean(r(t_i))^2 and r(mean t) mean(r(t_i)).  For phi'' < 0 the
    inequality is then Jensen's inequality for r, so points inside a stretch
    where r is concave violate it.
    """
    phi = as_fn(phi)
    lo, hi = region
    t = np.sort(rng.uniform(lo, hi, n))
    x = phi.derivative(t, 1) ** 2 / phi.derivative(t, 2)
    return t, x


def search_eq51_violation(phi, region: tuple[float, float], budget: int = 2000, seed: int = 0,
                          tol: float = 1e-9):
    """Targeted search for a tuple violating the vector inequality.

    Returns (t, x, term) for the most violating tuple found.
    """
    phi = as_fn(phi)
    best = None
    for i in range(budget):
        rng = trial_rng(seed, "eq51-search", i)
        t, x = targeted_eq51(phi, rng, region, n=2 + i % 3)
        term = eq51_term(phi, t, x)
        if best is None or term.rel_margin < best[2].rel_margin:
            best = (t, x, term)
    return best


def search_midpoint_violation(phi, region: tuple[float, float], budget: int = 2000, seed: int = 0):
    """Diagonal pair around diag(t) violating convexity of phi o tau o phi^{-1}.

    Uses the tuple from :func:`targeted_eq51`, mapped through phi: A, B =
    diag(phi(t) +- u x') where x' is the tangent direction, u small.
    """
    phi = as_fn(phi)
    F = TraceFunctional(phi, phi.inverse(), CONVEX)
    best = None
    for i in range(budget):
        rng = trial_rng(seed, "midpoint-search", i)
        t, x = targeted_eq51(phi, rng, region, n=2 + i % 3)
        s = phi(t)
        x = x / np.max(np.abs(x))
        span = float(np.min(np.abs(np.diff(s)))) if s.size > 1 else 1.0
        for u in (0.3, 0.1, 0.03):
            step = u * max(span, 1e-3)
            a, b = np.diag(s + step * x), np.diag(s - step * x)
            lo, hi = F.omega.lo, F.omega.hi
            if not (np.all(np.diag(a) > lo) and np.all(np.diag(b) > lo) and np.all(np.diag(a) < hi) and np.all(np.diag(b) < hi)):
                continue
            term = F.midpoint_term(a, b)
            if best is None or term.rel_margin < best[2].rel_margin:
                best = (a, b, term)
    return best


# ---------------------------------------------------------------------------
# phi of a norm / anti-norm of f


def prop56_terms(phi, spec, f, a, b) -> list[Term]:
    """phi(|f(A+B)|) <= phi(|f(A)|) + phi(|f(B)|) for norms, >= for anti-norms."""
    phi, f = as_fn(phi), as_fn(f)
    try:
        spec = as_norm(spec)
        is_norm = True
    except ParameterError:
        spec = as_antinorm(spec)
        is_norm = False

    def val(m):
        w = f(f.validate(eigvalsh(m)))
        return float(phi(spec.gauge(np.sort(np.abs(w))[::-1])))

    lhs, ra, rb = val(a + b), val(a), val(b)
    if is_norm:
        return [le(str(spec), lhs, ra + rb)]
    return [ge(str(spec), lhs, ra + rb)]


def prop56_hypotheses(phi, spec, f, n: int, samples: int = 400, seed: int = 0) -> dict:
    """Grid/random certificates for the two hypotheses.

    For a norm: phi o f subadditive and x -> phi(|phi^{-1}(x)|) convex on
    non-negative vectors; for an anti-norm: superadditive and concave.
    """
    from .functions import is_subadditive, is_superadditive
    phi, f = as_fn(phi), as_fn(f)
    try:
        spec = as_norm(spec)
        is_norm = True
    except ParameterError:
        spec = as_antinorm(spec)
        is_norm = False
    comp = compose(phi, f)
    add_rep = is_subadditive(comp) if is_norm else is_superadditive(comp)
    inv = phi.inverse()
    rng = np.random.default_rng(seed)
    lo, hi = inv.domain.compact((0.0, 10.0), 0.01)
    worst = math.inf
    witness = ()
    for _ in range(samples):
        x, y = rng.uniform(lo, hi, (2, n))

        def G(v):
            mu = np.sort(np.abs(inv(v)))[::-1]
            return float(phi(spec.gauge(mu)))

        gx, gy, gm = G(x), G(y), G(0.5 * (x + y))
        m = (0.5 * (gx + gy) - gm) if is_norm else (gm - 0.5 * (gx + gy))
        m /= 1.0 + abs(gx) + abs(gy)
        if m < worst:
            worst, witness = m, (x, y)
    shape_ok = worst >= -1e-9
    return {
        "additivity": add_rep.as_dict(),
        "shape": {"predicate": "convex" if is_norm else "concave", "passed": bool(shape_ok),
                  "worst": float(worst), "samples": samples,
                  "witness": [list(map(float, w)) for w in witness]},
        "passed": bool(add_rep.passed and shape_ok),
    }


def prop56_check(phi, spec, f, trials: int = 1000, seed: int = 0, n: int = 4, tol: float = 1e-9,
                 law: str = "uniform01") -> CheckReport:
    from .randmat import random_psd
    hyp = prop56_hypotheses(phi, spec, f, n)
    bindings = {"phi": as_fn(phi).name, "spec": str(spec), "f": as_fn(f).name}
    if not hyp["passed"]:
        return CheckReport.unmet("prop56", [n], seed, tol, bindings, [hyp])
    start = time.perf_counter()
    tally = Tally(tol)
    for t in range(trials):
        rng = trial_rng(seed, "prop56", n, t)
        a, b = random_psd(n, law, rng), random_psd(n, law, rng)
        tally.add(prop56_terms(phi, spec, f, a, b), {"n": n, "trial": t}, lambda: {"A": a, "B": b})
    return CheckReport.from_tally("prop56", tally, [n], seed, bindings, [hyp], time.perf_counter() - start)
