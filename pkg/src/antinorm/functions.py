"""Scalar functions and grid certificates for their analytic properties.

A :class:`ScalarFn` is a vectorised real function on an interval with
optional first and second derivatives.  The predicates (convexity,
sub/superadditivity, quasi-concavity, log-concavity, ...) are grid
certificates: a pass means no violation was found on the grid within the
tolerance, nothing more.

Function syntax (see :func:`parse_fn`)::

    poly(a0, a1, ..., am)   a0 + a1 t + ... + am t^m          on [0, inf)
    roots(a1, ..., am)      a1 t + a2 t^(1/2) + ... + am t^(1/m)
    ramp_plus               t + (t - 1)_+
    ramp_minus_half         t - (t - 1)_+ / 2
    pow(q)                  t^q   ([0, inf) for q > 0, (0, inf) for q < 0)
    log, exp, id
    minsq                   min(t, t^2), superadditive but not convex
    tent                    min(t, 2 - t) on [0, 2]
    neg_exp_mix             -exp(-t) - exp(-2t) on R
    compose(outer, inner)   outer(inner(t))
    power(f, q)             f(t)^q
    add(f, g), geomean(f, g)
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np

from .errors import DomainError, ParameterError
from .grammar import Call, format_number, parse_expr

DEFAULT_TOL = 1e-9
FD_STEP = 1e-5
INF = math.inf


@dataclass(frozen=True)
class Interval:
    lo: float = -INF
    hi: float = INF
    lo_closed: bool = False
    hi_closed: bool = False

    def contains(self, x, slack: float = 0.0):
        x = np.asarray(x, dtype=float)
        lo_ok = x >= self.lo - slack if self.lo_closed else x > self.lo - slack
        hi_ok = x <= self.hi + slack if self.hi_closed else x < self.hi + slack
        return lo_ok & hi_ok

    def clip(self, x, margin: float = 0.0):
        return np.clip(x, self.lo + margin, self.hi - margin)

    def compact(self, window: tuple[float, float] = (-3.0, 3.0), margin: float = 0.01) -> tuple[float, float]:
        """A compact sub-interval, `margin` (relative) away from finite endpoints.

        Infinite ends are replaced by the matching end of `window`.
        """
        lo = self.lo if math.isfinite(self.lo) else window[0]
        hi = self.hi if math.isfinite(self.hi) else window[1]
        if not math.isfinite(self.lo) and hi <= lo:
            lo = hi - (window[1] - window[0])
        if not math.isfinite(self.hi) and hi <= lo:
            hi = lo + (window[1] - window[0])
        span = hi - lo
        return lo + margin * span, hi - margin * span

    def __str__(self) -> str:
        return f"{'[' if self.lo_closed else '('}{self.lo}, {self.hi}{']' if self.hi_closed else ')'}"


NONNEG = Interval(0.0, INF, True, False)
POSITIVE = Interval(0.0, INF, False, False)
REAL = Interval()


@dataclass(frozen=True)
class ScalarFn:
    """A real function of one variable on an interval."""

    name: str
    fn: Callable
    domain: Interval = NONNEG
    d1: Optional[Callable] = None
    d2: Optional[Callable] = None
    inv: Optional[Callable] = None
    kinks: tuple = ()
    grid_hint: Optional[tuple] = None
    tags: frozenset = field(default_factory=frozenset)

    def __call__(self, t):
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            return np.asarray(self.fn(np.asarray(t, dtype=float)), dtype=float)

    def __str__(self) -> str:
        return self.name

    def validate(self, w, rel: float = 1e-10) -> np.ndarray:
        """Check a spectrum against the domain; clip round-off at closed ends."""
        w = np.asarray(w, dtype=float)
        slack = rel * (1.0 + float(np.max(np.abs(w)))) if w.size else 0.0
        bad = ~self.domain.contains(w, slack=slack if self.domain.lo_closed or self.domain.hi_closed else 0.0)
        if np.any(bad):
            x = float(w[np.argmax(bad)])
            raise DomainError(f"eigenvalue {x!r} outside the domain {self.domain} of {self.name}")
        lo = self.domain.lo if self.domain.lo_closed else -INF
        hi = self.domain.hi if self.domain.hi_closed else INF
        return np.clip(w, lo, hi)

    def derivative(self, t, order: int = 1):
        """First or second derivative; central differences when not registered."""
        t = np.asarray(t, dtype=float)
        exact = self.d1 if order == 1 else self.d2
        if exact is not None:
            with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
                return np.asarray(exact(t), dtype=float)
        h = FD_STEP * np.maximum(1.0, np.abs(t))
        if order == 1:
            return (self(t + h) - self(t - h)) / (2 * h)
        return (self(t + h) - 2 * self(t) + self(t - h)) / h**2

    def inverse(self) -> "ScalarFn":
        """Inverse function, by closed form when registered, else by bisection.

        The inverse is defined on the image of the (compactified) domain.
        """
        if self.inv is not None:
            return ScalarFn(f"inverse({self.name})", self.inv, _image(self), inv=self.fn)
        lo, hi = self.domain.compact(window=(-50.0, 50.0), margin=0.0)
        increasing = float(self(hi)) > float(self(lo))

        def bisect(y):
            y = np.asarray(y, dtype=float)
            a = np.full_like(y, lo)
            b = np.full_like(y, hi)
            for _ in range(50):
                mid = 0.5 * (a + b)
                below = (self(mid) < y) == increasing
                a = np.where(below, mid, a)
                b = np.where(below, b, mid)
            return 0.5 * (a + b)

        return ScalarFn(f"inverse({self.name})", bisect, _image(self), inv=self.fn)

    def default_grid(self, n: int = 200) -> np.ndarray:
        """200 log-spaced points on [1e-4, 1e4] intersected with the domain,
        unless the function registers its own grid."""
        if self.grid_hint is not None:
            kind, lo, hi = self.grid_hint
            g = np.geomspace(lo, hi, n) if kind == "log" else np.linspace(lo, hi, n)
        else:
            g = np.geomspace(1e-4, 1e4, n)
        g = g[self.domain.contains(g)]
        if g.size < 3:
            lo, hi = self.domain.compact(margin=0.0)
            g = np.linspace(lo, hi, n)
            g = g[self.domain.contains(g)]
        return g


def _image(f: ScalarFn) -> Interval:
    """Image of the domain, evaluating limits at infinite ends directly."""
    ends = []
    for x in (f.domain.lo, f.domain.hi):
        v = float(f(x))
        if math.isnan(v) and not math.isfinite(x):
            v = float(f(math.copysign(1e300, x)))
        ends.append(v)
    lo, hi = f.domain.compact(window=(-50.0, 50.0), margin=0.0)
    probe = [float(f(x)) for x in np.linspace(lo, hi, 101)]
    vals = [v for v in ends + probe if not math.isnan(v)]
    a, b = min(vals), max(vals)
    attained = set(probe)
    attained |= {v for v, c in zip(ends, (f.domain.lo_closed, f.domain.hi_closed)) if c}
    return Interval(a, b, math.isfinite(a) and a in attained, math.isfinite(b) and b in attained)


# ---------------------------------------------------------------------------
# catalog


def poly(*coeffs) -> ScalarFn:
    if not coeffs:
        raise ParameterError("poly needs at least one coefficient")
    c = np.array(coeffs, dtype=float)
    p = np.polynomial.Polynomial(c)
    d1, d2 = p.deriv(1), p.deriv(2)
    name = "poly(" + ", ".join(format_number(x) for x in coeffs) + ")"
    tags = {"nonneg_coeffs"} if np.all(c >= 0) else set()
    return ScalarFn(name, p, NONNEG, d1, d2, tags=frozenset(tags))


def roots(*coeffs) -> ScalarFn:
    if not coeffs:
        raise ParameterError("roots needs at least one coefficient")
    c = np.array(coeffs, dtype=float)
    ks = np.arange(1, len(c) + 1)

    def fn(t):
        return sum(a * np.power(t, 1.0 / k) for a, k in zip(c, ks))

    def d1(t):
        return sum(a / k * np.power(t, 1.0 / k - 1.0) for a, k in zip(c, ks))

    def d2(t):
        return sum(a / k * (1.0 / k - 1.0) * np.power(t, 1.0 / k - 2.0) for a, k in zip(c, ks))

    name = "roots(" + ", ".join(format_number(x) for x in coeffs) + ")"
    return ScalarFn(name, fn, NONNEG, d1, d2)


def power_fn(q: float) -> ScalarFn:
    q = float(q)
    if q == 0:
        raise ParameterError("pow(0) is constant; use poly(1)")
    dom = NONNEG if q > 0 else POSITIVE
    inv = (lambda y: np.power(y, 1.0 / q))
    return ScalarFn(
        f"pow({format_number(q)})",
        lambda t: np.power(t, q),
        dom,
        lambda t: q * np.power(t, q - 1.0),
        lambda t: q * (q - 1.0) * np.power(t, q - 2.0),
        inv=inv,
    )


def _ramp(t):
    return np.maximum(t - 1.0, 0.0)


BUILTINS = {
    "ramp_plus": lambda: ScalarFn(
        "ramp_plus", lambda t: t + _ramp(t), NONNEG,
        lambda t: 1.0 + (t > 1.0), lambda t: np.zeros_like(t), kinks=(1.0,),
    ),
    "ramp_minus_half": lambda: ScalarFn(
        "ramp_minus_half", lambda t: t - 0.5 * _ramp(t), NONNEG,
        lambda t: 1.0 - 0.5 * (t > 1.0), lambda t: np.zeros_like(t), kinks=(1.0,),
    ),
    "log": lambda: ScalarFn(
        "log", np.log, POSITIVE, lambda t: 1.0 / t, lambda t: -1.0 / t**2, inv=np.exp,
    ),
    "exp": lambda: ScalarFn(
        "exp", np.exp, REAL, np.exp, np.exp, inv=np.log, grid_hint=("lin", -20.0, 20.0),
    ),
    "id": lambda: ScalarFn(
        "id", lambda t: t, REAL, lambda t: np.ones_like(t), lambda t: np.zeros_like(t),
        inv=lambda y: y, grid_hint=("lin", -20.0, 20.0),
    ),
    "sqrt": lambda: replace(power_fn(0.5), name="sqrt"),
    "minsq": lambda: ScalarFn(
        "minsq", lambda t: np.minimum(t, t * t), NONNEG,
        lambda t: np.where(t < 1.0, 2.0 * t, 1.0), lambda t: np.where(t < 1.0, 2.0, 0.0),
        kinks=(1.0,),
    ),
    "tent": lambda: ScalarFn(
        "tent", lambda t: np.minimum(t, 2.0 - t), Interval(0.0, 2.0, True, True),
        lambda t: np.where(t < 1.0, 1.0, -1.0), lambda t: np.zeros_like(t),
        kinks=(1.0,), grid_hint=("lin", 0.0, 2.0),
    ),
    "neg_exp_mix": lambda: ScalarFn(
        "neg_exp_mix", lambda t: -np.exp(-t) - np.exp(-2.0 * t), REAL,
        lambda t: np.exp(-t) + 2.0 * np.exp(-2.0 * t),
        lambda t: -np.exp(-t) - 4.0 * np.exp(-2.0 * t),
        inv=lambda y: -np.log((-1.0 + np.sqrt(1.0 - 4.0 * y)) / 2.0),
        grid_hint=("lin", -5.0, 10.0),
    ),
}


def compose(outer: ScalarFn, inner: ScalarFn) -> ScalarFn:
    """outer(inner(t)); derivatives by the chain rule when both sides have them."""
    d1 = d2 = None
    if outer.d1 is not None and inner.d1 is not None:
        def d1(t):
            return outer.derivative(inner(t), 1) * inner.derivative(t, 1)
    if None not in (outer.d1, outer.d2, inner.d1, inner.d2):
        def d2(t):
            u = inner(t)
            return outer.derivative(u, 2) * inner.derivative(t, 1) ** 2 + outer.derivative(u, 1) * inner.derivative(t, 2)
    inv = None
    if outer.inv is not None and inner.inv is not None:
        def inv(y):
            return inner.inv(outer.inv(y))
    return ScalarFn(
        f"compose({outer.name}, {inner.name})", lambda t: outer(inner(t)), inner.domain,
        d1, d2, inv=inv, kinks=inner.kinks, grid_hint=inner.grid_hint,
    )


def power(f: ScalarFn, q: float) -> ScalarFn:
    """t -> f(t)^q."""
    q = float(q)
    d1 = d2 = None
    if f.d1 is not None:
        def d1(t):
            return q * np.power(f(t), q - 1.0) * f.derivative(t, 1)
    if f.d1 is not None and f.d2 is not None:
        def d2(t):
            u = f(t)
            return (q * (q - 1.0) * np.power(u, q - 2.0) * f.derivative(t, 1) ** 2
                    + q * np.power(u, q - 1.0) * f.derivative(t, 2))
    return ScalarFn(
        f"power({f.name}, {format_number(q)})", lambda t: np.power(f(t), q), f.domain, d1, d2,
        kinks=f.kinks, grid_hint=f.grid_hint,
    )


def add(f: ScalarFn, g: ScalarFn) -> ScalarFn:
    d1 = (lambda t: f.derivative(t, 1) + g.derivative(t, 1)) if f.d1 and g.d1 else None
    d2 = (lambda t: f.derivative(t, 2) + g.derivative(t, 2)) if f.d2 and g.d2 else None
    return ScalarFn(f"add({f.name}, {g.name})", lambda t: f(t) + g(t), f.domain, d1, d2,
                    kinks=tuple(sorted(set(f.kinks) | set(g.kinks))), grid_hint=f.grid_hint)


def geomean(f: ScalarFn, g: ScalarFn) -> ScalarFn:
    return ScalarFn(f"geomean({f.name}, {g.name})", lambda t: np.sqrt(f(t) * g(t)), f.domain,
                    kinks=tuple(sorted(set(f.kinks) | set(g.kinks))), grid_hint=f.grid_hint)


def _build(node) -> ScalarFn:
    if not isinstance(node, Call):
        raise ParameterError(f"expected a function, got {node!r}")
    name, args, kwargs = node.name, node.args, node.kwargs
    if name in BUILTINS:
        if args or kwargs:
            raise ParameterError(f"{name} takes no arguments")
        return BUILTINS[name]()
    if name == "poly":
        return poly(*_numbers(name, args))
    if name == "roots":
        return roots(*_numbers(name, args))
    if name == "pow":
        (q,) = _numbers(name, args or (kwargs.get("q"),))
        return power_fn(q)
    if name == "compose":
        return compose(_build(args[0]), _build(args[1]))
    if name == "power":
        q = kwargs.get("q", args[1] if len(args) > 1 else None)
        return power(_build(args[0]), _numbers(name, (q,))[0])
    if name == "add":
        return add(_build(args[0]), _build(args[1]))
    if name == "geomean":
        return geomean(_build(args[0]), _build(args[1]))
    raise ParameterError(f"unknown function {name!r}")


def _numbers(name, args):
    if not args or any(not isinstance(a, (int, float)) for a in args):
        raise ParameterError(f"{name} needs numeric arguments, got {args!r}")
    return [float(a) for a in args]


def parse_fn(text: str) -> ScalarFn:
    """Build a ScalarFn from its textual form, e.g. ``poly(0, 1, 0, 1)``."""
    try:
        return _build(parse_expr(text))
    except IndexError as exc:
        raise ParameterError(f"missing arguments in {text!r}") from exc


def as_fn(f) -> ScalarFn:
    return parse_fn(f) if isinstance(f, str) else f


# ---------------------------------------------------------------------------
# predicates


@dataclass
class PredicateReport:
    """Outcome of a grid certificate.

    ``worst`` is the signed worst margin (negative = violation).  ``witness``
    holds the grid point(s) where it was attained.
    """

    predicate: str
    fn: str
    passed: bool
    worst: float
    tol: float
    grid: dict
    witness: tuple = ()
    detail: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.passed

    def as_dict(self) -> dict:
        return {
            "predicate": self.predicate, "fn": self.fn, "passed": bool(self.passed),
            "worst": float(self.worst), "tol": self.tol, "grid": self.grid,
            "witness": [float(x) for x in self.witness], "detail": self.detail,
        }


def _grid(f: ScalarFn, grid) -> np.ndarray:
    g = f.default_grid() if grid is None else np.asarray(grid, dtype=float)
    g = np.unique(g)
    if g.size < 3:
        raise ParameterError("a predicate grid needs at least 3 distinct points")
    if not np.all(f.domain.contains(g)):
        raise ParameterError(f"grid leaves the domain {f.domain} of {f.name}")
    return g


def _grid_info(g) -> dict:
    return {"points": int(g.size), "lo": float(g[0]), "hi": float(g[-1])}


def _report(predicate, f, margins, scale, tol, g, witnesses, passed=None, detail=None):
    rel = margins / scale
    i = int(np.argmin(rel))
    ok = bool(rel[i] >= -tol) if passed is None else passed
    return PredicateReport(predicate, f.name, ok, float(margins.flat[i]), tol, _grid_info(g),
                           tuple(np.atleast_1d(witnesses[i])), detail or {})


def _midpoint(f, grid, tol, sign, predicate):
    g = _grid(f, grid)
    x, y = np.meshgrid(g, g, indexing="ij")
    iu = np.triu_indices(g.size, 1)
    x, y = x[iu], y[iu]
    fx, fy, fm = f(x), f(y), f(0.5 * (x + y))
    margins = sign * (0.5 * (fx + fy) - fm)
    scale = 1.0 + np.abs(fx) + np.abs(fy)
    return _report(predicate, f, margins, scale, tol, g, np.stack([x, y], axis=1))


def is_convex(f, grid=None, tol: float = DEFAULT_TOL) -> PredicateReport:
    """Midpoint convexity on all pairs of grid points."""
    return _midpoint(as_fn(f), grid, tol, 1.0, "convex")


def is_concave(f, grid=None, tol: float = DEFAULT_TOL) -> PredicateReport:
    return _midpoint(as_fn(f), grid, tol, -1.0, "concave")


def _additive(f, grid, tol, sign, predicate):
    f = as_fn(f)
    g = _grid(f, grid)
    x, y = np.meshgrid(g, g, indexing="ij")
    iu = np.triu_indices(g.size, 0)
    x, y = x[iu], y[iu]
    inside = f.domain.contains(x + y)
    x, y = x[inside], y[inside]
    if x.size == 0:
        raise ParameterError("no grid pair has its sum inside the domain")
    fx, fy, fs = f(x), f(y), f(x + y)
    margins = sign * (fx + fy - fs)
    scale = 1.0 + np.abs(fx) + np.abs(fy) + np.abs(fs)
    return _report(predicate, f, margins, scale, tol, g, np.stack([x, y], axis=1))


def is_subadditive(f, grid=None, tol: float = DEFAULT_TOL) -> PredicateReport:
    """f(x + y) <= f(x) + f(y) on all grid pairs with x + y in the domain."""
    return _additive(f, grid, tol, 1.0, "subadditive")


def is_superadditive(f, grid=None, tol: float = DEFAULT_TOL) -> PredicateReport:
    return _additive(f, grid, tol, -1.0, "superadditive")


def _quasi(w, grid, tol, sign, predicate):
    w = as_fn(w)
    g = _grid(w, grid)
    if g[0] <= 0:
        raise ParameterError("quasi-concavity/convexity grids must lie in (0, inf)")
    r = w(g) / g
    margins = sign * (r[:-1] - r[1:])
    scale = 1.0 + np.abs(r[:-1])
    return _report(predicate, w, margins, scale, tol, g, np.stack([g[:-1], g[1:]], axis=1))


def is_quasiconcave(w, grid=None, tol: float = DEFAULT_TOL) -> PredicateReport:
    """w(t)/t non-increasing along the sorted grid."""
    return _quasi(w, grid, tol, 1.0, "quasiconcave")


def is_quasiconvex(w, grid=None, tol: float = DEFAULT_TOL) -> PredicateReport:
    """w(t)/t non-decreasing along the sorted grid."""
    return _quasi(w, grid, tol, -1.0, "quasiconvex")


def _log_derivs(h, t):
    v, d1, d2 = h(t), h.derivative(t, 1), h.derivative(t, 2)
    return d1 / v, (d2 * v - d1 * d1) / (v * v)


def log_concavity_margin(h, grid=None, interval: tuple[float, float] | None = None,
                         tol: float = DEFAULT_TOL) -> PredicateReport:
    """Strict log-concavity certificate: max of (log h)'' over the grid.

    Passes iff every sampled (log h)'' is strictly negative.  When
    `interval` = (a, b) is given, also reports in ``detail['q']`` an exponent
    q in (0, 1) for which h^q is concave on [a, b], from
    (h^q)'' = q h^q (q ((log h)')^2 + (log h)'').
    """
    h = as_fn(h)
    g = _grid(h, grid)
    g = g[~np.isin(g, h.kinks)]
    if np.any(h(g) <= 0):
        raise ParameterError(f"{h.name} is not strictly positive on the grid")
    _, ll2 = _log_derivs(h, g)
    i = int(np.argmax(ll2))
    detail = {"max_log_second_derivative": float(ll2[i])}
    if interval is not None:
        q = concavity_exponent(h, *interval)
        detail["q"] = q
        detail["interval"] = [float(interval[0]), float(interval[1])]
    return PredicateReport("strictly_log_concave", h.name, bool(ll2[i] < 0), float(-ll2[i]), tol,
                           _grid_info(g), (float(g[i]),), detail)


def concavity_exponent(h, a: float, b: float, points: int = 400) -> float:
    """Largest q (times 0.99, capped below 1) with q ((log h)')^2 + (log h)'' <= 0 on [a, b]."""
    h = as_fn(h)
    if not 0 < a < b:
        raise ParameterError("need 0 < a < b")
    t = np.linspace(a, b, points)
    l1, l2 = _log_derivs(h, t)
    if np.any(l2 >= 0):
        raise ParameterError(f"(log {h.name})'' is not negative on [{a}, {b}]")
    with np.errstate(divide="ignore"):
        bound = np.where(l1 == 0, np.inf, -l2 / (l1 * l1))
    return float(min(0.99, 0.99 * bound.min()))


def phi_ratio(phi: ScalarFn, t) -> np.ndarray:
    return phi.derivative(t, 1) / phi.derivative(t, 2)


def phi_ratio_convexity(phi, grid=None, want: str = "convex", tol: float = DEFAULT_TOL) -> PredicateReport:
    """Midpoint convexity (or concavity) of t -> phi'(t) / phi''(t).

    Requires phi' > 0 and phi'' of constant sign on the grid.
    """
    phi = as_fn(phi)
    g = _grid(phi, grid)
    g = g[~np.isin(g, phi.kinks)]
    if phi.domain.lo_closed:
        g = g[g > phi.domain.lo]
    if phi.domain.hi_closed:
        g = g[g < phi.domain.hi]
    d1, d2 = phi.derivative(g, 1), phi.derivative(g, 2)
    if np.any(d2 == 0) or not (np.all(d2 > 0) or np.all(d2 < 0)):
        raise DomainError(f"phi'' of {phi.name} vanishes or changes sign on the grid")
    if not np.all(d1 > 0):
        raise DomainError(f"phi' of {phi.name} is not positive on the grid")
    ratio = ScalarFn(f"ratio({phi.name})", lambda t: phi_ratio(phi, t), phi.domain)
    if want == "convex":
        rep = is_convex(ratio, g, tol)
    elif want == "concave":
        rep = is_concave(ratio, g, tol)
    else:
        raise ParameterError("want must be 'convex' or 'concave'")
    rep.predicate = f"ratio_{want}"
    rep.fn = phi.name
    rep.detail["phi_second_derivative_sign"] = int(np.sign(d2[0]))
    return rep


def is_nonnegative(f, grid=None, tol: float = DEFAULT_TOL) -> PredicateReport:
    f = as_fn(f)
    g = _grid(f, grid)
    v = f(g)
    return _report("nonnegative", f, v, 1.0 + np.abs(v), tol, g, g)


def is_increasing(f, grid=None, strict: bool = True, tol: float = DEFAULT_TOL) -> PredicateReport:
    f = as_fn(f)
    g = _grid(f, grid)
    v = f(g)
    margins = v[1:] - v[:-1]
    rep = _report("increasing", f, margins, 1.0 + np.abs(v[:-1]), tol, g, np.stack([g[:-1], g[1:]], axis=1))
    if strict:
        rep.passed = bool(np.all(margins > 0))
    return rep


def vanishes_at_zero(f, tol: float = DEFAULT_TOL) -> PredicateReport:
    f = as_fn(f)
    v = float(f(0.0))
    return PredicateReport("vanishes_at_zero", f.name, abs(v) <= tol, -abs(v), tol,
                           {"points": 1, "lo": 0.0, "hi": 0.0}, (0.0,))
