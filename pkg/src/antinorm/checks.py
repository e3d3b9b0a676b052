"""Registry of randomized inequality checks.

Each check draws independent random instances per (dimension, trial) from a
seed derived from ``(seed, check_id, n, trial)``, reduces the inequality to
one or more ``lhs <= rhs`` terms and tallies the worst margin.  Bindings
(the functions and exponents an inequality is about) are validated by grid
certificates first; a check whose bindings fail them is reported as
"hypotheses-not-met" and no trial is run.
"""
from __future__ import annotations

import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np

from . import blockdecomp as bd
from . import functions as fx
from . import tracefunc as tf
from .errors import ParameterError
from .grammar import Call, parse_call, parse_expr
from .majorization import lemma42_witness, top_sums
from .norms import (AntiNormSpec, Minkowski, NormSpec, SchattenAnti, Schatten, antinorm_catalog, as_antinorm,
                    norm_catalog, parse_spec)
from .randmat import (SpectrumLaw, conjugate, parse_spectrum_law, random_contraction, random_psd,
                      random_psd_block, random_unitary, trial_rng)
from .report import UNMET, CheckReport, Tally, Term, eq, ge, le
from .spectral import apply_fn, eigvalsh, frob, singular_values

DEFAULT_SEED = 0xA17190
DEFAULT_DIMS = (2, 3, 4, 6, 8)


def env_seed(default: int = DEFAULT_SEED) -> int:
    """Seed from ANTINORM_SEED (decimal or 0x-hex) if set."""
    raw = os.environ.get("ANTINORM_SEED")
    return int(raw, 0) if raw else default


@dataclass
class CheckConfig:
    """Run parameters shared by all checks.

    ``bindings`` maps names such as ``f``, ``g``, ``q`` to their textual
    forms (``"poly(0, 1, 0, 1)"``, ``"1/3"``) or values and overrides the
    defaults of a check.  ``specs`` replaces the default norm / anti-norm
    sweep.  ``m`` fixes the lower block size of block checks (default: n).
    """

    dims: tuple = DEFAULT_DIMS
    trials: int = 1000
    seed: int = DEFAULT_SEED
    tol: float = 1e-9
    spectrum: str = "uniform01"
    specs: tuple = ()
    bindings: dict = field(default_factory=dict)
    m: int | None = None
    threads: int = 1

    def __post_init__(self):
        if self.trials < 1:
            raise ParameterError("trials must be >= 1")
        if not self.tol >= 0:
            raise ParameterError("tol must be non-negative")
        if not self.dims or min(self.dims) < 1:
            raise ParameterError("dims must be positive integers")
        self.dims = tuple(int(d) for d in self.dims)
        parse_spectrum_law(self.spectrum)


# ---------------------------------------------------------------------------
# bindings and context


def _binding(value):
    """Textual binding -> number, tuple, or ScalarFn."""
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, (list, tuple)):
        return tuple(_binding(v) for v in value)
    node = parse_expr(value) if isinstance(value, str) else value
    if isinstance(node, (int, float)):
        return float(node)
    if isinstance(node, tuple):
        return tuple(float(v) if isinstance(v, (int, float)) else fx.parse_fn(_unparse(v)) for v in node)
    return fx.parse_fn(value)


def _unparse(node) -> str:
    if isinstance(node, Call):
        inner = [_unparse(a) for a in node.args] + [f"{k}={_unparse(v)}" for k, v in node.kwargs.items()]
        return node.name if not inner and not node.args else f"{node.name}({', '.join(inner)})"
    if isinstance(node, tuple):
        return "(" + ", ".join(_unparse(v) for v in node) + ")"
    return repr(node)


@lru_cache(maxsize=None)
def _norms(n: int):
    return tuple(norm_catalog(n))


@lru_cache(maxsize=None)
def _antinorms(n: int):
    return tuple(antinorm_catalog(n))


class Context:
    """Resolved bindings plus spec sweeps for one check run."""

    def __init__(self, check: "Check", config: CheckConfig):
        self.config = config
        self.raw = dict(check.defaults)
        unknown = set(config.bindings) - set(check.defaults)
        if unknown:
            raise ParameterError(f"{check.check_id} has no binding(s) {sorted(unknown)}; "
                                 f"known: {sorted(check.defaults) or 'none'}")
        self.raw.update(config.bindings)
        self.b = {k: _binding(v) for k, v in self.raw.items()}
        self.law: SpectrumLaw = parse_spectrum_law(config.spectrum)
        self._user = tuple(parse_spec(s) if isinstance(s, str) else s for s in config.specs)

    def fn(self, key) -> fx.ScalarFn:
        v = self.b[key]
        if not isinstance(v, fx.ScalarFn):
            raise ParameterError(f"binding {key} must be a function, got {self.raw[key]!r}")
        return v

    def num(self, key) -> float:
        v = self.b[key]
        if not isinstance(v, float):
            raise ParameterError(f"binding {key} must be a number, got {self.raw[key]!r}")
        return v

    def fns(self, key) -> tuple:
        v = self.b[key]
        return v if isinstance(v, tuple) else (v,)

    def _fit(self, specs, size):
        out = []
        for s in specs:
            try:
                s.check(size)
            except ParameterError:
                continue
            out.append(s)
        return out

    def norms(self, size: int) -> list:
        user = [s for s in self._user if isinstance(s, NormSpec)]
        return self._fit(user or _norms(size), size)

    def antinorms(self, size: int, default=None) -> list:
        user = [s for s in self._user if isinstance(s, AntiNormSpec)]
        return self._fit(user or (default if default is not None else _antinorms(size)), size)

    def psd(self, n, rng):
        return random_psd(n, self.law, rng)

    def block(self, n, rng):
        m = self.config.m or n
        big, *_ = random_psd_block(n, m, rng, self.law)
        return big


@dataclass(frozen=True)
class Check:
    check_id: str
    anchor: str
    trial: Callable
    hypotheses: Callable = lambda ctx: []
    defaults: dict = field(default_factory=dict)
    min_dim: int = 1


REGISTRY: dict[str, Check] = {}


def register(check_id, anchor, defaults=None, hypotheses=None, min_dim=1):
    def deco(trial):
        REGISTRY[check_id] = Check(check_id, anchor, trial, hypotheses or (lambda ctx: []),
                                   dict(defaults or {}), min_dim)
        return trial
    return deco


# ---------------------------------------------------------------------------
# helpers


def _vals(f, m) -> np.ndarray:
    """Decreasing |f(lambda_i(M))|, i.e. the singular values of f(M)."""
    return np.sort(np.abs(f(f.validate(eigvalsh(m)))))[::-1]


def _gauges(spec, *mus) -> np.ndarray:
    return np.asarray(spec.gauge(np.stack(mus)), dtype=float)


def _det(mu) -> float:
    return float(Minkowski().gauge(np.asarray(mu)))


def _concave_nonneg(f):
    return [fx.is_concave(f), fx.is_nonnegative(f)]


def _convex_nonneg_zero(g):
    return [fx.is_convex(g), fx.is_nonnegative(g), fx.vanishes_at_zero(g)]


def _coefficients(fn: fx.ScalarFn, kind: str):
    name, args, _ = parse_call(fn.name)
    if name != kind:
        raise ParameterError(f"binding must be a {kind}(...) function, got {fn.name}")
    return [float(a) for a in args]


def _flag(predicate: str, fn: str, passed: bool, detail=None) -> fx.PredicateReport:
    return fx.PredicateReport(predicate, fn, bool(passed), 0.0 if passed else -1.0, 0.0,
                              {"points": 0, "lo": 0.0, "hi": 0.0}, (), detail or {})


# ---------------------------------------------------------------------------
# concave functions: subadditivity


@register("rotfeld_trace", "Tr f(A+B) <= Tr f(A) + Tr f(B) for non-negative concave f",
          {"f": "sqrt"}, lambda c: _concave_nonneg(c.fn("f")))
def _rotfeld_trace(ctx, n, rng):
    f = ctx.fn("f")
    a, b = ctx.psd(n, rng), ctx.psd(n, rng)
    s = [float(f(f.validate(eigvalsh(x))).sum()) for x in (a + b, a, b)]
    return [le("trace", s[0], s[1] + s[2])], {"A": a, "B": b}


@register("rotfeld_norm", "|f(A+B)| <= |f(A)| + |f(B)| for non-negative concave f, symmetric norms",
          {"f": "sqrt"}, lambda c: _concave_nonneg(c.fn("f")))
def _rotfeld_norm(ctx, n, rng):
    f = ctx.fn("f")
    a, b = ctx.psd(n, rng), ctx.psd(n, rng)
    mus = [_vals(f, x) for x in (a + b, a, b)]
    terms = []
    for spec in ctx.norms(n):
        v = _gauges(spec, *mus)
        terms.append(le(str(spec), v[0], v[1] + v[2]))
    return terms, {"A": a, "B": b}


@register("lee_block", "|f(M)| <= |f(A)| + |f(B)| for a psd block matrix, non-negative concave f",
          {"f": "sqrt"}, lambda c: _concave_nonneg(c.fn("f")))
def _lee_block(ctx, n, rng):
    m = ctx.block(n, rng)
    return bd.lee_terms(m, n, ctx.fn("f"), ctx.norms(m.shape[0])), {"M": m, "n": n}


@register("fisher", "det M <= det A det B for psd block matrices (also as Tr log M <= Tr log A + Tr log B)")
def _fisher(ctx, n, rng):
    m = ctx.block(n, rng)
    terms = bd.fisher_terms(m, n)
    a, _, b = bd.split_blocks(m, n, m.shape[0] - n)
    lm, la, lb = eigvalsh(m), eigvalsh(a), eigvalsh(b)
    if min(lm.min(), la.min(), lb.min()) > 1e-12 * max(1.0, lm.max()):
        terms.append(le("log-det", np.log(lm).sum(), np.log(la).sum() + np.log(lb).sum()))
    return terms, {"M": m, "n": n}


# ---------------------------------------------------------------------------
# determinant and anti-norm superadditivity / concavity


@register("minkowski", "det^(1/n)(A+B) >= det^(1/n) A + det^(1/n) B")
def _minkowski(ctx, n, rng):
    a, b = ctx.psd(n, rng), ctx.psd(n, rng)
    d = [_det(np.clip(eigvalsh(x), 0, None)) for x in (a + b, a, b)]
    return [ge("det^(1/n)", d[0], d[1] + d[2])], {"A": a, "B": b}


@register("minkowski_convex", "det^(1/n) g(A+B) >= det^(1/n) g(A) + det^(1/n) g(B), g convex, g(0) = 0",
          {"g": "pow(2)"}, lambda c: _convex_nonneg_zero(c.fn("g")))
def _minkowski_convex(ctx, n, rng):
    g = ctx.fn("g")
    a, b = ctx.psd(n, rng), ctx.psd(n, rng)
    d = [_det(_vals(g, x)) for x in (a + b, a, b)]
    return [ge("det^(1/n) g", d[0], d[1] + d[2])], {"A": a, "B": b}


@register("jensen_det", "det^(1/n) f((A+B)/2) >= (det^(1/n) f(A) + det^(1/n) f(B))/2, f concave >= 0",
          {"f": "sqrt"}, lambda c: _concave_nonneg(c.fn("f")))
def _jensen_det(ctx, n, rng):
    f = ctx.fn("f")
    a, b = ctx.psd(n, rng), ctx.psd(n, rng)
    d = [_det(_vals(f, x)) for x in (0.5 * (a + b), a, b)]
    return [ge("det^(1/n) f", d[0], 0.5 * (d[1] + d[2]))], {"A": a, "B": b}


@register("antinorm_superadd", "|g(A+B)|_! >= |g(A)|_! + |g(B)|_! for convex g >= 0 with g(0) = 0",
          {"g": "pow(2)"}, lambda c: _convex_nonneg_zero(c.fn("g")))
def _antinorm_superadd(ctx, n, rng):
    g = ctx.fn("g")
    a, b = ctx.psd(n, rng), ctx.psd(n, rng)
    mus = [_vals(g, x) for x in (a + b, a, b)]
    terms = []
    for spec in ctx.antinorms(n):
        v = _gauges(spec, *mus)
        terms.append(ge(str(spec), v[0], v[1] + v[2]))
    return terms, {"A": a, "B": b}


@register("jensen_antinorm", "|f((A+B)/2)|_! >= |(f(A)+f(B))/2|_! >= (|f(A)|_! + |f(B)|_!)/2, f concave >= 0",
          {"f": "sqrt"}, lambda c: _concave_nonneg(c.fn("f")))
def _jensen_antinorm(ctx, n, rng):
    f = ctx.fn("f")
    a, b = ctx.psd(n, rng), ctx.psd(n, rng)
    avg = 0.5 * (apply_fn(a, f) + apply_fn(b, f))
    mus = [_vals(f, 0.5 * (a + b)), singular_values(avg), _vals(f, a), _vals(f, b)]
    terms = []
    for spec in ctx.antinorms(n):
        v = _gauges(spec, *mus)
        terms.append(ge(f"{spec} [midpoint]", v[0], v[1]))
        terms.append(ge(f"{spec} [average]", v[1], 0.5 * (v[2] + v[3])))
    return terms, {"A": a, "B": b}


def _brown_kosaki_hyp(ctx):
    f = ctx.fn("f")
    return _concave_nonneg(f) + [_flag("zero_in_domain", f.name, bool(f.domain.contains(0.0)))]


@register("brown_kosaki", "|f(Z*AZ)|_! >= |Z* f(A) Z|_! for contractions Z, f concave >= 0, 0 in the domain",
          {"f": "sqrt"}, _brown_kosaki_hyp)
def _brown_kosaki(ctx, n, rng):
    f = ctx.fn("f")
    a = ctx.psd(n, rng)
    z = random_contraction(n, rng)
    lhs = _vals(f, z.conj().T @ a @ z)
    rhs = singular_values(z.conj().T @ apply_fn(a, f) @ z)
    terms = []
    for spec in ctx.antinorms(n):
        v = _gauges(spec, lhs, rhs)
        terms.append(ge(str(spec), v[0], v[1]))
    return terms, {"A": a, "Z": z}


# ---------------------------------------------------------------------------
# convex g with subadditive g^q, concave f with superadditive f^p


def _thm41_norm_hyp(ctx):
    g, q = ctx.fn("g"), ctx.num("q")
    return [fx.is_convex(g), fx.is_nonnegative(g), fx.is_subadditive(fx.power(g, q)),
            _flag("q_in_(0,1)", g.name, 0 < q < 1, {"q": q})]


def _power_norm_terms(specs, g, q, a, b):
    mus = [_vals(g, x) for x in (a + b, a, b)]
    terms = []
    for spec in specs:
        v = _gauges(spec, *mus)
        terms.append(le(str(spec), v[0] ** q, v[1] ** q + v[2] ** q))
    return terms


@register("thm41_norm", "|g(A+B)|^q <= |g(A)|^q + |g(B)|^q for convex g with subadditive g^q",
          {"g": "ramp_plus", "q": 0.5}, _thm41_norm_hyp)
def _thm41_norm(ctx, n, rng):
    g, q = ctx.fn("g"), ctx.num("q")
    a, b = ctx.psd(n, rng), ctx.psd(n, rng)
    terms = _power_norm_terms(ctx.norms(n), g, q, a, b)
    # the Ky Fan majorization lambda(A+B) < lambda(A) + lambda(B) behind it
    s, sa, sb = top_sums(eigvalsh(a + b)), top_sums(eigvalsh(a)), top_sums(eigvalsh(b))
    terms += [le(f"kyfan majorization k={k + 1}", s[k], sa[k] + sb[k]) for k in range(n)]
    terms.append(ge(f"kyfan majorization total", s[-1], sa[-1] + sb[-1]))
    return terms, {"A": a, "B": b}


def _thm41_anti_hyp(ctx):
    f, p = ctx.fn("f"), ctx.num("p")
    return [fx.is_concave(f), fx.is_nonnegative(f), fx.is_superadditive(fx.power(f, p)),
            _flag("p_above_1", f.name, p > 1, {"p": p})]


def _power_anti_terms(specs, f, p, a, b):
    mus = [_vals(f, x) for x in (a + b, a, b)]
    terms = []
    for spec in specs:
        v = _gauges(spec, *mus)
        terms.append(ge(str(spec), v[0] ** p, v[1] ** p + v[2] ** p))
    return terms


@register("thm41_antinorm", "|f(A+B)|_!^p >= |f(A)|_!^p + |f(B)|_!^p for concave f with superadditive f^p",
          {"f": "roots(1, 1)", "p": 2.0}, _thm41_anti_hyp)
def _thm41_antinorm(ctx, n, rng):
    a, b = ctx.psd(n, rng), ctx.psd(n, rng)
    return _power_anti_terms(ctx.antinorms(n), ctx.fn("f"), ctx.num("p"), a, b), {"A": a, "B": b}


def superweak_pair(n, rng, law):
    """psd A, B with lambda(A) super-weakly majorized by lambda(B)."""
    b = random_psd(n, law, rng)
    lb = eigvalsh(b)
    c = lb.copy()
    c[0] += rng.uniform(0, 1) * (lb.sum() + 1e-3)
    k = rng.integers(1, n + 2)
    weights = rng.dirichlet(np.ones(k))
    a_vals = sum(w * c[rng.permutation(n)] for w in weights)
    if rng.random() < 0.3:
        a_vals = a_vals + rng.uniform(0, 0.5, n) * (np.arange(n) >= n // 2)
    a = conjugate(random_unitary(n, rng), a_vals)
    return a, b


@register("lemma42_consequence",
          "lambda(A) super-weakly majorized by lambda(B) implies |A|_! >= |B|_!, via an explicit witness")
def _lemma42(ctx, n, rng):
    a, b = superweak_pair(n, rng, ctx.law)
    w = lemma42_witness(a, b)
    la, lc, lb = (np.sort(np.clip(x, 0, None))[::-1] for x in (eigvalsh(a), w.C, eigvalsh(b)))
    terms = [
        le("witness residual", frob(w.reconstruct() - a), 1e-8 * (1.0 + frob(a))),
        le("witness terms", len(w.combo), n),
        eq("witness weights", w.alphas.sum(), 1.0, 1e-12),
        ge("witness weights >= 0", w.alphas.min(), 0.0),
    ]
    for spec in ctx.antinorms(n):
        v = _gauges(spec, la, lc, lb)
        terms.append(ge(f"{spec} [A vs C]", v[0], v[1]))
        terms.append(ge(f"{spec} [C vs B]", v[1], v[2]))
    return terms, {"A": a, "B": b}


def _cor43_hyp(ctx):
    g = ctx.fn("g")
    c = _coefficients(g, "poly")
    m = _degree(c)
    return [_flag("nonneg_coefficients", g.name, all(x >= 0 for x in c) and m >= 1, {"degree": m}),
            fx.is_convex(g), fx.is_subadditive(fx.power(g, 1.0 / m))]


def _degree(c):
    nz = [i for i, x in enumerate(c) if x != 0]
    return max(nz) if nz else 0


@register("cor43", "|g(A+B)|^(1/m) <= |g(A)|^(1/m) + |g(B)|^(1/m) for a degree-m polynomial, coefficients >= 0",
          {"g": "poly(0, 1, 0, 1)"}, _cor43_hyp)
def _cor43(ctx, n, rng):
    g = ctx.fn("g")
    q = 1.0 / _degree(_coefficients(g, "poly"))
    a, b = ctx.psd(n, rng), ctx.psd(n, rng)
    return _power_norm_terms(ctx.norms(n), g, q, a, b), {"A": a, "B": b}


def _block_convex_hyp(ctx, zero=True):
    g, q = ctx.fn("g"), ctx.num("q")
    reps = [fx.is_convex(g), fx.is_nonnegative(g), fx.is_subadditive(fx.power(g, q)),
            _flag("q_in_(0,1)", g.name, 0 < q < 1, {"q": q})]
    if zero:
        reps.append(fx.vanishes_at_zero(g))
    return reps


@register("cor44_block", "|g(M)| <= (|g(A)|^q + |g(B)|^q)^(1/q) for psd block M, convex g(0) = 0, g^q subadditive",
          {"g": "poly(0, 1, 0, 1)", "q": 1.0 / 3.0}, _block_convex_hyp)
def _cor44(ctx, n, rng):
    m = ctx.block(n, rng)
    return bd.convex_block_terms(m, n, ctx.fn("g"), ctx.num("q"), ctx.norms(m.shape[0])), {"M": m, "n": n}


@register("cor45", "Tr g(A) <= (sum_i g^q(a_ii))^(1/q) for convex g(0) = 0 with g^q subadditive",
          {"g": "pow(2)", "q": 0.5}, _block_convex_hyp)
def _cor45(ctx, n, rng):
    g, q = ctx.fn("g"), ctx.num("q")
    a = ctx.psd(n, rng)
    d = np.clip(np.real(np.diag(a)), 0, None)
    lhs = float(g(g.validate(eigvalsh(a))).sum())
    rhs = float((g(d) ** q).sum() ** (1.0 / q))
    return [le("trace", lhs, rhs)], {"A": a}


@register("cor46_wedge", "|g(M)|_wedge <= (|g(A)|^q + |g(B)|^q)^(1/q) for equal blocks, convex g, g^q subadditive",
          {"g": "poly(1, 0, 1)", "q": 0.5}, lambda c: _block_convex_hyp(c, zero=False))
def _cor46(ctx, n, rng):
    big, *_ = random_psd_block(n, n, rng, ctx.law)
    return bd.wedge_terms(big, n, ctx.fn("g"), ctx.num("q"), ctx.norms(n)), {"M": big, "n": n}


def _cor47_hyp(ctx):
    f = ctx.fn("f")
    c = _coefficients(f, "roots")
    m = len(c)
    return [_flag("nonneg_coefficients", f.name, all(x >= 0 for x in c), {"m": m}),
            fx.is_concave(f), fx.is_quasiconvex(fx.power(f, float(m)))]


@register("cor47", "|f(A+B)|_!^m >= |f(A)|_!^m + |f(B)|_!^m for f = a1 t + a2 t^(1/2) + ... + am t^(1/m)",
          {"f": "roots(1, 1)"}, _cor47_hyp)
def _cor47(ctx, n, rng):
    f = ctx.fn("f")
    p = float(len(_coefficients(f, "roots")))
    a, b = ctx.psd(n, rng), ctx.psd(n, rng)
    return _power_anti_terms(ctx.antinorms(n), f, p, a, b), {"A": a, "B": b}


def _cor48_hyp(ctx):
    h = ctx.fn("h")
    pos = h.default_grid()
    pos = pos[pos > 0]
    reps = [fx.is_superadditive(h), fx.is_nonnegative(h)]
    v = h(pos)
    reps.append(_flag("positive_on_(0,inf)", h.name, bool(np.all(v > 0))))
    if np.all(v > 0):
        reps.append(fx.log_concavity_margin(h, pos, interval=(0.01, 1.0)))
    return reps


@register("cor48", "det^(1/n) h(A+B) >= det^(1/n) h(A) + det^(1/n) h(B) for superadditive strictly log-concave h",
          {"h": "poly(0, 1, 1)"}, _cor48_hyp)
def _cor48(ctx, n, rng):
    h = ctx.fn("h")
    a, b = ctx.psd(n, rng), ctx.psd(n, rng)
    d = [_det(_vals(h, x)) for x in (a + b, a, b)]
    return [ge("det^(1/n) h", d[0], d[1] + d[2])], {"A": a, "B": b}


def _cor49_hyp(ctx):
    f, p = ctx.fn("f"), ctx.num("p")
    rs = ctx.b["r"] if isinstance(ctx.b["r"], tuple) else (ctx.b["r"],)
    return [fx.is_concave(f), fx.is_nonnegative(f), fx.is_superadditive(fx.power(f, p)),
            _flag("p_above_1", f.name, p > 1, {"p": p}),
            _flag("r_in_(0,1]", f.name, all(0 < r <= 1 for r in rs), {"r": list(rs)})]


@register("cor49_block", "|f(M)|_r >= (|f(A)|_r^p + |f(B)|_r^p)^(1/p) for Schatten r-anti-norms, concave f, f^p superadditive",
          {"f": "sqrt", "p": 2.0, "r": (0.25, 0.5, 1.0)}, _cor49_hyp)
def _cor49(ctx, n, rng):
    m = ctx.block(n, rng)
    rs = ctx.b["r"] if isinstance(ctx.b["r"], tuple) else (ctx.b["r"],)
    specs = ctx.antinorms(m.shape[0], default=[SchattenAnti(r) for r in rs])
    return bd.concave_block_terms(m, n, ctx.fn("f"), ctx.num("p"), specs), {"M": m, "n": n}


def _cor410_hyp(ctx):
    f, p = ctx.fn("f"), ctx.num("p")
    return [fx.is_concave(f), fx.is_nonnegative(f), fx.is_superadditive(fx.power(f, p)),
            _flag("p_above_1", f.name, p > 1, {"p": p})]


@register("cor410", "Tr f(A) >= (sum_i f^p(a_ii))^(1/p) for concave f >= 0 with f^p superadditive",
          {"f": "sqrt", "p": 2.0}, _cor410_hyp)
def _cor410(ctx, n, rng):
    f, p = ctx.fn("f"), ctx.num("p")
    a = ctx.psd(n, rng)
    d = np.clip(np.real(np.diag(a)), 0, None)
    lhs = float(f(f.validate(eigvalsh(a))).sum())
    rhs = float((f(d) ** p).sum() ** (1.0 / p))
    return [ge("trace", lhs, rhs)], {"A": a}


# ---------------------------------------------------------------------------
# normalized-trace functionals


def _criterion_reports(ctx, key):
    reps = []
    for phi in ctx.fns(key):
        _, rep = tf.criterion(phi)
        reps.append(rep)
    return reps


@lru_cache(maxsize=None)
def _inverse_pair(phi_name: str):
    return tf.TraceFunctional.inverse_pair(fx.parse_fn(phi_name))


@register("thm52_midpoint",
          "phi o tau o phi^-1 is midpoint convex (concave) on Hermitian and on diagonal pairs when phi'/phi'' is convex (concave)",
          {"phi": ("log", "exp", "pow(0.5)", "pow(2)")}, lambda c: _criterion_reports(c, "phi"))
def _thm52(ctx, n, rng):
    terms, inst = [], {}
    for phi in ctx.fns("phi"):
        F = _inverse_pair(phi.name)
        for source in ("hermitian", "diagonal"):
            a, b = tf.sample_pair(F, n, rng, source)
            t = F.midpoint_term(a, b)
            terms.append(Term(f"{phi.name} {source}", t.lhs, t.rhs))
            inst[f"{phi.name} {source}"] = {"A": a, "B": b}
    return terms, inst


@register("ex53_pressure", "log tau(exp f(A)) is convex for convex f (pressure: f = id)",
          {"f": "id"}, lambda c: [fx.is_convex(c.fn("f"))])
def _ex53(ctx, n, rng):
    f = ctx.fn("f")
    F = tf.TraceFunctional(fx.BUILTINS["log"](), fx.compose(fx.BUILTINS["exp"](), f), tf.CONVEX)
    a, b = tf.sample_pair(F, n, rng)
    return [F.midpoint_term(a, b)], {"A": a, "B": b}


def _ex54_hyp(ctx):
    g = ctx.fn("g")
    return [fx.is_concave(g), fx.is_nonnegative(g)]


@register("ex54_det", "det^(1/n) g(A) = exp tau(log g(A)) is concave for concave g > 0",
          {"g": "sqrt"}, _ex54_hyp)
def _ex54(ctx, n, rng):
    g = ctx.fn("g")
    F = tf.TraceFunctional(fx.BUILTINS["exp"](), fx.compose(fx.BUILTINS["log"](), g), tf.CONCAVE)
    a, b = tf.sample_pair(F, n, rng)
    direct = _det(_vals(g, a))
    return [F.midpoint_term(a, b), eq("det cross-check", F(a), direct, 1e-10 * (1 + abs(direct)))], {"A": a, "B": b}


def _ex55_hyp(ctx):
    r1, r2 = ctx.num("r_convex"), ctx.num("r_concave")
    f1, f2 = ctx.fn("f_convex"), ctx.fn("f_concave")
    return [fx.is_convex(f1), fx.is_nonnegative(f1), fx.is_concave(f2), fx.is_nonnegative(f2),
            _flag("r_convex_in_(0,1)", f1.name, 0 < r1 < 1, {"r": r1}),
            _flag("r_concave_above_1", f2.name, r2 > 1, {"r": r2})]


@register("ex55_schatten",
          "{Tr f(A)^(1/r)}^r is convex for convex f, r in (0,1), and concave for concave f, r > 1",
          {"r_convex": 0.5, "f_convex": "pow(2)", "r_concave": 2.0, "f_concave": "sqrt"}, _ex55_hyp)
def _ex55(ctx, n, rng):
    terms, inst = [], {}
    for key, mode in (("convex", tf.CONVEX), ("concave", tf.CONCAVE)):
        r, f = ctx.num(f"r_{key}"), ctx.fn(f"f_{key}")
        F = tf.TraceFunctional(fx.power_fn(r), fx.power(f, 1.0 / r), mode)
        a, b = tf.sample_pair(F, n, rng)
        t = F.midpoint_term(a, b)
        terms.append(Term(f"{key} r={r:g}", t.lhs, t.rhs))
        # cross-check against the Schatten (anti-)norm of f(A), normalized by n^r
        mu = _vals(f, a)
        spec = Schatten(1.0 / r) if r < 1 else SchattenAnti(1.0 / r)
        direct = float(spec.gauge(mu)) / n ** r
        terms.append(eq(f"{key} cross-check", F(a), direct, 1e-10 * (1 + abs(direct))))
        inst[key] = {"A": a, "B": b}
    return terms, inst


_PROP56_NORMS = ("kyfan(k=1)", "kyfan(k=2)", "schatten(p=1)", "schatten(p=2)", "opnorm")
_PROP56_ANTI = ("trace", "schatten_anti(q=0.5)", "minkowski", "kyfan_anti(k=1)")


def _prop56_cases(ctx, n):
    cases = []
    for spec in ctx._fit([parse_spec(s) for s in _PROP56_NORMS], n):
        cases.append((ctx.fn("phi_norm"), spec, ctx.fn("f_norm")))
    for spec in ctx._fit([parse_spec(s) for s in _PROP56_ANTI], n):
        cases.append((ctx.fn("phi_anti"), spec, ctx.fn("f_anti")))
    return cases


def _prop56_hyp(ctx):
    reps = []
    for n in ctx.config.dims:
        for phi, spec, f in _prop56_cases(ctx, n):
            h = tf.prop56_hypotheses(phi, spec, f, n)
            reps.append(_flag("prop56_hypotheses", f"{phi.name} / {spec} / {f.name} / n={n}", h["passed"], h))
    return reps


@register("prop56",
          "phi(|f(A+B)|) <= phi(|f(A)|) + phi(|f(B)|) (norms) and >= (anti-norms) under the gauge-shape hypotheses",
          {"phi_norm": "pow(1/3)", "f_norm": "poly(0, 1, 0, 1)", "phi_anti": "pow(2)", "f_anti": "sqrt"},
          _prop56_hyp)
def _prop56(ctx, n, rng):
    a, b = ctx.psd(n, rng), ctx.psd(n, rng)
    terms = []
    for phi, spec, f in _prop56_cases(ctx, n):
        terms += [Term(f"{phi.name} {t.label}", t.lhs, t.rhs) for t in tf.prop56_terms(phi, spec, f, a, b)]
    return terms, {"A": a, "B": b}


@register("eq51", "(mean x_i/phi'(t_i))^2 <= [phi'/phi''](mean t) mean(phi''(t_i) x_i^2/phi'(t_i)^3) when the criterion holds",
          {"phi": ("log", "exp", "pow(0.5)", "pow(2)")}, lambda c: _criterion_reports(c, "phi"))
def _eq51(ctx, n, rng):
    terms, inst = [], {}
    for phi in ctx.fns("phi"):
        t, x = tf.sample_eq51(phi, n, rng)
        term = tf.eq51_term(phi, t, x)
        terms.append(Term(phi.name, term.lhs, term.rhs))
        inst[phi.name] = {"t": t, "x": x}
    return terms, inst


# ---------------------------------------------------------------------------
# running


def list_checks() -> list[tuple[str, str]]:
    return [(c.check_id, c.anchor) for c in REGISTRY.values()]


def get_check(check_id: str) -> Check:
    try:
        return REGISTRY[check_id]
    except KeyError:
        raise ParameterError(f"unknown check {check_id!r}") from None


def _run_dim(check: Check, ctx: Context, n: int) -> Tally:
    cfg = ctx.config
    tally = Tally(cfg.tol)
    for t in range(cfg.trials):
        rng = trial_rng(cfg.seed, check.check_id, n, t)
        terms, inst = check.trial(ctx, n, rng)
        tally.add(terms, {"n": n, "trial": t}, inst)
    return tally


def run_check(check_id: str, config: CheckConfig | None = None) -> CheckReport:
    """Run one registered check under `config` (defaults: CheckConfig())."""
    config = config or CheckConfig()
    check = get_check(check_id)
    start = time.perf_counter()
    ctx = Context(check, config)
    certs = check.hypotheses(ctx)
    cert_dicts = [c.as_dict() for c in certs]
    dims = [n for n in config.dims if n >= check.min_dim]
    if not all(c.passed for c in certs):
        failed = [f"{c.predicate}({c.fn})" for c in certs if not c.passed]
        rep = CheckReport.unmet(check_id, dims, config.seed, config.tol, ctx.raw, cert_dicts,
                                [f"failed hypotheses: {', '.join(failed)}"])
        rep.wall_time = time.perf_counter() - start
        return rep
    if config.threads > 1 and len(dims) > 1:
        with ThreadPoolExecutor(max_workers=config.threads) as pool:
            tallies = list(pool.map(lambda n: _run_dim(check, ctx, n), dims))
    else:
        tallies = [_run_dim(check, ctx, n) for n in dims]
    total = Tally(config.tol)
    for t in tallies:
        total.merge(t)
    extra = {"spectrum": config.spectrum}
    if config.m is not None:
        extra["m"] = config.m
    if config.specs:
        extra["specs"] = [str(x) for x in config.specs]
    return CheckReport.from_tally(check_id, total, dims, config.seed, {**ctx.raw, **extra}, cert_dicts,
                                  time.perf_counter() - start)


def run_suite(check_ids=None, config: CheckConfig | None = None) -> list[CheckReport]:
    ids = list(REGISTRY) if check_ids is None else list(check_ids)
    return [run_check(c, config) for c in ids]


def reverify(report: CheckReport, config: CheckConfig | None = None) -> CheckReport:
    """Re-run exactly the trial that produced the worst margin of `report`."""
    check = get_check(report.check_id)
    b = report.bindings
    cfg = config or CheckConfig(
        dims=tuple(report.dims), seed=report.seed, tol=report.tol,
        spectrum=b.get("spectrum", "uniform01"), specs=tuple(b.get("specs", ())), m=b.get("m"),
        bindings={k: v for k, v in b.items() if k in check.defaults},
    )
    ctx = Context(check, cfg)
    n, t = report.worst_key["n"], report.worst_key["trial"]
    rng = trial_rng(cfg.seed, check.check_id, n, t)
    terms, inst = check.trial(ctx, n, rng)
    tally = Tally(cfg.tol)
    tally.add(terms, {"n": n, "trial": t}, inst)
    return CheckReport.from_tally(check.check_id, tally, [n], cfg.seed, ctx.raw)
