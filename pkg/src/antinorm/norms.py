"""Symmetric norms and symmetric anti-norms as (anti-)gauges on singular values.

Every spec is an immutable description with a ``gauge(mu)`` method acting on
singular values sorted in decreasing order along the last axis (batched
input is fine).  ``evaluate(M)`` applies the gauge to ``singular_values(M)``.

Textual forms round-trip through :func:`parse_spec`::

    kyfan(k=2)  schatten(p=3)  opnorm
    trace  kyfan_anti(k=2)  schatten_anti(q=0.5)  schatten_neg(r=-1)
    minkowski  delta(k=2)  weighted_sum(w=(0, 1, 2))  weighted_geo(w=(1, 1, 2))
    qlift(q=0.5, inner=kyfan_anti(k=1))
    geo_mean(trace, minkowski)  harmonic_mean(a, b)  sum(a, b)
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .grammar import Call, format_number, parse_expr
from .spectral import singular_values

SINGULAR_CUTOFF = 1e-12


def _mu(mu) -> np.ndarray:
    return np.clip(np.asarray(mu, dtype=float), 0.0, None)


def _dim(mu) -> int:
    return np.shape(mu)[-1]


class NormSpec:
    """A symmetric norm, given by its symmetric gauge."""

    def gauge(self, mu):
        raise NotImplementedError

    def check(self, n: int) -> None:
        pass

    def evaluate(self, m) -> float:
        mu = singular_values(m)
        self.check(mu.size)
        return float(self.gauge(mu))

    def __str__(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True)
class KyFan(NormSpec):
    k: int

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 1:
            raise ParameterError(f"Ky Fan index must be a positive integer, got {self.k}")

    def check(self, n):
        if self.k > n:
            raise ParameterError(f"kyfan(k={self.k}) needs dimension >= {self.k}, got {n}")

    def gauge(self, mu):
        return _mu(mu)[..., : self.k].sum(axis=-1)

    def __str__(self):
        return f"kyfan(k={self.k})"


@dataclass(frozen=True)
class Schatten(NormSpec):
    p: float

    def __post_init__(self):
        if not self.p >= 1:
            raise ParameterError(f"Schatten norm needs p >= 1, got {self.p}")

    def gauge(self, mu):
        mu = _mu(mu)
        if math.isinf(self.p):
            return mu[..., 0]
        top = mu.max(axis=-1, keepdims=True)
        safe = np.where(top > 0, top, 1.0)
        return top[..., 0] * (((mu / safe) ** self.p).sum(axis=-1)) ** (1.0 / self.p)

    def __str__(self):
        return "schatten(p=inf)" if math.isinf(self.p) else f"schatten(p={format_number(self.p)})"


@dataclass(frozen=True)
class OperatorNorm(NormSpec):
    def gauge(self, mu):
        return _mu(mu)[..., 0]

    def __str__(self):
        return "opnorm"


class AntiNormSpec:
    """A symmetric anti-norm, given by its anti-gauge."""

    depth = 1

    def gauge(self, mu):
        raise NotImplementedError

    def check(self, n: int) -> None:
        pass

    def regular(self, n: int) -> bool:
        raise NotImplementedError

    def evaluate(self, m) -> float:
        mu = singular_values(m)
        self.check(mu.size)
        return float(self.gauge(mu))

    def __str__(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True)
class Trace(AntiNormSpec):
    def gauge(self, mu):
        return _mu(mu).sum(axis=-1)

    def regular(self, n):
        return True

    def __str__(self):
        return "trace"


@dataclass(frozen=True)
class KyFanAnti(AntiNormSpec):
    """Sum of the k smallest singular values."""

    k: int

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 1:
            raise ParameterError(f"Ky Fan anti-norm index must be a positive integer, got {self.k}")

    def check(self, n):
        if self.k > n:
            raise ParameterError(f"kyfan_anti(k={self.k}) needs dimension >= {self.k}, got {n}")

    def gauge(self, mu):
        return _mu(mu)[..., _dim(mu) - self.k:].sum(axis=-1)

    def regular(self, n):
        return self.k == n

    def __str__(self):
        return f"kyfan_anti(k={self.k})"


@dataclass(frozen=True)
class SchattenAnti(AntiNormSpec):
    """(sum mu_j^q)^(1/q) for q in (0, 1]."""

    q: float

    def __post_init__(self):
        if not 0 < self.q <= 1:
            raise ParameterError(f"Schatten anti-norm needs q in (0, 1], got {self.q}")

    def gauge(self, mu):
        mu = _mu(mu)
        top = mu[..., :1]
        safe = np.where(top > 0, top, 1.0)
        return top[..., 0] * (((mu / safe) ** self.q).sum(axis=-1)) ** (1.0 / self.q)

    def log_gauge(self, mu):
        """log of the gauge, finite even when the gauge itself overflows (small q)."""
        mu = _mu(mu)
        top = mu[..., 0]
        with np.errstate(divide="ignore"):
            return np.log(top) + np.log(((mu / top[..., None]) ** self.q).sum(axis=-1)) / self.q

    def regular(self, n):
        return True

    def __str__(self):
        return f"schatten_anti(q={format_number(self.q)})"


@dataclass(frozen=True)
class SchattenNeg(AntiNormSpec):
    """(sum mu_j^r)^(1/r) for r < 0; zero on (numerically) singular matrices."""

    r: float

    def __post_init__(self):
        if not self.r < 0:
            raise ParameterError(f"negative-exponent Schatten anti-norm needs r < 0, got {self.r}")

    def gauge(self, mu):
        mu = _mu(mu)
        top, low = mu[..., 0], mu[..., -1]
        singular = (top <= 0) | (low <= SINGULAR_CUTOFF * top)
        safe_top = np.where(top > 0, top, 1.0)[..., None]
        scaled = np.where(singular[..., None], 1.0, mu / safe_top)
        val = safe_top[..., 0] * ((scaled ** self.r).sum(axis=-1)) ** (1.0 / self.r)
        return np.where(singular, 0.0, val)

    def regular(self, n):
        return n == 1

    def __str__(self):
        return f"schatten_neg(r={format_number(self.r)})"


@dataclass(frozen=True)
class Minkowski(AntiNormSpec):
    """det^(1/n): geometric mean of the singular values."""

    def gauge(self, mu):
        mu = _mu(mu)
        return np.prod(mu, axis=-1) ** (1.0 / _dim(mu))

    def regular(self, n):
        return n == 1

    def __str__(self):
        return "minkowski"


@dataclass(frozen=True)
class Delta(AntiNormSpec):
    """Geometric mean of the k smallest singular values (closed product formula)."""

    k: int

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 1:
            raise ParameterError(f"delta index must be a positive integer, got {self.k}")

    def check(self, n):
        if self.k > n:
            raise ParameterError(f"delta(k={self.k}) needs dimension >= {self.k}, got {n}")

    def gauge(self, mu):
        mu = _mu(mu)
        return np.prod(mu[..., _dim(mu) - self.k:], axis=-1) ** (1.0 / self.k)

    def regular(self, n):
        return n == 1

    def __str__(self):
        return f"delta(k={self.k})"


def _fmt_tuple(w) -> str:
    body = ", ".join(format_number(x) for x in w)
    return f"({body},)" if len(w) == 1 else f"({body})"


def _weights(w, name):
    w = tuple(float(x) for x in w)
    if not w or min(w) < 0 or any(b < a for a, b in zip(w, w[1:])):
        raise ParameterError(f"{name} needs non-negative, non-decreasing weights, got {w}")
    return w


@dataclass(frozen=True)
class WeightedSum(AntiNormSpec):
    """sum_k w_k mu_k with 0 <= w_1 <= ... <= w_n (mu decreasing)."""

    w: tuple

    def __post_init__(self):
        object.__setattr__(self, "w", _weights(self.w, "weighted_sum"))

    def check(self, n):
        if len(self.w) != n:
            raise ParameterError(f"weighted_sum has {len(self.w)} weights, dimension is {n}")

    def gauge(self, mu):
        return (_mu(mu) * np.array(self.w)).sum(axis=-1)

    def regular(self, n):
        return self.w[0] > 0

    def __str__(self):
        return f"weighted_sum(w={_fmt_tuple(self.w)})"


@dataclass(frozen=True)
class WeightedGeo(AntiNormSpec):
    """(prod_k mu_k^w_k)^(1/sum w) with 0 <= w_1 <= ... <= w_n; mu^0 = 1."""

    w: tuple

    def __post_init__(self):
        w = _weights(self.w, "weighted_geo")
        if sum(w) <= 0:
            raise ParameterError("weighted_geo needs a positive weight")
        object.__setattr__(self, "w", w)

    def check(self, n):
        if len(self.w) != n:
            raise ParameterError(f"weighted_geo has {len(self.w)} weights, dimension is {n}")

    def gauge(self, mu):
        mu = _mu(mu)
        w = np.array(self.w)
        factors = np.where(w > 0, mu ** np.where(w > 0, w, 1.0), 1.0)
        return np.prod(factors, axis=-1) ** (1.0 / w.sum())

    def regular(self, n):
        return n == 1

    def __str__(self):
        return f"weighted_geo(w={_fmt_tuple(self.w)})"


@dataclass(frozen=True)
class QLift(AntiNormSpec):
    """A -> |A^q|_inner^(1/q) for q in (0, 1)."""

    inner: AntiNormSpec
    q: float

    def __post_init__(self):
        if not 0 < self.q < 1:
            raise ParameterError(f"qlift needs q in (0, 1), got {self.q}")
        if not isinstance(self.inner, AntiNormSpec):
            raise ParameterError("qlift needs an anti-norm inside")

    @property
    def depth(self):
        return 1 + self.inner.depth

    def check(self, n):
        self.inner.check(n)

    def gauge(self, mu):
        return np.clip(self.inner.gauge(_mu(mu) ** self.q), 0.0, None) ** (1.0 / self.q)

    def regular(self, n):
        return self.inner.regular(n)

    def __str__(self):
        return f"qlift(q={format_number(self.q)}, inner={self.inner})"


@dataclass(frozen=True)
class _Pair(AntiNormSpec):
    a: AntiNormSpec
    b: AntiNormSpec

    def __post_init__(self):
        if not (isinstance(self.a, AntiNormSpec) and isinstance(self.b, AntiNormSpec)):
            raise ParameterError(f"{self.op} combines two anti-norms")

    @property
    def depth(self):
        return 1 + max(self.a.depth, self.b.depth)

    def check(self, n):
        self.a.check(n)
        self.b.check(n)

    def __str__(self):
        return f"{self.op}({self.a}, {self.b})"


class GeoMean(_Pair):
    op = "geo_mean"

    def gauge(self, mu):
        return np.sqrt(self.a.gauge(mu) * self.b.gauge(mu))

    def regular(self, n):
        return self.a.regular(n) and self.b.regular(n)


class HarmonicMean(_Pair):
    op = "harmonic_mean"

    def gauge(self, mu):
        x, y = np.asarray(self.a.gauge(mu)), np.asarray(self.b.gauge(mu))
        s = x + y
        return np.where((x > 0) & (y > 0), 2.0 * x * y / np.where(s > 0, s, 1.0), 0.0)

    def regular(self, n):
        return self.a.regular(n) and self.b.regular(n)


class SumAnti(_Pair):
    op = "sum"

    def gauge(self, mu):
        return self.a.gauge(mu) + self.b.gauge(mu)

    def regular(self, n):
        return self.a.regular(n) or self.b.regular(n)


# ---------------------------------------------------------------------------
# operations


def q_lift(spec: AntiNormSpec, q: float) -> QLift:
    return QLift(as_antinorm(spec), q)


def combine(op: str, a, b) -> AntiNormSpec:
    cls = {"geo_mean": GeoMean, "harmonic_mean": HarmonicMean, "sum": SumAnti}.get(op)
    if cls is None:
        raise ParameterError(f"unknown combinator {op!r}")
    return cls(as_antinorm(a), as_antinorm(b))


def eval_norm(spec, m) -> float:
    return as_norm(spec).evaluate(m)


def eval_antinorm(spec, m) -> float:
    """Anti-norm of a general matrix, through its singular values (i.e. of |M|)."""
    return as_antinorm(spec).evaluate(m)


def wedge_norm(spec, m, n: int) -> float:
    """|diag(mu_1(M), ..., mu_n(M))| for a norm defined on n x n matrices."""
    mu = singular_values(m)
    if n > mu.size:
        raise ParameterError(f"wedge needs n <= dim(M) = {mu.size}, got {n}")
    spec = as_norm(spec)
    spec.check(n)
    return float(spec.gauge(mu[:n]))


def pad(mu, size: int) -> np.ndarray:
    """Append zeros to decreasing singular values (the A -> A + 0 embedding)."""
    mu = np.asarray(mu, dtype=float)
    extra = size - mu.shape[-1]
    if extra < 0:
        raise ParameterError("cannot pad to a smaller size")
    return np.concatenate([mu, np.zeros(mu.shape[:-1] + (extra,))], axis=-1)


# ---------------------------------------------------------------------------
# parsing


def _int(node, name, key="k"):
    args, kwargs = node.args, node.kwargs
    v = kwargs.get(key, args[0] if args else None)
    if not isinstance(v, (int, float)) or int(v) != v:
        raise ParameterError(f"{name} needs an integer {key}")
    return int(v)


def _num(node, name, key):
    args, kwargs = node.args, node.kwargs
    v = kwargs.get(key, args[0] if args else None)
    if isinstance(v, Call) and v.name == "inf":
        return math.inf
    if not isinstance(v, (int, float)):
        raise ParameterError(f"{name} needs a numeric {key}")
    return float(v)


def _build(node):
    if not isinstance(node, Call):
        raise ParameterError(f"expected a norm or anti-norm, got {node!r}")
    name = node.name
    if name == "kyfan":
        return KyFan(_int(node, name))
    if name == "schatten":
        return Schatten(_num(node, name, "p"))
    if name == "opnorm":
        return OperatorNorm()
    if name == "trace":
        return Trace()
    if name == "kyfan_anti":
        return KyFanAnti(_int(node, name))
    if name == "schatten_anti":
        return SchattenAnti(_num(node, name, "q"))
    if name == "schatten_neg":
        return SchattenNeg(_num(node, name, "r"))
    if name == "minkowski":
        return Minkowski()
    if name == "delta":
        return Delta(_int(node, name))
    if name in ("weighted_sum", "weighted_geo"):
        w = node.kwargs.get("w", node.args[0] if len(node.args) == 1 and isinstance(node.args[0], tuple) else node.args)
        cls = WeightedSum if name == "weighted_sum" else WeightedGeo
        return cls(tuple(w) if isinstance(w, tuple) else (w,))
    if name == "qlift":
        q = node.kwargs.get("q")
        inner = node.kwargs.get("inner")
        pos = list(node.args)
        for v in pos:
            if isinstance(v, Call) and inner is None:
                inner = v
            elif isinstance(v, (int, float)) and q is None:
                q = v
        if q is None or inner is None:
            raise ParameterError("qlift needs q and inner")
        return QLift(as_antinorm(_build(inner)), float(q))
    if name in ("geo_mean", "harmonic_mean", "sum"):
        parts = list(node.args) + [node.kwargs[k] for k in ("a", "b") if k in node.kwargs]
        if len(parts) != 2:
            raise ParameterError(f"{name} needs exactly two anti-norms")
        return combine(name, _build(parts[0]), _build(parts[1]))
    raise ParameterError(f"unknown norm or anti-norm {name!r}")


def parse_spec(text: str):
    return _build(parse_expr(text))


def as_antinorm(spec) -> AntiNormSpec:
    spec = parse_spec(spec) if isinstance(spec, str) else spec
    if not isinstance(spec, AntiNormSpec):
        raise ParameterError(f"{spec} is not an anti-norm")
    return spec


def as_norm(spec) -> NormSpec:
    spec = parse_spec(spec) if isinstance(spec, str) else spec
    if not isinstance(spec, NormSpec):
        raise ParameterError(f"{spec} is not a norm")
    return spec


# ---------------------------------------------------------------------------
# catalogs


def norm_catalog(n: int) -> list[NormSpec]:
    """All Ky Fan norms plus Schatten p in {1, 2, 3}."""
    return [KyFan(k) for k in range(1, n + 1)] + [Schatten(p) for p in (1, 2, 3)]


def antinorm_catalog(n: int) -> list[AntiNormSpec]:
    """The anti-norms swept by the checks: every base kind plus compositions up to depth 3."""
    ks = sorted({1, max(1, n // 2), n})
    ramp = tuple(float(i) for i in range(n))
    ones = tuple(1.0 for _ in range(n))
    cat: list[AntiNormSpec] = [Trace()]
    cat += [KyFanAnti(k) for k in ks if k < n]
    cat += [SchattenAnti(q) for q in (0.25, 0.5, 1.0)]
    cat += [SchattenNeg(r) for r in (-0.5, -1.0, -2.0)]
    cat += [Minkowski()]
    cat += [Delta(k) for k in ks]
    cat += [WeightedSum(ramp), WeightedSum(tuple(x + 1.0 for x in ramp)), WeightedGeo(tuple(x + 1.0 for x in ramp))]
    if n > 1:
        cat += [WeightedGeo((0.0,) * (n - 1) + (1.0,))]
    else:
        cat += [WeightedGeo(ones)]
    cat += [
        QLift(KyFanAnti(1), 0.5),
        QLift(Minkowski(), 1.0 / 3.0),
        GeoMean(KyFanAnti(1), Trace()),
        HarmonicMean(Trace(), Minkowski()),
        SumAnti(SchattenAnti(0.5), Delta(1)),
        QLift(GeoMean(Trace(), Delta(min(2, n))), 0.5),
        HarmonicMean(QLift(SchattenNeg(-1.0), 0.5), SchattenAnti(0.5)),
        GeoMean(QLift(Trace(), 0.25), SumAnti(KyFanAnti(1), Minkowski())),
    ]
    return cat
