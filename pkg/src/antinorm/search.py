"""Counterexample searches: random sampling plus coordinate hill-climbing.

Each target describes a claimed inequality that is known (or suspected) to
fail, a box of parameters and a map from parameters to matrices.  The
objective is the *violation* ``claimed_small - claimed_large``: positive
means the claim fails on that instance.  Matrices are always rebuilt from
the stored instance when re-verifying, never from the parameters.

Reductions used by the parametrizations: if Z = U D V is a singular value
decomposition then Z*AZ and Z* f(A) Z are unitarily similar to D (U*AU) D
and D f(U*AU) D, so Z may be taken diagonal with entries in [1, 5]
(expansive) or [0, 1] (contraction) without loss of generality.
"""
from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np

from . import functions as fx
from . import matfile
from .checks import DEFAULT_SEED, _binding, _flag
from .errors import ParameterError
from .norms import KyFan, as_antinorm, parse_spec
from .randmat import trial_rng
from .spectral import eig_hermitian, eigvalsh, singular_values

FOUND, NONE_FOUND, UNMET = "found", "none-found", "hypotheses-not-met"
ZERO_CUTOFF = 1e-12


def cayley_unitary(params, n: int) -> np.ndarray:
    """Unitary (I - iK)(I + iK)^-1 from n^2 real parameters (K Hermitian)."""
    params = np.asarray(params, dtype=float)
    k = np.zeros((n, n), dtype=complex)
    iu = np.triu_indices(n, 1)
    m = len(iu[0])
    k[np.diag_indices(n)] = params[:n]
    k[iu] = params[n:n + m] + 1j * params[n + m:n + 2 * m]
    k = k + np.triu(k, 1).conj().T
    eye = np.eye(n)
    return (eye - 1j * k) @ np.linalg.inv(eye + 1j * k)


def _hermitian_from(w, lam):
    return (w * lam) @ w.conj().T


def _clean(mu):
    """Zero singular values at round-off level; q < 1 gauges would amplify them."""
    mu = np.asarray(mu, dtype=float)
    top = mu.max(initial=0.0)
    return np.where(mu <= ZERO_CUTOFF * top, 0.0, mu)


def _clean_eig(w):
    """Eigenvalues at round-off level set to 0 before f sees them (sqrt would turn 1e-17 into 3e-9)."""
    top = np.abs(w).max(initial=0.0)
    return np.where(np.abs(w) <= ZERO_CUTOFF * top, 0.0, w)


def _fvals(f, m):
    return _clean(np.sort(np.abs(f(f.validate(_clean_eig(eigvalsh(m))))))[::-1])


def _fmatrix(f, a):
    d = eig_hermitian(a)
    return d.map(f(f.validate(_clean_eig(d.eigenvalues))))


def _svals(m):
    return _clean(singular_values(m))


@dataclass(frozen=True)
class Target:
    target_id: str
    anchor: str
    defaults: dict
    bounds: Callable          # ctx -> (lo, hi)
    build: Callable           # (theta, ctx) -> instance dict of matrices
    violation: Callable       # (instance, ctx) -> (violation, lhs, rhs, label)
    hypotheses: Callable = lambda ctx: []
    expectation: str = "violation"


class _Ctx:
    def __init__(self, target: Target, bindings: dict | None):
        self.raw = dict(target.defaults)
        unknown = set(bindings or {}) - set(target.defaults)
        if unknown:
            raise ParameterError(f"{target.target_id} has no binding(s) {sorted(unknown)}")
        self.raw.update(bindings or {})
        self.b = {}
        for k, v in self.raw.items():
            self.b[k] = parse_spec(v) if k == "spec" else _binding(v)

    @property
    def n(self) -> int:
        return int(self.b["n"])


TARGETS: dict[str, Target] = {}


def _register(t: Target):
    TARGETS[t.target_id] = t
    return t


# ---------------------------------------------------------------------------
# superadditive but not convex g: the rank-one family


def _family(theta, ctx):
    s, t = theta
    r = math.sqrt(s * t)
    a = 0.5 * np.array([[s, r], [r, t]], dtype=complex)
    b = 0.5 * np.array([[s, -r], [-r, t]], dtype=complex)
    return {"A": a, "B": b, "s": s, "t": t}


def _nonconvex_violation(inst, ctx):
    g = ctx.b["g"]
    a, b = inst["A"], inst["B"]
    tr = [float(g(g.validate(eigvalsh(x))).sum()) for x in (a + b, a, b)]
    # claim: Tr g(A+B) >= Tr g(A) + Tr g(B)
    return tr[1] + tr[2] - tr[0], tr[1] + tr[2], tr[0], "trace"


def _nonconvex_hyp(ctx):
    g = ctx.b["g"]
    conv = fx.is_convex(g)
    return [fx.is_superadditive(g), fx.vanishes_at_zero(g), fx.is_nonnegative(g),
            _flag("not_convex", g.name, not conv.passed, conv.as_dict())]


_register(Target(
    "cex_nonconvex_g",
    "superadditivity of |g(.)|_! needs convexity of g, not just superadditivity (rank-one family)",
    {"g": "minsq"},
    lambda ctx: (np.array([1e-3, 1e-3]), np.array([3.0, 3.0])),
    _family, _nonconvex_violation, _nonconvex_hyp,
))


# ---------------------------------------------------------------------------
# expansive Z: |f(Z*AZ)|_! <= |Z* f(A) Z|_!


def _psd_params(n, lam_lo, lam_hi):
    lo = np.concatenate([np.full(n, lam_lo), np.full(n * n, -3.0)])
    hi = np.concatenate([np.full(n, lam_hi), np.full(n * n, 3.0)])
    return lo, hi


def _diag_params(ctx, z_lo, z_hi, lam_lo, lam_hi):
    n = ctx.n
    lo, hi = _psd_params(n, lam_lo, lam_hi)
    return np.concatenate([np.full(n, z_lo), lo]), np.concatenate([np.full(n, z_hi), hi])


def _build_az(theta, ctx):
    n = ctx.n
    z = np.asarray(theta[:n])
    lam = np.asarray(theta[n:2 * n])
    w = cayley_unitary(theta[2 * n:], n)
    return {"A": _hermitian_from(w, lam), "Z": np.diag(z).astype(complex)}


def _expansive_violation(inst, ctx):
    f, spec = ctx.b["f"], ctx.b["spec"]
    a, z = inst["A"], inst["Z"]
    lhs = float(spec.gauge(_fvals(f, z.conj().T @ a @ z)))
    rhs = float(spec.gauge(_svals(z.conj().T @ _fmatrix(f, a) @ z)))
    # claim: |f(Z*AZ)|_! <= |Z* f(A) Z|_!
    return lhs - rhs, lhs, rhs, str(spec)


def _expansive_hyp(ctx):
    f = ctx.b["f"]
    return [fx.is_concave(f), fx.is_nonnegative(f), _flag("antinorm", str(ctx.b["spec"]), _is_anti(ctx.b["spec"]))]


def _is_anti(spec):
    try:
        as_antinorm(spec)
        return True
    except ParameterError:
        return False


_register(Target(
    "cex_expansive_antinorm",
    "the reverse inequality |f(Z*AZ)|_! <= |Z* f(A) Z|_! for expansive Z fails for Ky Fan anti-norms",
    {"spec": "kyfan_anti(k=1)", "f": "ramp_minus_half", "n": 2},
    lambda ctx: _diag_params(ctx, 1.0, 5.0, 0.0, 3.0),
    _build_az, _expansive_violation, _expansive_hyp,
))

_register(Target(
    "open_expansive_schatten",
    "open: does |f(Z*AZ)|_q <= |Z* f(A) Z|_q hold for Schatten q-anti-norms and expansive Z?",
    {"spec": "schatten_anti(q=0.5)", "f": "ramp_minus_half", "n": 2},
    lambda ctx: _diag_params(ctx, 1.0, 5.0, 0.0, 3.0),
    _build_az, _expansive_violation, _expansive_hyp, expectation="open",
))


# ---------------------------------------------------------------------------
# contraction Z, symmetric norms, non-monotone concave f


def _contraction_violation(inst, ctx):
    f = ctx.b["f"]
    a, z = inst["A"], inst["Z"]
    lhs = _fvals(f, z.conj().T @ a @ z)
    rhs = _svals(z.conj().T @ _fmatrix(f, a) @ z)
    best = None
    for k in range(1, lhs.size + 1):
        spec = KyFan(k)
        l, r = float(spec.gauge(lhs)), float(spec.gauge(rhs))
        # claim: |f(Z*AZ)| >= |Z* f(A) Z|
        if best is None or r - l > best[0]:
            best = (r - l, r, l, str(spec))
    return best


def _contraction_hyp(ctx):
    f = ctx.b["f"]
    mono = fx.is_increasing(f)
    dec = fx.is_increasing(fx.ScalarFn("neg", lambda t: -f(t), f.domain, grid_hint=f.grid_hint))
    return [fx.is_concave(f), fx.is_nonnegative(f), _flag("zero_in_domain", f.name, bool(f.domain.contains(0.0))),
            _flag("not_monotone", f.name, not (mono.passed or dec.passed))]


def _contraction_bounds(ctx):
    f = ctx.b["f"]
    lo, hi = f.domain.compact((0.0, 3.0), 0.0)
    return _diag_params(ctx, 0.0, 1.0, max(lo, 0.0), hi)


_register(Target(
    "open_contraction_symmetric_norm",
    "open: does |f(Z*AZ)| >= |Z* f(A) Z| hold for symmetric norms, contractions Z and non-monotone concave f?",
    {"f": "tent", "n": 2},
    _contraction_bounds, _build_az, _contraction_violation, _contraction_hyp, expectation="open",
))


# ---------------------------------------------------------------------------
# driver


@dataclass
class SearchResult:
    target: str
    status: str
    violation: float
    lhs: float
    rhs: float
    label: str
    params: list
    instance: dict | None
    samples: int
    evaluations: int
    sampled_violations: int
    budget: int
    seed: int
    tol: float
    bindings: dict
    certificates: list = field(default_factory=list)
    expectation: str = "violation"
    wall_time: float = 0.0

    @property
    def found(self) -> bool:
        return self.status == FOUND

    @property
    def scale(self) -> float:
        return abs(self.lhs) + abs(self.rhs) + 1.0

    def to_dict(self) -> dict:
        return matfile.encode(asdict(self))

    def summary_line(self) -> str:
        return (f"{self.target:<32} {self.status:<19} violation={self.violation:<12.6g} "
                f"evaluations={self.evaluations} [{self.label}]")


def _climb(objective, theta, value, lo, hi, budget):
    """Coordinate-wise hill-climb maximizing `objective` inside the box."""
    step = 0.1 * (hi - lo)
    used = 0
    while used < budget and np.max(step / np.maximum(hi - lo, 1e-300)) > 1e-9:
        improved = False
        for i in range(theta.size):
            for sgn in (1.0, -1.0):
                if used >= budget:
                    break
                cand = theta.copy()
                cand[i] = np.clip(cand[i] + sgn * step[i], lo[i], hi[i])
                v = objective(cand)
                used += 1
                if v > value:
                    theta, value, improved = cand, v, True
                    break
        if not improved:
            step = step * 0.5
    return theta, value, used


def search_counterexample(target_id: str, budget: int = 10_000, seed: int = DEFAULT_SEED,
                          bindings: dict | None = None, tol: float = 1e-9) -> SearchResult:
    """Random sampling followed by hill-climbing on the violation.

    The first half of the budget (all of it once a violation shows up,
    capped) samples the parameter box uniformly; the rest climbs from the
    best sample.  A target counts as found when the best violation exceeds
    10 tol (|lhs| + |rhs| + 1).
    """
    try:
        target = TARGETS[target_id]
    except KeyError:
        raise ParameterError(f"unknown search target {target_id!r}") from None
    if budget < 1:
        raise ParameterError("budget must be >= 1")
    start = time.perf_counter()
    ctx = _Ctx(target, bindings)
    certs = target.hypotheses(ctx)
    cert_dicts = [c.as_dict() for c in certs]
    if not all(c.passed for c in certs):
        return SearchResult(target_id, UNMET, -math.inf, math.nan, math.nan, "", [], None, 0, 0, 0, budget,
                            seed, tol, ctx.raw, cert_dicts, target.expectation, time.perf_counter() - start)
    lo, hi = target.bounds(ctx)

    def value(theta):
        v, *_ = target.violation(target.build(theta, ctx), ctx)
        return -math.inf if math.isnan(v) else v

    best_theta, best = None, -math.inf
    samples = hits = 0
    random_budget = max(1, budget // 2)
    for i in range(random_budget):
        rng = trial_rng(seed, target_id, i)
        theta = rng.uniform(lo, hi)
        v = value(theta)
        samples += 1
        if v > 10 * tol:
            hits += 1
        if v > best:
            best_theta, best = theta, v
        if hits and samples >= min(200, random_budget):
            break
    climb_budget = budget - samples
    if hits:
        climb_budget = min(climb_budget, 2000)
    theta, best, used = _climb(value, best_theta, best, lo, hi, climb_budget)
    inst = target.build(theta, ctx)
    v, lhs, rhs, label = target.violation(inst, ctx)
    found = v > 10 * tol * (abs(lhs) + abs(rhs) + 1.0)
    return SearchResult(
        target_id, FOUND if found else NONE_FOUND, float(v), float(lhs), float(rhs), label,
        [float(x) for x in theta], inst if found else None, samples, samples + used, hits, budget,
        seed, tol, ctx.raw, cert_dicts, target.expectation, time.perf_counter() - start,
    )


def verify_instance(doc) -> tuple[float, float, float, str]:
    """Recompute (violation, lhs, rhs, label) from a saved result.

    `doc` is a :class:`SearchResult`, its ``to_dict()`` form, or a path to
    a JSON file written by :func:`save_result`.
    """
    if isinstance(doc, SearchResult):
        doc = doc.to_dict()
    elif not isinstance(doc, dict):
        doc = matfile.encode(matfile.load(doc))
    data = matfile.decode(doc)
    target = TARGETS[data["target"]]
    ctx = _Ctx(target, data["bindings"])
    if data.get("instance") is None:
        raise ParameterError("result carries no instance to verify")
    return target.violation(data["instance"], ctx)


def save_result(path, result: SearchResult):
    return matfile.save(path, result.to_dict())


def list_targets() -> list[tuple[str, str]]:
    return [(t.target_id, t.anchor) for t in TARGETS.values()]
