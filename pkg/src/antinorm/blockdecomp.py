"""Unitary decomposition of a positive block matrix and the block inequalities.

For M = [[A, X], [X*, B]] >= 0 there are unitaries U, V with
M = U (A + 0) U* + V (0 + B) V*.  The construction is explicit: with
R = M^(1/2) = [[C, Y], [Y*, D]], put T = [[C, Y], [0, 0]] and
S = [[0, 0], [Y*, D]].  Then M = T*T + S*S, TT* = A + 0 and SS* = 0 + B, and
the polar factors of T* and S* carry TT* to T*T and SS* to S*S.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .functions import as_fn
from .norms import as_antinorm, as_norm, pad
from .report import CheckReport, Tally, ge, le
from .spectral import direct_sum, eigvalsh, frob, hermitian, polar, sqrt_psd

BLOCK_TOL = 1e-8
UNITARY_TOL = 1e-10


@dataclass(frozen=True)
class BlockDecomposition:
    U: np.ndarray
    V: np.ndarray
    A: np.ndarray
    B: np.ndarray

    @property
    def n(self) -> int:
        return self.A.shape[0]

    @property
    def m(self) -> int:
        return self.B.shape[0]

    def reconstruct(self) -> np.ndarray:
        za = direct_sum(self.A, np.zeros((self.m, self.m)))
        zb = direct_sum(np.zeros((self.n, self.n)), self.B)
        return self.U @ za @ self.U.conj().T + self.V @ zb @ self.V.conj().T

    def residual(self, m) -> float:
        return frob(self.reconstruct() - m)

    def unitarity(self) -> float:
        """max(|U*U - I|_F, |V*V - I|_F)."""
        eye = np.eye(self.n + self.m)
        return max(frob(self.U.conj().T @ self.U - eye), frob(self.V.conj().T @ self.V - eye))


def split_blocks(m, n: int, k: int):
    if m.shape != (n + k, n + k):
        raise ParameterError(f"expected a {(n + k)}x{(n + k)} matrix, got {m.shape}")
    return m[:n, :n], m[:n, n:], m[n:, n:]


def decompose_block(m, n: int, k: int | None = None) -> BlockDecomposition:
    """Unitaries U, V with M = U(A + 0)U* + V(0 + B)V*.

    Args:
        m: psd matrix of size n + k.
        n: size of the upper-left block A.
        k: size of the lower-right block B (defaults to the rest).

    Raises:
        NotPSDError: if M is not psd within tolerance.
    """
    m = hermitian(m, psd=True)
    k = m.shape[0] - n if k is None else k
    a, _, b = split_blocks(m, n, k)
    r = sqrt_psd(m)
    t = np.zeros_like(r)
    s = np.zeros_like(r)
    t[:n] = r[:n]
    s[n:] = r[n:]
    u, _ = polar(t.conj().T)
    v, _ = polar(s.conj().T)
    return BlockDecomposition(u, v, a.copy(), b.copy())


# ---------------------------------------------------------------------------
# inequalities for the blocks


def _sv(values) -> np.ndarray:
    """Singular values of a Hermitian matrix given its eigenvalues."""
    return np.sort(np.abs(np.asarray(values, dtype=float)))[::-1]


def _fvals(f, a):
    return _sv(f(f.validate(eigvalsh(a))))


def lee_terms(m, n, f, norms=None):
    """|f(M)| <= |f(A) + 0| + |0 + f(B)| for concave f >= 0 and symmetric norms."""
    f = as_fn(f)
    a, _, b = split_blocks(m, n, m.shape[0] - n)
    size = m.shape[0]
    fm, fa, fb = _fvals(f, m), pad(_fvals(f, a), size), pad(_fvals(f, b), size)
    out = []
    for spec in norms:
        spec = as_norm(spec)
        out.append(le(str(spec), spec.gauge(fm), spec.gauge(fa) + spec.gauge(fb)))
    return out


def fisher_terms(m, n):
    """det M <= det A det B."""
    a, _, b = split_blocks(m, n, m.shape[0] - n)
    lm = np.clip(eigvalsh(m), 0, None)
    return [le("det", np.prod(lm), np.prod(np.clip(eigvalsh(a), 0, None)) * np.prod(np.clip(eigvalsh(b), 0, None)))]


def convex_block_terms(m, n, g, q, norms):
    """|g(M)| <= (|g(A)|^q + |g(B)|^q)^(1/q) for every norm on the full size."""
    g = as_fn(g)
    a, _, b = split_blocks(m, n, m.shape[0] - n)
    size = m.shape[0]
    gm, ga, gb = _fvals(g, m), pad(_fvals(g, a), size), pad(_fvals(g, b), size)
    out = []
    for spec in norms:
        spec = as_norm(spec)
        rhs = (spec.gauge(ga) ** q + spec.gauge(gb) ** q) ** (1.0 / q)
        out.append(le(str(spec), spec.gauge(gm), rhs))
    return out


def wedge_terms(m, n, g, q, norms):
    """Equal blocks: |g(M)|_wedge <= (|g(A)|^q + |g(B)|^q)^(1/q), norms on n x n."""
    g = as_fn(g)
    a, _, b = split_blocks(m, n, m.shape[0] - n)
    if a.shape != b.shape:
        raise ParameterError("the wedge inequality needs blocks of equal size")
    gm, ga, gb = _fvals(g, m), _fvals(g, a), _fvals(g, b)
    out = []
    for spec in norms:
        spec = as_norm(spec)
        rhs = (spec.gauge(ga) ** q + spec.gauge(gb) ** q) ** (1.0 / q)
        out.append(le(f"wedge {spec}", spec.gauge(gm[:n]), rhs))
    return out


def concave_block_terms(m, n, f, p, antinorms):
    """|f(M)|_! >= (|f(A)|_!^p + |f(B)|_!^p)^(1/p); anti-norms of the blocks
    are those of the full size evaluated on A + 0 and 0 + B."""
    f = as_fn(f)
    a, _, b = split_blocks(m, n, m.shape[0] - n)
    size = m.shape[0]
    fm, fa, fb = _fvals(f, m), pad(_fvals(f, a), size), pad(_fvals(f, b), size)
    out = []
    for spec in antinorms:
        spec = as_antinorm(spec)
        rhs = (spec.gauge(fa) ** p + spec.gauge(fb) ** p) ** (1.0 / p)
        out.append(ge(str(spec), spec.gauge(fm), rhs))
    return out


def decomposition_terms(m, n, tol_res: float = BLOCK_TOL, tol_unit: float = UNITARY_TOL):
    """Residual and unitarity of :func:`decompose_block` as one-sided terms."""
    dec = decompose_block(m, n)
    return [
        le("residual", dec.residual(m), tol_res * (1.0 + frob(m))),
        le("unitarity", dec.unitarity(), tol_unit),
    ]


_COROLLARIES = {
    "lee": lambda m, n, spec, fn, x: lee_terms(m, n, fn, spec),
    "fisher": lambda m, n, spec, fn, x: fisher_terms(m, n),
    "convex": lambda m, n, spec, fn, x: convex_block_terms(m, n, fn, x, spec),
    "wedge": lambda m, n, spec, fn, x: wedge_terms(m, n, fn, x, spec),
    "concave": lambda m, n, spec, fn, x: concave_block_terms(m, n, fn, x, spec),
    "decomposition": lambda m, n, spec, fn, x: decomposition_terms(m, n),
}


def check_block_corollaries(m, n: int, k: int | None = None, which=("decomposition",), specs=(),
                            fn=None, exponent: float = 1.0, tol: float = 1e-9) -> CheckReport:
    """Evaluate block inequalities on one matrix and report the worst margin.

    Args:
        m: psd matrix of size n + k.
        n: size of the upper-left block.
        which: names among lee, fisher, convex, wedge, concave, decomposition.
        specs: norms (or anti-norms for "concave") to sweep.
        fn: the scalar function (f or g).
        exponent: q for convex/wedge, p for concave.
    """
    m = hermitian(m, psd=True)
    k = m.shape[0] - n if k is None else k
    split_blocks(m, n, k)
    tally = Tally(tol)
    terms = []
    for name in which:
        if name not in _COROLLARIES:
            raise ParameterError(f"unknown block inequality {name!r}")
        terms += [type(t)(f"{name}: {t.label}", t.lhs, t.rhs) for t in _COROLLARIES[name](m, n, specs, fn, exponent)]
    tally.add(terms, {"n": n, "m": k}, {"M": m})
    return CheckReport.from_tally("block", tally, [n], seed=0, bindings={"which": list(which)})
