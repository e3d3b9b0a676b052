"""Seeded generators for the structured random matrices used by the checks.

Every generator takes an explicit ``numpy.random.Generator``; nothing here
touches global random state.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .grammar import parse_call


@dataclass(frozen=True)
class SpectrumLaw:
    """How eigenvalues of a random psd matrix are drawn.

    kind is one of ``uniform01``, ``exp``, ``rank_deficient`` (``k`` zero
    eigenvalues, the rest uniform on [0, 1]) or ``custom`` (fixed ``values``).
    """

    kind: str = "uniform01"
    k: int = 0
    values: tuple = ()

    def sample(self, n: int, rng: np.random.Generator) -> np.ndarray:
        if self.kind == "uniform01":
            return rng.uniform(0.0, 1.0, size=n)
        if self.kind == "exp":
            return rng.exponential(1.0, size=n)
        if self.kind == "rank_deficient":
            w = rng.uniform(0.0, 1.0, size=n)
            w[: min(self.k, n)] = 0.0
            return w
        if self.kind == "custom":
            if len(self.values) != n:
                raise ParameterError(f"custom spectrum has {len(self.values)} values, need {n}")
            return np.array(self.values, dtype=float)
        raise ParameterError(f"unknown spectrum law {self.kind!r}")

    def __str__(self) -> str:
        if self.kind == "rank_deficient":
            return f"rank_deficient({self.k})"
        if self.kind == "custom":
            return "custom(" + ", ".join(repr(float(v)) for v in self.values) + ")"
        return self.kind


def parse_spectrum_law(text: str) -> SpectrumLaw:
    """Parse ``uniform01``, ``exp``, ``rank_deficient(k)`` or ``custom(v1, ...)``."""
    name, args, kwargs = parse_call(text)
    if name in ("uniform01", "exp") and not args and not kwargs:
        return SpectrumLaw(name)
    if name == "rank_deficient":
        k = kwargs.get("k", args[0] if args else None)
        if not isinstance(k, int) or k < 0:
            raise ParameterError("rank_deficient needs a non-negative integer k")
        return SpectrumLaw(name, k=k)
    if name == "custom":
        values = tuple(float(v) for v in (args or kwargs.get("values", ())))
        if not values or min(values) < 0:
            raise ParameterError("custom spectrum needs non-negative values")
        return SpectrumLaw(name, values=values)
    raise ParameterError(f"unknown spectrum law {text!r}")


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary: QR of a complex Ginibre matrix, phase-fixed R."""
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def conjugate(u: np.ndarray, w) -> np.ndarray:
    """U diag(w) U*, exactly Hermitian."""
    m = (u * np.asarray(w, dtype=float)) @ u.conj().T
    return 0.5 * (m + m.conj().T)


def random_psd(n: int, law: SpectrumLaw | str = "uniform01", rng: np.random.Generator | None = None) -> np.ndarray:
    if isinstance(law, str):
        law = parse_spectrum_law(law)
    if rng is None:
        raise ParameterError("an explicit rng is required")
    w = law.sample(n, rng)
    return conjugate(random_unitary(n, rng), w)


def random_hermitian_in(n: int, lo: float, hi: float, rng: np.random.Generator) -> np.ndarray:
    """Haar-conjugated diagonal matrix with spectrum uniform on [lo, hi]."""
    return conjugate(random_unitary(n, rng), rng.uniform(lo, hi, size=n))


def random_diagonal_in(n: int, lo: float, hi: float, rng: np.random.Generator) -> np.ndarray:
    return np.diag(rng.uniform(lo, hi, size=n)).astype(np.complex128)


def _ginibre(n, rng):
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


def random_contraction(n: int, rng: np.random.Generator, eps: float = 1e-3) -> np.ndarray:
    """Complex Gaussian matrix scaled by 1/(mu_1 + eps), so mu_1 < 1."""
    from .spectral import singular_values

    g = _ginibre(n, rng)
    return g / (singular_values(g)[0] + eps)


def random_expansive(n: int, rng: np.random.Generator, floor: float = 0.2) -> np.ndarray:
    """Inverse of a contraction whose singular values lie in [floor, 1].

    Built as W diag(1/c) V* with Haar W, V, so no inversion is needed and
    mu_n >= 1 holds exactly.
    """
    c = rng.uniform(floor, 1.0, size=n)
    w, v = random_unitary(n, rng), random_unitary(n, rng)
    return (w / c) @ v.conj().T


def random_psd_block(n: int, m: int, rng: np.random.Generator, law: SpectrumLaw | str = "uniform01"):
    """A random psd (n+m)x(n+m) matrix and its blocks (M, A, X, B)."""
    big = random_psd(n + m, law, rng)
    return big, big[:n, :n].copy(), big[:n, n:].copy(), big[n:, n:].copy()


def trial_rng(seed: int, *keys) -> np.random.Generator:
    """Independent generator for (seed, *keys); keys may be ints or strings."""
    import zlib

    words = [int(seed) & 0xFFFFFFFFFFFFFFFF]
    for k in keys:
        words.append(zlib.crc32(k.encode()) if isinstance(k, str) else int(k))
    return np.random.default_rng(np.random.SeedSequence(words))
