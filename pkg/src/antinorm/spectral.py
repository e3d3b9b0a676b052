"""Dense complex Hermitian linear algebra.

Eigendecomposition is done with a cyclic Jacobi method (complex rotations,
row-cyclic ordering), which is simple and robust for the small matrices
used throughout the package.  Everything else here (singular values,
functional calculus, square roots, polar factors) is derived from it.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, NotPSDError

try:
    from numba import njit
except ImportError:  # pragma: no cover - numba is optional
    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda fn: fn

HERMITIAN_TOL = 1e-12
PSD_TOL = 1e-10
JACOBI_TOL = 1e-13
MAX_SWEEPS = 100
RANK_TOL = 1e-12


def frob(m) -> float:
    return float(np.sqrt(np.sum(np.abs(m) ** 2)))


def as_matrix(m) -> np.ndarray:
    """Return `m` as a finite complex 2-D array (a copy)."""
    a = np.array(m, dtype=np.complex128)
    if a.ndim == 0:
        a = a.reshape(1, 1)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def hermitian(m, psd: bool = False) -> np.ndarray:
    """Validate that `m` is Hermitian (and optionally psd); return (M + M*)/2.

    Raises:
        ValueError: if the matrix is not square or not Hermitian to within
            1e-12 (1 + |M|_F).
        NotPSDError: if `psd` is requested and the smallest eigenvalue is
            below -1e-10 (1 + lambda_max).
    """
    a = as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    skew = frob(a - a.conj().T)
    if skew > HERMITIAN_TOL * (1.0 + frob(a)):
        raise ValueError(f"matrix is not Hermitian (|M - M*|_F = {skew:.3e})")
    a = 0.5 * (a + a.conj().T)
    if psd:
        certify_psd(eigvalsh(a))
    return a


def certify_psd(eigenvalues) -> None:
    w = np.asarray(eigenvalues, dtype=float)
    if w.size == 0:
        return
    lo, hi = float(w.min()), float(w.max())
    if lo < -PSD_TOL * (1.0 + max(hi, 0.0)):
        raise NotPSDError(f"matrix is not positive semi-definite (lambda_min = {lo:.3e})")


@njit(cache=True)
def _jacobi_kernel(a, tol, max_sweeps):
    # Rotates `a` in place towards diagonal form; returns (v, sweeps, off).
    # sweeps == -1 signals non-convergence.
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    norm = 0.0
    for i in range(n):
        for j in range(n):
            norm += abs(a[i, j]) ** 2
    norm = np.sqrt(norm)
    off = 0.0
    for sweep in range(max_sweeps + 1):
        off = 0.0
        for i in range(n):
            for j in range(n):
                if i != j:
                    off += abs(a[i, j]) ** 2
        off = np.sqrt(off)
        if off <= tol * norm:
            return v, sweep, off
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = abs(a[p, q])
                if g == 0.0:
                    continue
                e = a[p, q] / g
                theta = (a[q, q].real - a[p, p].real) / (2.0 * g)
                t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                # J = diag(1, conj(e)) on (p, q) followed by a real rotation
                jpp = c + 0j
                jqp = -s * np.conj(e)
                jpq = s + 0j
                jqq = c * np.conj(e)
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = akp * jpp + akq * jqp
                    a[k, q] = akp * jpq + akq * jqq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = np.conj(jpp) * apk + np.conj(jqp) * aqk
                    a[q, k] = np.conj(jpq) * apk + np.conj(jqq) * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = vkp * jpp + vkq * jqp
                    v[k, q] = vkp * jpq + vkq * jqq
    return v, -1, off


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues in non-increasing order and the matching unitary eigenvectors."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        u = self.eigenvectors
        return (u * self.eigenvalues) @ u.conj().T

    def map(self, values) -> np.ndarray:
        """U diag(values) U* for replacement eigenvalues `values`."""
        u = self.eigenvectors
        return (u * np.asarray(values)) @ u.conj().T


def eig_hermitian(a, tol: float = JACOBI_TOL, max_sweeps: int = MAX_SWEEPS) -> SpectralDecomposition:
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Converges when the off-diagonal Frobenius mass drops to ``tol * |A|_F``.
    Eigenvalues are stably sorted in decreasing order.

    Raises:
        ConvergenceError: after `max_sweeps` sweeps without convergence.
    """
    work = hermitian(a)
    if work.shape[0] == 0:
        raise ValueError("empty matrix")
    v, sweeps, off = _jacobi_kernel(work, tol, max_sweeps)
    if sweeps < 0:
        raise ConvergenceError(
            f"Jacobi did not converge in {max_sweeps} sweeps (off-diagonal residual {off:.3e})"
        )
    w = work.diagonal().real.copy()
    order = np.argsort(-w, kind="stable")
    return SpectralDecomposition(w[order], np.ascontiguousarray(v[:, order]))


def eigvalsh(a) -> np.ndarray:
    return eig_hermitian(a).eigenvalues


def singular_values(m) -> np.ndarray:
    """Singular values in decreasing order.

    Hermitian input uses |eigenvalues| directly; otherwise the square roots
    of the eigenvalues of M*M.
    """
    a = as_matrix(m)
    if a.shape[0] == a.shape[1] and frob(a - a.conj().T) <= HERMITIAN_TOL * (1.0 + frob(a)):
        return np.sort(np.abs(eigvalsh(a)))[::-1]
    if a.shape[0] < a.shape[1]:
        a = a.conj().T
    # |M v_j| rather than sqrt(eig(M*M)): the square root would lose half the
    # digits of the small singular values
    d = eig_hermitian(a.conj().T @ a)
    return np.sort(np.linalg.norm(a @ d.eigenvectors, axis=0))[::-1]


def apply_fn(a, f, decomposition: SpectralDecomposition | None = None) -> np.ndarray:
    """Functional calculus: f(A) = U f(Lambda) U*.

    `f` is a vectorised callable; if it exposes ``validate`` (as ScalarFn
    does) the spectrum is checked against its domain first.
    """
    d = decomposition if decomposition is not None else eig_hermitian(a)
    w = d.eigenvalues
    if hasattr(f, "validate"):
        w = f.validate(w)
    return d.map(np.asarray(f(w), dtype=float))


def sqrt_psd(a) -> np.ndarray:
    """Positive square root of a psd matrix (negative round-off eigenvalues clipped)."""
    d = eig_hermitian(a)
    certify_psd(d.eigenvalues)
    return d.map(np.sqrt(np.clip(d.eigenvalues, 0.0, None)))


def psd_part(a) -> np.ndarray:
    """The matrix with its (round-off) negative eigenvalues clipped to zero."""
    d = eig_hermitian(a)
    certify_psd(d.eigenvalues)
    return d.map(np.clip(d.eigenvalues, 0.0, None))


def complete_orthonormal(q: np.ndarray, dim: int, threshold: float = RANK_TOL) -> np.ndarray:
    """Extend (nearly) orthonormal columns to a unitary of size `dim`.

    Columns of `q` are re-orthogonalised by modified Gram-Schmidt (two passes)
    and dropped if their residual falls below `threshold`; the basis is then
    filled from the standard basis, always taking the candidate with the
    largest residual (column pivoting).
    """
    basis = []

    def residual(x):
        for _ in range(2):
            for b in basis:
                x = x - b * np.vdot(b, x)
        return x

    for j in range(q.shape[1]):
        x = residual(q[:, j].astype(np.complex128))
        nrm = np.linalg.norm(x)
        if nrm > threshold:
            basis.append(x / nrm)
    eye = np.eye(dim, dtype=np.complex128)
    while len(basis) < dim:
        cands = [residual(eye[:, j]) for j in range(dim)]
        norms = [np.linalg.norm(c) for c in cands]
        j = int(np.argmax(norms))
        basis.append(cands[j] / norms[j])
    return np.column_stack(basis) if basis else np.zeros((dim, 0), dtype=np.complex128)


def svd(m) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Full SVD M = W diag(s) V* of a square matrix, via eig of M*M.

    Left vectors for singular values below 1e-12 mu_1 are completed by
    orthonormal extension, so W is always unitary.
    """
    a = as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise ValueError("svd expects a square matrix")
    n = a.shape[0]
    d = eig_hermitian(a.conj().T @ a)
    cols = a @ d.eigenvectors
    s = np.linalg.norm(cols, axis=0)
    order = np.argsort(-s, kind="stable")
    s, v, cols = s[order], d.eigenvectors[:, order], cols[:, order]
    cut = RANK_TOL * (s[0] if s.size else 0.0)
    keep = s > cut
    cols = cols[:, keep] / s[keep]
    w = complete_orthonormal(cols, n, threshold=max(cut, RANK_TOL))
    return w, s, v


def polar(m) -> tuple[np.ndarray, np.ndarray]:
    """Polar decomposition M = U P with U unitary and P = |M| psd."""
    a = as_matrix(m)
    w, _, v = svd(a)
    u = w @ v.conj().T
    p = u.conj().T @ a
    return u, 0.5 * (p + p.conj().T)


def direct_sum(*blocks) -> np.ndarray:
    sizes = [np.asarray(b).shape[0] for b in blocks]
    out = np.zeros((sum(sizes), sum(sizes)), dtype=np.complex128)
    k = 0
    for b, s in zip(blocks, sizes):
        out[k:k + s, k:k + s] = b
        k += s
    return out
