"""Majorization relations and constructive witnesses.

Conventions, for real vectors a and c of equal length (sorted internally in
decreasing order):

* ``majorizes(a, c)``: a is majorized by c (a ≺ c), i.e. every top-k partial
  sum of a is at most that of c and the totals agree;
* ``weakly_majorizes(a, c)``: a ≺_w c, top-k sums only;
* ``super_weakly_majorizes(a, c)``: a ≺^w c, every sum of the k smallest
  entries of a is at least that of c.

All comparisons use an absolute tolerance per partial sum.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import PreconditionError
from .spectral import certify_psd, eig_hermitian, eigvalsh

MAJ_TOL = 1e-10


def _pair(a, c):
    a = np.sort(np.asarray(a, dtype=float).ravel())[::-1]
    c = np.sort(np.asarray(c, dtype=float).ravel())[::-1]
    if a.shape != c.shape:
        raise ValueError(f"length mismatch: {a.size} vs {c.size}")
    return a, c


def top_sums(x) -> np.ndarray:
    return np.cumsum(np.sort(np.asarray(x, dtype=float))[::-1])


def bottom_sums(x) -> np.ndarray:
    return np.cumsum(np.sort(np.asarray(x, dtype=float)))


def weakly_majorizes(a, c, tol: float = MAJ_TOL) -> bool:
    a, c = _pair(a, c)
    return bool(np.all(np.cumsum(a) <= np.cumsum(c) + tol))


def majorizes(a, c, tol: float = MAJ_TOL) -> bool:
    """True iff a ≺ c."""
    a, c = _pair(a, c)
    return weakly_majorizes(a, c, tol) and abs(a.sum() - c.sum()) <= tol


def super_weakly_majorizes(a, c, tol: float = MAJ_TOL) -> bool:
    """True iff a ≺^w c (sums of the k smallest: a dominates c)."""
    a, c = _pair(a, c)
    return bool(np.all(np.cumsum(a[::-1]) >= np.cumsum(c[::-1]) - tol))


def _first_violation(a, c, tol):
    a, c = _pair(a, c)
    sa, sc = np.cumsum(a), np.cumsum(c)
    bad = np.nonzero(sa > sc + tol)[0]
    if bad.size:
        k = int(bad[0])
        return f"top-{k + 1} partial sum {sa[k]:.6g} exceeds {sc[k]:.6g}"
    if abs(sa[-1] - sc[-1]) > tol:
        return f"totals differ: {sa[-1]:.6g} vs {sc[-1]:.6g}"
    return None


# ---------------------------------------------------------------------------
# T-transforms


def ttransform_steps(a, c, tol: float = MAJ_TOL) -> list[tuple[int, int, float]]:
    """T-transform chain taking sorted c to sorted a, for a ≺ c.

    Each step (i, j, lam) replaces x by lam x + (1 - lam) x∘(i j).  At every
    step the smallest i with x_i > a_i is paired with the smallest j > i
    with x_j < a_j and the largest feasible amount is moved; one coordinate
    becomes exact per step, so there are at most n - 1 steps.
    """
    why = _first_violation(a, c, tol)
    if why is not None:
        raise PreconditionError(f"a is not majorized by c: {why}")
    a, x = _pair(a, c)
    x = x.copy()
    n = a.size
    eps = 1e-15 * n * (1.0 + float(np.abs(x).max(initial=0.0)))
    steps = []
    for _ in range(n):
        over = np.nonzero(x - a > eps)[0]
        if over.size == 0:
            break
        i = int(over[0])
        under = np.nonzero(x[i + 1:] - a[i + 1:] < -eps)[0]
        if under.size == 0:
            break
        j = i + 1 + int(under[0])
        give, take = x[i] - a[i], a[j] - x[j]
        delta = min(give, take)
        lam = 1.0 - delta / (x[i] - x[j])
        steps.append((i, j, float(lam)))
        if give <= take:
            x[i] = a[i]
            x[j] += delta
        else:
            x[j] = a[j]
            x[i] -= delta
    return steps


def _prune(points: np.ndarray, alphas: np.ndarray, keep: int) -> np.ndarray:
    """Caratheodory reduction: drop points until at most `keep` carry weight.

    `points` is (K, n); returns new non-negative weights summing to one that
    reproduce the same convex combination.
    """
    alphas = alphas.copy()
    live = np.nonzero(alphas > 0)[0]
    while live.size > keep:
        m = np.vstack([points[live].T, np.ones(live.size)])
        _, _, vh = np.linalg.svd(m)
        v = vh[-1].real
        if v.max() <= 0:
            v = -v
        pos = v > 1e-14 * np.abs(v).max()
        ratios = np.where(pos, alphas[live] / np.where(pos, v, 1.0), np.inf)
        k = int(np.argmin(ratios))
        alphas[live] = alphas[live] - ratios[k] * v
        alphas[live[k]] = 0.0
        alphas = np.clip(alphas, 0.0, None)
        live = np.nonzero(alphas > 0)[0]
    return alphas / alphas.sum()


def ttransform_decompose(a, c, tol: float = MAJ_TOL) -> list[tuple[float, np.ndarray]]:
    """Write a ≺ c as a = sum_i alpha_i c[perm_i] with at most n terms.

    Returns a list of ``(alpha, perm)`` with ``perm`` an index array, so that
    ``sum(alpha * c[perm])`` reproduces `a` in its original order.  The
    T-transform chain is expanded term by term; whenever more than n distinct
    permuted vectors appear the combination is pruned back (Caratheodory:
    permutations of c lie in an (n-1)-dimensional affine subspace).

    Raises:
        PreconditionError: if a is not majorized by c, naming the violated
            partial sum.
    """
    a_in = np.asarray(a, dtype=float).ravel()
    c_in = np.asarray(c, dtype=float).ravel()
    if a_in.shape != c_in.shape:
        raise ValueError(f"length mismatch: {a_in.size} vs {c_in.size}")
    n = a_in.size
    steps = ttransform_steps(a_in, c_in, tol)
    order_a = np.argsort(-a_in, kind="stable")
    order_c = np.argsort(-c_in, kind="stable")
    cs = c_in[order_c]

    perms = [np.arange(n)]
    alphas = np.array([1.0])
    for i, j, lam in steps:
        swapped = []
        for p in perms:
            q = p.copy()
            q[i], q[j] = p[j], p[i]
            swapped.append(q)
        perms = perms + swapped
        alphas = np.concatenate([alphas * lam, alphas * (1.0 - lam)])
        # merge permutations that give the same vector
        merged: dict = {}
        for p, w in zip(perms, alphas):
            key = tuple(cs[p])
            if key in merged:
                merged[key][1] += w
            else:
                merged[key] = [p, w]
        perms = [v[0] for v in merged.values()]
        alphas = np.array([v[1] for v in merged.values()])
        keep = alphas > 0
        perms = [p for p, k in zip(perms, keep) if k]
        alphas = alphas[keep]
        if len(perms) > n:
            alphas = _prune(np.array([cs[p] for p in perms]), alphas, n)
            perms = [p for p, w in zip(perms, alphas) if w > 0]
            alphas = alphas[alphas > 0]
    alphas = alphas / alphas.sum()

    # back to original orders: a_in[order_a[k]] = sum alpha cs[p[k]]
    out = []
    for p, w in zip(perms, alphas):
        full = np.empty(n, dtype=int)
        full[order_a] = order_c[p]
        out.append((float(w), full))
    return out


# ---------------------------------------------------------------------------
# anti-norm Ky Fan principle


@dataclass(frozen=True)
class MajorizationWitness:
    """A = sum_i alpha_i U_i diag(C) U_i* with C = (lambda_1(B) + r, lambda_2(B), ...)."""

    r: float
    C: np.ndarray
    combo: tuple  # ((alpha, U), ...)

    def reconstruct(self) -> np.ndarray:
        out = 0
        for alpha, u in self.combo:
            out = out + alpha * (u * self.C) @ u.conj().T
        return out

    @property
    def alphas(self) -> np.ndarray:
        return np.array([a for a, _ in self.combo])


def permutation_matrix(perm) -> np.ndarray:
    """P with P diag(c) P^T = diag(c[perm])."""
    perm = np.asarray(perm)
    p = np.zeros((perm.size, perm.size))
    p[np.arange(perm.size), perm] = 1.0
    return p


def lemma42_witness(a, b) -> MajorizationWitness:
    """Constructive witness for the anti-norm Ky Fan principle.

    For psd A, B with λ(A) ≺^w λ(B), pads the top eigenvalue of B by the
    minimal r >= 0 (forced by equal totals: r = Tr A - Tr B) so that
    λ(A) ≺ C, then lifts the T-transform decomposition of λ(A) through the
    eigenvectors of A: U_i = W P_i.

    Raises:
        PreconditionError: if λ(A) is not super-weakly majorized by λ(B).
    """
    da = eig_hermitian(a)
    lb = eigvalsh(b)
    certify_psd(da.eigenvalues)
    certify_psd(lb)
    la = da.eigenvalues
    if not super_weakly_majorizes(la, lb):
        sa, sb = bottom_sums(la), bottom_sums(lb)
        k = int(np.nonzero(sa < sb - MAJ_TOL)[0][0])
        raise PreconditionError(
            f"λ(A) is not super-weakly majorized by λ(B): sum of {k + 1} smallest "
            f"{sa[k]:.6g} < {sb[k]:.6g}"
        )
    r = max(0.0, float(la.sum() - lb.sum()))
    c = lb.copy()
    c[0] += r
    combo = []
    for alpha, perm in ttransform_decompose(la, c):
        combo.append((alpha, da.eigenvectors @ permutation_matrix(perm)))
    return MajorizationWitness(r, c, tuple(combo))
