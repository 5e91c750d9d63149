"""Batched linear algebra over GF(p) on numpy integer arrays.

This is the performance lane behind the exhaustive finite-field searches.
Every witness or certification produced here is re-verified by the exact
kernel, so nothing in this module is trusted for soundness, only for speed.
Enumeration orders are documented and deterministic; chunked scans return
the same winner a sequential scan would (first index in enumeration order).

Matrix products route through float64 BLAS: all operands are reduced
residues, so the integer products stay far below 2^53 and the rounded
results are exact.
"""

from __future__ import annotations

import itertools
from typing import Iterator, Optional

import numpy as np

__all__ = [
    "inverse_table",
    "batched_rank_mod_p",
    "gaussian_binomial",
    "projective_count",
    "iter_projective_blocks",
    "iter_rref_blocks",
    "min_rank_scan",
    "surjectivity_scan",
    "rank_extremes_scan",
    "rank_one_pair_scan",
]

DEFAULT_CHUNK = 1 << 15


def inverse_table(p: int) -> np.ndarray:
    """inv[k] = k^-1 mod p for k in 1..p-1 (inv[0] = 0)."""
    inv = np.zeros(p, dtype=np.int32)
    for k in range(1, p):
        inv[k] = pow(k, p - 2, p)
    return inv


def _mod_matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Exact (a @ b) % p via float64 BLAS; operands must be reduced
    residues and the inner dimension small enough that every accumulated
    product stays below 2^53 (true for p <= 2^13 and inner dim < 2^26)."""
    prod = np.rint(a.astype(np.float64) @ b.astype(np.float64))
    return np.mod(prod.astype(np.int64), p).astype(np.int32)


def batched_rank_mod_p(mats: np.ndarray, p: int,
                       inv: np.ndarray | None = None) -> np.ndarray:
    """Ranks of a batch of matrices over GF(p).

    mats has shape (B, R, C) with entries already reduced into [0, p).
    """
    A = np.ascontiguousarray(mats, dtype=np.int32) % p
    if A.ndim != 3:
        raise ValueError("expected a (batch, rows, cols) array")
    B, R, C = A.shape
    if B == 0:
        return np.zeros(0, dtype=np.int64)
    if inv is None:
        inv = inverse_table(p)
    row = np.zeros(B, dtype=np.int64)
    rr = np.arange(R, dtype=np.int64)
    arange_b = np.arange(B)
    maxrank = min(R, C)
    for c in range(C):
        if (row >= maxrank).all():
            break
        col = A[:, :, c]
        elig = (col != 0) & (rr[None, :] >= row[:, None])
        has = elig.any(axis=1)
        if not has.any():
            continue
        bidx = np.nonzero(has)[0]
        rb = row[bidx]
        pr = np.argmax(elig[bidx], axis=1)
        pivrow = A[bidx, pr, :]
        pivnorm = (pivrow.astype(np.int64)
                   * inv[pivrow[:, c]].astype(np.int64)[:, None]) % p
        pivnorm = pivnorm.astype(np.int32)
        cur = A[bidx, rb, :].copy()
        A[bidx, pr, :] = cur
        A[bidx, rb, :] = pivnorm
        below = (rr[None, :] > row[:, None]) & has[:, None]
        fac = np.where(below, A[:, :, c], 0)
        pn_full = np.zeros((B, C), dtype=np.int32)
        pn_full[bidx] = pivnorm
        A -= fac[:, :, None] * pn_full[:, None, :]
        A %= p
        row[bidx] += 1
    return row


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of GF(q)^n."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    assert num % den == 0
    return num // den


def projective_count(d: int, q: int) -> int:
    return (q**d - 1) // (q - 1)


def iter_projective_blocks(d: int, q: int,
                           chunk: int = DEFAULT_CHUNK) -> Iterator[np.ndarray]:
    """Projective representatives of GF(q)^d in ascending lexicographic
    order of the raw coefficient tuple, first nonzero coordinate scaled
    to 1.  Yields (B, d) blocks; concatenating all blocks gives the full
    enumeration in order.
    """
    for lead in range(d - 1, -1, -1):
        nfree = d - 1 - lead
        total = q**nfree
        for start in range(0, total, chunk):
            cnt = min(chunk, total - start)
            arr = np.zeros((cnt, d), dtype=np.int32)
            arr[:, lead] = 1
            if nfree:
                idx = np.arange(start, start + cnt, dtype=np.int64)
                for pos in range(nfree - 1, -1, -1):
                    arr[:, lead + 1 + pos] = idx % q
                    idx //= q
            yield arr


def _pivot_sets(n: int, k: int, order: str):
    combos = list(itertools.combinations(range(n), k))
    if order == "lex":
        return combos
    if order == "far-first":
        # largest pivot descending, then lexicographic; used by the
        # separation scan so that configurations probing the farthest
        # coordinate are visited first (gives the documented witnesses)
        return sorted(combos, key=lambda t: (-t[-1], t) if t else ())
    raise ValueError(f"unknown pivot order {order!r}")


def iter_rref_blocks(n: int, k: int, q: int, chunk: int = DEFAULT_CHUNK,
                     order: str = "lex") -> Iterator[np.ndarray]:
    """Row-RREF representatives of the k-dimensional subspaces of GF(q)^n.

    Yields (B, k, n) blocks; rows of each representative are the canonical
    basis with strictly increasing pivots.  Free entries ascend in raw
    lexicographic order with row-major significance.
    """
    if k == 0:
        yield np.zeros((1, 0, n), dtype=np.int32)
        return
    for pivots in _pivot_sets(n, k, order):
        pivset = set(pivots)
        free = [(r, c) for r in range(k)
                for c in range(pivots[r] + 1, n) if c not in pivset]
        base = np.zeros((k, n), dtype=np.int32)
        for r, pc in enumerate(pivots):
            base[r, pc] = 1
        total = q ** len(free)
        for start in range(0, total, chunk):
            cnt = min(chunk, total - start)
            arr = np.repeat(base[None, :, :], cnt, axis=0)
            if free:
                idx = np.arange(start, start + cnt, dtype=np.int64)
                for pos in range(len(free) - 1, -1, -1):
                    r, c = free[pos]
                    arr[:, r, c] = idx % q
                    idx //= q
            yield arr


# ------------------------------------------------------------------- scans

def min_rank_scan(basis: np.ndarray, q: int, chunk: int = DEFAULT_CHUNK,
                  threshold: int | None = None):
    """Scan all projective combinations of the basis matrices.

    basis: (D, m, n) integer array over GF(q), q prime.

    With threshold=None, returns (min_rank, coeffs, points) for the first
    element attaining the global minimum rank in enumeration order, after
    visiting every point (early exit only when rank 1 is hit, which no later
    point can beat).  With a threshold, returns as soon as the first element
    of rank <= threshold is found; min_rank is then that element's rank and
    coeffs its coefficients, or (None, None, points) if none exists.
    """
    D, m, n = basis.shape
    flat = (basis.reshape(D, m * n) % q).astype(np.int32)
    inv = inverse_table(q)
    best_rank: Optional[int] = None
    best_coeffs: Optional[np.ndarray] = None
    points = 0
    for block in iter_projective_blocks(D, q, chunk):
        mats = _mod_matmul(block, flat, q)
        ranks = batched_rank_mod_p(mats.reshape(-1, m, n), q, inv)
        points += len(block)
        if threshold is not None:
            hit = np.nonzero(ranks <= threshold)[0]
            if hit.size:
                i = int(hit[0])
                return int(ranks[i]), block[i].copy(), points
            continue
        local = int(ranks.min())
        if best_rank is None or local < best_rank:
            i = int(np.argmax(ranks == local))
            best_rank = local
            best_coeffs = block[i].copy()
            if best_rank == 1:
                return best_rank, best_coeffs, points
    if threshold is not None:
        return None, None, points
    return best_rank, best_coeffs, points


def surjectivity_scan(basis: np.ndarray, k: int, q: int,
                      chunk: int = DEFAULT_CHUNK):
    """Definitional k-transitivity scan over GF(q), q prime.

    basis: (D, m, n) array for a subspace L of Mat(m, n).  Enumerates the
    canonical representatives X of all k-dimensional input subspaces and
    checks that A -> A @ X maps L onto Mat(m, k), i.e. the stacked
    (D, m*k) coefficient matrix has full rank m*k.

    Returns (ok, first_failure, points): first_failure is the (n, k) input
    matrix (columns are the representative rows) of the first failing
    subspace in enumeration order, or None.
    """
    D, m, n = basis.shape
    inv = inverse_table(q)
    points = 0
    target = m * k
    # flat2[t, d*m + i] = basis[d, i, t]
    flat2 = np.ascontiguousarray(
        basis.transpose(2, 0, 1).reshape(n, D * m) % q).astype(np.int32)
    for block in iter_rref_blocks(n, k, q, chunk):
        B = block.shape[0]
        # out[b, j, d*m + i] = sum_t block[b, j, t] basis[d, i, t]
        out = _mod_matmul(block.reshape(B * k, n), flat2, q)
        M = (out.reshape(B, k, D, m).transpose(0, 2, 3, 1)
             .reshape(B, D, m * k))
        ranks = batched_rank_mod_p(M, q, inv)
        points += B
        bad = np.nonzero(ranks < target)[0]
        if bad.size:
            i = int(bad[0])
            return False, block[i].T.copy(), points
    return True, None, points


def rank_extremes_scan(basis: np.ndarray, q: int, chunk: int = DEFAULT_CHUNK):
    """Exhaustive min nonzero rank and max singular rank over GF(q).

    basis: (D, n, n).  Returns (r, r_coeffs, s, s_coeffs, points); s is None
    when every nonzero element is invertible.  Witnesses are the first
    attaining elements in enumeration order.
    """
    D, m, n = basis.shape
    if m != n:
        raise ValueError("rank extremes need a square ambient")
    flat = (basis.reshape(D, m * n) % q).astype(np.int32)
    inv = inverse_table(q)
    r = None
    r_coeffs = None
    s = None
    s_coeffs = None
    points = 0
    for block in iter_projective_blocks(D, q, chunk):
        mats = _mod_matmul(block, flat, q)
        ranks = batched_rank_mod_p(mats.reshape(-1, m, n), q, inv)
        points += len(block)
        local_min = int(ranks.min())
        if r is None or local_min < r:
            i = int(np.argmax(ranks == local_min))
            r, r_coeffs = local_min, block[i].copy()
        sing = ranks[ranks < n]
        if sing.size:
            local_max = int(sing.max())
            if s is None or local_max > s:
                i = int(np.argmax(ranks == local_max))
                s, s_coeffs = local_max, block[i].copy()
    return r, r_coeffs, s, s_coeffs, points


def rank_one_pair_scan(cokernel: np.ndarray, m: int, n: int, q: int,
                       chunk: int = DEFAULT_CHUNK):
    """All projective pairs (x, y) with x y^T in the subspace.

    cokernel: (mn - D, m*n) array whose rows annihilate (by the standard dot
    product on row-major coordinates) exactly the vectorizations of subspace
    elements.  Returns (x, y) integer vectors in enumeration order (x outer,
    y inner, both in the projective order of iter_projective_blocks).
    """
    ys = np.concatenate(list(iter_projective_blocks(n, q, chunk)), axis=0)
    out = []
    cok = (cokernel % q).astype(np.int32) if cokernel.size else cokernel
    for xblock in iter_projective_blocks(m, q, chunk):
        for x in xblock:
            mats = (x[:, None] * ys[:, None, :]) % q  # (Ny, m, n)
            vecs = mats.reshape(len(ys), m * n)
            if cokernel.size:
                resid = _mod_matmul(vecs, cok.T, q)
                good = np.nonzero(~resid.any(axis=1))[0]
            else:
                good = np.arange(len(ys))
            for i in good:
                out.append((x.copy(), ys[int(i)].copy()))
    return out
