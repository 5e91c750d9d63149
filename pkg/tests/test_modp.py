"""The numpy mod-p lane, cross-checked against the exact kernel."""

import random

import numpy as np

from translab.fields import GF
from translab.matrices import Mat
from translab.modp import (
    batched_rank_mod_p,
    gaussian_binomial,
    inverse_table,
    iter_projective_blocks,
    iter_rref_blocks,
    min_rank_scan,
    projective_count,
    surjectivity_scan,
)
from translab.subspace import MatrixSubspace


def test_inverse_table():
    for p in (2, 3, 5, 7, 11):
        inv = inverse_table(p)
        for k in range(1, p):
            assert (k * int(inv[k])) % p == 1


def test_batched_rank_matches_exact():
    rng = random.Random(0)
    for p in (2, 3, 5, 7):
        f = GF(p)
        mats = []
        for _ in range(60):
            m, n = rng.randint(1, 4), rng.randint(1, 4)
            mats.append([[rng.randrange(p) for _ in range(4)]
                         for _ in range(4)])
        arr = np.array(mats, dtype=np.int64)
        ranks = batched_rank_mod_p(arr, p)
        for i, rows in enumerate(mats):
            exact = Mat.from_rows(f, rows).rank()
            assert int(ranks[i]) == exact


def test_projective_enumeration_order_and_count():
    # raw lexicographic ascending over normalized representatives
    blocks = list(iter_projective_blocks(3, 3, chunk=4))
    arr = np.concatenate(blocks, axis=0)
    assert len(arr) == projective_count(3, 3) == 13
    assert arr[0].tolist() == [0, 0, 1]
    assert arr[1].tolist() == [0, 1, 0]
    assert arr[2].tolist() == [0, 1, 1]
    assert arr[-1].tolist() == [1, 2, 2]
    as_tuples = [tuple(v) for v in arr.tolist()]
    assert as_tuples == sorted(as_tuples)
    # first nonzero coordinate is always one
    for v in as_tuples:
        lead = next(x for x in v if x)
        assert lead == 1


def test_rref_representative_count():
    for (n, k, q) in [(3, 1, 3), (3, 2, 3), (4, 2, 5), (4, 1, 7)]:
        total = sum(b.shape[0] for b in iter_rref_blocks(n, k, q, chunk=64))
        assert total == gaussian_binomial(n, k, q)


def test_rref_representatives_are_canonical():
    f = GF(3)
    seen = set()
    for block in iter_rref_blocks(4, 2, 3, chunk=16):
        for rep in block:
            M = Mat.from_rows(f, [[int(x) for x in row] for row in rep])
            R, piv = M.rref()
            assert R == M and len(piv) == 2
            seen.add(M.entries())
    assert len(seen) == gaussian_binomial(4, 2, 3)


def test_min_rank_scan_matches_bruteforce():
    rng = random.Random(1)
    p = 3
    f = GF(p)
    for _ in range(10):
        D = rng.randint(1, 3)
        basis = np.array(
            [[[rng.randrange(p) for _ in range(3)] for _ in range(3)]
             for _ in range(D)], dtype=np.int64)
        L = MatrixSubspace.from_generators(
            [Mat.from_rows(f, b.tolist()) for b in basis],
            rows=3, cols=3, field=f)
        if L.dim != D:
            continue
        best, coeffs, pts = min_rank_scan(basis, p)
        # brute force over every nonzero combination
        expect = min(
            L.element(c).rank()
            for c in _all_nonzero_coeffs(f, D)
        )
        assert best == expect
        # the scan's coefficients are taken over the raw basis it was given
        raw = [Mat.from_rows(f, b.tolist()) for b in basis]
        wit = Mat.zeros(f, 3, 3)
        for c, B in zip(coeffs, raw):
            wit = wit + B.scale(f.from_int(int(c)))
        assert wit.rank() == best and not wit.is_zero()
        assert pts == projective_count(D, p)


def _all_nonzero_coeffs(f, d):
    import itertools

    for tup in itertools.product(f.elements(), repeat=d):
        if any(tup):
            yield tup


def test_surjectivity_scan_on_known_spaces():
    from translab.families import toeplitz_space

    f = GF(5)
    T3 = toeplitz_space(3).reduce_mod(5)
    basis = np.array([[[T3.basis[d][i, j].value for j in range(3)]
                       for i in range(3)] for d in range(T3.dim)])
    ok, fail, pts = surjectivity_scan(basis, 1, 5)
    assert ok and fail is None and pts == projective_count(3, 5)
    # the span of E11 alone fails at the first input not reaching row 2
    E11 = MatrixSubspace.from_generators([Mat.unit(f, 2, 2, 0, 0)])
    basis2 = np.array([[[1, 0], [0, 0]]])
    ok2, fail2, _ = surjectivity_scan(basis2, 1, 5)
    assert not ok2 and fail2 is not None
