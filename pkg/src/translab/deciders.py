"""Transitivity and separation deciders with explicit soundness labels.

The central dichotomy: a subspace L of Mat(m, n) is k-transitive exactly
when its pre-annihilator contains no nonzero element of rank at most k.
Over a finite field both sides of that equivalence can be decided by
exhaustive enumeration; over Q or Q(i) the exact routes are the pencil
procedure (dim <= 2) and verified witnesses, while finite-field
certification is reported as such and never silently promoted to a
characteristic-zero claim.

Verdict statuses:

* ``disproved``                a verified witness exists; valid over every
                               extension of the witness's field
* ``certified_exact``          no low-rank element over the algebraic
                               closure (pencil / singleton route only)
* ``certified_finite_field``   exhaustive absence over the listed primes'
                               fields, and nothing more
* ``unknown``                  no sound conclusion within the budget
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from .errors import BudgetExceeded, DimensionTooLarge, ShapeMismatch
from .fields import (
    QI,
    QQ,
    Field,
    GaussianRational,
    PrimeFieldDomain,
)
from .lowrank import search_low_rank_element
from .matrices import Mat
from . import modp
from .polynomials import BinaryForm
from .subspace import MatrixSubspace

__all__ = [
    "Status",
    "RankWitness",
    "TransitivityVerdict",
    "SeparationVerdict",
    "PencilResult",
    "RankExtremes",
    "DefinitionalSample",
    "check_k_transitive",
    "min_rank_ff_exhaustive",
    "pencil_min_rank_exact",
    "rank_witness_search_numeric",
    "definitional_transitivity_sample",
    "definitional_k_transitive_ff",
    "check_k_separating",
    "rank_one_elements_ff",
    "verify_rank_spanning",
    "find_invertible",
    "rank_extremes_ff",
    "transitivity_disproof_from_witness",
    "DEFAULT_PRIMES",
    "DEFAULT_BUDGET",
]

DEFAULT_PRIMES = (5, 7)
DEFAULT_BUDGET = 10**8
# primes 2 and 3 are skipped by default: degenerate reductions are common
_FALLBACK_PRIMES = (5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43)


class Status(str, Enum):
    DISPROVED = "disproved"
    CERTIFIED_EXACT = "certified_exact"
    CERTIFIED_FINITE_FIELD = "certified_finite_field"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class RankWitness:
    """A nonzero element of a subspace with verified rank bound.

    coefficients are taken over the canonical basis of the space that was
    searched (the pre-annihilator for transitivity disproofs); the matrix is
    the assembled element.
    """

    coefficients: tuple
    matrix: Mat
    rank_bound: int

    def verify(self, space: MatrixSubspace) -> bool:
        """Re-verify through independent exact elimination: nonzero,
        member of the space, rank within the bound."""
        T = self.matrix
        if T.is_zero():
            return False
        if T.rank() > self.rank_bound:
            return False
        if T.shape != (space.rows, space.cols) or T.field != space.field:
            return False
        return space.contains(T)


@dataclass
class TransitivityVerdict:
    status: Status
    k: int
    witness: Optional[RankWitness]
    primes: tuple = ()
    evidence: dict = dc_field(default_factory=dict)

    @property
    def certified(self) -> bool:
        return self.status in (Status.CERTIFIED_EXACT,
                               Status.CERTIFIED_FINITE_FIELD)

    @property
    def soundness(self) -> str:
        if self.status == Status.CERTIFIED_EXACT:
            return "no low-rank obstruction over the algebraic closure"
        if self.status == Status.CERTIFIED_FINITE_FIELD:
            fields = ", ".join(f"GF({p})" for p in self.primes)
            return (f"exhaustively certified over {fields} only; "
                    "does not transfer to characteristic zero")
        if self.status == Status.DISPROVED:
            tag = self.evidence.get("witness_field", "")
            if tag in ("Q", "Qi"):
                return f"exact witness over {tag}; valid over every extension"
            return f"witness over {tag}; valid for that field only"
        return "no sound conclusion reached within the budget"


@dataclass
class SeparationVerdict:
    status: Status
    k: int
    witness_columns: Optional[Mat]  # n x k, full column rank
    primes: tuple = ()
    evidence: dict = dc_field(default_factory=dict)

    @property
    def certified(self) -> bool:
        return self.status in (Status.CERTIFIED_EXACT,
                               Status.CERTIFIED_FINITE_FIELD)


@dataclass
class PencilResult:
    """Outcome of the exact dim <= 2 decision.

    low_rank_exists is decided over the algebraic closure; the witness, when
    present, lives in the base field (or Q(i) when a Q pencil only has
    Gaussian roots) and is exactly verified.
    """

    low_rank_exists: bool
    witness: Optional[RankWitness]
    witness_field_tag: Optional[str]
    gcd_certificate: Optional[tuple]


@dataclass
class RankExtremes:
    min_nonzero_rank: int
    min_witness: Mat
    max_singular_rank: Optional[int]
    max_witness: Optional[Mat]
    points: int


@dataclass
class DefinitionalSample:
    found_counterexample: bool
    tuple_matrix: Optional[Mat]
    trials: int
    seed: int


# --------------------------------------------------------------- utilities

def _subspace_to_int_array(L: MatrixSubspace) -> np.ndarray:
    assert isinstance(L.field, PrimeFieldDomain)
    D, m, n = L.dim, L.rows, L.cols
    out = np.zeros((D, m, n), dtype=np.int64)
    for d, B in enumerate(L.basis):
        for i in range(m):
            for j in range(n):
                out[d, i, j] = B[i, j].value
    return out


def _ints_to_mat(field: Field, arr) -> Mat:
    rows = len(arr)
    cols = len(arr[0])
    return Mat(field, rows, cols,
               [field.from_int(int(x)) for row in arr for x in row])


def _lift_vectors(coeffs: Sequence[int], p: int):
    """Plain and centered integer lifts of GF(p) coefficients."""
    plain = tuple(int(c) % p for c in coeffs)
    centered = tuple(c if c <= p // 2 else c - p for c in plain)
    yield plain
    if centered != plain:
        yield centered


def _lift_to_qi(L: MatrixSubspace) -> MatrixSubspace:
    gens = [Mat(QI, B.rows, B.cols,
                [GaussianRational(x, 0) for x in B.entries()])
            for B in L.basis]
    return MatrixSubspace.from_generators(gens, rows=L.rows, cols=L.cols,
                                          field=QI)


def _projective_tuples_generic(field: Field, d: int):
    """Projective coefficient tuples over any finite field, ascending lex
    order of the raw tuple with first nonzero coordinate equal to one.
    Mirrors modp.iter_projective_blocks for prime fields."""
    elems = field.elements()
    one = field.one()
    zero = field.zero()
    for lead in range(d - 1, -1, -1):
        nfree = d - 1 - lead
        for suffix in itertools.product(elems, repeat=nfree):
            yield tuple([zero] * lead + [one] + list(suffix))


# ------------------------------------------------------ exhaustive FF ops

def min_rank_ff_exhaustive(V: MatrixSubspace,
                           budget: int = DEFAULT_BUDGET) -> tuple:
    """Exact minimum rank over the nonzero elements of a finite-field
    subspace, with the first witness in projective enumeration order.

    The enumeration cost is measured as q**dim(V) raw points against the
    budget.  Raises BudgetExceeded beyond it.
    """
    f = V.field
    if not f.is_finite:
        raise ShapeMismatch("min_rank_ff_exhaustive needs a finite field")
    if V.dim == 0:
        raise ValueError("the zero subspace has no nonzero elements")
    q = f.size
    if q**V.dim > budget:
        raise BudgetExceeded(
            f"{q}^{V.dim} points exceed the budget of {budget}")
    if isinstance(f, PrimeFieldDomain):
        basis = _subspace_to_int_array(V)
        best, coeffs, _pts = modp.min_rank_scan(basis, q)
        witness = RankWitness(
            tuple(f.from_int(int(c)) for c in coeffs),
            V.element([f.from_int(int(c)) for c in coeffs]),
            best)
        assert witness.verify(V)
        return best, witness
    best = None
    best_coeffs = None
    for coeffs in _projective_tuples_generic(f, V.dim):
        r = V.element(coeffs).rank()
        if best is None or r < best:
            best, best_coeffs = r, coeffs
            if best == 1:
                break
    witness = RankWitness(tuple(best_coeffs), V.element(best_coeffs), best)
    assert witness.verify(V)
    return best, witness


def _ff_low_rank_threshold(V: MatrixSubspace, k: int, budget: int):
    """First element of rank <= k in projective order, or None.

    Returns (coeffs, matrix, points) or (None, None, points)."""
    f = V.field
    q = f.size
    if q**V.dim > budget:
        raise BudgetExceeded(f"{q}^{V.dim} points exceed the budget")
    if isinstance(f, PrimeFieldDomain):
        basis = _subspace_to_int_array(V)
        r, coeffs, pts = modp.min_rank_scan(basis, q, threshold=k)
        if r is None:
            return None, None, pts
        c = [f.from_int(int(x)) for x in coeffs]
        return tuple(c), V.element(c), pts
    pts = 0
    for coeffs in _projective_tuples_generic(f, V.dim):
        pts += 1
        T = V.element(coeffs)
        if T.rank() <= k:
            return tuple(coeffs), T, pts
    return None, None, pts


def definitional_k_transitive_ff(L: MatrixSubspace, k: int,
                                 budget: int = DEFAULT_BUDGET) -> tuple:
    """Exhaustive definitional check over the subspace's own prime field:
    for every canonical representative X of a k-dimensional input subspace,
    the map A -> A @ X restricted to L must cover Mat(m, k).

    Returns (ok, first_failure_X or None, points)."""
    f = L.field
    if not isinstance(f, PrimeFieldDomain):
        raise ShapeMismatch("definitional exhaustive check needs GF(p)")
    q = f.size
    n = L.cols
    points = modp.gaussian_binomial(n, k, q)
    if points > budget:
        raise BudgetExceeded(f"{points} input subspaces exceed the budget")
    if L.dim == 0:
        X = Mat.identity(f, n)
        cols = [X.column(j) for j in range(k)]
        first = Mat(f, n, k, [cols[j][i] for i in range(n) for j in range(k)])
        return False, first, 0
    basis = _subspace_to_int_array(L)
    ok, failure, pts = modp.surjectivity_scan(basis, k, q)
    if ok:
        return True, None, pts
    return False, _ints_to_mat(f, failure), pts


def rank_one_elements_ff(L: MatrixSubspace,
                         budget: int = DEFAULT_BUDGET) -> list:
    """All rank-one elements x y^T of a finite-field subspace up to scalar,
    in projective (x outer, y inner) enumeration order."""
    f = L.field
    if not f.is_finite:
        raise ShapeMismatch("rank_one_elements_ff needs a finite field")
    q = f.size
    m, n = L.rows, L.cols
    if q ** (m + n) > budget:
        raise BudgetExceeded(f"{q}^{m + n} pairs exceed the budget")
    if isinstance(f, PrimeFieldDomain):
        coord = L.coordinate_matrix()
        cok = coord.kernel()
        cok_arr = np.array(
            [[x.value for x in z] for z in cok], dtype=np.int64
        ).reshape(len(cok), m * n)
        pairs = modp.rank_one_pair_scan(cok_arr, m, n, q)
        out = []
        for x, y in pairs:
            xm = Mat.col(f, [int(v) for v in x])
            ym = Mat.col(f, [int(v) for v in y])
            out.append(xm @ ym.transpose())
        return out
    out = []
    for x in _projective_tuples_generic(f, m):
        xm = Mat.col(f, x)
        for y in _projective_tuples_generic(f, n):
            cand = xm @ Mat.col(f, y).transpose()
            if L.contains(cand):
                out.append(cand)
    return out


def rank_extremes_ff(L: MatrixSubspace,
                     budget: int = DEFAULT_BUDGET) -> RankExtremes:
    """Exhaustive minimum nonzero rank r and maximum singular rank s over
    the subspace's own finite field (square ambient)."""
    f = L.field
    if not f.is_finite:
        raise ShapeMismatch("rank_extremes_ff needs a finite field")
    if L.rows != L.cols:
        raise ShapeMismatch("rank_extremes_ff needs a square ambient")
    if L.dim == 0:
        raise ValueError("the zero subspace has no nonzero elements")
    q = f.size
    if q**L.dim > budget:
        raise BudgetExceeded(f"{q}^{L.dim} points exceed the budget")
    n = L.rows
    if isinstance(f, PrimeFieldDomain):
        basis = _subspace_to_int_array(L)
        r, rc, s, sc, pts = modp.rank_extremes_scan(basis, q)
        rmat = L.element([f.from_int(int(c)) for c in rc])
        smat = (L.element([f.from_int(int(c)) for c in sc])
                if sc is not None else None)
        return RankExtremes(int(r), rmat, None if s is None else int(s),
                            smat, pts)
    r = s = None
    rmat = smat = None
    pts = 0
    for coeffs in _projective_tuples_generic(f, L.dim):
        pts += 1
        T = L.element(coeffs)
        rk = T.rank()
        if r is None or rk < r:
            r, rmat = rk, T
        if rk < n and (s is None or rk > s):
            s, smat = rk, T
    return RankExtremes(r, rmat, s, smat, pts)


# ----------------------------------------------------------- pencil route

def pencil_min_rank_exact(V: MatrixSubspace, k: int) -> PencilResult:
    """Exact low-rank decision for dim(V) <= 2 over Q or Q(i).

    dim 1: compare the basis matrix's rank with k.  dim 2: the rank <= k
    locus of the pencil c0 B0 + c1 B1 is cut out by the (k+1)-minors, which
    are binary forms in (c0, c1); a nonzero rank <= k element exists over
    the algebraic closure iff their gcd is nonconstant.  A root of the gcd
    in the base field (or in Q(i) for a Q pencil) gives an exact witness.
    """
    f = V.field
    if f not in (QQ, QI):
        raise ShapeMismatch("the pencil procedure runs over Q or Qi")
    if V.dim > 2:
        raise DimensionTooLarge(f"pencil procedure needs dim <= 2, got {V.dim}")
    if V.dim == 0:
        return PencilResult(False, None, None, None)
    if k >= min(V.rows, V.cols):
        B0 = V.basis[0]
        w = RankWitness((f.one(),) + (f.zero(),) * (V.dim - 1), B0, k)
        return PencilResult(True, w, f.tag, None)
    if V.dim == 1:
        B0 = V.basis[0]
        if B0.rank() <= k:
            w = RankWitness((f.one(),), B0, k)
            assert w.verify(V)
            return PencilResult(True, w, f.tag, None)
        return PencilResult(False, None, None, None)

    B0, B1 = V.basis
    forms = _minor_forms(B0, B1, k + 1)
    gcd = BinaryForm.gcd(forms)
    if gcd is None:
        # every (k+1)-minor vanishes identically: all elements have rank <= k
        w = RankWitness((f.one(), f.zero()), B0, k)
        assert w.verify(V)
        return PencilResult(True, w, f.tag, None)
    cert = (tuple(gcd.poly), gcd.inf_mult)
    if not gcd.has_projective_root():
        return PencilResult(False, None, None, cert)
    for (c0, c1) in gcd.roots_in_field(f):
        T = B0.scale(c0) + B1.scale(c1)
        if not T.is_zero() and T.rank() <= k:
            w = RankWitness((c0, c1), T, k)
            assert w.verify(V)
            return PencilResult(True, w, f.tag, cert)
    if f == QQ:
        # try Gaussian roots of the Q pencil; a Q(i) witness still disproves
        # transitivity over every extension of Q(i), in particular over C
        gauss_poly = tuple(GaussianRational(c, 0) for c in gcd.poly)
        gform = BinaryForm.__new__(BinaryForm)
        gform.poly = gauss_poly
        gform.inf_mult = gcd.inf_mult
        gform.degree = gcd.degree
        Vq = _lift_to_qi(V)
        for (c0, c1) in gform.roots_in_field(QI):
            T = Vq.basis[0].scale(c0) + Vq.basis[1].scale(c1)
            if not T.is_zero() and T.rank() <= k:
                w = RankWitness((c0, c1), T, k)
                assert w.verify(Vq)
                return PencilResult(True, w, QI.tag, cert)
    return PencilResult(True, None, None, cert)


def _minor_forms(B0: Mat, B1: Mat, size: int) -> list:
    """All size x size minors of c0 B0 + c1 B1 as binary forms (dehomogenized
    at c1 = 1, entries are degree <= 1 polynomials in t = c0)."""
    m, n = B0.shape
    zero = B0.field.zero()
    forms = []
    for rows in itertools.combinations(range(m), size):
        for cols in itertools.combinations(range(n), size):
            det = None
            for perm in itertools.permutations(range(size)):
                sign = _perm_sign(perm)
                term = ((B1[rows[0], cols[perm[0]]],
                         B0[rows[0], cols[perm[0]]]))
                acc = term
                for i in range(1, size):
                    e = (B1[rows[i], cols[perm[i]]], B0[rows[i], cols[perm[i]]])
                    acc = _poly_mul_small(acc, e, zero)
                acc = acc if sign > 0 else tuple(-c for c in acc)
                det = acc if det is None else _poly_add_small(det, acc, zero)
            forms.append(BinaryForm(det, size))
    return forms


def _perm_sign(perm) -> int:
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _poly_mul_small(p, q, zero):
    out = [zero] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if not a:
            continue
        for j, b in enumerate(q):
            if b:
                out[i + j] = out[i + j] + a * b
    return tuple(out)


def _poly_add_small(p, q, zero):
    n = max(len(p), len(q))
    return tuple(
        (p[i] if i < len(p) else zero) + (q[i] if i < len(q) else zero)
        for i in range(n)
    )


# -------------------------------------------------------- numeric search

def rank_witness_search_numeric(V: MatrixSubspace, k: int, *, seed: int = 0,
                                iterations: int = 300, restarts: int = 10,
                                tol: float = 1e-9,
                                max_denominator: int = 10**6
                                ) -> Optional[RankWitness]:
    """Alternating-minimization front end; never returns an unverified
    witness (failure is None, false positives are impossible)."""
    if V.field not in (QQ, QI):
        raise ShapeMismatch("numeric search runs over Q or Qi")
    hit = search_low_rank_element(
        V, k, seed=seed, iterations=iterations, restarts=restarts, tol=tol,
        max_denominator=max_denominator)
    if hit is None:
        return None
    coeffs, T = hit
    w = RankWitness(tuple(coeffs), T, k)
    assert w.verify(V)
    return w


# ------------------------------------------------------- main transitivity

def check_k_transitive(L: MatrixSubspace, k: int, strategy: str = "auto", *,
                       primes: Sequence[int] = DEFAULT_PRIMES, seed: int = 0,
                       budget: int = DEFAULT_BUDGET,
                       numeric_iterations: int = 300,
                       numeric_restarts: int = 10,
                       max_denominator: int = 10**6) -> TransitivityVerdict:
    """Decide k-transitivity with an explicit soundness label.

    Dispatch: dim of the pre-annihilator 0 -> certified exact; finite-field
    ambient -> exhaustive enumeration over that field; dim <= 2 over Q/Qi ->
    exact pencil; otherwise finite-field certification over the requested
    primes and, per strategy, the numeric witness search.  Disproofs carry
    exactly verified witnesses and transfer to every field extension of the
    witness's field; k = 0 is rejected; k >= min(m, n) short-circuits to
    the full-space test.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if strategy not in ("auto", "ff", "numeric"):
        raise ValueError(f"unknown strategy {strategy!r}")
    m, n = L.rows, L.cols
    Lp = L.preannihilator()
    d = Lp.dim
    ev: dict = {"strategy": strategy, "seed": seed, "budget": budget,
                "dim": L.dim, "dim_perp": d, "steps": []}

    def witness_from(coeffs, T, tag):
        w = RankWitness(tuple(coeffs), T, k)
        assert w.verify(Lp if T.field == Lp.field else _lift_to_qi(Lp))
        ev["witness_field"] = tag
        return TransitivityVerdict(Status.DISPROVED, k, w, (), ev)

    if k >= min(m, n):
        ev["steps"].append("forced: k >= min(m, n), transitive iff full")
        if d == 0:
            return TransitivityVerdict(Status.CERTIFIED_EXACT, k, None, (), ev)
        B = Lp.basis[0]
        coeffs = [Lp.field.one()] + [Lp.field.zero()] * (d - 1)
        return witness_from(coeffs, B, L.field.tag)

    if d == 0:
        ev["steps"].append("pre-annihilator is zero")
        return TransitivityVerdict(Status.CERTIFIED_EXACT, k, None, (), ev)

    if L.field.is_finite:
        return _check_transitive_ff_ambient(L, Lp, k, budget, ev)

    if d <= 2:
        ev["steps"].append("pencil route (dim <= 2)")
        res = pencil_min_rank_exact(Lp, k)
        if res.gcd_certificate is not None:
            ev["pencil_gcd"] = _cert_to_strings(res.gcd_certificate, L.field)
        if not res.low_rank_exists:
            return TransitivityVerdict(Status.CERTIFIED_EXACT, k, None, (), ev)
        if res.witness is not None:
            ev["witness_field"] = res.witness_field_tag
            return TransitivityVerdict(Status.DISPROVED, k, res.witness, (), ev)
        ev["steps"].append(
            "a low-rank element exists over the algebraic closure but has "
            "no root in the base field; no witness to report")
        return TransitivityVerdict(Status.UNKNOWN, k, None, (), ev)

    # quick disproof: the canonical basis occasionally contains a witness
    for i, B in enumerate(Lp.basis):
        if B.rank() <= k:
            ev["steps"].append(f"basis scan hit at index {i}")
            coeffs = [Lp.field.zero()] * d
            coeffs[i] = Lp.field.one()
            return witness_from(coeffs, B, L.field.tag)

    if strategy in ("auto", "ff"):
        verdict = _ff_certify_rational(L, Lp, k, tuple(primes), budget, ev)
        if verdict is not None:
            return verdict

    if strategy in ("auto", "numeric"):
        ev["steps"].append("numeric witness search")
        w = rank_witness_search_numeric(
            Lp, k, seed=seed, iterations=numeric_iterations,
            restarts=numeric_restarts, max_denominator=max_denominator)
        if w is not None:
            ev["witness_field"] = Lp.field.tag
            return TransitivityVerdict(Status.DISPROVED, k, w, (), ev)

    return TransitivityVerdict(Status.UNKNOWN, k, None, (), ev)


def _cert_to_strings(cert, f: Field):
    poly, inf = cert
    return {"gcd_coefficients_low_to_high": [f.format(c) for c in poly],
            "infinity_multiplicity": inf}


def _check_transitive_ff_ambient(L, Lp, k, budget, ev) -> TransitivityVerdict:
    """Exhaustive decision over the subspace's own finite field."""
    f = L.field
    q = f.size
    n = L.cols
    routes = {
        "pre-annihilator": q**Lp.dim,
        "input-subspaces": (modp.gaussian_binomial(n, k, q)
                            if isinstance(f, PrimeFieldDomain) else None),
    }
    use_columns = (
        isinstance(f, PrimeFieldDomain)
        and routes["input-subspaces"] is not None
        and routes["input-subspaces"] < modp.projective_count(Lp.dim, q)
    )
    if use_columns and routes["input-subspaces"] <= budget:
        ev["steps"].append("exhaustive definitional route over own field")
        ok, X, pts = definitional_k_transitive_ff(L, k, budget)
        ev["points"] = pts
        if ok:
            return TransitivityVerdict(
                Status.CERTIFIED_FINITE_FIELD, k, None, (q,), ev)
        coeffs, T = _witness_from_failing_input(L, Lp, X, k)
        ev["witness_field"] = f.tag
        w = RankWitness(tuple(coeffs), T, k)
        assert w.verify(Lp)
        return TransitivityVerdict(Status.DISPROVED, k, w, (), ev)
    try:
        ev["steps"].append("exhaustive pre-annihilator route over own field")
        coeffs, T, pts = _ff_low_rank_threshold(Lp, k, budget)
        ev["points"] = pts
    except BudgetExceeded:
        ev["steps"].append("enumeration exceeds the budget")
        return TransitivityVerdict(Status.UNKNOWN, k, None, (), ev)
    if coeffs is None:
        return TransitivityVerdict(
            Status.CERTIFIED_FINITE_FIELD, k, None, (q,), ev)
    ev["witness_field"] = f.tag
    w = RankWitness(tuple(coeffs), T, k)
    assert w.verify(Lp)
    return TransitivityVerdict(Status.DISPROVED, k, w, (), ev)


def _witness_from_failing_input(L, Lp, X: Mat, k: int):
    """Given a failing k-input X over GF(p), produce a rank <= k element of
    the pre-annihilator: T = X @ W for a kernel solution W of the pairing
    system; exact linear algebra over GF(p)."""
    f = L.field
    D = L.dim
    m, n = L.rows, L.cols
    # rows: one equation per basis element; unknowns: W (k x m) row-major
    entries = []
    for B in L.basis:
        BX = B @ X  # m x k
        # Tr(B X W) = sum_{a,b} (B X)[b, a] W[a, b]
        entries.extend(BX[b, a] for a in range(k) for b in range(m))
    sysmat = Mat(f, D, k * m, entries)
    kv = sysmat.kernel()
    assert kv, "failing input produced a consistent system"
    W = Mat(f, k, m, kv[0])
    T = X @ W
    assert not T.is_zero()
    coeffs = Lp.coordinates_of(T)
    assert coeffs is not None
    return coeffs, T


def _ff_certify_rational(L, Lp, k, primes, budget, ev) -> Optional[TransitivityVerdict]:
    """Two-prime certification pipeline for Q / Q(i) subspaces.

    Returns a final verdict, or None to let the caller continue with the
    numeric search (mixed or over-budget outcomes)."""
    n = L.cols
    ev.setdefault("ff", {})
    certified = []
    used = []
    plan = list(primes)
    fallback = iter([p for p in _FALLBACK_PRIMES if p not in plan])
    while plan:
        p = plan.pop(0)
        info: dict = {}
        ev["ff"][str(p)] = info
        try:
            Lq = L.reduce_mod(p)
            Lpq = Lp.reduce_mod(p)
        except Exception as exc:  # BadPrime: substitute the next prime
            info["skipped"] = f"{type(exc).__name__}: {exc}"
            try:
                plan.append(next(fallback))
            except StopIteration:
                pass
            continue
        used.append(p)
        col_pts = modp.gaussian_binomial(n, k, p)
        pre_pts_raw = p**Lpq.dim
        use_columns = col_pts < modp.projective_count(Lpq.dim, p)
        if use_columns and col_pts <= budget:
            info["route"] = "input-subspaces"
            ok, X, pts = definitional_k_transitive_ff(Lq, k, budget)
            info["points"] = pts
            if ok:
                certified.append(p)
                continue
            coeffs, T = _witness_from_failing_input(Lq, Lpq, X, k)
        elif pre_pts_raw <= budget:
            info["route"] = "pre-annihilator"
            coeffs, T, pts = _ff_low_rank_threshold(Lpq, k, budget)
            info["points"] = pts
            if coeffs is None:
                certified.append(p)
                continue
        else:
            info["skipped"] = "both enumeration routes exceed the budget"
            continue
        # a low-rank element exists mod p: try to lift it to an exact witness
        info["low_rank_mod_p"] = True
        ints = [c.value for c in coeffs]
        for lift in _lift_vectors(ints, p):
            cand = [Lp.field.from_int(c) for c in lift]
            T0 = Lp.element(cand)
            if not T0.is_zero() and T0.rank() <= k:
                info["lifted"] = True
                ev["witness_field"] = L.field.tag
                w = RankWitness(tuple(cand), T0, k)
                assert w.verify(Lp)
                return TransitivityVerdict(Status.DISPROVED, k, w, (), ev)
        info["lifted"] = False
    ev["ff"]["certified_primes"] = certified
    if used and len(certified) == len(used) >= len(primes):
        return TransitivityVerdict(
            Status.CERTIFIED_FINITE_FIELD, k, None, tuple(certified), ev)
    return None


def transitivity_disproof_from_witness(L: MatrixSubspace, k: int,
                                       T: Mat) -> TransitivityVerdict:
    """Build a Disproved verdict from a supplied obstruction T.

    T must be a nonzero element of the pre-annihilator with rank <= k; the
    membership is verified against the pairing directly and the coefficients
    are recomputed over the canonical basis."""
    if T.is_zero():
        raise ValueError("witness must be nonzero")
    if T.rank() > k:
        raise ValueError(f"witness rank {T.rank()} exceeds {k}")
    for B in L.basis:
        if (B @ T).trace():
            raise ValueError("witness does not annihilate the subspace")
    Lp = L.preannihilator()
    coeffs = Lp.coordinates_of(T)
    assert coeffs is not None
    w = RankWitness(coeffs, T, k)
    assert w.verify(Lp)
    ev = {"strategy": "supplied-witness", "witness_field": T.field.tag,
          "steps": ["witness verified by exact elimination"]}
    return TransitivityVerdict(Status.DISPROVED, k, w, (), ev)


# ----------------------------------------------------------- definitional

def definitional_transitivity_sample(L: MatrixSubspace, k: int,
                                     trials: int = 100,
                                     seed: int = 0) -> DefinitionalSample:
    """Random exact probes of the definition over Q / Q(i): sample integer
    full-column-rank X (n x k) and test surjectivity of A -> A @ X on L.
    Any failure is an exact disproof of k-transitivity."""
    if L.field not in (QQ, QI):
        raise ShapeMismatch("definitional sampling runs over Q or Qi")
    if not 1 <= k <= L.cols:
        raise ValueError("need 1 <= k <= cols")
    rng = random.Random(seed)
    n, m = L.cols, L.rows
    f = L.field
    for _ in range(trials):
        while True:
            X = Mat(f, n, k, [f.from_int(rng.randint(-3, 3))
                              for _ in range(n * k)])
            if X.rank() == k:
                break
        if L.dim == 0:
            return DefinitionalSample(True, X, trials, seed)
        stacked = Mat(f, L.dim, m * k,
                      [x for B in L.basis for x in (B @ X).entries()])
        if stacked.rank() < m * k:
            return DefinitionalSample(True, X, trials, seed)
    return DefinitionalSample(False, None, trials, seed)


# -------------------------------------------------------------- separation

def check_k_separating(L: MatrixSubspace, k: int, strategy: str = "auto", *,
                       primes: Sequence[int] = DEFAULT_PRIMES, seed: int = 0,
                       budget: int = DEFAULT_BUDGET,
                       trials: int = 200) -> SeparationVerdict:
    """Decide the k-separating property.

    L is k-separating when for every independent x_1..x_k some element
    kills x_1..x_{k-1} but not x_k.  Equivalently, for every (k-1)-dim
    subspace V' the common kernel of W = {A in L : A V' = 0} stays inside
    V'; the finite-field scan enumerates canonical representatives of the
    V' (pivot sets with the farthest coordinate first, free entries
    ascending) and reports the first violating flag, preferring standard
    basis vectors for the final column of the witness.

    Over Q / Q(i), "ff" certifies over the requested primes and lifts any
    violating flag to an exactly verified rational disproof; "sample" does
    seeded random disproof search only.
    """
    if not 1 <= k <= L.cols:
        raise ValueError("need 1 <= k <= cols")
    if strategy not in ("auto", "ff", "sample"):
        raise ValueError(f"unknown strategy {strategy!r}")
    n = L.cols
    ev: dict = {"strategy": strategy, "seed": seed, "budget": budget,
                "steps": []}

    if L.field.is_finite:
        q = L.field.size
        pts = modp.gaussian_binomial(n, k - 1, q)
        if pts > budget:
            raise BudgetExceeded(f"{pts} flags exceed the budget")
        bad = _separation_scan_ff(L, k)
        ev["points"] = pts
        if bad is None:
            return SeparationVerdict(
                Status.CERTIFIED_FINITE_FIELD, k, None, (q,), ev)
        assert _verify_separation_violation(L, bad)
        ev["witness_field"] = L.field.tag
        return SeparationVerdict(Status.DISPROVED, k, bad, (), ev)

    if strategy == "sample":
        rng = random.Random(seed)
        f = L.field
        for _ in range(trials):
            while True:
                X = Mat(f, n, k, [f.from_int(rng.randint(-3, 3))
                                  for _ in range(n * k)])
                if X.rank() == k:
                    break
            if _verify_separation_violation(L, X):
                ev["witness_field"] = f.tag
                return SeparationVerdict(Status.DISPROVED, k, X, (), ev)
        ev["steps"].append("no counterexample found by sampling")
        return SeparationVerdict(Status.UNKNOWN, k, None, (), ev)

    certified = []
    used = []
    plan = list(primes)
    fallback = iter([p for p in _FALLBACK_PRIMES if p not in plan])
    for_budget = modp.gaussian_binomial(n, k - 1, max(plan) if plan else 5)
    if for_budget > budget:
        raise BudgetExceeded(f"{for_budget} flags exceed the budget")
    ev["ff"] = {}
    while plan:
        p = plan.pop(0)
        info: dict = {}
        ev["ff"][str(p)] = info
        try:
            Lq = L.reduce_mod(p)
        except Exception as exc:
            info["skipped"] = f"{type(exc).__name__}: {exc}"
            try:
                plan.append(next(fallback))
            except StopIteration:
                pass
            continue
        used.append(p)
        info["points"] = modp.gaussian_binomial(n, k - 1, p)
        bad = _separation_scan_ff(Lq, k)
        if bad is None:
            certified.append(p)
            continue
        info["violation_mod_p"] = True
        lifted = Mat(L.field, n, k,
                     [L.field.from_int(x.value) for x in bad.entries()])
        if lifted.rank() == k and _verify_separation_violation(L, lifted):
            info["lifted"] = True
            ev["witness_field"] = L.field.tag
            return SeparationVerdict(Status.DISPROVED, k, lifted, (), ev)
        info["lifted"] = False
    ev["ff"]["certified_primes"] = certified
    if used and len(certified) == len(used):
        return SeparationVerdict(
            Status.CERTIFIED_FINITE_FIELD, k, None, tuple(certified), ev)
    return SeparationVerdict(Status.UNKNOWN, k, None, (), ev)


def _separation_scan_ff(L: MatrixSubspace, k: int) -> Optional[Mat]:
    """First violating flag (x_1 .. x_k as an n x k matrix) over the
    subspace's own finite field, in the documented enumeration order;
    None when L is k-separating over that field."""
    f = L.field
    n = L.cols
    if not isinstance(f, PrimeFieldDomain):
        raise ShapeMismatch("the separation scan needs GF(p)")
    q = f.size
    for block in modp.iter_rref_blocks(n, k - 1, q, order="far-first"):
        for rep in block:
            Vrows = [[f.from_int(int(v)) for v in row] for row in rep]
            ck, inside = _flag_violation(L, Vrows)
            if inside:
                continue
            xk = _choose_final_vector(f, n, ck, Vrows)
            cols = [list(r) for r in Vrows] + [list(xk)]
            X = Mat(f, n, k,
                    [cols[j][i] for i in range(n) for j in range(k)])
            return X
    return None


def _flag_violation(L: MatrixSubspace, Vrows) -> tuple:
    """Common kernel of W = {A in L : A v = 0 for v in Vrows} and whether it
    stays inside span(Vrows)."""
    f = L.field
    m, n = L.rows, L.cols
    j = len(Vrows)
    if L.dim == 0:
        W_basis = []
    elif j == 0:
        W_basis = list(L.basis)
    else:
        Xcols = Mat(f, n, j, [Vrows[c][r] for r in range(n) for c in range(j)])
        prods = [B @ Xcols for B in L.basis]
        sysm = Mat(f, m * j, L.dim,
                   [P[i, c] for i in range(m) for c in range(j)
                    for P in prods])
        W_basis = [L.element(kv) for kv in sysm.kernel()]
    if not W_basis:
        ck = [tuple(f.one() if i == t else f.zero() for i in range(n))
              for t in range(n)]
    else:
        stacked = Mat(f, len(W_basis) * m, n,
                      [x for B in W_basis for x in B.entries()])
        ck = stacked.kernel()
    if not ck:
        return ck, True
    if not Vrows:
        return ck, False
    span = Mat(f, len(Vrows), n, [x for r in Vrows for x in r])
    base_rank = span.rank()
    for v in ck:
        aug = Mat(f, len(Vrows) + 1, n,
                  [x for r in Vrows for x in r] + list(v))
        if aug.rank() > base_rank:
            return ck, False
    return ck, True


def _choose_final_vector(f, n, ck, Vrows):
    """Standard basis vector in common_kernel minus span(Vrows) if any,
    else the first projective combination of the kernel basis outside."""
    ckm = Mat(f, len(ck), n, [x for v in ck for x in v]) if ck else None
    ck_rank = ckm.rank() if ckm else 0

    def in_ck(vec) -> bool:
        if ckm is None:
            return False
        aug = Mat(f, len(ck) + 1, n, [x for v in ck for x in v] + list(vec))
        return aug.rank() == ck_rank

    def in_span(vec) -> bool:
        if not Vrows:
            return False
        base = Mat(f, len(Vrows), n, [x for r in Vrows for x in r])
        aug = Mat(f, len(Vrows) + 1, n,
                  [x for r in Vrows for x in r] + list(vec))
        return aug.rank() == base.rank()

    for t in range(n):
        e = tuple(f.one() if i == t else f.zero() for i in range(n))
        if in_ck(e) and not in_span(e):
            return e
    for coeffs in _projective_tuples_generic(f, len(ck)):
        vec = [f.zero()] * n
        for c, kv in zip(coeffs, ck):
            if c:
                for i in range(n):
                    vec[i] = vec[i] + c * kv[i]
        if any(vec) and not in_span(vec):
            return tuple(vec)
    raise AssertionError("violating flag without a final vector")


def _verify_separation_violation(L: MatrixSubspace, X: Mat) -> bool:
    """Exact verification: X has full column rank and every element of L
    killing the first k-1 columns also kills the last."""
    n, k = X.shape
    if X.rank() != k:
        return False
    f = L.field
    Vrows = [tuple(X[i, j] for i in range(n)) for j in range(k - 1)]
    m = L.rows
    if L.dim == 0:
        W_basis = []
    elif k == 1:
        W_basis = list(L.basis)
    else:
        Xp = Mat(f, n, k - 1,
                 [X[i, j] for i in range(n) for j in range(k - 1)])
        prods = [B @ Xp for B in L.basis]
        sysm = Mat(f, m * (k - 1), L.dim,
                   [P[i, c] for i in range(m) for c in range(k - 1)
                    for P in prods])
        W_basis = [L.element(kv) for kv in sysm.kernel()]
    xk = [X[i, k - 1] for i in range(n)]
    for B in W_basis:
        out = [sum((B[i, j] * xk[j] for j in range(n) if xk[j] and B[i, j]),
                   f.zero()) for i in range(m)]
        if any(out):
            return False
    return True


# --------------------------------------------------------------- utilities

def verify_rank_spanning(L: MatrixSubspace, r: int,
                         generators: Sequence[Mat]) -> bool:
    """True iff every generator lies in L with rank <= r and the generators
    span L exactly."""
    for G in generators:
        if G.rank() > r or not L.contains(G):
            return False
    span = MatrixSubspace.from_generators(
        list(generators), rows=L.rows, cols=L.cols, field=L.field)
    return span == L


def find_invertible(L: MatrixSubspace, attempts: int = 200,
                    seed: int = 0) -> Optional[Mat]:
    """Seeded random small-integer combinations; first one with exactly
    nonzero determinant, or None after the attempt budget."""
    if L.rows != L.cols:
        raise ShapeMismatch("find_invertible needs a square ambient")
    if L.field not in (QQ, QI):
        raise ShapeMismatch("find_invertible runs over Q or Qi")
    if L.dim == 0:
        return None
    rng = random.Random(seed)
    f = L.field
    for _ in range(attempts):
        coeffs = [f.from_int(rng.randint(-2, 2)) for _ in range(L.dim)]
        if not any(coeffs):
            continue
        M = L.element(coeffs)
        if M.det():
            return M
    return None
