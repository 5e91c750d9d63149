"""Dense exact matrices over the supported fields, with elimination-based
rank / rref / kernel / solve and characteristic reduction.

Matrices are immutable; entries are stored row-major.  All elimination is
exact (no floating point) and deterministic: pivots are chosen leftmost
column first, first nonzero row within the column.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import BadPrime, ShapeMismatch
from .fields import (
    GF,
    QI,
    QQ,
    Field,
    FpElement,
    Fp2Element,
    GaussianRational,
    PrimeFieldDomain,
    QuadExtDomain,
    Scalar,
    conjugate,
)

__all__ = ["Mat", "rank", "rref", "kernel", "solve", "reduce_mod"]


class Mat:
    """An immutable rows x cols matrix with entries in a single field."""

    __slots__ = ("rows", "cols", "field", "_e")

    def __init__(self, field: Field, rows: int, cols: int, entries: Sequence[Scalar]):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        entries = tuple(entries)
        if len(entries) != rows * cols:
            raise ValueError(
                f"expected {rows * cols} entries for {rows}x{cols}, got {len(entries)}"
            )
        for x in entries:
            field.check_element(x)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "_e", entries)

    def __setattr__(self, *a):
        raise AttributeError("Mat is immutable")

    # ---------------------------------------------------------------- build
    @classmethod
    def from_rows(cls, field: Field, rows: Iterable[Iterable]) -> "Mat":
        rows = [[_coerce(field, x) for x in r] for r in rows]
        if not rows:
            raise ValueError("from_rows needs at least one row")
        n = len(rows[0])
        if any(len(r) != n for r in rows):
            raise ValueError("ragged rows")
        return cls(field, len(rows), n, [x for r in rows for x in r])

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Mat":
        z = field.zero()
        return cls(field, rows, cols, [z] * (rows * cols))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Mat":
        z, o = field.zero(), field.one()
        return cls(field, n, n, [o if i == j else z for i in range(n) for j in range(n)])

    @classmethod
    def unit(cls, field: Field, rows: int, cols: int, i: int, j: int) -> "Mat":
        """The matrix unit E_ij (0-indexed)."""
        z, o = field.zero(), field.one()
        return cls(
            field, rows, cols,
            [o if (r, c) == (i, j) else z for r in range(rows) for c in range(cols)],
        )

    @classmethod
    def diag(cls, field: Field, values: Sequence) -> "Mat":
        vals = [_coerce(field, v) for v in values]
        n = len(vals)
        z = field.zero()
        return cls(field, n, n, [vals[i] if i == j else z for i in range(n) for j in range(n)])

    @classmethod
    def col(cls, field: Field, values: Sequence) -> "Mat":
        vals = [_coerce(field, v) for v in values]
        return cls(field, len(vals), 1, vals)

    # ---------------------------------------------------------------- access
    def __getitem__(self, ij) -> Scalar:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError((i, j))
        return self._e[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self._e[i * self.cols : (i + 1) * self.cols]

    def column(self, j: int) -> tuple:
        return tuple(self._e[i * self.cols + j] for i in range(self.rows))

    def entries(self) -> tuple:
        return self._e

    def tolists(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    def is_zero(self) -> bool:
        return not any(self._e)

    def is_square(self) -> bool:
        return self.rows == self.cols

    # ------------------------------------------------------------- algebra
    def _same_shape(self, other: "Mat"):
        if not isinstance(other, Mat):
            raise TypeError("expected a Mat")
        if self.field != other.field:
            raise ShapeMismatch(f"field mismatch: {self.field.tag} vs {other.field.tag}")
        if self.shape != other.shape:
            raise ShapeMismatch(f"shape mismatch: {self.shape} vs {other.shape}")

    def __add__(self, other):
        self._same_shape(other)
        return Mat(self.field, self.rows, self.cols,
                   [a + b for a, b in zip(self._e, other._e)])

    def __sub__(self, other):
        self._same_shape(other)
        return Mat(self.field, self.rows, self.cols,
                   [a - b for a, b in zip(self._e, other._e)])

    def __neg__(self):
        return Mat(self.field, self.rows, self.cols, [-a for a in self._e])

    def scale(self, c) -> "Mat":
        c = _coerce(self.field, c)
        return Mat(self.field, self.rows, self.cols, [c * a for a in self._e])

    def __mul__(self, other):
        if isinstance(other, Mat):
            return self @ other
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __matmul__(self, other: "Mat") -> "Mat":
        if not isinstance(other, Mat):
            raise TypeError("expected a Mat")
        if self.field != other.field:
            raise ShapeMismatch(f"field mismatch: {self.field.tag} vs {other.field.tag}")
        if self.cols != other.rows:
            raise ShapeMismatch(f"inner dimensions differ: {self.shape} @ {other.shape}")
        z = self.field.zero()
        out = []
        ot = other  # row-major access on both
        for i in range(self.rows):
            arow = self.row(i)
            for j in range(other.cols):
                s = z
                for k, a in enumerate(arow):
                    if a:
                        s = s + a * ot._e[k * ot.cols + j]
                out.append(s)
        return Mat(self.field, self.rows, other.cols, out)

    def transpose(self) -> "Mat":
        return Mat(self.field, self.cols, self.rows,
                   [self._e[i * self.cols + j]
                    for j in range(self.cols) for i in range(self.rows)])

    def conj_transpose(self) -> "Mat":
        return Mat(self.field, self.cols, self.rows,
                   [conjugate(self._e[i * self.cols + j])
                    for j in range(self.cols) for i in range(self.rows)])

    def trace(self) -> Scalar:
        if not self.is_square():
            raise ShapeMismatch("trace needs a square matrix")
        s = self.field.zero()
        for i in range(self.rows):
            s = s + self[i, i]
        return s

    def kron(self, other: "Mat") -> "Mat":
        """Kronecker product; block (i, j) of the result is self[i, j] * other."""
        if self.field != other.field:
            raise ShapeMismatch("field mismatch in Kronecker product")
        R, C = self.rows * other.rows, self.cols * other.cols
        z = self.field.zero()
        out = [z] * (R * C)
        for i in range(self.rows):
            for j in range(self.cols):
                a = self[i, j]
                if not a:
                    continue
                for r in range(other.rows):
                    base = (i * other.rows + r) * C + j * other.cols
                    orow = other.row(r)
                    for c in range(other.cols):
                        if orow[c]:
                            out[base + c] = a * orow[c]
        return Mat(self.field, R, C, out)

    # ------------------------------------------------------------ identity
    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return (self.field == other.field and self.shape == other.shape
                and self._e == other._e)

    def __hash__(self):
        return hash((self.field, self.rows, self.cols, self._e))

    def __repr__(self):
        body = "; ".join(
            " ".join(self.field.format(x) for x in self.row(i))
            for i in range(self.rows)
        )
        return f"Mat[{self.field.tag} {self.rows}x{self.cols}: {body}]"

    # ----------------------------------------------------------- elimination
    def rref(self) -> tuple["Mat", tuple]:
        """Reduced row echelon form and the strictly increasing pivot columns."""
        R, pivots = _rref_rows([list(self.row(i)) for i in range(self.rows)],
                               self.field)
        return Mat(self.field, self.rows, self.cols,
                   [x for r in R for x in r]), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel(self) -> list:
        """Basis of the right null space as coordinate tuples, in
        free-variable unit-assignment order (free columns ascending)."""
        R, pivots = _rref_rows([list(self.row(i)) for i in range(self.rows)],
                               self.field)
        return _kernel_from_rref(R, pivots, self.cols, self.field)

    def solve(self, b: Sequence) -> Optional[tuple]:
        """Some exact solution x of A x = b, or None if inconsistent."""
        bvals = [_coerce(self.field, x) for x in b]
        if len(bvals) != self.rows:
            raise ShapeMismatch(f"rhs length {len(bvals)} != {self.rows} rows")
        aug = [list(self.row(i)) + [bvals[i]] for i in range(self.rows)]
        R, pivots = _rref_rows(aug, self.field)
        if self.cols in pivots:
            return None
        z = self.field.zero()
        x = [z] * self.cols
        for r, pc in enumerate(pivots):
            x[pc] = R[r][self.cols]
        assert _matvec(self, x) == bvals, "solve postcondition failed"
        return tuple(x)

    def det(self) -> Scalar:
        """Determinant by exact fraction elimination with partial pivoting."""
        if not self.is_square():
            raise ShapeMismatch("det needs a square matrix")
        n = self.rows
        rows = [list(self.row(i)) for i in range(n)]
        one = self.field.one()
        det = one
        sign = 1
        for c in range(n):
            piv = None
            for r in range(c, n):
                if rows[r][c]:
                    piv = r
                    break
            if piv is None:
                return self.field.zero()
            if piv != c:
                rows[c], rows[piv] = rows[piv], rows[c]
                sign = -sign
            p = rows[c][c]
            det = det * p
            pinv = one / p
            for r in range(c + 1, n):
                f = rows[r][c]
                if not f:
                    continue
                f = f * pinv
                prow = rows[c]
                rrow = rows[r]
                for j in range(c, n):
                    if prow[j]:
                        rrow[j] = rrow[j] - f * prow[j]
        return det if sign == 1 else -det

    def is_invertible(self) -> bool:
        return self.is_square() and bool(self.det())


def _coerce(field: Field, x) -> Scalar:
    if isinstance(x, bool):
        raise TypeError("bool is not a matrix entry")
    if isinstance(x, int):
        return field.from_int(x)
    if field == QQ and isinstance(x, Fraction):
        return x
    if field == QI:
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, Fraction):
            return GaussianRational(x, 0)
    field.check_element(x)
    return x


def _matvec(A: Mat, x: Sequence[Scalar]) -> list:
    z = A.field.zero()
    out = []
    for i in range(A.rows):
        s = z
        row = A.row(i)
        for a, v in zip(row, x):
            if a and v:
                s = s + a * v
        out.append(s)
    return out


def _rref_rows(rows: list, field: Field) -> tuple[list, list]:
    """In-place reduced row echelon over a list of row lists.

    Deterministic: leftmost pivot column, first nonzero row at or below the
    working row; pivot scaled to one; eliminates above and below.  Skips
    zero entries, which keeps sparse coordinate matrices fast.
    """
    if not rows:
        return rows, []
    nrows, ncols = len(rows), len(rows[0])
    one = field.one()
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        piv = None
        for i in range(r, nrows):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        p = prow[c]
        if p != one:
            pinv = one / p
            for j in range(c, ncols):
                if prow[j]:
                    prow[j] = pinv * prow[j]
        support = [j for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i == r:
                continue
            f = rows[i][c]
            if not f:
                continue
            irow = rows[i]
            for j in support:
                irow[j] = irow[j] - f * prow[j]
        pivots.append(c)
        r += 1
    return rows, pivots


def _kernel_from_rref(R: list, pivots: list, ncols: int, field: Field) -> list:
    z, o = field.zero(), field.one()
    pivset = set(pivots)
    free = [j for j in range(ncols) if j not in pivset]
    basis = []
    for j in free:
        v = [z] * ncols
        v[j] = o
        for r, pc in enumerate(pivots):
            coef = R[r][j]
            if coef:
                v[pc] = -coef
        basis.append(tuple(v))
    return basis


# ------------------------------------------------------------------ wrappers

def rank(A: Mat) -> int:
    return A.rank()


def rref(A: Mat) -> tuple[Mat, tuple]:
    return A.rref()


def kernel(A: Mat) -> list:
    return A.kernel()


def solve(A: Mat, b: Sequence) -> Optional[tuple]:
    return A.solve(b)


# -------------------------------------------------------------- reduction

def reduce_mod(A: Mat, q: int) -> Mat:
    """Entrywise reduction of a matrix over Q or Q(i) into GF(q).

    q must be a prime or the square of an odd prime.  Rationals reduce by
    a/b -> a * b^-1 mod p; Q(i) reduces into GF(p) when -1 is a square mod p
    (using the smaller of the two roots) and into GF(p^2) otherwise.
    Raises BadPrime when a reduced denominator is divisible by p, or when
    the requested target cannot host i.
    """
    target = GF(q)
    p = target.characteristic
    if A.field == QQ:
        if isinstance(target, PrimeFieldDomain):
            return Mat(target, A.rows, A.cols,
                       [_red_frac(x, p, target) for x in A.entries()])
        ent = [_red_frac_fp2(x, target) for x in A.entries()]
        return Mat(target, A.rows, A.cols, ent)
    if A.field == QI:
        if isinstance(target, PrimeFieldDomain):
            if p == 2:
                ival = FpElement(1, 2)  # 1*1 = 1 = -1 mod 2
            elif p % 4 == 1:
                from .fields import _sqrt_mod_p

                ival = FpElement(_sqrt_mod_p(p - 1, p), p)
            else:
                raise BadPrime(
                    f"-1 is not a square mod {p}; reduce into GF({p}^2) instead")
            return Mat(target, A.rows, A.cols,
                       [_red_frac(x.re, p, target) + ival * _red_frac(x.im, p, target)
                        for x in A.entries()])
        ival2 = target.sqrt_of_minus_one()
        return Mat(target, A.rows, A.cols,
                   [_red_frac_fp2(x.re, target) + ival2 * _red_frac_fp2(x.im, target)
                    for x in A.entries()])
    raise ShapeMismatch(f"reduce_mod expects a matrix over Q or Qi, got {A.field.tag}")


def _red_frac(x: Fraction, p: int, target) -> FpElement:
    if x.denominator % p == 0:
        raise BadPrime(f"denominator of {x} is divisible by {p}")
    return FpElement(x.numerator * pow(x.denominator, -1, p), p)


def _red_frac_fp2(x: Fraction, target: QuadExtDomain) -> Fp2Element:
    p = target.p
    if x.denominator % p == 0:
        raise BadPrime(f"denominator of {x} is divisible by {p}")
    return target.from_pair(x.numerator * pow(x.denominator, -1, p), 0)
