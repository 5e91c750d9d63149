"""Matrix subspaces, canonical bases, and the trace-pairing duality.

Run:  python demos/02_subspaces_and_duality.py
"""

from translab import Mat, MatrixSubspace, QQ, toeplitz_space, trace_zero

# Subspaces are stored through a canonical basis (the row-major coordinate
# matrix is in reduced row echelon form), so equal spans compare equal and
# serialize identically no matter how they were generated.
T3 = toeplitz_space(3)
regenerated = MatrixSubspace.from_generators(
    [T3.element([1, 2, 3, 4, 5]), T3.element([5, 4, 3, 2, 1]),
     T3.element([1, 0, 0, 0, 1]), T3.element([0, 1, 0, 1, 0]),
     T3.element([0, 0, 7, 0, 0])])
print("Toeplitz 3x3: dim", T3.dim, "| canonical equality:", regenerated == T3)

# The duality: <A, T> = Tr(A T).  The pre-annihilator of the Toeplitz space
# consists of the matrices whose entries sum to zero along every diagonal.
Tp = T3.preannihilator()
print("pre-annihilator dim:", Tp.dim, " (5 + 4 = 9 = dim of the ambient)")
print("duality is an involution:", Tp.preannihilator() == T3)

# Subspace algebra: sums, intersections, tensors, products of subspaces.
tz = trace_zero(3)
print("\nToeplitz meet trace-zero, dim:", T3.intersect(tz).dim)
T2 = toeplitz_space(2)
print("Toeplitz(2) tensor Toeplitz(2), dim:", T2.tensor(T2).dim)
print("span of Toeplitz(3) squares = full algebra:",
      T3.product_span(T3).is_full())
print("power span index of Toeplitz(3):", T3.power_span_index())

# The annihilator of a tensor is the sum of the one-sided tensor
# annihilators; here it is checked as a canonical-form equality.
L = MatrixSubspace.from_generators([Mat.identity(QQ, 2)])
M = T2
lhs = L.tensor(M).preannihilator()
rhs = L.preannihilator().tensor(MatrixSubspace.full_space(QQ, 2, 2)).sum(
    MatrixSubspace.full_space(QQ, 2, 2).tensor(M.preannihilator()))
print("\ndual tensor identity holds:", lhs == rhs)

# Compressions by idempotents: cutting the 5x5 Toeplitz algebra down to its
# leading 3x3 corner yields exactly the 3x3 Toeplitz space.
P = Mat.diag(QQ, [1, 1, 1, 0, 0])
corner = toeplitz_space(5).compress(P, P)
print("corner compression of Toeplitz(5):",
      corner == toeplitz_space(3), "| dim", corner.dim)
