"""Tour of the exact kernel: the four scalar fields and dense elimination.

Run:  python demos/01_exact_kernel.py
"""

from fractions import Fraction

from translab import GF, QI, QQ, GaussianRational, Mat, reduce_mod

# Four exact fields.  Rationals are plain Fractions; the others come with
# their own immutable scalar types and a round-trippable string grammar.
print("fields:", QQ.tag, QI.tag, GF(5).tag, GF(25).tag)
z = QI.parse("1/2-3/4 i")
print("a Gaussian rational:", z, "* conjugate =", z * z.conjugate())
w = GF(25).gen()
print("the generator of GF(25) squares to the non-residue:", w * w)

# Dense matrices are immutable and field-generic.  Everything downstream is
# exact elimination: rank, reduced row echelon form, kernels, solving.
A = Mat.from_rows(QQ, [[2, 4, 1], [1, 2, 0], [0, 0, 1]])
R, pivots = A.rref()
print("\nrref pivots:", pivots)
print("rank:", A.rank(), " kernel size:", len(A.kernel()))

B = Mat.from_rows(QQ, [[1, 1, 1]])
for v in B.kernel():
    print("kernel vector:", v, "->  A v =", [str(x) for x in
          (sum(a * x for a, x in zip(B.row(0), v)),)])

# Solving returns an exact witness or None; the result is substituted back
# before it is returned, so a solution is never wrong.
print("\nsolve [[1,1]] x = 5:", Mat.from_rows(QQ, [[1, 1]]).solve([5]))
print("solve inconsistent:", Mat.from_rows(QQ, [[1], [1]]).solve([0, 1]))

# Characteristic reduction: rationals drop onto GF(p) whenever no reduced
# denominator collides with p; Gaussian rationals land in GF(p) when -1 is
# a square mod p and in GF(p^2) otherwise.
half = Mat.from_rows(QQ, [[Fraction(1, 2)]])
print("\n1/2 mod 7 ->", reduce_mod(half, 7))
gauss = Mat(QI, 1, 1, [GaussianRational(1, 1)])
print("1+i mod 5 ->", reduce_mod(gauss, 5))
print("1+i into GF(49) ->", reduce_mod(gauss, 49))
