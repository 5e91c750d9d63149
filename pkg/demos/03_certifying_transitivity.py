"""Transitivity verdicts and their soundness labels.

A subspace L of Mat(m, n) is k-transitive when every k independent inputs
can be steered to arbitrary targets by an element of L; equivalently, the
pre-annihilator of L contains no nonzero matrix of rank at most k.  The
deciders answer with explicit soundness: exact over the algebraic closure
(pencil route), exhaustive over named finite fields, or a verified witness
that disproves transitivity over every extension of its field.

Run:  python demos/03_certifying_transitivity.py
"""

from translab import (
    check_k_separating,
    check_k_transitive,
    min_rank_ff_exhaustive,
    minimal_k_transitive,
    rank_annihilator_space,
    toeplitz_space,
    trace_zero,
)

# A codimension-one annihilator of a single rank-2 matrix: transitive, and
# the pencil route proves it outright (valid over the algebraic closure).
L = rank_annihilator_space(3, 3, 1)
v = check_k_transitive(L, 1)
print("rank annihilator, k=1:", v.status.value, "|", v.soundness)

# The same space fails 2-transitivity, and the witness is the rank-2
# matrix itself; a rational witness disproves over every extension.
v = check_k_transitive(L, 2)
print("rank annihilator, k=2:", v.status.value,
      "| witness rank:", v.witness.matrix.rank())

# Trace-zero matrices: the pre-annihilator is spanned by the identity, so
# the singleton route certifies (n-1)-transitivity exactly.
print("trace zero, k=2:", check_k_transitive(trace_zero(3), 2).status.value)

# Toeplitz spaces have pre-annihilators too large for the exact routes, so
# the verdicts are exhaustive finite-field certifications and say so.
v = check_k_transitive(toeplitz_space(4), 1)
print("Toeplitz(4), k=1:", v.status.value, "| primes:", v.primes)
print("   soundness:", v.soundness)

# The finite-field minimum-rank oracle behind those verdicts, run directly:
Tp5 = toeplitz_space(3).preannihilator().reduce_mod(5)
r, witness = min_rank_ff_exhaustive(Tp5)
print("\nmin rank over the reduced pre-annihilator:", r,
      "| witness verified:", witness.verify(Tp5))

# Separation is the weaker pointwise notion; Toeplitz spaces separate two
# vectors but not three, and the disproof tuple is exact.
s = check_k_separating(toeplitz_space(3), 3)
print("\nToeplitz(3) 3-separating:", s.status.value)
print("witness columns:")
for i in range(3):
    print("  ", [str(s.witness_columns[i, j]) for j in range(3)])

# Minimal k-transitive constructions meet the dimension bound k(m+n-k).
for (m, n, k) in [(3, 3, 1), (4, 5, 2)]:
    L = minimal_k_transitive(m, n, k)
    print(f"\nminimal ({m},{n},{k}): dim {L.dim} = k(m+n-k)",
          "| verdict:", check_k_transitive(L, k).status.value)
