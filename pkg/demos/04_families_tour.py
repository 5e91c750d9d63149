"""The family constructors and their headline properties.

Run:  python demos/04_families_tour.py
"""

from translab import (
    build_family,
    check_k_transitive,
    counterexample_certificate,
    dual_transitive_8dim,
    parse_family,
    phi_block_space,
    phi_eigen_structure,
    row_augmented_space,
    sl_tensor_full,
    vandermonde_diagonal_space,
    MatrixSubspace,
    QQ,
)

# Families are addressable by short strings (the CLI accepts the same).
for text in ["toeplitz:4", "minimal:4,5,2", "tracezero:3", "rankann:3,3,1",
             "sltensor:2,2", "dualtransitive", "rowaug:toeplitz:3"]:
    space = build_family(parse_family(text))
    print(f"{text:<22} dim {space.dim:>3} in Mat({space.rows},{space.cols})")

# Vandermonde diagonal spaces: dimension p-k, no nonzero element of rank
# at most k (the engine behind the minimal-dimension construction).
V = vandermonde_diagonal_space(5, 2)
print("\nvdiag(5,2): dim", V.dim)

# The 8-dimensional block space in Mat(4,4): both it and its
# pre-annihilator are transitive, driven by a bijection of Mat(2,2) with
# four distinct eigenvalues whose eigenvectors all have rank 2.
D, phi = dual_transitive_8dim()
print("\ndually transitive space: dim", D.dim)
print("eigen structure:", phi_eigen_structure(phi))
print("L   1-transitive:", check_k_transitive(D, 1).status.value)
print("L_p 1-transitive:",
      check_k_transitive(D.preannihilator(), 1).status.value)

# The larger block construction: a 32-dimensional subspace of Mat(8,8)
# with the same two-sided property (finite-field certified).
PB = phi_block_space(4, 1)
print("\nblock construction (4,1): dim", PB.dim,
      "| verdict:", check_k_transitive(PB, 1, primes=(5,)).status.value)

# Tensoring is not harmless: the tensor square of the dually transitive
# space is NOT transitive, and the certificate is a verified rank-one
# obstruction assembled from eight block equations.
cert = counterexample_certificate()
print("\ntensor counterexample verified:", cert.all_ok)
print("tensor square verdict:", cert.verdict_tensor_main.status.value)

# Separation without transitivity: a free first row over the zero space.
RA = row_augmented_space(MatrixSubspace.zero_space(QQ, 3, 3))
print("\nrow-augmented zero space: dim", RA.dim,
      "| 1-transitive:", check_k_transitive(RA, 1).status.value)
