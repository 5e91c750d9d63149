"""translab: matrix subspaces over exact fields and the machinery for
constructing, transforming, and certifying their transitivity properties.

The public surface:

* fields: ``QQ``, ``QI``, ``GF(q)`` descriptors and exact scalars
* matrices: :class:`Mat` with exact rank / rref / kernel / solve and
  characteristic reduction
* subspace: :class:`MatrixSubspace` with canonical bases, the trace-pairing
  duality, tensor and product spans, compressions
* deciders: k-transitivity and k-separation verdicts with soundness labels,
  exhaustive finite-field searches, the exact pencil procedure, and the
  numeric low-rank witness search
* families: the concrete constructions (Toeplitz, minimal k-transitive,
  dually transitive blocks, and the rest) plus family addresses
* serialize / report / cli: deterministic JSON interchange, the
  reproduction report, and the command-line front end
"""

from .errors import (
    BadPrime,
    BudgetExceeded,
    DimensionTooLarge,
    NotIdempotent,
    ParameterOutOfRange,
    ShapeMismatch,
    SingularTransform,
    TranslabError,
)
from .fields import GF, QI, QQ, FpElement, Fp2Element, GaussianRational, field_from_tag
from .matrices import Mat, reduce_mod
from .subspace import MatrixSubspace
from .deciders import (
    DefinitionalSample,
    RankExtremes,
    RankWitness,
    SeparationVerdict,
    Status,
    TransitivityVerdict,
    check_k_separating,
    check_k_transitive,
    definitional_k_transitive_ff,
    definitional_transitivity_sample,
    find_invertible,
    min_rank_ff_exhaustive,
    pencil_min_rank_exact,
    rank_extremes_ff,
    rank_one_elements_ff,
    rank_witness_search_numeric,
    transitivity_disproof_from_witness,
    verify_rank_spanning,
)
from .families import (
    FamilySpec,
    build_family,
    counterexample_certificate,
    dual_transitive_8dim,
    dual_transitive_theorem_form,
    hankel_space,
    min_rank_diagonal_annihilator,
    minimal_k_transitive,
    minimal_k_transitive_obstruction,
    parse_family,
    pattern_space,
    phi_block_space,
    phi_eigen_structure,
    rank_annihilator_space,
    row_augmented_space,
    sl_tensor_full,
    toeplitz_space,
    trace_zero,
    vandermonde_diagonal_space,
)
from .report import build_report
from .serialize import (
    mat_from_obj,
    mat_to_obj,
    subspace_from_obj,
    subspace_to_obj,
)

__version__ = "0.1.0"
