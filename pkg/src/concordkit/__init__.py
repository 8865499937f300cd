"""Exact Seifert-matrix concordance invariants and solvability certificates."""

__version__ = "0.1.0"

from .errors import (
    ArcResolutionError,
    ConcordkitError,
    HypothesisError,
    MatrixFileError,
    SeifertError,
    UnsupportedModuleError,
)
from .polynomial import (
    LaurentPoly,
    Poly,
    cyclotomic,
    parse_laurent,
    poly_gcd,
    recognize_cyclotomic,
    resultant,
)
from .polymatrix import PolyMatrix, SNFResult, det_laurent, smith_normal_form
from .seifert import (
    GRANNY,
    TREFOIL,
    UNKNOT,
    SeifertMatrix,
    alexander_polynomial,
    arf_invariant,
    build_paper_matrix,
    connected_sum,
    find_metabolizer,
    fox_milnor_check,
    is_metabolizer,
    reverse_mirror,
    validate_seifert,
)
from .signature import CirclePoint, RhoValue, levine_tristram, rho_zero, signature_arcs
from .module import (
    AlexModule,
    BlanchfieldValue,
    ModuleElement,
    Submodule,
    blanchfield,
    character_value,
    module_from_seifert,
    nonsingularity_witness,
    orthogonal_complement,
    proper_submodules,
)
from .covers import (
    CoverOrder,
    CriterionVerdict,
    casson_gordon_vanishing_certificate,
    connected_sum_cover_property,
    cover_homology_order,
    livingston_criterion,
    prime_powers,
)
from .obstruction import (
    CompanionKnot,
    GraftedKnot,
    SolvabilityCertificate,
    combination_obstruction,
    graft,
    not_one_point_five_certificate,
    replay_certificate,
    solvable_one_certificate,
)
from .matrixfile import format_matrix, parse_matrix_file, parse_matrix_text
