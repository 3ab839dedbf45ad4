"""Exact computer algebra for resolutions of skew-bilinear product ideals.

The ring is K[y_1..y_n, x_ij] with a generic skew-symmetric matrix X and
generic column Y; the package builds graded minimal free resolutions of
the ideal of entries of X*Y, checks the classical identities behind the
construction, and verifies the structure conjectures for small n.
"""

__version__ = "0.1.0"

from .fields import DEFAULT_PRIME, GF, QQ
from .ring import (
    DEGREVLEX,
    LEX,
    Monomial,
    MonomialOrder,
    PolyRing,
    Polynomial,
    RingMismatchError,
    VariableRegistry,
    compare,
    divide,
    elimination_order,
    leading_term,
    s_polynomial,
)
from .groebner import (
    BudgetExceededError,
    GroebnerBasis,
    ModuleOrder,
    Vector,
    buchberger,
    certify_membership,
    kernel_generators,
    module_buchberger,
    module_equal,
    module_normal_form,
    normal_form,
)
from .ideals import (
    Ideal,
    RegularSequenceReport,
    colon,
    dimension,
    eliminate,
    ideal_equal,
    ideal_sum,
    is_regular_sequence,
    member_with_certificate,
)
from .skew import IdentityReport, NamedIdeals, SkewSystem, verify_identities
from .complexes import (
    BettiTable,
    ChainComplex,
    ChainMap,
    ComplexError,
    GradedFreeModule,
    LiftError,
    PolyMatrix,
    betti_table,
    complex_from_json,
    complex_to_json,
    koszul,
    lift_chain_map,
    mapping_cone,
    minimalize,
    tensor_length_one,
    verify_resolution,
)
from .pipeline import (
    ConjectureError,
    ConjectureReport,
    PipelineRun,
    direct_resolution,
    resolve_L,
    run_direct,
    run_pipeline,
    verify_conjecture,
    verify_conjecture1,
    verify_conjecture2,
)
