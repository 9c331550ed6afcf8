"""Deformed Fock spaces for generalized particle statistics.

Build the deformed scalar product and creation/annihilation operators from a
cross operator ``T`` (and optionally a braid operator ``B``), and check the
algebraic laws numerically: Yang-Baxter, braid and consistency relations,
positivity, quotient structure, adjointness and commutation relations.
"""
from .exceptions import (
    ConstructionError,
    GSFockError,
    InconsistencyError,
    InputError,
    SizeLimitError,
    ValidationError,
)
from .fock_space import (
    FockLevel,
    QuotientLevel,
    gram,
    ideal_component,
    p_operator,
    positivity_report,
    quotient_structure,
    r_operator,
)
from .statistics_ops import (
    BraidOperator,
    CrossOperator,
    Pairing,
    TildeOperator,
    check_braid_relation,
    check_consistency,
    check_cross_structure,
    check_norm_bound,
    check_yang_baxter,
    tilde,
    untilde,
)
from .statistics_zoo import (
    AbelianGroup,
    Bicharacter,
    Grading,
    StatisticsSpec,
    check_bicharacter,
    family_boltzmann,
    family_boson,
    family_color,
    family_fermion,
    family_quon,
    load_custom,
    parity_bicharacter,
)
from .wick_ops import (
    CrossSymmetryLadder,
    WickRepresentation,
    annihilation_matrix,
    annihilation_word,
    build_quotient_representation,
    build_representation,
    creation_matrix,
    number_operator_spectrum,
    verify_adjointness,
    verify_brel,
    verify_crel,
    verify_representation_theorem,
)

__version__ = "0.1.0"
