"""Finite binary relations: consistency, extensions, realizers and games."""

from .consistency import (
    LambdaIndex,
    consistency_report,
    delta_index,
    has_m_rank_of_symmetry,
    is_delta_consistent,
    is_lambda_consistent,
    is_m_consistent,
    is_m_consistent_via_parts,
    is_s_consistent,
    lambda_index,
    s_consistency_witness,
)
from .errors import CapExceeded, ConstraintError, InputError, OrdexError, PreconditionFailed
from .extension import (
    ExtensionConstraint,
    enumerate_linear_extensions,
    enumerate_ordering_extensions,
    enumerate_tournament_extensions,
    extension_with_maximal,
    linear_extension,
    ordering_extension,
    szpilrajn_step,
    tournament_extension,
    validate_constraint,
)
from .formats import format_game, format_relation, parse_game, parse_relation
from .games import (
    Game,
    completion_union_check,
    enumerate_completions,
    nash_equilibria,
    witness_completion,
)
from .harness import SCOPES, conjecture_harness
from .realizer import (
    FLAVORS,
    RealizerFamily,
    RelationClass,
    covered_set,
    covers,
    dimension,
    duggan_check,
    intersect,
    is_realizer,
    uncovered_pairs,
    verify_intersection_theorem,
)
from .relation import (
    OMEGA,
    Relation,
    Universe,
    UniverseMismatch,
    asymmetric_part,
    classify,
    compose,
    decompose,
    incomparable_pairs,
    maximal_elements,
    power,
    power_sequence,
    quotient_by_indifference,
    restrict,
    strongly_connected_components,
    symmetric_part,
    transitive_closure,
)

__version__ = "0.1.0"
