"""Exact quadratization of pseudo-Boolean polynomials."""

from ._accel import USE_NUMBA
from .aggregate import (
    TermGroup,
    aggregate_pipeline,
    select_common_part,
    split_common_negative,
    split_common_positive,
)
from .core import (
    AuxAllocator,
    LiteralForm,
    PseudoBooleanFunction,
    canonicalize,
    degree,
    evaluate,
    linear_combine,
    monomial,
    restrict,
    substitute_pair,
)
from .errors import CapExceededError, NotSubmodularError, ParseError, PBQuadError, UniverseMismatchError
from .flowmin import FlowNetwork, build_network, min_cut_minimize
from .methods import METHODS, quadratize
from .pbfio import emit_pbf, parse_function, parse_pbf
from .termwise import (
    THREE_SPLIT,
    TWO_SPLIT,
    Quadratization,
    SplitSystem,
    apply_split,
    quadratize_kzfd,
    quadratize_mixed_term_rkfj,
    quadratize_negated_negative_term,
    quadratize_negative_term,
    quadratize_negaform,
    quadratize_positive_term_chain,
    quadratize_positive_term_ishikawa,
    quadratize_split,
    quadratize_termwise,
    rosenberg_reduce,
    split_system_from_tree,
    validate_split_system,
)
from .verify import (
    MinResult,
    QuadMetrics,
    brute_force_min,
    is_quadratization,
    is_submodular_lattice,
    is_submodular_second_diff,
    is_unary_negaform,
    metrics,
    min_over_aux,
    quadratic_submodularity,
)

__version__ = "0.1.0"
