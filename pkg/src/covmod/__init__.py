"""Exact harmonic analysis of covariant functions on finite groups.

The package realizes, at finite scale and with explicit tolerances, the
structure theory of functions that transform by a character under a normal
subgroup: the averaging operator producing them, the convolution module
they form, and closed-form convolutions on shear-type semidirect products.
Everything is checkable: `covmod verify` re-derives each identity on a
corpus of groups with seeded random data.
"""

from .bench import bench_table, run_bench
from .characters import (
    Character,
    char_conj,
    char_eval,
    char_inner,
    char_mul,
    enumerate_characters,
    make_character,
    phase_to_complex,
    pullback,
    trivial_character,
)
from .convolution import (
    convolve,
    covariance_residual,
    full_module_action,
    max_abs_diff,
    module_action,
    quotient_convolve,
    section_residual,
    verify_module_axioms,
)
from .covariant import (
    CovariantFunction,
    average_over_subgroup,
    cov_norm,
    from_section,
    is_covariant,
    project_trivial,
    t_xi,
)
from .errors import (
    CovmodError,
    DiscretizationError,
    DomainMismatchError,
    ExponentError,
    IdentificationError,
    MeasureError,
    NormalityError,
    ResourceError,
    ValidationError,
)
from .groups import (
    FiniteGroup,
    GroupFunction,
    MeasureTriple,
    QuotientGroup,
    Subgroup,
    counting_measure,
    delta_function,
    full_subgroup,
    group_center,
    is_normal,
    lp_norm,
    make_cyclic,
    make_from_table,
    make_product,
    make_subgroup,
    quotient,
    random_function,
    weil_measure,
    weil_residual,
)
from .jsonio import (
    character_from_json,
    character_to_json,
    covariant_from_json,
    covariant_to_json,
    function_from_json,
    function_to_json,
    group_from_json,
    group_id,
    group_to_json,
    subgroup_from_json,
    subgroup_id,
    subgroup_to_json,
)
from .semidirect import (
    SemidirectGroup,
    conv_fast_full_k,
    conv_fast_wh_center,
    conv_fast_wh_full,
    delta_factor,
    heisenberg_finite,
    induced_semidirect,
    lift_character,
    lift_subgroup,
    quotient_action,
    semidirect,
    weyl_heisenberg_finite,
)
from .verify import CorpusEntry, builtin_corpus, run_verification, symmetric_3

__version__ = "0.1.0"

__all__ = [
    "Character",
    "CorpusEntry",
    "CovariantFunction",
    "CovmodError",
    "DiscretizationError",
    "DomainMismatchError",
    "ExponentError",
    "FiniteGroup",
    "GroupFunction",
    "IdentificationError",
    "MeasureError",
    "MeasureTriple",
    "NormalityError",
    "QuotientGroup",
    "ResourceError",
    "SemidirectGroup",
    "Subgroup",
    "ValidationError",
    "average_over_subgroup",
    "bench_table",
    "builtin_corpus",
    "char_conj",
    "char_eval",
    "char_inner",
    "char_mul",
    "character_from_json",
    "character_to_json",
    "conv_fast_full_k",
    "conv_fast_wh_center",
    "conv_fast_wh_full",
    "convolve",
    "counting_measure",
    "cov_norm",
    "covariance_residual",
    "covariant_from_json",
    "covariant_to_json",
    "delta_factor",
    "delta_function",
    "enumerate_characters",
    "from_section",
    "full_module_action",
    "full_subgroup",
    "function_from_json",
    "function_to_json",
    "group_center",
    "group_from_json",
    "group_id",
    "group_to_json",
    "heisenberg_finite",
    "induced_semidirect",
    "is_covariant",
    "is_normal",
    "lift_character",
    "lift_subgroup",
    "lp_norm",
    "make_character",
    "make_cyclic",
    "make_from_table",
    "make_product",
    "make_subgroup",
    "max_abs_diff",
    "module_action",
    "phase_to_complex",
    "project_trivial",
    "pullback",
    "quotient",
    "quotient_action",
    "quotient_convolve",
    "random_function",
    "run_bench",
    "run_verification",
    "section_residual",
    "semidirect",
    "symmetric_3",
    "t_xi",
    "trivial_character",
    "verify_module_axioms",
    "weil_measure",
    "weil_residual",
    "weyl_heisenberg_finite",
]
