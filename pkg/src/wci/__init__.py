"""Exact-integer classification toolkit for weighted complete intersections.

The package decides combinatorial smoothness of (degrees, weights) pairs,
computes their numerical invariants, enumerates the generators of bounded
variance together with the published classification tables, analyses the
anticanonical-degree-one locus, and searches nef partitions through weighted
simplicial complexes.  Everything is exact integer/fraction arithmetic on
plain tuples; the command-line surface lives in wci.cli.
"""

from __future__ import annotations

from .core import (
    Family,
    InvalidFamilyError,
    InvariantReport,
    Pair,
    ambient_well_formed,
    anticanonical_degree,
    family_json_record,
    fano_index,
    h0_anticanonical,
    hilbert_coefficient,
    invariants,
    is_linear_cone,
    is_sporadic,
    normalize,
    render_ambient,
    render_degrees,
)
from .degree_one import (
    PadicProfile,
    ReducedPair,
    coprime_hypersurface,
    coprime_product_intersection,
    coprime_product_negative_pair,
    counting_inequality,
    find_prime_power_degree,
    in_class_P,
    is_degree_one,
    no_prime_power_degrees,
    p_reduce,
    padic_bijection_holds,
    padic_profiles,
    six_tower,
    tilde_reduce,
)
from .enumeration import (
    BoundCheckReport,
    EnumerationBudget,
    GeneratorRecord,
    bound_check,
    enumerate_all,
    enumerate_pn_generators,
    enumerate_semiseries_generators,
    enumerate_weighted_series_generators,
    generator_sort_key,
)
from .nef import (
    NefPartition,
    VertexMap,
    WsComplex,
    check_minimal_set,
    classify_morphism,
    complex_from_pair,
    conjecture_main_check,
    find_minimal_morphism,
    find_nef_map,
    find_nef_partition,
    find_preminimal_morphism,
    is_nef_partition_map,
    minimal_h,
    nef_slacks,
    partition_from_map,
)
from .series import (
    ParametricFamily,
    StripError,
    StripResult,
    classify_generator,
    expand,
    sigma_c,
    strip,
)
from .smoothness import (
    CsReport,
    InternalSearchError,
    QVerdict,
    SubsetProfile,
    check_subset,
    is_combinatorially_smooth,
    is_regular,
    iter_subset_profiles,
    regularity_violations,
    representable,
)

__all__ = [
    "Family",
    "InvalidFamilyError",
    "InvariantReport",
    "Pair",
    "ambient_well_formed",
    "anticanonical_degree",
    "family_json_record",
    "fano_index",
    "h0_anticanonical",
    "hilbert_coefficient",
    "invariants",
    "is_linear_cone",
    "is_sporadic",
    "normalize",
    "render_ambient",
    "render_degrees",
    "PadicProfile",
    "ReducedPair",
    "coprime_hypersurface",
    "coprime_product_intersection",
    "coprime_product_negative_pair",
    "counting_inequality",
    "find_prime_power_degree",
    "in_class_P",
    "is_degree_one",
    "no_prime_power_degrees",
    "p_reduce",
    "padic_bijection_holds",
    "padic_profiles",
    "six_tower",
    "tilde_reduce",
    "BoundCheckReport",
    "EnumerationBudget",
    "GeneratorRecord",
    "bound_check",
    "enumerate_all",
    "enumerate_pn_generators",
    "enumerate_semiseries_generators",
    "enumerate_weighted_series_generators",
    "generator_sort_key",
    "NefPartition",
    "VertexMap",
    "WsComplex",
    "check_minimal_set",
    "classify_morphism",
    "complex_from_pair",
    "conjecture_main_check",
    "find_minimal_morphism",
    "find_nef_map",
    "find_nef_partition",
    "find_preminimal_morphism",
    "is_nef_partition_map",
    "minimal_h",
    "nef_slacks",
    "partition_from_map",
    "ParametricFamily",
    "StripError",
    "StripResult",
    "classify_generator",
    "expand",
    "sigma_c",
    "strip",
    "CsReport",
    "InternalSearchError",
    "QVerdict",
    "SubsetProfile",
    "check_subset",
    "is_combinatorially_smooth",
    "is_regular",
    "iter_subset_profiles",
    "regularity_violations",
    "representable",
]
