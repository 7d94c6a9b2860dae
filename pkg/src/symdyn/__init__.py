"""Invariants of shifts of finite type and the finite-field difference-system bridge."""

from .bridge import (
    DifferenceSystem,
    SftWithFrobenius,
    build_sft,
    difference_zeta,
    limit_degree_system,
    point_count_direct,
    point_count_matrix,
    sft_to_system,
    spec_sigma_component_count,
    system_entropy,
)
from .decomp import (
    communicating_classes,
    cyclic_period,
    irreducible_components,
    nonwandering,
    sigma_components,
    strong_core,
)
from .ff import FieldElement, FqContext, Poly, BiPoly, build_field, extend_field, frobenius, roots_in
from .io import load, parse_dsys_file, parse_sft_file
from .sft import (
    BlockMap,
    Sft,
    edge_to_vertex,
    enumerate_periodic,
    enumerate_words,
    from_edges,
    from_matrix,
    full_shift,
    golden_mean,
    higher_block,
    periodic_count,
    prune,
    word_count,
)
from .spectral import EntropyBracket, NotStabilized, Stabilized, entropy_bounds, limit_degree
from .zeta import (
    RationalFunction,
    char_poly_reversed,
    dynamical_zeta,
    make_twist,
    twisted_count,
    twisted_log_derivative,
    twisted_zeta_series,
    zeta_series,
)

__version__ = "0.1.0"
