"""Entropy of automorphisms of finitely generated groups, computed along
three independent routes: eigenvalue moduli, iterated sumset growth, and
explicit rank certificates from weighted almost-invariant functions."""

from .groups import (
    AbelianAutomorphism,
    AbelianElement,
    FgAbelianGroup,
    IntMatrix,
    InternalInvariantError,
    NotInvertibleError,
    ShapeError,
    invert_unimodular,
    smith_normal_form,
)
from .spectral import EntropyEstimate, IntPolynomial, char_poly, complex_roots, eigen_entropy
from .growth import (
    DEFAULT_CAP,
    FiniteSubset,
    GrowthSeries,
    SumsetCapError,
    growth_rate_estimate,
    growth_series,
    sumset,
    worker_count,
)
from .folner import (
    AdaptedBasisError,
    DegenerateBasisError,
    Parallelepiped,
    RankCertificate,
    RankSearchExhausted,
    WeightedFunction,
    adapted_basis,
    choose_folner_constant,
    convolution,
    convolution_tower,
    defect,
    exact_delta,
    interval_folner,
    min_rank_bruteforce,
    min_rank_table,
    parallelepiped_folner,
    sqrt_overlap_check,
    symmetric_difference_ratio,
)
from .crystal import (
    CenterPresentation,
    CrystalAutomorphism,
    CrystalElement,
    CrystalGroup,
    ExtensionRankReport,
    GroupValidationError,
    PointGroup,
    center_quotient_matrix,
    crystal_entropy,
    dihedral_infinite,
    extension_rank_bound,
    fg_abelian_entropy,
    glide_plane_group,
    point_reflection_square,
    stabilizer_center,
    trivial_product,
)
from .laws import (
    LawInstance,
    LawReport,
    check_conjugacy,
    check_peters_vs_spectral,
    check_power_law,
    check_product_bounds,
    check_quotient_rank,
    check_sqrt_overlap,
    check_subgroup_rank,
    random_unimodular,
    run_all_laws,
)
from .specdoc import (
    ComputationParams,
    SpecDocument,
    SpecFormatError,
    emit_spec,
    parse_spec,
    parse_spec_data,
)
from .reports import emit_report, jsonable, render_csv, render_json, render_text

__version__ = "0.1.0"

__all__ = [
    "AbelianAutomorphism",
    "AbelianElement",
    "AdaptedBasisError",
    "CenterPresentation",
    "ComputationParams",
    "CrystalAutomorphism",
    "CrystalElement",
    "CrystalGroup",
    "DEFAULT_CAP",
    "DegenerateBasisError",
    "EntropyEstimate",
    "ExtensionRankReport",
    "FgAbelianGroup",
    "FiniteSubset",
    "GroupValidationError",
    "GrowthSeries",
    "IntMatrix",
    "IntPolynomial",
    "InternalInvariantError",
    "LawInstance",
    "LawReport",
    "NotInvertibleError",
    "Parallelepiped",
    "RankCertificate",
    "RankSearchExhausted",
    "ShapeError",
    "SpecDocument",
    "SpecFormatError",
    "SumsetCapError",
    "WeightedFunction",
    "adapted_basis",
    "center_quotient_matrix",
    "char_poly",
    "check_conjugacy",
    "check_peters_vs_spectral",
    "check_power_law",
    "check_product_bounds",
    "check_quotient_rank",
    "check_sqrt_overlap",
    "check_subgroup_rank",
    "choose_folner_constant",
    "complex_roots",
    "convolution",
    "convolution_tower",
    "crystal_entropy",
    "defect",
    "dihedral_infinite",
    "eigen_entropy",
    "emit_report",
    "emit_spec",
    "exact_delta",
    "extension_rank_bound",
    "fg_abelian_entropy",
    "glide_plane_group",
    "growth_rate_estimate",
    "growth_series",
    "interval_folner",
    "invert_unimodular",
    "jsonable",
    "min_rank_bruteforce",
    "min_rank_table",
    "parallelepiped_folner",
    "parse_spec",
    "parse_spec_data",
    "point_reflection_square",
    "random_unimodular",
    "render_csv",
    "render_json",
    "render_text",
    "run_all_laws",
    "smith_normal_form",
    "sqrt_overlap_check",
    "stabilizer_center",
    "sumset",
    "symmetric_difference_ratio",
    "trivial_product",
    "worker_count",
]
