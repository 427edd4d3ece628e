"""Riordan group computations over prime fields and the integers.

Truncated power-series arithmetic, the group law and its matrix
representation, brute-force structure theory in finite quotients, and the
exact index-subgroup calculus (admissibility, densities, Hausdorff
dimensions).
"""

from .group import (
    RiordanElem,
    RiordanMatrix,
    band_membership,
    conj_in_subgroup,
    format_riordan,
    matrix_band_zero,
    parse_riordan,
    rinv,
    rmul,
    to_matrix,
)
from .index_sets import (
    AdmissibilityReport,
    Classification,
    ClassificationError,
    ConvergenceReport,
    CrosscheckReport,
    DensityValue,
    DimensionReport,
    FiltrationSpec,
    IndexSet,
    Jxi,
    SpectrumReport,
    SumsetReport,
    Violation,
    W_value,
    admissible_check,
    binom_mod_p,
    classify_pair,
    density,
    density_convergence,
    format_index_set,
    group_closure_crosscheck,
    hausdorff_dim,
    parse_index_set,
    spectrum_sample,
    sumset_closed,
    verify_violation,
    w_value,
)
from .quotients import (
    CapExceededError,
    GenerationReport,
    HmGenerationReport,
    LcsCheckRow,
    QuotientGroup,
    SigmaCheckReport,
    SubgroupHandle,
    TowerReport,
    WidthEntry,
    commutator_subgroup,
    generation_check,
    hm_generation_check,
    lcs_level_exponent,
    lower_central_series,
    max_elements,
    sigma_filtration_check,
    tower_consistency,
    verify_lcs_formula,
    width_report,
)
from .series import (
    CoeffRing,
    NottSeries,
    TruncSeries,
    UnitSeries,
    ZZ,
    comp_inverse,
    compose,
    format_series,
    inv_unit,
    mul,
    parse_series,
    poly_str,
    twist,
)

__version__ = "0.1.0"

__all__ = [
    "AdmissibilityReport",
    "CapExceededError",
    "Classification",
    "ClassificationError",
    "CoeffRing",
    "ConvergenceReport",
    "CrosscheckReport",
    "DensityValue",
    "DimensionReport",
    "FiltrationSpec",
    "GenerationReport",
    "HmGenerationReport",
    "IndexSet",
    "Jxi",
    "LcsCheckRow",
    "NottSeries",
    "QuotientGroup",
    "RiordanElem",
    "RiordanMatrix",
    "SigmaCheckReport",
    "SpectrumReport",
    "SubgroupHandle",
    "SumsetReport",
    "TowerReport",
    "TruncSeries",
    "UnitSeries",
    "Violation",
    "W_value",
    "WidthEntry",
    "ZZ",
    "admissible_check",
    "band_membership",
    "binom_mod_p",
    "classify_pair",
    "commutator_subgroup",
    "comp_inverse",
    "compose",
    "conj_in_subgroup",
    "density",
    "density_convergence",
    "format_index_set",
    "format_riordan",
    "format_series",
    "generation_check",
    "group_closure_crosscheck",
    "hausdorff_dim",
    "hm_generation_check",
    "inv_unit",
    "lcs_level_exponent",
    "lower_central_series",
    "matrix_band_zero",
    "max_elements",
    "mul",
    "parse_index_set",
    "parse_riordan",
    "parse_series",
    "poly_str",
    "rinv",
    "rmul",
    "sigma_filtration_check",
    "spectrum_sample",
    "sumset_closed",
    "to_matrix",
    "tower_consistency",
    "twist",
    "verify_lcs_formula",
    "verify_violation",
    "w_value",
    "width_report",
]
