"""Numerical toolkit for analytic-function norms on the unit disc.

The package evaluates classical size functionals (Hardy, weighted area,
derivative-sup, weighted-derivative area) for Taylor polynomials, the
dual weighted quantities that bound them from both sides, and ships a
report layer plus CLI that certify the two-sided bounds numerically.
"""

from .corpus import (
    CorpusEntry,
    ReferenceValue,
    corpus_from_json_file,
    default_corpus,
    make_corpus,
)
from .dual import (
    DualEvaluation,
    DualParams,
    WeightExponents,
    WeightSpec,
    constraint_S1,
    constraint_S2,
    constraint_S3,
    constraint_S4,
    dual_S1,
    dual_S2,
    dual_S3,
    dual_S4,
    dual_params,
    evaluate_weight,
    holder_floor,
    normalize_weight,
    normalized_evaluation,
    test_weight,
    test_weight_S2,
    test_weight_S3,
    test_weight_report,
)
from .errors import ConfigError, DomainError, EvaluationError, NormalizationError
from .norms import (
    NormValue,
    bergman_norm_p,
    bloch_norm,
    bp_norm_p,
    default_hardy_radii,
    hardy_norm_p,
    lusin_functional,
    mixed_area_functional,
    pair_functional_mu,
    pair_functional_mu_a,
    power_functional_disc,
)
from .quadrature import (
    BidiscRule,
    DiscRule,
    EvalGrids,
    MoebiusPoint,
    StolzRegion,
    circle_nodes,
    cone_aggregate,
    default_a_grid,
    default_bidisc_rule,
    default_disc_rule,
    default_grids,
    grids_from_config,
    integrate_bidisc,
    integrate_circle,
    integrate_disc,
    integrate_mu,
    integrate_mu_a,
    integrate_stolz,
    make_bidisc_rule,
    make_disc_rule,
    stolz_contains,
)
from .report import (
    EquivalenceReport,
    EquivalenceRow,
    NormReport,
    NormRow,
    SearchReport,
    SearchRow,
    equivalence_report,
    lhs_normalized,
    norms_report,
    render_csv,
    render_json,
    search_report,
    write_report,
)
from .search import SearchConfig, SearchResult, infimum_search
from .taylor import (
    TaylorFunction,
    derivative,
    evaluate,
    fractional_derivative,
    rotate,
    scale,
    taylor,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # taylor
    "TaylorFunction",
    "taylor",
    "evaluate",
    "derivative",
    "fractional_derivative",
    "scale",
    "rotate",
    # corpus
    "CorpusEntry",
    "ReferenceValue",
    "make_corpus",
    "default_corpus",
    "corpus_from_json_file",
    # quadrature
    "DiscRule",
    "BidiscRule",
    "StolzRegion",
    "MoebiusPoint",
    "EvalGrids",
    "make_disc_rule",
    "make_bidisc_rule",
    "default_disc_rule",
    "default_bidisc_rule",
    "default_a_grid",
    "default_grids",
    "grids_from_config",
    "circle_nodes",
    "integrate_disc",
    "integrate_bidisc",
    "integrate_mu",
    "integrate_mu_a",
    "integrate_stolz",
    "integrate_circle",
    "stolz_contains",
    "cone_aggregate",
    # norms
    "NormValue",
    "power_functional_disc",
    "bloch_norm",
    "bp_norm_p",
    "bergman_norm_p",
    "hardy_norm_p",
    "default_hardy_radii",
    "lusin_functional",
    "mixed_area_functional",
    "pair_functional_mu_a",
    "pair_functional_mu",
    # dual
    "DualParams",
    "WeightExponents",
    "WeightSpec",
    "DualEvaluation",
    "dual_params",
    "constraint_S1",
    "constraint_S2",
    "constraint_S3",
    "constraint_S4",
    "dual_S1",
    "dual_S2",
    "dual_S3",
    "dual_S4",
    "test_weight",
    "test_weight_S2",
    "test_weight_S3",
    "evaluate_weight",
    "normalize_weight",
    "normalized_evaluation",
    "holder_floor",
    "test_weight_report",
    # search
    "SearchConfig",
    "SearchResult",
    "infimum_search",
    # reports
    "EquivalenceRow",
    "EquivalenceReport",
    "NormRow",
    "NormReport",
    "SearchRow",
    "SearchReport",
    "lhs_normalized",
    "equivalence_report",
    "norms_report",
    "search_report",
    "render_csv",
    "render_json",
    "write_report",
    # errors
    "ConfigError",
    "DomainError",
    "EvaluationError",
    "NormalizationError",
]
