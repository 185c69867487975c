"""Exact-arithmetic local-rationality certification for pencils of quadrics.

The library studies a smooth complete intersection X of two quadrics in
P^5 through its characteristic form f(t) = -det(M1 - t*M2), the genus-2
curve z^2 = f(t), and the Fano variety of lines on X, and certifies local
points at the real place and at every prime — entirely in exact rational
and modular arithmetic, with no floating point anywhere.
"""

from .quadric import (
    NUM_VARIABLES,
    VARIABLES,
    QuadraticForm,
    evaluate_form,
    gradient_at,
    gram_matrix,
    polar_form,
    restrict_to_line,
)
from .pencil import (
    CurveData,
    NonIntegralCharacteristicFormError,
    PencilOfQuadrics,
    characteristic_form,
    curve_data,
    smoothness_check,
)
from .fano import (
    FANO_CODIMENSION,
    NUM_PARAMETERS,
    FanoPointReport,
    FanoSystem,
    GrassmannChart,
    all_charts,
    chart_point_rows,
    chart_rows,
    fano_jacobian,
    fano_system,
    verify_fano_point,
)
from .localcert import (
    CensusEntry,
    LocalPointCertificate,
    chart_census,
    hensel_certify,
    real_place_report,
    search_smooth_points,
    verify_projective_point,
)
from .reduction import (
    DegenerateReductionError,
    SingularLocusReport,
    cone_check,
    mod2_degeneracy,
    normalize_projective,
    reduce_pencil,
    singular_locus,
)
from .parsing import (
    FanoWitness,
    ParsedInput,
    ParseError,
    SingularWitness,
    parse_form,
    parse_input,
    parse_input_text,
    pretty_print,
)
from .pipeline import (
    DEGENERATE_VERDICT,
    POSITIVE_VERDICT,
    PipelineConfig,
    RationalityCertificate,
    canonical_json,
    run_pipeline,
)

__all__ = [
    "CensusEntry",
    "CurveData",
    "DEGENERATE_VERDICT",
    "DegenerateReductionError",
    "FANO_CODIMENSION",
    "FanoPointReport",
    "FanoSystem",
    "FanoWitness",
    "GrassmannChart",
    "LocalPointCertificate",
    "NUM_PARAMETERS",
    "NUM_VARIABLES",
    "NonIntegralCharacteristicFormError",
    "POSITIVE_VERDICT",
    "ParseError",
    "ParsedInput",
    "PencilOfQuadrics",
    "PipelineConfig",
    "QuadraticForm",
    "RationalityCertificate",
    "SingularLocusReport",
    "SingularWitness",
    "VARIABLES",
    "all_charts",
    "canonical_json",
    "characteristic_form",
    "chart_census",
    "chart_point_rows",
    "chart_rows",
    "cone_check",
    "curve_data",
    "evaluate_form",
    "fano_jacobian",
    "fano_system",
    "gradient_at",
    "gram_matrix",
    "hensel_certify",
    "mod2_degeneracy",
    "normalize_projective",
    "parse_form",
    "parse_input",
    "parse_input_text",
    "polar_form",
    "pretty_print",
    "real_place_report",
    "reduce_pencil",
    "restrict_to_line",
    "run_pipeline",
    "search_smooth_points",
    "singular_locus",
    "smoothness_check",
    "verify_fano_point",
    "verify_projective_point",
]
