"""Exact curvature analysis of solvable metric Lie algebras.

The exact path computes Ricci endomorphisms, mean curvature vectors and the
restricted-curvature comparison for attached subalgebras entirely over the
rationals; floating-point routines exist only as cross-checks and as the
fallback for algebras whose adjoint spectra are irrational.
"""

from .algebra import MetricLieAlgebra, Subspace, ValidityReport
from .attached import (
    AttachedSubalgebra,
    ad_star_derivation_check,
    build_attached,
    characteristic_vector,
    check_admissible,
    jacobi_star_direct,
    jacobi_star_exact,
    main_theorem_report,
    totally_geodesic_check,
)
from .catalog import (
    AlgebraFile,
    build_heisenberg_extension,
    build_km_sl3,
    build_symmetric_iwasawa,
    get_example,
    parse_algebra,
    serialize_algebra,
)
from .curvature import (
    CurvatureReport,
    EinsteinReport,
    curvature_report,
    einstein_check,
    mean_curvature,
    minimality_check,
    ricci_nilpotent,
    ricci_solvable,
    second_fundamental_form,
    u_tensor,
)
from .exceptions import (
    InadmissibleError,
    InputError,
    NotRationalSplitError,
    ParseError,
    SolvlieError,
    TheoremViolationError,
    ValidationError,
)
from .iwasawa import (
    IwasawaDecomposition,
    Root,
    SimpleSystem,
    dual_pairing,
    reflect,
    reflect_covector,
    root_vector,
    suggest_simple_system,
    verify_simple_system,
    verify_strong_iwasawa,
)
from .linalg import Mat, Q, Vector

__version__ = "0.1.0"

__all__ = [
    "AlgebraFile",
    "AttachedSubalgebra",
    "CurvatureReport",
    "EinsteinReport",
    "InadmissibleError",
    "InputError",
    "IwasawaDecomposition",
    "Mat",
    "MetricLieAlgebra",
    "NotRationalSplitError",
    "ParseError",
    "Q",
    "Root",
    "SimpleSystem",
    "SolvlieError",
    "Subspace",
    "TheoremViolationError",
    "ValidationError",
    "ValidityReport",
    "Vector",
    "ad_star_derivation_check",
    "build_attached",
    "build_heisenberg_extension",
    "build_km_sl3",
    "build_symmetric_iwasawa",
    "characteristic_vector",
    "check_admissible",
    "curvature_report",
    "dual_pairing",
    "einstein_check",
    "get_example",
    "jacobi_star_direct",
    "jacobi_star_exact",
    "main_theorem_report",
    "mean_curvature",
    "minimality_check",
    "parse_algebra",
    "reflect",
    "reflect_covector",
    "ricci_nilpotent",
    "ricci_solvable",
    "root_vector",
    "second_fundamental_form",
    "serialize_algebra",
    "suggest_simple_system",
    "totally_geodesic_check",
    "u_tensor",
    "verify_simple_system",
    "verify_strong_iwasawa",
]
