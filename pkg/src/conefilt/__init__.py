"""conefilt: the cone chain between sums of squares and nonnegative forms.

Exact-rational tooling for the filtration C_0 <= ... <= C_{k-n} of
intermediate cones cut out along varieties containing the Veronese
variety: chain layout and separating-cone counts, circuit-form analysis
and exact levels, explicit separating forms for every strict step, and
independently verifiable membership / non-membership certificates.
"""

from .circuits import (
    CircuitDecomposition,
    NotCircuit,
    Verdict,
    analyze,
    circuit_nonnegativity,
    j_of,
)
from .certificates import (
    CertificateError,
    FarkasCertificate,
    GramFiber,
    MembershipCertificate,
    SampleSchedule,
    VarietyPoint,
    banded_gram,
    certificate_from_json,
    certificate_to_json,
    gram_fiber,
    gram_map,
    non_membership,
    psd_evidence,
    sample_point,
    verify_certificate,
)
from .filtration import (
    ClassificationError,
    FiltrationProfile,
    LevelReport,
    is_hilbert_case,
    level_bounds,
    profile,
)
from .forms import Form, FormParseError, parse_form, serialize_form
from .generators import (
    SeparatorRecord,
    base_choi_lam_quartic,
    base_choi_lam_sextic,
    base_motzkin,
    complete_set,
    degree_jump,
    quartic_separator,
    separator,
    sextic_separator,
)
from .linalg import (
    AffineSolution,
    Feasible,
    Infeasible,
    RatMatrix,
    lp_feasible,
    solve_affine,
)
from .monomials import MonomialBasis, QuadricSpec, basis, basis_size

__version__ = "0.1.0"

__all__ = [
    "AffineSolution",
    "CertificateError",
    "CircuitDecomposition",
    "ClassificationError",
    "FarkasCertificate",
    "Feasible",
    "FiltrationProfile",
    "Form",
    "FormParseError",
    "GramFiber",
    "Infeasible",
    "LevelReport",
    "MembershipCertificate",
    "MonomialBasis",
    "NotCircuit",
    "QuadricSpec",
    "RatMatrix",
    "SampleSchedule",
    "SeparatorRecord",
    "VarietyPoint",
    "Verdict",
    "analyze",
    "banded_gram",
    "base_choi_lam_quartic",
    "base_choi_lam_sextic",
    "base_motzkin",
    "basis",
    "basis_size",
    "certificate_from_json",
    "certificate_to_json",
    "circuit_nonnegativity",
    "complete_set",
    "degree_jump",
    "gram_fiber",
    "gram_map",
    "is_hilbert_case",
    "j_of",
    "level_bounds",
    "lp_feasible",
    "non_membership",
    "parse_form",
    "profile",
    "psd_evidence",
    "quartic_separator",
    "sample_point",
    "separator",
    "serialize_form",
    "sextic_separator",
    "solve_affine",
    "verify_certificate",
]
