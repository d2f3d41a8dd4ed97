"""Explicit Neron-Tate height bounds for curves with many automorphisms, and
rational point search on genus-2 sextic models over Q."""
from .angles import TauResult, cap_area_fraction, cap_cos_lower, tau
from .curve import (
    Automorphism,
    CurvePoint,
    SexticCurve,
    apply_automorphism,
    classify_points,
    enumerate_points,
    group_closure,
    is_on_curve,
    stabilizer,
    verify_automorphism,
)
from .dossier import Dossier, load_dossier, parse_dossier, render_report, run_pipeline
from .fibre import FibreData, FibreValidationReport, phi_correction, phi_p, validate_fibre, xi_solution
from .heights import (
    HeightBoundReport,
    delta_sum_from_faltings,
    faltings_upper_via_isogeny,
    gap_cos_bound,
    gap_defect,
    m_constant,
    neron_tate_bound,
    wilms_floor,
    x_height_bound,
)
from .rational import RationalMatrix, bilinear_form, integer_sqrt, solve_exact

__version__ = "0.1.0"
