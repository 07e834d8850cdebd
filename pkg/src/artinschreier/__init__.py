"""Exact point counts for Artin-Schreier curves and hypersurfaces.

Closed formulas for the number of affine rational points of

    y^q - y = x (x^(q^i) - x) - lambda                       over F_{q^n},
    y^q - y = sum_j a_j x_j (x_j^(q^i_j) - x_j) - lambda     over F_{q^n}^r x F_{q^n},

together with Weil-bound attainment classification, the quadratic-form
machinery behind the formulas, and exhaustive-enumeration oracles that verify
every count independently.
"""

from .counting import (CountReport, CurveSpec, HypersurfaceInvariants,
                       HypersurfaceSpec, WeilBounds, classify_curve,
                       classify_curve_detail, classify_hypersurface,
                       classify_hypersurface_detail, count_curve,
                       count_hypersurface, eps, hypersurface_invariants,
                       weil_bounds)
from .fields import FieldTower, build_tower, tau_power
from .oracle import (DEFAULT_LIMIT, EnumerationLimitError, char_sum_numeric,
                     gauss_sum_numeric, gauss_sum_reference, oracle_curve,
                     oracle_direct, oracle_hypersurface,
                     oracle_hypersurface_direct, qf_histogram)
from .quadforms import (DiagonalizationResult, ExactValue, RankCharPrediction,
                        build_Mni, build_gram, char_sum_closed_form,
                        congruence_diagonalize, count_qf_solutions,
                        det_Mn_integer, find_special_basis, fq_matrix_rank,
                        predict_rank_char, rank_and_char)

__version__ = "0.1.0"

__all__ = [
    "FieldTower", "build_tower", "tau_power",
    "DiagonalizationResult", "ExactValue", "RankCharPrediction",
    "build_Mni", "build_gram", "char_sum_closed_form",
    "congruence_diagonalize", "count_qf_solutions", "det_Mn_integer",
    "find_special_basis", "fq_matrix_rank", "predict_rank_char",
    "rank_and_char",
    "CountReport", "CurveSpec", "HypersurfaceInvariants", "HypersurfaceSpec",
    "WeilBounds", "classify_curve", "classify_curve_detail",
    "classify_hypersurface", "classify_hypersurface_detail", "count_curve",
    "count_hypersurface", "eps", "hypersurface_invariants", "weil_bounds",
    "DEFAULT_LIMIT", "EnumerationLimitError", "char_sum_numeric",
    "gauss_sum_numeric", "gauss_sum_reference", "oracle_curve",
    "oracle_direct", "oracle_hypersurface", "oracle_hypersurface_direct",
    "qf_histogram",
]
