"""Preference-based quality indicators for reference-point multi-objective optimization."""

from refqi.analysis import (
    INDICATORS,
    MAXIMIZED,
    ConsistencyMap,
    RankTable,
    argmin_reports,
    competition_ranks,
    consistency_sweep,
    dist_asf_consistency,
    evaluate_indicators,
    kendall_tau,
    line_grid,
    rank_table,
    rect_grid,
)
from refqi.core import (
    dedupe,
    dist_chebyshev_to,
    dist_euclid,
    dist_manhattan,
    dominates,
    nondominated_filter,
    nondominated_mask,
    weakly_dominates,
)
from refqi.fronts import FrontModel, front_model, sample_front, synth_sets, zdt3_segments
from refqi.hypervolume import hv
from refqi.kary import KaryResult, composite_front_eval, eh, pmda, r_metric_eval
from refqi.roi import RoiSample, build_roi, is_feasible, roi_a, roi_c, roi_p
from refqi.scalarize import PreferenceSpec, aasf, asf
from refqi.unary import IndicatorContext, hv_z, igd, igd_roi, masf, med, pmod, pr

__version__ = "0.1.0"

__all__ = [
    "INDICATORS", "MAXIMIZED", "ConsistencyMap", "FrontModel", "IndicatorContext", "KaryResult",
    "PreferenceSpec", "RankTable", "RoiSample", "aasf", "argmin_reports", "asf", "build_roi",
    "competition_ranks", "composite_front_eval", "consistency_sweep", "dedupe",
    "dist_asf_consistency", "dist_chebyshev_to", "dist_euclid", "dist_manhattan", "dominates",
    "eh", "evaluate_indicators", "front_model", "hv", "hv_z", "igd", "igd_roi", "is_feasible",
    "kendall_tau", "line_grid", "masf", "med", "nondominated_filter", "nondominated_mask",
    "pmda", "pmod", "pr", "r_metric_eval", "rank_table", "rect_grid", "roi_a", "roi_c", "roi_p",
    "sample_front", "synth_sets", "weakly_dominates", "zdt3_segments",
]
