"""Rank correlation, competition ranking, indicator tables and consistency sweeps."""

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

import numpy as np
from scipy import stats

from refqi.core import ArrayLike, as_point_set, distances_to
from refqi.kary import composite_front_eval, eh, pmda, r_metric_eval
from refqi.scalarize import PreferenceSpec, asf_values
from refqi.unary import IndicatorContext, hv, hv_z, igd, igd_roi, masf, med, pmod, pr

INDICATORS = (
    "MASF", "MED", "IGD-C", "IGD-A", "IGD-P", "HV_z", "PR", "PMOD",
    "IGD-CF", "HV-CF", "PMDA", "R-IGD", "R-HV", "EH", "HV", "IGD",
)
MAXIMIZED = frozenset({"HV_z", "PR", "HV-CF", "R-HV", "EH", "HV"})

# Relative gap below which two indicator values count as tied in a rank
# table. Mirror-image point sets give mathematically equal values whose
# floating-point sums may still differ in the last few bits.
TIE_RTOL = 1e-9


def kendall_tau(u: ArrayLike, v: ArrayLike) -> float:
    """Kendall tau-b between two value sequences.

    Raises:
        ValueError: If lengths differ, fewer than two values are given, or
            either sequence is constant.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape != v.shape or u.ndim != 1:
        raise ValueError(f"sequences must be 1-D and of equal length, got {u.shape} and {v.shape}")
    if u.size < 2:
        raise ValueError("Kendall tau needs at least two observations")
    if np.all(u == u[0]) or np.all(v == v[0]):
        raise ValueError("Kendall tau is undefined when a sequence is constant")
    return float(stats.kendalltau(u, v, variant="b").statistic)


def competition_ranks(values: ArrayLike, maximize: bool = False, rtol: float = 0.0) -> np.ndarray:
    """Standard competition ("1224") ranks, 1 being best.

    Values within ``rtol`` relative distance of the first value of a tie
    group join that group. Infinite values of equal sign tie with each other.
    NaN is not allowed.

    Examples:
        >>> competition_ranks([0.3, 0.1, 0.3, 0.2]).tolist()
        [3, 1, 3, 2]
    """
    x = np.asarray(values, dtype=float)
    if np.any(np.isnan(x)):
        raise ValueError("cannot rank NaN values")
    key = -x if maximize else x
    order = np.argsort(key, kind="stable")
    ranks = np.empty(x.size, dtype=int)
    lead = None
    lead_rank = 0
    for pos, idx in enumerate(order):
        v = key[idx]
        if lead is None or not _tied(lead, v, rtol):
            lead = v
            lead_rank = pos + 1
        ranks[idx] = lead_rank
    return ranks


def _tied(a: float, b: float, rtol: float) -> bool:
    if a == b:
        return True
    if not (np.isfinite(a) and np.isfinite(b)):
        return False
    return abs(a - b) <= rtol * max(abs(a), abs(b))


def evaluate_indicators(sets: Sequence[ArrayLike], ctx: IndicatorContext,
                        indicators: Sequence[str] = INDICATORS
                        ) -> tuple[dict[str, np.ndarray | None], dict[str, str]]:
    """Evaluate the selected indicators on every set.

    Returns:
        ``(values, errors)``: ``values[name]`` is an array aligned with
        ``sets`` or ``None`` when the indicator failed, in which case
        ``errors[name]`` holds the message.
    """
    unknown = [name for name in indicators if name not in INDICATORS]
    if unknown:
        raise ValueError(f"unknown indicators {unknown}; choose from {', '.join(INDICATORS)}")
    sets = [as_point_set(P, ctx.spec.m) for P in sets]
    values: dict[str, np.ndarray | None] = {}
    errors: dict[str, str] = {}
    cache: dict[str, tuple] = {}

    def shared(key: str, fn: Callable[[], tuple]) -> tuple:
        if key not in cache:
            cache[key] = fn()
        return cache[key]

    unary: dict[str, Callable[[np.ndarray], float]] = {
        "MASF": lambda P: masf(P, ctx.spec),
        "MED": lambda P: med(P, ctx),
        "IGD-C": lambda P: igd_roi(P, ctx, "C"),
        "IGD-A": lambda P: igd_roi(P, ctx, "A"),
        "IGD-P": lambda P: igd_roi(P, ctx, "P"),
        "HV_z": lambda P: hv_z(P, ctx),
        "PR": lambda P: pr(P, ctx, "P"),
        "PMOD": lambda P: pmod(P, ctx),
        "HV": lambda P: hv(P, ctx.hv_ref),
        "IGD": lambda P: igd(P, ctx.front_sample),
    }
    kary: dict[str, Callable[[], np.ndarray]] = {
        "IGD-CF": lambda: shared("cf", lambda: composite_front_eval(sets, ctx))[0].values,
        "HV-CF": lambda: shared("cf", lambda: composite_front_eval(sets, ctx))[1].values,
        "PMDA": lambda: pmda(sets, ctx).values,
        "R-IGD": lambda: shared("rm", lambda: r_metric_eval(sets, ctx))[0].values,
        "R-HV": lambda: shared("rm", lambda: r_metric_eval(sets, ctx))[1].values,
        "EH": lambda: eh(sets, ctx.spec.z).values,
    }
    for name in indicators:
        try:
            if name in unary:
                values[name] = np.array([unary[name](P) for P in sets])
            else:
                values[name] = np.asarray(kary[name](), dtype=float)
        except ValueError as exc:
            values[name] = None
            errors[name] = str(exc)
    return values, errors


@dataclass
class RankTable:
    """Indicator values and competition ranks for K point sets.

    ``ranks[name]`` is ``None`` for indicators that raised an error; the
    message is kept in ``errors[name]``.
    """

    indicators: list[str]
    values: dict[str, np.ndarray | None]
    ranks: dict[str, np.ndarray | None]
    errors: dict[str, str] = field(default_factory=dict)

    def column(self, name: str) -> np.ndarray | None:
        return self.ranks[name]


def rank_table(sets: Sequence[ArrayLike], ctx: IndicatorContext,
               indicators: Sequence[str] = INDICATORS, rtol: float = TIE_RTOL) -> RankTable:
    """Rank ``sets`` by each selected indicator, respecting its orientation.

    Raises:
        ValueError: If fewer than two sets are given.
    """
    if len(sets) < 2:
        raise ValueError("a rank table needs at least two point sets")
    values, errors = evaluate_indicators(sets, ctx, indicators)
    ranks = {
        name: None if values[name] is None
        else competition_ranks(values[name], maximize=name in MAXIMIZED, rtol=rtol)
        for name in indicators
    }
    return RankTable(list(indicators), values, ranks, errors)


def dist_asf_consistency(sample: ArrayLike, spec: PreferenceSpec) -> float:
    """Kendall tau-b between distance-to-``z`` and ASF values over ``sample``."""
    sample = as_point_set(sample, spec.m)
    return kendall_tau(distances_to(sample, spec.z), asf_values(sample, spec))


@dataclass
class ConsistencyMap:
    """Grid of reference points with their tau values (NaN where undefined)."""

    z: np.ndarray
    tau: np.ndarray
    errors: dict[int, str] = field(default_factory=dict)


def line_grid(start: ArrayLike, stop: ArrayLike, step: float = 0.01) -> np.ndarray:
    """Evenly spaced points from ``start`` to ``stop`` with spacing ``step`` along each axis.

    The count is derived from the first coordinate whose extent is nonzero,
    so the default reproduces the segment from (-3, 3) to (3, -3) in 601 points.
    """
    start = np.asarray(start, dtype=float)
    stop = np.asarray(stop, dtype=float)
    extent = np.max(np.abs(stop - start))
    n = int(round(extent / step)) + 1
    t = np.linspace(0.0, 1.0, max(n, 1))[:, None]
    return np.round(start + t * (stop - start), 12)


def rect_grid(lo: ArrayLike, hi: ArrayLike, step: float = 0.1) -> np.ndarray:
    """All points of an axis-aligned two-objective grid, first objective varying fastest."""
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    axes = [np.round(np.linspace(a, b, int(round((b - a) / step)) + 1), 12) for a, b in zip(lo, hi)]
    mesh = np.meshgrid(*axes, indexing="xy")
    return np.column_stack([g.ravel() for g in mesh])


def consistency_sweep(sample: ArrayLike, z_grid: ArrayLike,
                      spec: PreferenceSpec | None = None) -> ConsistencyMap:
    """Evaluate :func:`dist_asf_consistency` at every reference point of ``z_grid``.

    ``spec`` supplies the weights and other parameters; its ``z`` is
    replaced by each grid point. Undefined tau values become NaN and their
    messages are recorded instead of aborting the sweep.
    """
    grid = as_point_set(z_grid, name="z grid")
    if grid.shape[0] == 0:
        raise ValueError("z grid is empty")
    taus = np.full(grid.shape[0], np.nan)
    errors: dict[int, str] = {}
    for i, z in enumerate(grid):
        try:
            s = PreferenceSpec(z=z) if spec is None else spec.with_z(z)
            taus[i] = dist_asf_consistency(sample, s)
        except ValueError as exc:
            errors[i] = str(exc)
    return ConsistencyMap(grid, taus, errors)


def argmin_reports(sample: ArrayLike, spec: PreferenceSpec) -> tuple[int, int]:
    """One-based indices of the point closest to ``z`` and of the minimum-ASF point."""
    sample = as_point_set(sample, spec.m)
    if sample.shape[0] == 0:
        raise ValueError("sample is empty")
    return (int(np.argmin(distances_to(sample, spec.z))) + 1,
            int(np.argmin(asf_values(sample, spec))) + 1)
