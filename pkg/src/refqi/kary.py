"""K-ary indicators that score several point sets jointly.

Each function takes the list of compared sets and returns one value per set
in the same order, wrapped in a :class:`KaryResult` with per-set
diagnostics.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from refqi.core import ArrayLike, as_point, as_point_set, dedupe, distances_to, nondominated_mask
from refqi.hypervolume import hv
from refqi.scalarize import PreferenceSpec, asf_values
from refqi.unary import IndicatorContext, igd


@dataclass(frozen=True)
class KaryResult:
    """Values aligned with the input sets plus per-set diagnostic flags."""

    values: np.ndarray
    diagnostics: list[dict] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.values)


def _prepare(sets: Sequence[ArrayLike], m: int) -> list[np.ndarray]:
    if len(sets) == 0:
        raise ValueError("at least one point set is required")
    return [as_point_set(P, m, f"point set {i + 1}") for i, P in enumerate(sets)]


def _union_survivors(sets: list[np.ndarray]) -> tuple[np.ndarray, list[np.ndarray]]:
    """Nondominated union of ``sets`` and, per set, the mask of its surviving points."""
    union = np.vstack(sets)
    mask = nondominated_mask(union) if union.shape[0] else np.zeros(0, dtype=bool)
    bounds = np.cumsum([0] + [P.shape[0] for P in sets])
    return union[mask], [mask[a:b] for a, b in zip(bounds[:-1], bounds[1:])]


def composite_front_eval(sets: Sequence[ArrayLike], ctx: IndicatorContext
                         ) -> tuple[KaryResult, KaryResult]:
    """IGD-CF and HV-CF.

    The composite front is the nondominated union of all sets. Its point
    closest to ``z`` centers an open ball of radius ``r``. Each set is cut
    down to its points inside the ball, dominated ones included, and scored
    by IGD against the whole composite front and by HV against ``hv_ref``.
    A set with nothing inside the ball gets IGD-CF ``inf`` and HV-CF 0.

    Returns:
        ``(igd_cf, hv_cf)``.
    """
    spec = ctx.spec
    sets = _prepare(sets, spec.m)
    front, _ = _union_survivors(sets)
    if front.shape[0] == 0:
        empty = [{"trimmed_empty": True} for _ in sets]
        return (KaryResult(np.full(len(sets), np.inf), empty),
                KaryResult(np.zeros(len(sets)), empty))
    center = front[np.argmin(distances_to(front, spec.z))]
    igd_vals, hv_vals, diags = [], [], []
    for P in sets:
        T = P[distances_to(P, center) < spec.r] if P.shape[0] else P
        diags.append({"trimmed_empty": T.shape[0] == 0, "kept": int(T.shape[0])})
        igd_vals.append(igd(T, front))
        hv_vals.append(hv(T, ctx.hv_ref) if T.shape[0] else 0.0)
    return KaryResult(np.array(igd_vals), diags), KaryResult(np.array(hv_vals), diags)


def pmda_beams(z: np.ndarray, alpha: float) -> np.ndarray:
    """Rows ``q_i = z + alpha (e_i - z)`` for each objective, followed by ``z``."""
    m = z.size
    return np.vstack([z + alpha * (np.eye(m) - z), z])


def pmda_in_cone(P: np.ndarray, beams: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Mask of points inside the cone spanned from the origin by the beam directions.

    A point is inside when its coordinates in the basis of the first ``m``
    beam points are all nonnegative.

    Raises:
        ValueError: If the beam directions are linearly dependent.
    """
    B = beams[:-1].T
    if abs(np.linalg.det(B)) < 1e-14:
        raise ValueError("PMDA beam directions are degenerate; change pmda_alpha")
    if P.shape[0] == 0:
        return np.zeros(0, dtype=bool)
    coeffs = np.linalg.solve(B, P.T)
    return np.all(coeffs >= -tol, axis=0)


def _angle(P: np.ndarray, v: np.ndarray) -> np.ndarray:
    cos = (P @ v) / (np.linalg.norm(P, axis=1) * np.linalg.norm(v))
    return np.arccos(np.clip(cos, -1.0, 1.0))


def pmda(sets: Sequence[ArrayLike], ctx: IndicatorContext) -> KaryResult:
    """PMDA: distance to scaled light-beam points plus an angle penalty.

    The scale ``beta`` is the smallest objective value among all points of
    all sets that fall inside the beam cone. Points outside the cone pay
    ``pmda_gamma`` times their angle to ``z``.

    Raises:
        ValueError: If some coordinate is negative, a point or ``z`` is the origin,
            or no point lies inside the cone.
    """
    z = ctx.spec.z
    sets = _prepare(sets, ctx.spec.m)
    if not np.any(z != 0):
        raise ValueError("PMDA needs a reference point different from the origin")
    union = np.vstack(sets)
    if np.any(union < 0) or np.any(np.all(union == 0, axis=1)):
        raise ValueError("PMDA assumes nonnegative objective values and no point at the origin")
    beams = pmda_beams(z, ctx.pmda_alpha)
    inside = pmda_in_cone(union, beams)
    if not inside.any():
        raise ValueError("PMDA is undefined: no point lies inside the light-beam region")
    beta = float(union[inside].min())
    Q = beta * beams
    values, diags = [], []
    for P in sets:
        if P.shape[0] == 0:
            values.append(np.inf)
            diags.append({"empty": True})
            continue
        d = np.min(np.linalg.norm(P[:, None, :] - Q[None, :, :], axis=2), axis=1)
        theta = np.where(pmda_in_cone(P, beams), 0.0, _angle(P, z))
        values.append(float(np.mean(d + ctx.pmda_gamma * theta)))
        diags.append({"empty": False, "beta": beta})
    return KaryResult(np.array(values), diags)


def _rmetric_trim(P: np.ndarray, spec: PreferenceSpec, anchor: np.ndarray | None = None
                  ) -> tuple[np.ndarray, np.ndarray]:
    """Best-ASF point of ``P`` (unless ``anchor`` is given) and the points in its r-cube."""
    best = P[np.argmin(asf_values(P, spec))] if anchor is None else anchor
    keep = np.all(np.abs(P - best) <= spec.r, axis=1)
    return best, P[keep]


def iso_asf_point(p: np.ndarray, spec: PreferenceSpec) -> np.ndarray:
    """Projection of ``p`` onto the segment from ``z`` to ``z_w`` with the same ASF rank."""
    span = spec.z_w - spec.z
    k = int(np.argmax((p - spec.z) / span))
    return spec.z + ((p[k] - spec.z[k]) / span[k]) * span


def r_metric_eval(sets: Sequence[ArrayLike], ctx: IndicatorContext,
                  S: ArrayLike | None = None) -> tuple[KaryResult, KaryResult]:
    """R-IGD and R-HV.

    Each set keeps its points that are nondominated in the union of all
    sets, is trimmed to the cube of half-width ``r`` around its best-ASF
    point, and is translated so that this point lands on its iso-ASF point.
    R-IGD compares the result with the reference set trimmed the same way.
    R-HV measures it against ``z_w``. Empty sets score ``inf`` and 0.

    Args:
        sets: Point sets to compare.
        ctx: Indicator context.
        S: IGD-reference set, defaulting to ``ctx.front_sample``.

    Returns:
        ``(r_igd, r_hv)``.

    Raises:
        ValueError: If ``z`` does not strictly dominate ``z_w``.
    """
    spec = ctx.spec
    if not np.all(spec.z < spec.z_w):
        raise ValueError("R-metric needs z < z_w in every objective")
    sets = _prepare(sets, spec.m)
    S = ctx.front_sample if S is None else as_point_set(S, spec.m, "IGD-reference set")
    _, survivors = _union_survivors(sets)
    S_best, S_trim = _rmetric_trim(S, spec)
    igd_vals, hv_vals, diags = [], [], []
    for P, keep in zip(sets, survivors):
        P = P[keep]
        if P.shape[0] == 0:
            igd_vals.append(np.inf)
            hv_vals.append(0.0)
            diags.append({"trimmed_empty": True})
            continue
        best, P = _rmetric_trim(P, spec)
        shifted = P + (iso_asf_point(best, spec) - best)
        ref = S_trim
        if ctx.rmetric_trim_from_set:
            ref = _rmetric_trim(S, spec, anchor=best)[1]
        igd_vals.append(igd(shifted, ref))
        hv_vals.append(hv(shifted, spec.z_w))
        diags.append({"trimmed_empty": False, "kept": int(P.shape[0]),
                      "reference_kept": int(ref.shape[0])})
    return KaryResult(np.array(igd_vals), diags), KaryResult(np.array(hv_vals), diags)


def eh(sets: Sequence[ArrayLike], z: ArrayLike) -> KaryResult:
    """Expanding hypercube metric.

    After removing duplicates and points dominated in the union, each set's
    Chebyshev distances to ``z`` are sorted as ``h_1 <= ... <= h_n``. The
    area term is ``sum_l (l / n) (h_l - h_{l-1})`` with ``h_0 = 0``, and the
    score adds the gap between the largest ``h_n`` of any set and this set's
    own ``h_n``. Larger is better and an emptied set scores 0.
    """
    z = as_point(z, "reference point z")
    raw = _prepare(sets, z.size)
    sets = [dedupe(P) for P in raw]
    duplicates = [a.shape[0] - b.shape[0] for a, b in zip(raw, sets)]
    _, survivors = _union_survivors(sets)
    h_sorted: list[np.ndarray | None] = []
    removed = []
    for P, keep in zip(sets, survivors):
        P = P[keep]
        removed.append(int((~keep).sum()))
        h_sorted.append(np.sort(np.max(np.abs(P - z), axis=1)) if P.shape[0] else None)
    h_all = [h[-1] for h in h_sorted if h is not None]
    h_top = max(h_all) if h_all else 0.0
    values, diags = [], []
    for h, gone, dup in zip(h_sorted, removed, duplicates):
        diags.append({"trimmed_empty": h is None, "dominated_removed": gone,
                      "duplicates_removed": dup})
        if h is None:
            values.append(0.0)
            continue
        n = h.size
        steps = np.diff(np.concatenate([[0.0], h]))
        area = float(np.sum(np.arange(1, n + 1) / n * steps))
        values.append(area + (h_top - h[-1]))
    return KaryResult(np.array(values), diags)
