"""Regions of interest on a sampled Pareto front and reference-point feasibility."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from refqi.core import ArrayLike, as_point, as_point_set, distances_to
from refqi.scalarize import PreferenceSpec, asf_values

RoiKind = Literal["C", "A", "P"]


@dataclass(frozen=True)
class RoiSample:
    """ROI membership over a front sample.

    Attributes:
        kind: ``"C"``, ``"A"`` or ``"P"``.
        mask: Boolean membership mask aligned with the front sample.
        members: The member points, in sample order.
        center: Index-selected center for kinds C and A, ``None`` for P.
        center_index: Position of ``center`` in the sample.
    """

    kind: str
    mask: np.ndarray
    members: np.ndarray
    center: np.ndarray | None = None
    center_index: int | None = None


def _strictly_dominating(A: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Mask of rows of ``A`` that dominate ``q``."""
    return np.all(A <= q, axis=1) & np.any(A < q, axis=1)


def _strictly_dominated(A: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Mask of rows of ``A`` dominated by ``q``."""
    return np.all(q <= A, axis=1) & np.any(q < A, axis=1)


def is_feasible(z: ArrayLike, S: ArrayLike) -> bool:
    """True unless ``z`` dominates some point of the front sample ``S``."""
    z = as_point(z, "reference point z")
    S = as_point_set(S, z.size)
    return not bool(np.any(_strictly_dominated(S, z)))


def roi_p_mask(P: ArrayLike, z: ArrayLike, feasible: bool) -> np.ndarray:
    """Dominance predicate of ROI-P applied to arbitrary points.

    For a feasible ``z`` a point qualifies when it dominates ``z``; for an
    infeasible one, when ``z`` dominates it.
    """
    z = as_point(z, "reference point z")
    P = as_point_set(P, z.size)
    if P.shape[0] == 0:
        return np.zeros(0, dtype=bool)
    return _strictly_dominating(P, z) if feasible else _strictly_dominated(P, z)


def _ball(S: np.ndarray, idx: int, radius: float, kind: str) -> RoiSample:
    center = S[idx]
    mask = distances_to(S, center) < radius
    return RoiSample(kind, mask, S[mask], center.copy(), int(idx))


def roi_c(S: ArrayLike, spec: PreferenceSpec, radius: float | None = None) -> RoiSample:
    """ROI-C: sample points within ``zeta`` of the point closest to ``z``.

    ``radius`` overrides ``spec.zeta``; the indicators pass ``spec.r`` here.

    Raises:
        ValueError: If ``S`` is empty.
    """
    S = as_point_set(S, spec.m, "front sample")
    if S.shape[0] == 0:
        raise ValueError("front sample is empty")
    idx = int(np.argmin(distances_to(S, spec.z)))
    return _ball(S, idx, spec.zeta if radius is None else radius, "C")


def roi_a(S: ArrayLike, spec: PreferenceSpec, radius: float | None = None) -> RoiSample:
    """ROI-A: sample points within ``zeta`` of the minimum-ASF sample point.

    Raises:
        ValueError: If ``S`` is empty or a weight is zero.
    """
    S = as_point_set(S, spec.m, "front sample")
    if S.shape[0] == 0:
        raise ValueError("front sample is empty")
    if np.any(spec.w <= 0):
        raise ValueError("ROI-A requires strictly positive weights")
    idx = int(np.argmin(asf_values(S, spec)))
    return _ball(S, idx, spec.zeta if radius is None else radius, "A")


def roi_p(S: ArrayLike, z: ArrayLike) -> RoiSample:
    """ROI-P: sample points dominating a feasible ``z``, or dominated by an infeasible one.

    The result may be empty, for instance when ``z`` lies on the front.
    """
    z = as_point(z, "reference point z")
    S = as_point_set(S, z.size, "front sample")
    if S.shape[0] == 0:
        raise ValueError("front sample is empty")
    mask = roi_p_mask(S, z, is_feasible(z, S))
    return RoiSample("P", mask, S[mask])


def build_roi(S: ArrayLike, spec: PreferenceSpec, kind: RoiKind,
              radius: float | None = None) -> RoiSample:
    """Dispatch to :func:`roi_c`, :func:`roi_a` or :func:`roi_p` by ``kind``."""
    if kind == "C":
        return roi_c(S, spec, radius)
    if kind == "A":
        return roi_a(S, spec, radius)
    if kind == "P":
        return roi_p(S, spec.z)
    raise ValueError(f"unknown ROI kind {kind!r}; expected 'C', 'A' or 'P'")
