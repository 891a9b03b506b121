"""Unary preference-based quality indicators plus the baseline HV and IGD."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from refqi.core import ArrayLike, as_point, as_point_set, distances_to, pairwise_distances
from refqi.fronts import FrontModel, sample_front
from refqi.hypervolume import hv
from refqi.roi import RoiKind, build_roi, is_feasible, roi_p, roi_p_mask
from refqi.scalarize import PreferenceSpec, asf_values

__all__ = [
    "IndicatorContext",
    "hv",
    "hv_z",
    "igd",
    "igd_roi",
    "masf",
    "med",
    "pmod",
    "pr",
]


@dataclass(frozen=True)
class IndicatorContext:
    """Everything an indicator may need besides the point sets.

    Attributes:
        spec: Reference point and its parameters.
        front_sample: IGD-reference set sampled on the Pareto front.
        hv_ref: HV-reference point for HV and HV-CF, default ``1.1`` everywhere.
        ideal: Ideal point used to normalize MED.
        nadir: Nadir point used to normalize MED.
        pmod_alpha: PMOD penalty for mapped points outside the preferred region.
        pmda_alpha: PMDA beam spread.
        pmda_gamma: PMDA angle penalty.
        rmetric_trim_from_set: When true, the R-metric trims the reference
            set around the evaluated set's best-ASF point instead of the
            reference set's own.
    """

    spec: PreferenceSpec
    front_sample: np.ndarray
    hv_ref: np.ndarray | None = None
    ideal: np.ndarray | None = None
    nadir: np.ndarray | None = None
    pmod_alpha: float = 1.5
    pmda_alpha: float = 0.1
    pmda_gamma: float = field(default=1.0 / np.pi)
    rmetric_trim_from_set: bool = False

    def __post_init__(self) -> None:
        m = self.spec.m
        S = as_point_set(self.front_sample, m, "front sample")
        object.__setattr__(self, "front_sample", S)
        hv_ref = np.full(m, 1.1) if self.hv_ref is None else as_point(self.hv_ref, "hv_ref")
        ideal = S.min(axis=0) if self.ideal is None else as_point(self.ideal, "ideal")
        nadir = S.max(axis=0) if self.nadir is None else as_point(self.nadir, "nadir")
        for name, value in (("hv_ref", hv_ref), ("ideal", ideal), ("nadir", nadir)):
            if value.size != m:
                raise ValueError(f"{name} has {value.size} objectives, expected {m}")
        if not self.pmod_alpha > 1:
            raise ValueError(f"pmod_alpha must exceed 1, got {self.pmod_alpha!r}")
        if not self.pmda_alpha > 0:
            raise ValueError(f"pmda_alpha must be positive, got {self.pmda_alpha!r}")
        if not self.pmda_gamma > 0:
            raise ValueError(f"pmda_gamma must be positive, got {self.pmda_gamma!r}")
        object.__setattr__(self, "hv_ref", hv_ref)
        object.__setattr__(self, "ideal", ideal)
        object.__setattr__(self, "nadir", nadir)

    @classmethod
    def for_model(cls, model: FrontModel, spec: PreferenceSpec, n_sample: int = 1000,
                  **kwargs) -> IndicatorContext:
        """Build a context whose reference set is ``n_sample`` points on ``model``."""
        if model.m != spec.m:
            raise ValueError(f"front has {model.m} objectives but z has {spec.m}")
        return cls(spec=spec, front_sample=sample_front(model, n_sample),
                   ideal=model.ideal, nadir=model.nadir, **kwargs)

    def with_spec(self, spec: PreferenceSpec) -> IndicatorContext:
        """Copy of this context with another preference specification."""
        return IndicatorContext(spec, self.front_sample, self.hv_ref, self.ideal, self.nadir,
                                self.pmod_alpha, self.pmda_alpha, self.pmda_gamma,
                                self.rmetric_trim_from_set)


def _nonempty(P: ArrayLike, m: int, what: str) -> np.ndarray:
    P = as_point_set(P, m)
    if P.shape[0] == 0:
        raise ValueError(f"{what} is undefined for an empty point set")
    return P


def igd(P: ArrayLike, S: ArrayLike) -> float:
    """Mean distance from each reference point in ``S`` to its nearest point in ``P``.

    Returns ``inf`` for an empty ``P``.

    Raises:
        ValueError: If ``S`` is empty.
    """
    S = as_point_set(S, name="IGD-reference set")
    if S.shape[0] == 0:
        raise ValueError("IGD-reference set is empty")
    P = as_point_set(P, S.shape[1])
    if P.shape[0] == 0:
        return float("inf")
    return float(np.mean(pairwise_distances(S, P).min(axis=1)))


def masf(P: ArrayLike, spec: PreferenceSpec) -> float:
    """Smallest ASF value over ``P``."""
    P = _nonempty(P, spec.m, "MASF")
    return float(np.min(asf_values(P, spec)))


def med(P: ArrayLike, ctx: IndicatorContext) -> float:
    """Mean Euclidean distance to ``z`` after scaling by the nadir-ideal range."""
    P = _nonempty(P, ctx.spec.m, "MED")
    span = ctx.nadir - ctx.ideal
    if np.any(span <= 0):
        raise ValueError(f"MED needs nadir > ideal in every objective, got {ctx.ideal} and {ctx.nadir}")
    scaled = (P - ctx.spec.z) / span
    return float(np.mean(np.sqrt(np.sum(scaled**2, axis=1))))


def roi_reference_set(ctx: IndicatorContext, kind: RoiKind) -> np.ndarray:
    """The trimmed IGD-reference set used by IGD-C, IGD-A or IGD-P.

    Kinds C and A keep sample points strictly within ``r`` of their center.
    """
    return build_roi(ctx.front_sample, ctx.spec, kind, radius=ctx.spec.r).members


def igd_roi(P: ArrayLike, ctx: IndicatorContext, kind: RoiKind) -> float:
    """IGD-C, IGD-A or IGD-P, depending on ``kind``.

    Raises:
        ValueError: If the trimmed reference set is empty.
    """
    S_roi = roi_reference_set(ctx, kind)
    if S_roi.shape[0] == 0:
        raise ValueError(f"IGD-{kind}: the trimmed IGD-reference set is empty for z = {ctx.spec.z}")
    return igd(as_point_set(P, ctx.spec.m), S_roi)


def hv_z_reference(ctx: IndicatorContext) -> np.ndarray:
    """HV-reference point of HV_z: ``z`` if feasible, else the ROI-P maximum.

    Raises:
        ValueError: If ``z`` is infeasible and ROI-P is empty.
    """
    z = ctx.spec.z
    if is_feasible(z, ctx.front_sample):
        return z.copy()
    members = roi_p(ctx.front_sample, z).members
    if members.shape[0] == 0:
        raise ValueError(f"HV_z is undefined: z = {z} is infeasible and ROI-P is empty")
    return members.max(axis=0)


def hv_z(P: ArrayLike, ctx: IndicatorContext) -> float:
    """Hypervolume with the reference point chosen from ``z`` and ROI-P."""
    return hv(as_point_set(P, ctx.spec.m), hv_z_reference(ctx))


def pr(P: ArrayLike, ctx: IndicatorContext, kind: RoiKind = "P") -> float:
    """Percentage of ``P`` lying in the region of interest.

    For kind P the dominance test is applied to each point directly. For
    kinds C and A a point counts when it is strictly within ``zeta`` of the
    ROI center.
    """
    P = _nonempty(P, ctx.spec.m, "PR")
    if kind == "P":
        inside = roi_p_mask(P, ctx.spec.z, is_feasible(ctx.spec.z, ctx.front_sample))
    else:
        center = build_roi(ctx.front_sample, ctx.spec, kind).center
        inside = distances_to(P, center) < ctx.spec.zeta
    return 100.0 * float(np.count_nonzero(inside)) / P.shape[0]


def pmod(P: ArrayLike, ctx: IndicatorContext) -> float:
    """PMOD: closeness to ``z`` on its hyperplane, closeness to the origin, and uniformity.

    Each point is projected onto the hyperplane through ``z`` orthogonal to
    ``z``. The per-point penalty is 1 when the projection is within ``r`` of
    ``z`` and ``pmod_alpha`` otherwise. The spread term is the unbiased
    standard deviation of nearest-neighbour Manhattan distances between
    projections, taken as 0 for fewer than two points.

    Raises:
        ValueError: If ``z`` is the origin or ``P`` is empty.
    """
    z = ctx.spec.z
    P = _nonempty(P, ctx.spec.m, "PMOD")
    norm = np.linalg.norm(z)
    if norm == 0:
        raise ValueError("PMOD needs a reference point different from the origin")
    z_hat = z / norm
    mapped = P + np.outer((z - P) @ z_hat, z_hat)
    d_z = distances_to(mapped, z)
    alpha = np.where(d_z <= ctx.spec.r, 1.0, ctx.pmod_alpha)
    total = np.mean(d_z + alpha * np.linalg.norm(P, axis=1))
    if P.shape[0] < 2:
        return float(total)
    manhattan = np.sum(np.abs(mapped[:, None, :] - mapped[None, :, :]), axis=2)
    np.fill_diagonal(manhattan, np.inf)
    return float(total + np.std(manhattan.min(axis=1), ddof=1))
