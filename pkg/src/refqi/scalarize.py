"""Achievement scalarizing functions and the preference specification."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from refqi.core import ArrayLike, as_point, as_point_set


@dataclass(frozen=True)
class PreferenceSpec:
    """Reference point and the parameters that travel with it.

    Only ``z`` is required. The remaining fields default to equal weights,
    ``rho = 1e-6``, ``zeta = r = 0.1`` and a worst point two unit-diagonal
    steps beyond ``z``.

    Attributes:
        z: Reference point.
        w: Nonnegative weights summing to one.
        rho: Augmentation coefficient of the augmented ASF.
        zeta: Radius of ROI-C and ROI-A.
        r: Radius of the preferred region used by the indicators.
        z_w: Worst point used by the R-metric.
    """

    z: np.ndarray
    w: np.ndarray | None = None
    rho: float = 1e-6
    zeta: float = 0.1
    r: float = 0.1
    z_w: np.ndarray | None = field(default=None)

    def __post_init__(self) -> None:
        z = as_point(self.z, "reference point z")
        m = z.size
        if self.w is None:
            w = np.full(m, 1.0 / m)
        else:
            w = np.asarray(self.w, dtype=float)
            if w.shape != (m,):
                raise ValueError(f"weight vector must have {m} entries, got shape {w.shape}")
            if np.any(~np.isfinite(w)) or np.any(w < 0):
                raise ValueError(f"weights must be finite and nonnegative, got {w}")
            if abs(w.sum() - 1.0) > 1e-12:
                raise ValueError(f"weights must sum to 1, got sum {w.sum()!r}")
        for name in ("rho", "zeta", "r"):
            value = getattr(self, name)
            if not (np.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be a positive finite number, got {value!r}")
        if self.z_w is None:
            z_w = z + 2.0 / np.sqrt(m)
        else:
            z_w = as_point(self.z_w, "worst point z_w")
            if z_w.size != m:
                raise ValueError(f"z_w has {z_w.size} objectives, expected {m}")
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "z_w", z_w)
        object.__setattr__(self, "rho", float(self.rho))
        object.__setattr__(self, "zeta", float(self.zeta))
        object.__setattr__(self, "r", float(self.r))

    @property
    def m(self) -> int:
        return self.z.size

    def with_z(self, z: ArrayLike) -> PreferenceSpec:
        """Copy with a new reference point; ``z_w`` is re-derived from it."""
        return PreferenceSpec(z=np.asarray(z, dtype=float), w=self.w, rho=self.rho,
                              zeta=self.zeta, r=self.r)


def _check_dim(p: np.ndarray, spec: PreferenceSpec) -> None:
    if p.shape[-1] != spec.m:
        raise ValueError(f"dimension mismatch: point has {p.shape[-1]} objectives, z has {spec.m}")


def asf(p: ArrayLike, spec: PreferenceSpec) -> float:
    """Achievement scalarizing function ``max_i w_i (p_i - z_i)``.

    Negative values mean ``p`` dominates ``z``.

    Examples:
        >>> asf([0.5, 0.5], PreferenceSpec(z=[0.1, 0.1]))
        0.2
    """
    p = np.asarray(p, dtype=float)
    _check_dim(p, spec)
    return float(np.max(spec.w * (p - spec.z)))


def aasf(p: ArrayLike, spec: PreferenceSpec) -> float:
    """Augmented ASF: ``asf(p) + rho * sum_i (p_i - z_i)``."""
    p = np.asarray(p, dtype=float)
    _check_dim(p, spec)
    return asf(p, spec) + spec.rho * float(np.sum(p - spec.z))


def asf_values(P: ArrayLike, spec: PreferenceSpec) -> np.ndarray:
    """Vectorized :func:`asf` over the rows of ``P``."""
    P = as_point_set(P, spec.m)
    if P.shape[0] == 0:
        return np.zeros(0)
    return np.max(spec.w * (P - spec.z), axis=1)


def aasf_values(P: ArrayLike, spec: PreferenceSpec) -> np.ndarray:
    """Vectorized :func:`aasf` over the rows of ``P``."""
    P = as_point_set(P, spec.m)
    return asf_values(P, spec) + spec.rho * np.sum(P - spec.z, axis=1)
