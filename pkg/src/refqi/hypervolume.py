"""Exact hypervolume in two and three objectives."""

from __future__ import annotations

import numpy as np

from refqi.core import ArrayLike, as_point, as_point_set, nondominated_filter


def _hv2d(P: np.ndarray, y: np.ndarray) -> float:
    # P holds only points strictly better than y in both objectives.
    P = nondominated_filter(P)
    order = np.lexsort((P[:, 1], P[:, 0]))
    P = P[order]
    volume = 0.0
    prev_f2 = y[1]
    for f1, f2 in P:
        if f2 < prev_f2:
            volume += (y[0] - f1) * (prev_f2 - f2)
            prev_f2 = f2
    return volume


def _hv3d(P: np.ndarray, y: np.ndarray) -> float:
    # Sweep along the third objective; between consecutive f3 levels the
    # dominated cross-section is the 2-D hypervolume of the points seen so far.
    order = np.argsort(P[:, 2], kind="stable")
    P = P[order]
    levels = np.append(P[:, 2], y[2])
    volume = 0.0
    for i in range(P.shape[0]):
        height = levels[i + 1] - levels[i]
        if height > 0:
            volume += _hv2d(P[: i + 1, :2], y[:2]) * height
    return volume


def hv(P: ArrayLike, y: ArrayLike) -> float:
    """Hypervolume of the region dominated by ``P`` and bounded by ``y``.

    Points that do not strictly dominate ``y`` in every objective add
    nothing and are discarded first.

    Args:
        P: Point set of shape ``(n, m)`` with ``m`` equal to 2 or 3.
        y: HV-reference point.

    Returns:
        The Lebesgue measure of the dominated region, 0.0 for an empty set.

    Raises:
        ValueError: On a dimension mismatch or ``m > 3``.

    Examples:
        >>> hv([[0.5, 0.5]], [1.1, 1.1])  # doctest: +ELLIPSIS
        0.36...
    """
    y = as_point(y, "HV-reference point")
    P = as_point_set(P, y.size)
    if y.size > 3:
        raise ValueError(f"exact hypervolume supports m <= 3, got m = {y.size}")
    P = P[np.all(P < y, axis=1)]
    if P.shape[0] == 0:
        return 0.0
    if y.size == 2:
        return float(_hv2d(P, y))
    return float(_hv3d(P, y))
