"""Objective-space geometry shared by every indicator.

Points are 1-D float arrays of length ``m`` and point sets are ``(n, m)``
arrays. All objectives are minimized. Selections that pick "the" best or
closest point always resolve ties by the lowest index, which is what
``np.argmin`` does.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence

import numpy as np

ArrayLike = np.ndarray | Sequence[float] | Sequence[Sequence[float]]

# Pairwise dominance checks are done in row blocks so that memory stays
# bounded for large sets in three or more objectives.
_BLOCK = 512


def as_point(p: ArrayLike, name: str = "point") -> np.ndarray:
    """Convert ``p`` to a validated 1-D float array.

    Raises:
        ValueError: If ``p`` is not one-dimensional, has fewer than two
            coordinates, or contains a non-finite value.
    """
    a = np.asarray(p, dtype=float)
    if a.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional, got shape {a.shape}")
    if a.size < 2:
        raise ValueError(f"{name} needs at least 2 objectives, got {a.size}")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} contains non-finite values: {a}")
    return a


def as_point_set(points: ArrayLike | Iterable[Sequence[float]], m: int | None = None,
                 name: str = "point set") -> np.ndarray:
    """Convert ``points`` to a validated ``(n, m)`` float array.

    An empty input yields an array of shape ``(0, m)`` (or ``(0, 0)`` when
    ``m`` is unknown), which every function in this package accepts as the
    empty point set.

    Args:
        points: Anything ``np.asarray`` understands as a list of points.
        m: Expected number of objectives, checked when given.
        name: Label used in error messages.

    Returns:
        A 2-D float array. The input is copied only when conversion requires it.

    Raises:
        ValueError: On ragged rows, wrong dimensionality or non-finite values.
    """
    try:
        a = np.asarray(points, dtype=float)
    except ValueError as exc:
        raise ValueError(f"{name} has rows of unequal length") from exc
    if a.size == 0:
        return np.zeros((0, m if m is not None else (a.shape[-1] if a.ndim == 2 else 0)))
    if a.ndim == 1:
        a = a.reshape(1, -1)
    if a.ndim != 2:
        raise ValueError(f"{name} must be a 2-D array, got shape {a.shape}")
    if a.shape[1] < 2:
        raise ValueError(f"{name} needs at least 2 objectives, got {a.shape[1]}")
    if m is not None and a.shape[1] != m:
        raise ValueError(f"{name} has {a.shape[1]} objectives, expected {m}")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} contains non-finite values")
    return a


def _check_pair(a: ArrayLike, b: ArrayLike) -> tuple[np.ndarray, np.ndarray]:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return a, b


def dominates(a: ArrayLike, b: ArrayLike) -> bool:
    """Return True if ``a`` Pareto-dominates ``b``.

    Examples:
        >>> dominates([0, 0], [1, 1])
        True
        >>> dominates([0, 1], [0, 1])
        False
    """
    a, b = _check_pair(a, b)
    return bool(np.all(a <= b) and np.any(a < b))


def weakly_dominates(a: ArrayLike, b: ArrayLike) -> bool:
    """Return True if ``a`` is no worse than ``b`` in every objective."""
    a, b = _check_pair(a, b)
    return bool(np.all(a <= b))


def dominance_matrix(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Boolean matrix ``D`` with ``D[i, j]`` true iff ``A[i]`` dominates ``B[j]``."""
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    le = np.all(A[:, None, :] <= B[None, :, :], axis=2)
    lt = np.any(A[:, None, :] < B[None, :, :], axis=2)
    return le & lt


def _nondominated_mask_2d(P: np.ndarray) -> np.ndarray:
    # Sort by (f1, f2). A point is dominated iff some point with a smaller f1
    # has f2 <= its f2, or some point with the same f1 has a smaller f2.
    n = P.shape[0]
    order = np.lexsort((P[:, 1], P[:, 0]))
    f1 = P[order, 0]
    f2 = P[order, 1]
    mask_sorted = np.ones(n, dtype=bool)
    best_before = np.inf  # min f2 among points with strictly smaller f1
    i = 0
    while i < n:
        j = i
        while j + 1 < n and f1[j + 1] == f1[i]:
            j += 1
        group_min = f2[i]  # f2 is ascending inside a group of equal f1
        for k in range(i, j + 1):
            if best_before <= f2[k] or f2[k] > group_min:
                mask_sorted[k] = False
        best_before = min(best_before, group_min)
        i = j + 1
    mask = np.empty(n, dtype=bool)
    mask[order] = mask_sorted
    return mask


def nondominated_mask(P: ArrayLike) -> np.ndarray:
    """Boolean mask of the points of ``P`` not dominated by any other point.

    Duplicates never dominate each other, so every copy of a nondominated
    value is kept. Two objectives use an ``O(n log n)`` sort-and-sweep; more
    objectives use a blocked pairwise comparison.
    """
    P = as_point_set(P)
    n = P.shape[0]
    if n == 0:
        return np.zeros(0, dtype=bool)
    if P.shape[1] == 2:
        return _nondominated_mask_2d(P)
    mask = np.ones(n, dtype=bool)
    for start in range(0, n, _BLOCK):
        block = P[start:start + _BLOCK]
        dominated = dominance_matrix(P, block).any(axis=0)
        mask[start:start + _BLOCK] = ~dominated
    return mask


def nondominated_filter(P: ArrayLike) -> np.ndarray:
    """Return the nondominated points of ``P`` in their input order.

    Examples:
        >>> nondominated_filter([[0, 1], [1, 0], [1, 1]]).tolist()
        [[0.0, 1.0], [1.0, 0.0]]
    """
    P = as_point_set(P)
    return P[nondominated_mask(P)]


def dedupe(P: ArrayLike) -> np.ndarray:
    """Drop exact duplicate points, keeping first occurrences in input order."""
    P = as_point_set(P)
    if P.shape[0] == 0:
        return P
    _, first = np.unique(P, axis=0, return_index=True)
    return P[np.sort(first)]


def dist_euclid(a: ArrayLike, b: ArrayLike) -> float:
    """Euclidean distance between two points."""
    a, b = _check_pair(a, b)
    return float(np.sqrt(np.sum((a - b) ** 2)))


def dist_manhattan(a: ArrayLike, b: ArrayLike) -> float:
    """Manhattan (L1) distance between two points."""
    a, b = _check_pair(a, b)
    return float(np.sum(np.abs(a - b)))


def dist_chebyshev_to(a: ArrayLike, z: ArrayLike) -> float:
    """Chebyshev (L-infinity) distance from ``a`` to ``z``."""
    a, z = _check_pair(a, z)
    return float(np.max(np.abs(a - z)))


def distances_to(P: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Euclidean distance from every row of ``P`` to the point ``q``."""
    return np.sqrt(np.sum((np.asarray(P, dtype=float) - q) ** 2, axis=1))


def pairwise_distances(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Euclidean distance matrix of shape ``(len(A), len(B))``."""
    diff = np.asarray(A, dtype=float)[:, None, :] - np.asarray(B, dtype=float)[None, :, :]
    return np.sqrt(np.sum(diff**2, axis=2))
