"""Analytic Pareto fronts, front sampling and synthetic point-set layouts.

Two-objective fronts are parameterized by ``t`` in ``[0, 1]``. For DTLZ2 and
convDTLZ2 ``t`` is the polar angle divided by pi/2, so ``t = 0`` is the
``(1, 0)`` end. For DTLZ1 (normalized) and ZDT3 ``t`` is ``f1`` itself.

Parameters are handled as exact fractions until the last moment. Each
point is built from both ``t`` and ``1 - t`` rounded independently, which
makes a set generated from ``1 - t`` the exact coordinate swap of the set
generated from ``t``. Symmetric indicator values then tie exactly instead of
differing in the last bit.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

import numpy as np

from refqi.core import as_point_set, nondominated_mask

PROBLEMS = ("DTLZ1", "DTLZ2", "convDTLZ2", "ZDT3")
LAYOUTS = ("two-objective-10", "zdt3-7", "three-objective-13")

# Accepted spellings, each mapped to (problem, normalize to [0, 1]).
_ALIASES = {
    "dtlz1": ("DTLZ1", False),
    "dtlz1-normalized": ("DTLZ1", False),
    "dtlz2": ("DTLZ2", False),
    "convdtlz2": ("convDTLZ2", False),
    "zdt3": ("ZDT3", False),
    "zdt3-normalized": ("ZDT3", True),
}


def _lookup(name: str) -> tuple[str, bool]:
    key = name.strip().lower()
    if key not in _ALIASES:
        raise ValueError(f"unknown problem {name!r}; expected one of {', '.join(sorted(_ALIASES))}")
    return _ALIASES[key]


def canonical_problem(name: str) -> str:
    """Map a user-supplied problem name onto one of :data:`PROBLEMS`."""
    return _lookup(name)[0]


@dataclass(frozen=True)
class FrontModel:
    """An analytic Pareto front together with its ideal and nadir points.

    When ``scale`` is set to the raw ``(ideal, nadir)`` pair, every point the
    model produces is mapped affinely so that the front spans ``[0, 1]`` in
    each objective; ``ideal`` and ``nadir`` are then 0 and 1.
    """

    problem: str
    m: int
    ideal: np.ndarray
    nadir: np.ndarray
    scale: tuple[np.ndarray, np.ndarray] | None = None

    def to_model_space(self, P: np.ndarray) -> np.ndarray:
        """Map raw objective vectors into this model's (possibly normalized) space."""
        P = np.asarray(P, dtype=float)
        if self.scale is None:
            return P
        lo, hi = self.scale
        return (P - lo) / (hi - lo)

    def to_raw_space(self, P: np.ndarray) -> np.ndarray:
        """Inverse of :meth:`to_model_space`."""
        P = np.asarray(P, dtype=float)
        if self.scale is None:
            return P
        lo, hi = self.scale
        return lo + P * (hi - lo)

    def contains(self, P: np.ndarray, tol: float = 1e-12) -> np.ndarray:
        """Boolean mask of rows lying on the front within ``tol`` residual."""
        P = as_point_set(P, self.m)
        return np.abs(front_residual(self, P)) < tol


def front_model(problem: str, m: int = 2) -> FrontModel:
    """Build the :class:`FrontModel` for ``problem`` with ``m`` objectives.

    ``"ZDT3-normalized"`` gives the ZDT3 front rescaled by its ideal and
    nadir points.

    Raises:
        ValueError: For an unknown problem or an unsupported ``m``.
    """
    problem, normalized = _lookup(problem)
    if m not in (2, 3) or (problem == "ZDT3" and m != 2):
        raise ValueError(f"{problem} is not supported with m = {m}")
    if problem == "ZDT3":
        f1_max = zdt3_segments()[-1][1]
        f2_min = float(np.min(zdt3_f2(np.linspace(0.0, 1.0, 200_001))))
        ideal = np.array([0.0, f2_min])
        nadir = np.array([f1_max, 1.0])
        if normalized:
            return FrontModel(problem, m, np.zeros(2), np.ones(2), (ideal, nadir))
    else:
        ideal = np.zeros(m)
        nadir = np.ones(m)
    return FrontModel(problem, m, ideal, nadir)


def zdt3_f2(f1: np.ndarray) -> np.ndarray:
    """The ZDT3 front curve before nondominated filtering."""
    f1 = np.asarray(f1, dtype=float)
    return 1.0 - np.sqrt(f1) - f1 * np.sin(10.0 * np.pi * f1)


@lru_cache(maxsize=8)
def zdt3_segments(n_dense: int = 200_001) -> tuple[tuple[float, float], ...]:
    """Return the f1-intervals of the disconnected ZDT3 front.

    The curve is sampled at ``n_dense`` evenly spaced ``f1`` values, filtered
    for nondominance, and maximal runs of consecutive survivors become
    intervals.

    Raises:
        ValueError: If ``n_dense < 1e5`` or the sampling does not produce
            exactly five runs.
    """
    if n_dense < 100_000:
        raise ValueError(f"n_dense must be at least 1e5, got {n_dense}")
    f1 = np.linspace(0.0, 1.0, n_dense)
    keep = nondominated_mask(np.column_stack([f1, zdt3_f2(f1)]))
    edges = np.diff(np.concatenate([[0], keep.astype(np.int8), [0]]))
    starts = np.flatnonzero(edges == 1)
    stops = np.flatnonzero(edges == -1) - 1
    if starts.size != 5:
        raise ValueError(f"expected 5 ZDT3 segments, found {starts.size}; sampling is too coarse")
    return tuple((float(f1[a]), float(f1[b])) for a, b in zip(starts, stops))


def _fraction(x: float | Fraction) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(str(x))


def points_at(problem: str, t: Sequence[Fraction | float]) -> np.ndarray:
    """Map front parameters ``t`` to objective vectors of a 2-objective front.

    For ZDT3 ``t`` is ``f1`` and must lie on one of the segments for the
    result to be Pareto optimal.
    """
    problem = canonical_problem(problem)
    if problem == "ZDT3":
        a = np.asarray(t, dtype=float)
        if np.any((a < 0) | (a > 1)):
            raise ValueError("front parameters must lie in [0, 1]")
        return np.column_stack([a, zdt3_f2(a)])
    tf = [_fraction(v) for v in t]
    if any(v < 0 or v > 1 for v in tf):
        raise ValueError("front parameters must lie in [0, 1]")
    a = np.array([float(v) for v in tf])
    b = np.array([float(1 - v) for v in tf])
    if problem == "DTLZ1":
        return np.column_stack([a, b])
    c1 = np.where(a == 1.0, 0.0, np.cos(a * np.pi / 2))
    c2 = np.where(b == 1.0, 0.0, np.cos(b * np.pi / 2))
    if problem == "DTLZ2":
        return np.column_stack([c1, c2])
    return np.column_stack([c1**4, c2**2])  # convDTLZ2


def simplex_lattice(h: int, m: int = 3) -> np.ndarray:
    """All points of the ``h``-partition lattice on the unit simplex.

    Rows are in lexicographic order of their integer numerators, which keeps
    sampling deterministic. There are ``comb(h + m - 1, m - 1)`` rows.
    """
    rows = []

    def rec(prefix: list[int], left: int, depth: int) -> None:
        if depth == m - 1:
            rows.append(prefix + [left])
            return
        for k in range(left, -1, -1):
            rec(prefix + [k], left - k, depth + 1)

    rec([], h, 0)
    return np.array(rows, dtype=float) / h


def _project(problem: str, W: np.ndarray) -> np.ndarray:
    """Project simplex points onto a front with ``m`` objectives."""
    if problem == "DTLZ1":
        return W
    S = W / np.linalg.norm(W, axis=1, keepdims=True)
    if problem == "DTLZ2":
        return S
    out = S**4
    out[:, -1] = S[:, -1] ** 2
    return out


def front_residual(model: FrontModel, P: np.ndarray) -> np.ndarray:
    """Deviation of each row of ``P`` from the defining equation of the front."""
    P = model.to_raw_space(P)
    if model.problem == "DTLZ1":
        return P.sum(axis=1) - 1.0
    if model.problem == "DTLZ2":
        return np.sum(P**2, axis=1) - 1.0
    if model.problem == "convDTLZ2":
        return np.sum(np.sqrt(np.abs(P[:, :-1])), axis=1) + P[:, -1] - 1.0
    return P[:, 1] - zdt3_f2(P[:, 0])


def sample_front(model: FrontModel, n: int) -> np.ndarray:
    """Sample ``n`` points on the front, ordered along its parameter.

    Two-objective fronts use an even grid in ``t``. ZDT3 spreads the grid
    over the union of its segments so that all ``n`` points are Pareto
    optimal, then applies the model's normalization if any. Three-objective fronts use the smallest simplex lattice with at
    least ``n`` points, thinned to ``n`` evenly spaced lattice indices.

    Raises:
        ValueError: If ``n < 2``.
    """
    if n < 2:
        raise ValueError(f"need at least 2 sample points, got {n}")
    if model.m == 3:
        h = 1
        while comb(h + 2, 2) < n:
            h += 1
        W = simplex_lattice(h)
        idx = np.unique(np.round(np.linspace(0, W.shape[0] - 1, n)).astype(int))
        return _project(model.problem, W[idx])
    if model.problem == "ZDT3":
        return model.to_model_space(points_at("ZDT3", _spread_over_segments(n)))
    return points_at(model.problem, [Fraction(k, n - 1) for k in range(n)])


def _spread_over_segments(n: int, segments: Sequence[tuple[float, float]] | None = None
                          ) -> list[float]:
    """``n`` evenly spaced positions over the concatenated segment lengths."""
    segs = list(zdt3_segments() if segments is None else segments)
    lengths = np.array([b - a for a, b in segs])
    cum = np.concatenate([[0.0], np.cumsum(lengths)])
    out = []
    for s in np.linspace(0.0, cum[-1], n):
        k = min(int(np.searchsorted(cum, s, side="right")) - 1, len(segs) - 1)
        out.append(min(segs[k][0] + (s - cum[k]), segs[k][1]))
    return out


def _uniform(lo: Fraction, hi: Fraction, n: int) -> list[Fraction]:
    return [lo + (hi - lo) * Fraction(j, n - 1) for j in range(n)]


# Front-parameter windows of sets 1 to 5 and of the narrow set 9 in the
# two-objective layout. The windows are mirror images about t = 1/2, leave
# visible gaps between sets, and were calibrated so that the ten sets show
# the qualitative behaviour the synthetic experiment is built around (see
# README). Set 10 covers [0, 1].
TWO_OBJECTIVE_WINDOWS: tuple[tuple[Fraction, Fraction], ...] = (
    (Fraction(0), Fraction(1, 10)),
    (Fraction(9, 50), Fraction(31, 100)),
    (Fraction(2, 5), Fraction(3, 5)),
    (Fraction(69, 100), Fraction(41, 50)),
    (Fraction(9, 10), Fraction(1)),
)
NARROW_WINDOW: tuple[Fraction, Fraction] = (Fraction(49, 100), Fraction(51, 100))


def two_objective_parameters(windows: Sequence[tuple[float | Fraction, float | Fraction]]
                             = TWO_OBJECTIVE_WINDOWS,
                             narrow_window: tuple[float | Fraction, float | Fraction] = NARROW_WINDOW,
                             n_points: int = 20) -> list[list[Fraction]]:
    """Front parameters of the ten two-objective synthetic sets.

    Sets 1 to 5 spread ``n_points`` evenly over ``windows``, set 9 over
    ``narrow_window`` and set 10 over all of ``[0, 1]``. Sets 6 to 8 are
    shifted copies without parameters of their own, so their slots hold ``[]``.
    """
    if len(windows) != 5:
        raise ValueError(f"expected 5 windows, got {len(windows)}")
    params = [_uniform(_fraction(lo), _fraction(hi), n_points) for lo, hi in windows]
    params += [[], [], []]
    params.append(_uniform(_fraction(narrow_window[0]), _fraction(narrow_window[1]), n_points))
    params.append(_uniform(Fraction(0), Fraction(1), n_points))
    return params


def _two_objective_10(model: FrontModel, **kwargs) -> list[np.ndarray]:
    params = two_objective_parameters(**kwargs)
    sets = [points_at(model.problem, t) if t else None for t in params]
    for i, src in ((5, 1), (6, 2), (7, 3)):
        sets[i] = sets[src] + 0.1
    return sets


def _zdt3_7(model: FrontModel, z: Sequence[float] = (0.55, 0.6), radius: float = 0.25,
            n_points: int = 20) -> list[np.ndarray]:
    segs = zdt3_segments()
    raw = [points_at("ZDT3", np.linspace(a, b, n_points)) for a, b in segs]
    sets = [model.to_model_space(P) for P in raw]
    # Set 6 covers the ROI: the front points within `radius` of the point
    # closest to z, measured in model space. On ZDT3 the ROI may consist of
    # pieces of several segments; each piece gets a share of the points
    # proportional to its f1 length, spread evenly with endpoints included.
    t = np.array(_spread_over_segments(200_001))
    dense = model.to_model_space(points_at("ZDT3", t))
    center = dense[np.argmin(np.linalg.norm(dense - np.asarray(z, dtype=float), axis=1))]
    inside = np.linalg.norm(dense - center, axis=1) < radius
    pieces = []
    for a, b in segs:
        sel = t[inside & (t >= a) & (t <= b)]
        if sel.size:
            pieces.append((float(sel.min()), float(sel.max())))
    lengths = np.array([b - a for a, b in pieces])
    counts = _apportion(lengths, n_points)
    roi = np.concatenate([np.linspace(a, b, k) for (a, b), k in zip(pieces, counts) if k])
    sets.append(model.to_model_space(points_at("ZDT3", roi)))
    sets.append(model.to_model_space(points_at("ZDT3", _spread_over_segments(n_points))))
    return sets


def _apportion(weights: np.ndarray, n: int) -> list[int]:
    """Split ``n`` into integer shares proportional to ``weights`` (largest remainder)."""
    quota = n * weights / weights.sum()
    counts = np.floor(quota).astype(int)
    for i in np.argsort(-(quota - counts), kind="stable")[: n - counts.sum()]:
        counts[i] += 1
    return counts.tolist()


# Barycentric centers of the ten three-objective patches, row by row from
# the edge joining the first two extremes: 1 2 3 4 / 5 6 7 / 8 9 / 10.
_PATCH_CENTERS = [
    (3, 0, 0), (2, 1, 0), (1, 2, 0), (0, 3, 0),
    (2, 0, 1), (1, 1, 1), (0, 2, 1),
    (1, 0, 2), (0, 1, 2),
    (0, 0, 3),
]


def _three_objective_13(model: FrontModel, spread: float = 0.25, narrow_spread: float = 0.1
                        ) -> list[np.ndarray]:
    L = simplex_lattice(5)  # 21 points
    sets = []
    for c in _PATCH_CENTERS:
        center = np.array(c, dtype=float) / 3
        sets.append(_project(model.problem, (1 - spread) * center + spread * L))
    sets.append(sets[5] + 0.1)
    center = np.full(3, 1.0 / 3)
    sets.append(_project(model.problem, (1 - narrow_spread) * center + narrow_spread * L))
    sets.append(_project(model.problem, L))
    return sets


def synth_sets(model: FrontModel, layout: str, **kwargs) -> list[np.ndarray]:
    """Generate one of the synthetic point-set layouts.

    Args:
        model: Front the sets are placed on.
        layout: ``"two-objective-10"``, ``"zdt3-7"`` or ``"three-objective-13"``.
        **kwargs: Forwarded to :func:`two_objective_parameters` for the
            two-objective layout and to the ZDT3 builder (``z``, ``radius``,
            ``n_points``) for ``"zdt3-7"``; ignored otherwise.

    Returns:
        The point sets in order, each a ``(n, m)`` array.

    Raises:
        ValueError: For an unknown layout or one that does not fit ``model``.
    """
    if layout == "two-objective-10":
        if model.m != 2 or model.problem == "ZDT3":
            raise ValueError("two-objective-10 needs a 2-objective DTLZ1, DTLZ2 or convDTLZ2 front")
        return _two_objective_10(model, **kwargs)
    if layout == "zdt3-7":
        if model.problem != "ZDT3":
            raise ValueError("zdt3-7 needs the ZDT3 front")
        return _zdt3_7(model, **kwargs)
    if layout == "three-objective-13":
        if model.m != 3:
            raise ValueError("three-objective-13 needs a 3-objective front")
        return _three_objective_13(model)
    raise ValueError(f"unknown layout {layout!r}; expected one of {', '.join(LAYOUTS)}")
