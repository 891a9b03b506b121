"""Independent reference implementations used only by the tests.

These are deliberately naive: plain loops over Python floats that follow
the textbook definitions or the published pseudo code step by step, with
no calls into the package under test.
"""

from __future__ import annotations

import math
import random


def dominates(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b)) and any(x < y for x, y in zip(a, b))


def nondominated(P):
    """O(n^2) filter keeping input order and duplicates."""
    return [p for i, p in enumerate(P) if not any(dominates(q, p) for j, q in enumerate(P) if j != i)]


def dist(a, b) -> float:
    return math.sqrt(sum((x - y) ** 2 for x, y in zip(a, b)))


def igd(P, S) -> float:
    if not P:
        return math.inf
    return sum(min(dist(s, p) for p in P) for s in S) / len(S)


def asf(p, z, w) -> float:
    return max(wi * (pi - zi) for pi, zi, wi in zip(p, z, w))


def hv_monte_carlo(P, y, n_samples: int = 200_000, seed: int = 12345) -> float:
    """Monte-Carlo hypervolume estimate over the box [min P, y]."""
    P = [p for p in P if all(pi < yi for pi, yi in zip(p, y))]
    if not P:
        return 0.0
    m = len(y)
    lo = [min(p[k] for p in P) for k in range(m)]
    box = math.prod(y[k] - lo[k] for k in range(m))
    rng = random.Random(seed)
    hits = 0
    for _ in range(n_samples):
        x = [rng.uniform(lo[k], y[k]) for k in range(m)]
        if any(all(p[k] <= x[k] for k in range(m)) for p in P):
            hits += 1
    return box * hits / n_samples


def hv_inclusion_exclusion(P, y) -> float:
    """Exact hypervolume by inclusion-exclusion over all subsets (tiny sets only)."""
    P = [p for p in P if all(pi < yi for pi, yi in zip(p, y))]
    total = 0.0
    n = len(P)
    for mask in range(1, 1 << n):
        chosen = [P[i] for i in range(n) if mask >> i & 1]
        corner = [max(p[k] for p in chosen) for k in range(len(y))]
        vol = math.prod(y[k] - corner[k] for k in range(len(y)))
        total += vol if len(chosen) % 2 else -vol
    return total


def kendall_tau_b(u, v) -> float:
    """Tau-b from concordant/discordant pair counts."""
    n = len(u)
    nc = nd = tu = tv = 0
    for i in range(n):
        for j in range(i + 1, n):
            du = u[i] - u[j]
            dv = v[i] - v[j]
            if du == 0 and dv == 0:
                tu += 1
                tv += 1
            elif du == 0:
                tu += 1
            elif dv == 0:
                tv += 1
            elif (du > 0) == (dv > 0):
                nc += 1
            else:
                nd += 1
    n0 = n * (n - 1) // 2
    return (nc - nd) / math.sqrt((n0 - tu) * (n0 - tv))


def eh(sets, z):
    """Expanding hypercube metric, following the published pseudo code line by line."""
    K = len(sets)
    # lines 1-2: remove duplicates within each set (keep the first copy)
    dedup = []
    for P in sets:
        kept = []
        for p in P:
            if not any(tuple(q) == tuple(p) for q in kept):
                kept.append(list(p))
        dedup.append(kept)
    # line 3: nondominated points of the union
    union = [p for P in dedup for p in P]
    P_all = [p for p in union if not any(dominates(q, p) for q in union)]
    # lines 4-5
    dedup = [[p for p in P if any(tuple(p) == tuple(q) for q in P_all)] for P in dedup]
    h_max = []
    a = [0.0] * K
    h_max_i = [None] * K
    for i in range(K):
        h = sorted(max(abs(pj - zj) for pj, zj in zip(p, z)) for p in dedup[i])
        if h:
            h_max_i[i] = max(h)
            h_max.append(h_max_i[i])
        prev = 0.0
        for l, hl in enumerate(h, start=1):
            a[i] += l / len(h) * (hl - prev)
            prev = hl
    out = []
    for i in range(K):
        if not dedup[i]:
            out.append(0.0)
        else:
            out.append(a[i] + (max(h_max) - h_max_i[i]))
    return out


def hv2d(P, y) -> float:
    """Two-objective hypervolume by sorting (used inside the R-metric oracle)."""
    P = sorted(p for p in P if p[0] < y[0] and p[1] < y[1])
    vol = 0.0
    f2_prev = y[1]
    for f1, f2 in P:
        if f2 < f2_prev:
            vol += (y[0] - f1) * (f2_prev - f2)
            f2_prev = f2
    return vol


def r_metric(sets, S, z, w, z_w, r):
    """R-IGD and R-HV for two objectives, following the published pseudo code."""
    union = [list(p) for P in sets for p in P]
    P_all = [p for p in union if not any(dominates(q, p) for q in union)]

    def trim(Q):
        best = Q[0]
        for p in Q[1:]:
            if asf(p, z, w) < asf(best, z, w):
                best = p
        return best, [p for p in Q if all(abs(pj - bj) <= r for pj, bj in zip(p, best))]

    _, S_trim = trim([list(s) for s in S])
    r_igd, r_hv = [], []
    for P in sets:
        P = [list(p) for p in P if any(list(p) == q for q in P_all)]
        if not P:
            r_igd.append(math.inf)
            r_hv.append(0.0)
            continue
        p_a, P = trim(P)
        ratios = [(p_a[j] - z[j]) / (z_w[j] - z[j]) for j in range(len(z))]
        k = max(range(len(z)), key=lambda j: (ratios[j], -j))
        p_iso = [z[j] + ratios[k] * (z_w[j] - z[j]) for j in range(len(z))]
        shifted = [[p[j] + p_iso[j] - p_a[j] for j in range(len(z))] for p in P]
        r_igd.append(igd(shifted, S_trim))
        r_hv.append(hv2d(shifted, z_w))
    return r_igd, r_hv


def composite_front(sets, z, r, y):
    """IGD-CF and HV-CF for two objectives, following the published pseudo code."""
    union = [list(p) for P in sets for p in P]
    P_cf = [p for p in union if not any(dominates(q, p) for q in union)]
    p_c = min(P_cf, key=lambda p: dist(p, z))
    igd_cf, hv_cf = [], []
    for P in sets:
        inside = [list(p) for p in P if dist(p, p_c) < r]
        igd_cf.append(igd(inside, P_cf))
        hv_cf.append(hv2d(inside, y))
    return igd_cf, hv_cf
