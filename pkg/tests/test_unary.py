import numpy as np
import pytest

import oracles
from refqi.analysis import competition_ranks
from refqi.fronts import front_model, sample_front, synth_sets
from refqi.roi import roi_p
from refqi.scalarize import PreferenceSpec
from refqi.unary import (
    IndicatorContext,
    hv,
    hv_z,
    hv_z_reference,
    igd,
    igd_roi,
    masf,
    med,
    pmod,
    pr,
    roi_reference_set,
)

DTLZ2 = front_model("DTLZ2")
SETS = synth_sets(DTLZ2, "two-objective-10")


def ctx_for(z, **kwargs):
    return IndicatorContext.for_model(DTLZ2, PreferenceSpec(z=z, **kwargs))


def test_context_validation():
    spec = PreferenceSpec(z=[0.5, 0.5])
    S = sample_front(DTLZ2, 10)
    with pytest.raises(ValueError):
        IndicatorContext(spec, S, pmod_alpha=1.0)
    with pytest.raises(ValueError):
        IndicatorContext(spec, S, pmda_gamma=0.0)
    with pytest.raises(ValueError):
        IndicatorContext(spec, S, hv_ref=[1, 1, 1])
    with pytest.raises(ValueError):
        IndicatorContext.for_model(front_model("DTLZ2", 3), spec)
    ctx = IndicatorContext(spec, S)
    assert ctx.hv_ref.tolist() == [1.1, 1.1]
    assert ctx.with_spec(PreferenceSpec(z=[0.1, 0.1])).front_sample is ctx.front_sample


def test_hv_derived_example():
    assert hv([[0.25, 0.75], [0.75, 0.25]], [1.1, 1.1]) == pytest.approx(0.4725)
    assert hv([[1.2, 1.2]], [1.1, 1.1]) == 0.0


def test_igd_examples(rng):
    S = sample_front(DTLZ2, 50)
    assert igd(S, S) == 0.0
    assert igd([[0, 0]], [[1, 0], [0, 1]]) == 1.0
    assert igd(np.empty((0, 2)), S) == np.inf
    with pytest.raises(ValueError):
        igd(S, np.empty((0, 2)))
    for _ in range(30):
        P = rng.uniform(0, 1, (int(rng.integers(1, 20)), 2))
        Q = rng.uniform(0, 1, (int(rng.integers(1, 20)), 2))
        assert igd(P, Q) == pytest.approx(oracles.igd(P.tolist(), Q.tolist()))


def test_igd_zero_iff_reference_points_are_copied(rng):
    S = rng.uniform(0, 1, (10, 2))
    assert igd(np.vstack([S, rng.uniform(0, 1, (5, 2))]), S) == 0.0
    assert igd(S[:-1], S) > 0.0


def test_masf(rng):
    spec = PreferenceSpec(z=[0.5, 0.5])
    assert masf([[0.5, 0.5], [0.9, 0.9]], spec) == 0.0
    for _ in range(20):
        P = rng.uniform(-1, 2, (15, 2))
        assert masf(P, spec) == pytest.approx(min(oracles.asf(p, spec.z, spec.w) for p in P))
    with pytest.raises(ValueError):
        masf(np.empty((0, 2)), spec)


def test_med(rng):
    ctx = ctx_for([0.5, 0.5])
    assert med([[0.5, 0.5]], ctx) == 0.0
    P = rng.uniform(0, 1, (15, 2))
    assert med(P, ctx) == pytest.approx(np.mean([oracles.dist(p, ctx.spec.z) for p in P]))
    bad = IndicatorContext(ctx.spec, ctx.front_sample, ideal=[0, 0], nadir=[1, 0])
    with pytest.raises(ValueError):
        med(P, bad)


def test_translation_consistency(rng):
    P = rng.uniform(0, 1, (15, 2))
    c = 0.37
    a = ctx_for([0.5, 0.5])
    b = ctx_for([0.5 + c, 0.5 + c])
    assert masf(P + c, b.spec) == pytest.approx(masf(P, a.spec))
    assert med(P + c, b) == pytest.approx(med(P, a))


def test_med_prefers_dominated_shifted_set_for_far_z():
    ctx = ctx_for([1.0, 1.0])
    assert med(SETS[6], ctx) < med(SETS[2], ctx)


def test_igd_roi_reference_sets():
    ctx = ctx_for([0.5, 0.5])
    for kind in "CA":
        Sp = roi_reference_set(ctx, kind)
        assert Sp.shape[0] > 0
        assert igd_roi(Sp, ctx, kind) == 0.0
    assert np.array_equal(roi_reference_set(ctx, "P"), roi_p(ctx.front_sample, ctx.spec.z).members)
    on_front = IndicatorContext(PreferenceSpec(z=ctx.front_sample[10]), ctx.front_sample)
    with pytest.raises(ValueError):
        igd_roi(SETS[2], on_front, "P")


def test_igd_c_and_igd_a_at_far_z():
    ctx = ctx_for([-0.1, -0.1])
    c = competition_ranks([igd_roi(P, ctx, "C") for P in SETS])
    a = competition_ranks([igd_roi(P, ctx, "A") for P in SETS])
    assert c[0] == 1 and a[2] == 1


def test_igd_a_ranking_is_the_same_for_both_reference_points():
    near, far = ctx_for([0.5, 0.5]), ctx_for([-0.1, -0.1])
    r1 = competition_ranks([igd_roi(P, near, "A") for P in SETS])
    r2 = competition_ranks([igd_roi(P, far, "A") for P in SETS])
    assert r1.tolist() == r2.tolist()


def test_hv_z():
    ctx = ctx_for([0.5, 0.5])
    values = [hv_z(P, ctx) for P in SETS]
    assert [values[i] for i in (0, 1, 3, 4)] == [0.0] * 4
    assert values[2] > 0
    members = roi_p(ctx.front_sample, ctx.spec.z).members
    assert hv_z_reference(ctx).tolist() == members.max(axis=0).tolist()
    feasible = ctx_for([0.9, 0.9])
    assert hv_z_reference(feasible).tolist() == [0.9, 0.9]
    assert hv_z(np.empty((0, 2)), ctx) == 0.0


def test_pr():
    ctx = ctx_for([0.5, 0.5])
    assert pr([[0.8, 0.8]], ctx) == 100.0
    assert pr([[0.8, 0.8], [0.1, 0.1]], ctx) == 50.0
    far = ctx_for([-0.1, -0.1])
    assert {pr(P, far) for P in SETS} == {100.0}
    center = ctx.front_sample[np.argmin(np.linalg.norm(ctx.front_sample - 0.5, axis=1))]
    assert pr([center, [0.0, 1.0]], ctx, "C") == 50.0
    with pytest.raises(ValueError):
        pr(np.empty((0, 2)), ctx)


def pmod_oracle(P, z, r, alpha):
    """Direct transcription of the PMOD formula with per-point penalties."""
    norm = sum(v * v for v in z) ** 0.5
    zh = [v / norm for v in z]
    mapped, total = [], 0.0
    for p in P:
        k = sum((zi - pi) * hi for zi, pi, hi in zip(z, p, zh))
        q = [pi + k * hi for pi, hi in zip(p, zh)]
        mapped.append(q)
        d = oracles.dist(q, z)
        total += d + (1.0 if d <= r else alpha) * sum(v * v for v in p) ** 0.5
    total /= len(P)
    if len(P) < 2:
        return total
    nn = [min(sum(abs(a - b) for a, b in zip(q, o)) for j, o in enumerate(mapped) if j != i)
          for i, q in enumerate(mapped)]
    mean = sum(nn) / len(nn)
    return total + (sum((v - mean) ** 2 for v in nn) / (len(nn) - 1)) ** 0.5


def test_pmod(rng):
    ctx = ctx_for([0.5, 0.5])
    assert pmod([[0.5, 0.5]], ctx) == pytest.approx(np.sqrt(0.5))
    for _ in range(30):
        P = rng.uniform(0, 1, (int(rng.integers(1, 12)), 2))
        assert pmod(P, ctx) == pytest.approx(pmod_oracle(P.tolist(), [0.5, 0.5], 0.1, 1.5))
    with pytest.raises(ValueError):
        pmod([[1, 1]], IndicatorContext(PreferenceSpec(z=[0.0, 0.0]), ctx.front_sample))


def test_pmod_origin_term_is_monotone():
    ctx = ctx_for([0.5, 0.5])
    p = np.array([[0.3, 0.8]])
    assert pmod(p * 1.2, ctx) > pmod(p, ctx)
