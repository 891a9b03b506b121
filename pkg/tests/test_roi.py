import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from refqi.analysis import argmin_reports
from refqi.fronts import front_model, sample_front
from refqi.roi import build_roi, is_feasible, roi_a, roi_c, roi_p
from refqi.scalarize import PreferenceSpec

S = sample_front(front_model("DTLZ2"), 1000)


def _check_invariants(roi, spec, S):
    members = {tuple(p) for p in S}
    assert all(tuple(p) in members for p in roi.members)
    assert np.array_equal(roi.members, S[roi.mask])
    if roi.kind in "CA":
        assert np.all(np.linalg.norm(roi.members - roi.center, axis=1) < spec.zeta)
    else:
        feasible = is_feasible(spec.z, S)
        for p in roi.members:
            if feasible:
                assert np.all(p <= spec.z) and np.any(p < spec.z)
            else:
                assert np.all(spec.z <= p) and np.any(spec.z < p)


def test_feasibility_examples():
    assert is_feasible([0.9, 0.9], S)
    assert not is_feasible([0.5, 0.5], S)
    assert not is_feasible([-0.1, -0.1], S)
    for s in S[::97]:
        assert is_feasible(s, S)


def test_roi_c_centers():
    spec = PreferenceSpec(z=[0.5, 0.5])
    c = roi_c(S, spec)
    np.testing.assert_allclose(c.center, [np.sqrt(0.5)] * 2, atol=2e-3)
    far = roi_c(S, PreferenceSpec(z=[-0.1, -0.1]))
    assert far.center.tolist() in ([1.0, 0.0], [0.0, 1.0])
    everything = roi_c(S, PreferenceSpec(z=[0.5, 0.5], zeta=10.0))
    assert everything.mask.all()


def test_roi_a_centers():
    a = roi_a(S, PreferenceSpec(z=[0.5, 0.5]))
    assert np.array_equal(a.center, roi_c(S, PreferenceSpec(z=[0.5, 0.5])).center)
    far = roi_a(S, PreferenceSpec(z=[-0.1, -0.1]))
    np.testing.assert_allclose(far.center, [np.sqrt(0.5)] * 2, atol=2e-3)
    single = roi_a([[0.3, 0.7]], PreferenceSpec(z=[0.0, 0.0]))
    assert single.members.tolist() == [[0.3, 0.7]]
    with pytest.raises(ValueError):
        roi_a(S, PreferenceSpec(z=[0.5, 0.5], w=[1.0, 0.0]))


def test_roi_p_examples():
    assert roi_p(S, [-0.1, -0.1]).mask.all()
    assert roi_p(S, S[123]).members.shape[0] == 0
    inside = roi_p(S, [0.5, 0.5])
    expected = (S[:, 0] > 0.5) & (S[:, 1] > 0.5)
    assert np.array_equal(inside.mask, expected)
    assert 0 < inside.mask.sum() < S.shape[0]


def test_build_roi_dispatch():
    spec = PreferenceSpec(z=[0.5, 0.5])
    for kind in "CAP":
        _check_invariants(build_roi(S, spec, kind), spec, S)
    with pytest.raises(ValueError):
        build_roi(S, spec, "X")
    with pytest.raises(ValueError):
        roi_c(np.empty((0, 2)), spec)


zs = st.lists(st.floats(-2, 2), min_size=2, max_size=2)


@settings(max_examples=60, deadline=None)
@given(zs)
def test_roi_invariants_on_random_z(z):
    spec = PreferenceSpec(z=z)
    sample = S[::10]
    for kind in "CAP":
        _check_invariants(build_roi(sample, spec, kind), spec, sample)


@settings(max_examples=60, deadline=None)
@given(zs)
def test_centers_coincide_iff_argmins_coincide(z):
    spec = PreferenceSpec(z=z)
    sample = S[::10]
    c, a = roi_c(sample, spec), roi_a(sample, spec)
    d_idx, a_idx = argmin_reports(sample, spec)
    assert (c.center_index == a.center_index) == (d_idx == a_idx)
    assert (c.center_index == a.center_index) <= np.array_equal(c.mask, a.mask)


@settings(max_examples=60, deadline=None)
@given(zs, st.floats(0, 1), st.floats(0, 1))
def test_roi_p_grows_as_infeasible_z_moves_away(z, d1, d2):
    z = np.asarray(z)
    z2 = z - [d1, d2]
    sample = S[::10]
    if is_feasible(z, sample) or is_feasible(z2, sample):
        return
    small = roi_p(sample, z).mask
    large = roi_p(sample, z2).mask
    assert np.all(large[small])
