import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles as orc
from finsleroid import pd_metric as pd
from finsleroid.errors import DomainError
from finsleroid.numerics import grad_fd

GRID = (-1.9, -1.0, -0.5, -0.1, 0.0, 0.1, 0.5, 1.0, 1.9)


def ev(t, rho, dim=4):
    return pd.event(t, np.r_[rho, np.zeros(dim - 2)])


@pytest.mark.parametrize("g", [-2.0, 2.0, 2.5, math.nan, math.inf])
def test_params_reject_out_of_range(g):
    with pytest.raises(DomainError):
        pd.make_pd_params(g)


def test_params_constants():
    p = pd.make_pd_params(1.0)
    assert p.h == pytest.approx(math.sqrt(0.75))
    assert p.r * p.h == pytest.approx(1.0)
    assert p.G == pytest.approx(1.0 / math.sqrt(0.75))
    assert p.discriminant == pytest.approx(-3.0)


def test_dimension_checks():
    with pytest.raises(DomainError):
        pd.make_pd_params(0.5, dim=1)
    p = pd.make_pd_params(0.5)
    with pytest.raises(DomainError):
        pd.metric_k(p, [1.0, 0.0, 0.0])


def test_examples():
    assert pd.metric_k(pd.make_pd_params(0.0), [3, 4, 0, 0]) == 5.0
    assert pd.metric_k(pd.make_pd_params(1.0), [0, 0.6, 0.8, 0]) == pytest.approx(1.0, abs=1e-15)
    assert pd.metric_k(pd.make_pd_params(1.0), np.zeros(4)) == 0.0


@pytest.mark.parametrize("g", GRID)
def test_k_matches_branchwise_reference(g, rng):
    p = pd.make_pd_params(g)
    for v in rng.standard_normal((50, 4)):
        ref = orc.k_ref(g, v[0], math.sqrt(v[1:] @ v[1:]))
        assert orc.close(pd.metric_k(p, v), ref, 1e-13)


def test_unified_j_stays_finite_near_t0():
    p = pd.make_pd_params(1.5)
    for t in (1e-300, -1e-300, 1e-17, -1e-17):
        assert pd.j_factor(p, ev(t, 1.0)) == pytest.approx(1.0, abs=1e-15)
    assert pd.j_factor_piecewise(p, ev(0.0, 1.0)) == 1.0


@pytest.mark.parametrize("g", [-1.9, -0.5, 0.5, 1.9])
def test_parities(g, rng):
    p, pm = pd.make_pd_params(g), pd.make_pd_params(-g)
    for v in rng.standard_normal((30, 4)):
        flip_t = v * np.r_[-1.0, 1, 1, 1]
        assert pd.metric_k(pm, flip_t) == pytest.approx(pd.metric_k(p, v), rel=1e-13)
        assert pd.metric_k(p, v * np.r_[1.0, -1, -1, -1]) == pytest.approx(pd.metric_k(p, v), rel=1e-13)
    v = ev(1.0, 1.0)
    assert abs(pd.metric_k(p, v) - pd.metric_k(p, ev(-1.0, 1.0))) > 1e-3


@pytest.mark.parametrize("g", GRID)
def test_landmarks_against_references(g):
    p = pd.make_pd_params(g)
    lm = pd.pd_landmarks(p)
    t1, t2 = orc.intercepts_ref(g)
    f, k = orc.apex_brute(g)
    assert orc.close(lm.t1, t1, 1e-14) and orc.close(lm.t2, t2, 1e-14)
    assert orc.close(lm.f, f, 1e-13) and orc.close(lm.k, k, 1e-13)
    assert lm.t1 < 0 < lm.t2


@pytest.mark.parametrize("g", [0.1, 0.5, 1.0, 1.9])
def test_apex_matches_one_argument_form_for_positive_g(g):
    f, k = orc.apex_ref(g)
    lm = pd.pd_landmarks(pd.make_pd_params(g))
    assert orc.close(lm.k, k, 1e-14) and orc.close(lm.f, f, 1e-14)


def test_landmark_values_at_g1():
    lm = pd.pd_landmarks(pd.make_pd_params(1.0))
    assert lm.t1 == pytest.approx(-3.3508, abs=1e-4)
    assert lm.t2 == pytest.approx(0.5463, abs=1e-4)
    assert lm.k == pytest.approx(1.8305, abs=1e-4)
    assert lm.f == pytest.approx(-1.8305, abs=1e-4)


def test_apex_radius_is_even():
    for g in (0.3, 1.2, 1.9):
        assert pd.apex_radius(pd.make_pd_params(g)) == pytest.approx(pd.apex_radius(pd.make_pd_params(-g)), rel=1e-14)


@pytest.mark.parametrize("g", [-1.5, 0.0, 1.5])
def test_generating_function_against_mpmath(g):
    p = pd.make_pd_params(g)
    for w in (-3.0, -0.4, 0.0, 0.7, 5.0):
        for s in (1, -1):
            assert orc.close(pd.gen_v(p, w, s), orc.v_ref(g, w, s), 1e-13)
            d1 = mp.diff(lambda x: orc.v_ref(g, x, s), w)
            d2 = mp.diff(lambda x: orc.v_ref(g, x, s), w, 2)
            assert orc.close(pd.gen_v_prime(p, w, s), d1, 1e-12)
            assert orc.close(pd.gen_v_second(p, w, s), d2, 1e-12)


@pytest.mark.parametrize("g", GRID)
def test_momenta_are_gradient(g, rng):
    p = pd.make_pd_params(g)
    for v in rng.standard_normal((20, 4)):
        fd = grad_fd(lambda u: 0.5 * pd.metric_k(p, u) ** 2, v)
        assert np.allclose(pd.covariant_momenta(p, v), fd, rtol=1e-8, atol=1e-9)
        assert np.allclose(pd.covariant_momenta_w(p, v), pd.covariant_momenta(p, v), rtol=1e-12, atol=1e-13)


def test_momenta_on_t_axis_and_equator():
    p = pd.make_pd_params(0.8)
    mom = pd.covariant_momenta(p, ev(0.0, 2.0))
    assert np.all(np.isfinite(mom))
    with pytest.raises(DomainError):
        pd.covariant_momenta_w(p, ev(0.0, 2.0))
    with pytest.raises(DomainError):
        pd.covariant_momenta(p, np.zeros(4))


@pytest.mark.parametrize("g", [-1.9, -0.5, 0.5, 1.9])
def test_metric_tensor_backends_agree(g, rng):
    p = pd.make_pd_params(g)
    for v in rng.standard_normal((10, 4)):
        a = pd.metric_tensor(p, v)
        b = pd.metric_tensor(p, v, backend="hessian")
        assert np.allclose(a, b, atol=1e-6)
    with pytest.raises(DomainError):
        pd.metric_tensor(p, rng.standard_normal(4), backend="magic")


def test_profile_derivatives():
    p = pd.make_pd_params(1.0)
    lm = pd.pd_landmarks(p)
    slope, curv = pd.profile_derivatives(p, ev(lm.t2, 0.0))
    assert slope == 0.0 and curv < 0
    slope, _ = pd.profile_derivatives(p, ev(0.0, 1.0))
    assert slope == pytest.approx(-1.0 / p.g)
    with pytest.raises(DomainError, match="apex"):
        pd.profile_derivatives(p, ev(lm.f, lm.k))
    with pytest.raises(DomainError):
        pd.profile_derivatives(p, ev(0.0, 2.0))
    dr, _ = pd.inverse_profile_derivatives(p, ev(lm.f, lm.k))
    assert abs(dr) < 1e-14


@pytest.mark.parametrize("g", [-1.9, -1.0, 0.0, 1.0, 1.9])
def test_solve_profile_t(g):
    p = pd.make_pd_params(g)
    lm = pd.pd_landmarks(p)
    for rho in (0.0, 0.3 * lm.k, 0.9 * lm.k):
        for upper in (True, False):
            t = pd.solve_profile_t(p, rho, upper=upper)
            assert pd.metric_k(p, ev(t, rho)) == pytest.approx(1.0, abs=1e-12)
            assert (t + g * rho > 0) == upper
    with pytest.raises(DomainError):
        pd.solve_profile_t(p, 1.01 * lm.k)


@settings(max_examples=150, deadline=None)
@given(st.floats(-1.95, 1.95), st.lists(st.floats(-10, 10), min_size=4, max_size=4), st.floats(0.01, 100))
def test_homogeneity_property(g, comps, b):
    p = pd.make_pd_params(g)
    v = np.array(comps)
    if not np.any(v):
        return
    assert pd.metric_k(p, b * v) == pytest.approx(b * pd.metric_k(p, v), rel=1e-12)
    assert pd.metric_k(p, v) > 0
