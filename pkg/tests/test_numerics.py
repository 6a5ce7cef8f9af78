import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from finsleroid.errors import ConvergenceError, DomainError, NonFiniteEvaluation
from finsleroid.numerics import (
    DiffConfig,
    RootConfig,
    derivative_fd,
    eigvals_sym,
    grad_fd,
    hessian_fd,
    jacobian_fd,
    min_eigen_sym,
    minkowski_square,
    newton_scalar,
)


def test_derivative_of_exp():
    assert derivative_fd(math.exp, 0.3) == pytest.approx(math.exp(0.3), rel=1e-11)
    assert derivative_fd(math.exp, 0.3, order=2) == pytest.approx(math.exp(0.3), rel=1e-8)


def test_derivative_rejects_bad_order():
    with pytest.raises(DomainError):
        derivative_fd(math.sin, 0.0, order=3)


def test_richardson_improves_accuracy():
    plain = derivative_fd(math.sin, 1.0, cfg=DiffConfig(base_step=1e-2, richardson_levels=0))
    extrap = derivative_fd(math.sin, 1.0, cfg=DiffConfig(base_step=1e-2, richardson_levels=2))
    assert abs(extrap - math.cos(1.0)) < abs(plain - math.cos(1.0)) / 1e4


def test_step_scales_with_vector():
    cfg = DiffConfig(base_step=1e-4)
    assert cfg.step_for(np.array([0.1, 0.2])) == 1e-4
    assert cfg.step_for(np.array([-50.0, 2.0])) == pytest.approx(5e-3)


@pytest.mark.parametrize("bad", [dict(base_step=0.0), dict(richardson_levels=-1)])
def test_diffconfig_validation(bad):
    with pytest.raises(DomainError):
        DiffConfig(**bad)


def test_gradient_and_hessian_of_quadratic():
    a = np.array([[3.0, 1.0, 0.0], [1.0, 2.0, 0.5], [0.0, 0.5, 1.0]])
    f = lambda v: 0.5 * v @ a @ v
    v = np.array([0.3, -1.2, 2.0])
    assert np.allclose(grad_fd(f, v), a @ v, atol=1e-9)
    h = hessian_fd(f, v)
    assert np.allclose(h, a, atol=1e-7)
    assert np.array_equal(h, h.T)


def test_jacobian_of_linear_map():
    m = np.array([[1.0, 2.0], [-3.0, 0.5]])
    assert np.allclose(jacobian_fd(lambda v: m @ v, np.array([1.0, 1.0])), m, atol=1e-9)


def test_nonfinite_probe_raises():
    with pytest.raises(NonFiniteEvaluation) as info:
        grad_fd(lambda v: 1.0 / v[0] if v[0] > 0 else math.inf, np.array([1e-6, 0.0]))
    assert info.value.point is not None


def test_newton_plain_and_bracketed():
    f = lambda x: x**3 - 2.0
    assert newton_scalar(f, 1.0) == pytest.approx(2 ** (1 / 3), abs=1e-12)
    root = newton_scalar(f, 100.0, RootConfig(bracket=(0.0, 3.0)), fprime=lambda x: 3 * x * x)
    assert root == pytest.approx(2 ** (1 / 3), abs=1e-12)


def test_newton_bracket_saves_bad_derivative():
    # arctan has a flat derivative far out; plain Newton overshoots and diverges
    f = math.atan
    root = newton_scalar(f, 5.0, RootConfig(bracket=(-10.0, 10.0)), fprime=lambda x: 1 / (1 + x * x))
    assert abs(root) < 1e-12


def test_newton_errors():
    with pytest.raises(ConvergenceError):
        newton_scalar(lambda x: x * x + 1.0, 0.5, RootConfig(bracket=(0.0, 1.0)))
    with pytest.raises(ConvergenceError) as info:
        newton_scalar(lambda x: x * x + 1.0, 0.5, RootConfig(max_iter=5))
    assert info.value.last is not None


def test_eigvals_match_known_spectrum():
    q, _ = np.linalg.qr(np.random.default_rng(1).standard_normal((5, 5)))
    spec = np.array([-2.0, 1e-9, 0.5, 3.0, 10.0])
    m = q @ np.diag(spec) @ q.T
    m = 0.5 * (m + m.T)
    assert np.allclose(eigvals_sym(m), spec, atol=1e-12)
    assert min_eigen_sym(m) == pytest.approx(-2.0, abs=1e-12)


def test_eigvals_rejects_asymmetric():
    with pytest.raises(DomainError):
        eigvals_sym(np.array([[1.0, 2.0], [0.0, 1.0]]))


def test_eigvals_handles_widely_scaled_entries():
    m = np.array([[1e300, 1e-10], [1e-10, 1.0]])
    assert np.allclose(eigvals_sym(m), [1.0, 1e300], rtol=1e-12)


def test_minkowski_square_next_to_cone():
    t = 1.0 + 2.0**-40
    x = [1.0]
    assert minkowski_square(t, x) == (t - 1.0) * (t + 1.0)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.floats(-1e3, 1e3), min_size=2, max_size=2),
       st.lists(st.floats(-1e3, 1e3), min_size=2, max_size=2))
def test_eigvals_agree_with_numpy(diag, off):
    m = np.array([[diag[0], off[0], off[1]], [off[0], diag[1], 0.0], [off[1], 0.0, 1.0]])
    assert np.allclose(eigvals_sym(m), np.linalg.eigvalsh(m), atol=1e-9 * max(1.0, np.abs(m).max()))
