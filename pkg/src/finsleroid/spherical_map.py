"""The spherical map: a homogeneous diffeomorphism carrying the Finsleroid
onto the Euclidean sphere of radius ``r(g)``, its inverse, its Jacobian and
the quasi-Euclidean tensor that the Finsler metric tensor pulls back from."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .pd_metric import PdParams, as_vector, split


@dataclass(frozen=True)
class QuasiEuclideanTensor:
    """Rank-one perturbations of the identity along the unit vector ``l``."""

    n_lower: np.ndarray
    n_upper: np.ndarray
    l: np.ndarray


def sphere_norm(s) -> float:
    s = np.asarray(s, dtype=float)
    return math.sqrt(float(s @ s))


def _j(p, t, rho):
    return math.exp(0.5 * p.G * math.atan2(2.0 * p.h * t, 2.0 * rho + p.g * t))


def tau(p: PdParams, v) -> np.ndarray:
    v = as_vector(p, v)
    t, x, rho = split(v)
    if t == 0.0 and rho == 0.0:
        raise DomainError("the spherical map is undefined at the zero vector")
    j = _j(p, t, rho)
    out = np.empty_like(v)
    out[0] = (t + 0.5 * p.g * rho) * j * p.r
    out[1:] = x * j
    return out


def i_tilde(p: PdParams, s) -> float:
    """Image-side quantity equal to ``T j`` at the preimage."""
    s = as_vector(p, s)
    return p.h * s[0] - 0.5 * p.g * math.sqrt(float(s[1:] @ s[1:]))


def j_tilde(p: PdParams, s) -> float:
    """The j-factor of the preimage, expressed through image coordinates.

    ``j`` is invariant under positive rescaling of ``(T, |R|)``, and the image
    supplies ``(T j, |R| j)``; the two-argument arctangent therefore needs no
    division by ``I~`` and stays finite where ``I~ = 0``.
    """
    s = as_vector(p, s)
    i = i_tilde(p, s)
    rho_s = math.sqrt(float(s[1:] @ s[1:]))
    if i == 0.0 and rho_s == 0.0:
        raise DomainError("j~ is undefined at the zero image")
    return _j(p, i, rho_s)


def lambda_inv(p: PdParams, s) -> np.ndarray:
    s = as_vector(p, s)
    if not np.any(s):
        raise DomainError("the inverse map is undefined at the zero image")
    jt = j_tilde(p, s)
    out = np.empty_like(s)
    out[0] = i_tilde(p, s) / jt
    out[1:] = s[1:] / jt
    return out


def tau_jacobian(p: PdParams, v) -> np.ndarray:
    """``J[q, p] = d tau^q / d R^p`` in closed form.

    Written in ``(T, |R|)`` rather than ``w`` so that both ``T = 0`` and the
    T-axis ``|R| = 0`` need no special casing: every ``R^a R^b / |R|``
    term tends to zero there.
    """
    v = as_vector(p, v)
    t, x, rho = split(v)
    if t == 0.0 and rho == 0.0:
        raise DomainError("the Jacobian is undefined at the zero vector")
    g, r = p.g, p.r
    b = float(x @ x) + g * rho * t + t * t
    j = _j(p, t, rho)
    n = v.size
    jac = np.empty((n, n))
    jac[0, 0] = r * j * (1.0 + 0.5 * g * rho * (t + 0.5 * g * rho) / b)
    jac[0, 1:] = 0.5 * g * r * j * x * (rho + 0.5 * g * t) / b
    jac[1:, 0] = 0.5 * g * j * x * rho / b
    outer = np.outer(x, x) / rho if rho > 0.0 else np.zeros((n - 1, n - 1))
    jac[1:, 1:] = j * np.eye(n - 1) - 0.5 * g * j * t * outer / b
    return jac


def quasi_euclidean(p: PdParams, s) -> QuasiEuclideanTensor:
    s = as_vector(p, s)
    norm = sphere_norm(s)
    if norm == 0.0:
        raise DomainError("the quasi-Euclidean tensor is undefined at the zero image")
    l = s / norm
    ll = np.outer(l, l)
    eye = np.eye(s.size)
    return QuasiEuclideanTensor(
        n_lower=eye - 0.25 * p.g * p.g * ll,
        n_upper=eye + 0.25 * p.G * p.G * ll,
        l=l,
    )


def pullback_metric(p: PdParams, v) -> np.ndarray:
    """``g_pq = n_rs J^r_p J^s_q`` with ``n`` evaluated at the image of ``v``."""
    v = as_vector(p, v)
    jac = tau_jacobian(p, v)
    n = quasi_euclidean(p, tau(p, v)).n_lower
    m = jac.T @ n @ jac
    return 0.5 * (m + m.T)
