"""Hamiltonian function of the positive-definite family, its generating
functions, the w <-> p correspondence and the Co-Finsleroid landmarks.

``hamiltonian_h`` is the closed form ``sqrt(B^) * j^``.  It coincides with
``K`` at ``-g`` pointwise, but it is *not* normalised as the exact Legendre
dual of ``K``: ``H(grad K^2/2) = K / dual_normalization(g)`` with the
constant ``dual_normalization(g) = exp(G atan(G/2))``.  ``legendre_h`` carries
that constant and is the exact conjugate.
"""

from __future__ import annotations

import math
from typing import NamedTuple, Tuple

import numpy as np

from .errors import DomainError
from .pd_metric import PdParams, as_vector, make_pd_params, pd_landmarks, split, unit_scaled


class CoLandmarks(NamedTuple):
    """T^-intercepts of the figuratrix and its apex ``(f_hat, k_hat)``.

    ``t1_co = -t1(g) > 0`` and ``t2_co = -t2(g) < 0``.
    """

    t1_co: float
    t2_co: float
    f_hat: float
    k_hat: float


def _psi(p, t, rho):
    return math.atan2(2.0 * p.h * t, 2.0 * rho - p.g * t)


def b_hat(p: PdParams, c) -> float:
    t, xi, rho = split(as_vector(p, c))
    return float(xi @ xi) - p.g * t * rho + t * t


def j_hat(p: PdParams, c) -> float:
    t, _, rho = split(as_vector(p, c))
    if t == 0.0 and rho == 0.0:
        raise DomainError("j^ is undefined at the zero covector")
    return math.exp(-0.5 * p.G * _psi(p, t, rho))


def j_hat_piecewise(p: PdParams, c) -> float:
    """Branchwise one-argument-arctangent form of :func:`j_hat`."""
    t, _, rho = split(as_vector(p, c))
    if t == 0.0 and rho == 0.0:
        raise DomainError("j^ is undefined at the zero covector")
    if t == 0.0:
        return 1.0
    a = math.atan((2.0 * rho - p.g * t) / (2.0 * p.h * t))
    if t > 0:
        return math.exp(0.5 * p.G * (-0.5 * math.pi + a))
    return math.exp(0.5 * p.G * (0.5 * math.pi + a))


def hamiltonian_h(p: PdParams, c) -> float:
    m, u = unit_scaled(as_vector(p, c))
    if m == 0.0:
        return 0.0
    t, xi, rho = split(u)
    return m * math.sqrt(float(xi @ xi) - p.g * t * rho + t * t) * math.exp(-0.5 * p.G * _psi(p, t, rho))


def dual_normalization(p: PdParams) -> float:
    return math.exp(p.G * math.atan(0.5 * p.G))


def legendre_h(p: PdParams, c) -> float:
    """Exact Legendre conjugate of ``K``: ``legendre_h(grad K^2/2 (v)) = K(v)``."""
    return dual_normalization(p) * hamiltonian_h(p, c)


def figuratrix_point(p: PdParams, c) -> np.ndarray:
    c = as_vector(p, c)
    hv = hamiltonian_h(p, c)
    if hv == 0.0:
        raise DomainError("cannot project the zero covector onto the figuratrix")
    return c / hv


# generating functions of p = |R^| / T^


def gen_q_hat(p: PdParams, pv: float) -> float:
    return 1.0 - p.g * pv + pv * pv


def gen_j_hat(p: PdParams, pv: float, sign: int = 1) -> float:
    s = 1.0 if sign >= 0 else -1.0
    return math.exp(-0.5 * p.G * math.atan2(2.0 * p.h * s, s * (2.0 * pv - p.g)))


def gen_w(p: PdParams, pv: float, sign: int = 1) -> float:
    """``W(p)`` with ``H(T^, R^) = |T^| W(|R^|/T^)``."""
    return math.sqrt(gen_q_hat(p, pv)) * gen_j_hat(p, pv, sign)


def gen_w_prime(p: PdParams, pv: float, sign: int = 1) -> float:
    return pv * gen_w(p, pv, sign) / gen_q_hat(p, pv)


def gen_w_second(p: PdParams, pv: float, sign: int = 1) -> float:
    q = gen_q_hat(p, pv)
    return gen_w(p, pv, sign) / (q * q)


def gen_j_hat_prime(p: PdParams, pv: float, sign: int = 1) -> float:
    return 0.5 * p.g * gen_j_hat(p, pv, sign) / gen_q_hat(p, pv)


def w_to_p(p: PdParams, w: float) -> float:
    d = 1.0 + p.g * w
    if d == 0.0:
        raise DomainError(f"w = {w} is the pole 1 + g w = 0 (w = {-1.0 / p.g})")
    return w / d


def p_to_w(p: PdParams, pv: float) -> float:
    d = 1.0 - p.g * pv
    if d == 0.0:
        raise DomainError(f"p = {pv} is the pole 1 - g p = 0 (p = {1.0 / p.g})")
    return pv / d


def contravariant_from_momenta(p: PdParams, c) -> np.ndarray:
    """Gradient of ``H^2 / 2``: ``R^a = R_a H^2/B^``, ``R^0 = (T^ - g|R^|) H^2/B^``.

    On ``T^ > 0`` this is ``R^a = p^a W H/Q^``, ``R^0 = (1 - g p) W H/Q^``.
    """
    c = as_vector(p, c)
    t, xi, rho = split(c)
    if t == 0.0 and rho == 0.0:
        raise DomainError("contravariant components are undefined at the zero covector")
    bh = float(xi @ xi) - p.g * t * rho + t * t
    h2 = hamiltonian_h(p, c) ** 2
    out = np.empty_like(c)
    out[0] = (t - p.g * rho) * h2 / bh
    out[1:] = xi * h2 / bh
    return out


def inverse_legendre(p: PdParams, c) -> np.ndarray:
    """Gradient of ``legendre_h^2 / 2``; inverts ``covariant_momenta`` exactly."""
    return dual_normalization(p) ** 2 * contravariant_from_momenta(p, c)


def co_landmarks(p: PdParams) -> CoLandmarks:
    lm = pd_landmarks(p)
    mirrored = pd_landmarks(make_pd_params(-p.g, p.dim))
    return CoLandmarks(t1_co=-lm.t1, t2_co=-lm.t2, f_hat=mirrored.f, k_hat=mirrored.k)


def co_profile_derivatives(p: PdParams, c, tol: float = 1e-8) -> Tuple[float, float]:
    """``(dT^/d|R^|, d^2T^/d|R^|^2)`` along the figuratrix."""
    c = as_vector(p, c)
    hv = hamiltonian_h(p, c)
    if abs(hv - 1.0) > tol:
        raise DomainError(f"covector is not on the figuratrix (H = {hv!r})")
    t, xi, rho = split(c)
    d = t - p.g * rho
    if d == 0.0:
        raise DomainError("T^ - g|R^| = 0: apex of the figuratrix, the profile T^(|R^|) is vertical")
    bh = float(xi @ xi) - p.g * t * rho + t * t
    return -rho / d, -bh / d**3
