"""Positive-definite Finsleroid metric function and its landmark quantities.

Vectors are plain float arrays ``(T, R^1, ..., R^{N-1})`` with the
distinguished T-component first.  All functions are pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Tuple

import numpy as np

from .errors import DomainError
from .numerics import DiffConfig, RootConfig, hessian_fd, newton_scalar


@dataclass(frozen=True)
class PdParams:
    """Anisotropy parameter ``g`` in (-2, 2) and the constants derived from it."""

    g: float
    h: float
    r: float
    G: float
    dim: int = 4

    @property
    def discriminant(self) -> float:
        return -4.0 * self.h * self.h


def make_pd_params(g: float, dim: int = 4) -> PdParams:
    g = float(g)
    if not math.isfinite(g) or not -2.0 < g < 2.0:
        raise DomainError(f"g must satisfy -2 < g < 2, got g = {g}")
    if int(dim) != dim or dim < 2:
        raise DomainError(f"dimension must be an integer >= 2, got dim = {dim}")
    h = math.sqrt(1.0 - 0.25 * g * g)
    return PdParams(g=g, h=h, r=1.0 / h, G=g / h, dim=int(dim))


class PdLandmarks(NamedTuple):
    """Axis intercepts ``t1 < 0 < t2`` and the apex ``(f, k)`` where the
    indicatrix reaches its largest spatial radius ``k``."""

    t1: float
    t2: float
    f: float
    k: float


def event(t: float, x) -> np.ndarray:
    """Assemble ``(T, x...)`` into a single vector."""
    return np.concatenate(([float(t)], np.asarray(x, dtype=float).ravel()))


def as_vector(p, v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if v.ndim != 1 or v.size != p.dim:
        raise DomainError(f"expected a vector of length {p.dim}, got shape {v.shape}")
    return v


def split(v) -> Tuple[float, np.ndarray, float]:
    """Return ``(T, spatial part, |spatial part|)``."""
    x = v[1:]
    return float(v[0]), x, math.hypot(*x)


def unit_scaled(v) -> Tuple[float, np.ndarray]:
    """``(m, v / m)`` with ``m`` the power of two just above ``max |v_i|``,
    so the division is exact and squares neither underflow nor overflow;
    ``m = 0`` for the zero vector."""
    big = float(np.max(np.abs(v))) if v.size else 0.0
    if big == 0.0:
        return 0.0, v
    m = math.ldexp(1.0, math.frexp(big)[1])
    return m, v / m


def _phi(h, g, t, rho):
    # Unified angle: reproduces the three branchwise j-definitions and stays
    # finite as T -> 0.
    return math.atan2(2.0 * h * t, 2.0 * rho + g * t)


def b_form(p: PdParams, v) -> float:
    """``|R|^2 + g |R| T + T^2``; positive away from the origin."""
    t, x, rho = split(as_vector(p, v))
    return float(x @ x) + p.g * rho * t + t * t


def _b(p, t, x, rho):
    return float(x @ x) + p.g * rho * t + t * t


def j_factor(p: PdParams, v) -> float:
    t, _, rho = split(as_vector(p, v))
    if t == 0.0 and rho == 0.0:
        raise DomainError("j-factor is undefined at the zero vector")
    return math.exp(0.5 * p.G * _phi(p.h, p.g, t, rho))


def j_factor_piecewise(p: PdParams, v) -> float:
    """The j-factor written branch by branch with a one-argument arctangent.

    Kept as an independent reference for :func:`j_factor`; it loses accuracy
    as ``T -> 0``.
    """
    t, _, rho = split(as_vector(p, v))
    if t == 0.0 and rho == 0.0:
        raise DomainError("j-factor is undefined at the zero vector")
    if t == 0.0:
        return 1.0
    a = math.atan((2.0 * rho + p.g * t) / (2.0 * p.h * t))
    if t > 0:
        return math.exp(0.5 * p.G * (0.5 * math.pi - a))
    return math.exp(-0.5 * p.G * (0.5 * math.pi + a))


def metric_k(p: PdParams, v) -> float:
    """Finslerian metric function ``K = sqrt(B) * j``; ``K(0) = 0``."""
    m, u = unit_scaled(as_vector(p, v))
    if m == 0.0:
        return 0.0
    t, x, rho = split(u)
    return m * math.sqrt(_b(p, t, x, rho)) * math.exp(0.5 * p.G * _phi(p.h, p.g, t, rho))


# generating functions of w = |R| / T; ``sign`` selects the T > 0 or T < 0 sheet


def gen_q(p: PdParams, w: float) -> float:
    return 1.0 + p.g * w + w * w


def gen_j(p: PdParams, w: float, sign: int = 1) -> float:
    s = 1.0 if sign >= 0 else -1.0
    return math.exp(0.5 * p.G * math.atan2(2.0 * p.h * s, s * (2.0 * w + p.g)))


def gen_v(p: PdParams, w: float, sign: int = 1) -> float:
    """``V(w)`` with ``K(T, R) = |T| V(|R|/T)``."""
    return math.sqrt(gen_q(p, w)) * gen_j(p, w, sign)


def gen_v_prime(p: PdParams, w: float, sign: int = 1) -> float:
    return w * gen_v(p, w, sign) / gen_q(p, w)


def gen_v_second(p: PdParams, w: float, sign: int = 1) -> float:
    q = gen_q(p, w)
    return gen_v(p, w, sign) / (q * q)


def gen_j_prime(p: PdParams, w: float, sign: int = 1) -> float:
    return -0.5 * p.g * gen_j(p, w, sign) / gen_q(p, w)


def covariant_momenta(p: PdParams, v) -> np.ndarray:
    """Gradient of ``K^2 / 2``.

    Uses ``R_a = R^a K^2/B`` and ``R_0 = (T + g|R|) K^2/B``, which coincides
    with the ``w``-form for ``T > 0`` and needs no division by ``T``.
    """
    v = as_vector(p, v)
    t, x, rho = split(v)
    if t == 0.0 and rho == 0.0:
        raise DomainError("covariant momenta are undefined at the zero vector")
    b = _b(p, t, x, rho)
    k2 = metric_k(p, v) ** 2
    out = np.empty_like(v)
    out[0] = (t + p.g * rho) * k2 / b
    out[1:] = x * k2 / b
    return out


def covariant_momenta_w(p: PdParams, v) -> np.ndarray:
    """Momenta via ``w``: ``R_a = w_a V K / Q``, ``R_0 = (1 + g w) V K / Q``.

    This form is the gradient only on the ``T > 0`` sheet; for ``T < 0``
    it is off by an overall sign, which is applied here.
    """
    v = as_vector(p, v)
    t, x, rho = split(v)
    if t == 0.0:
        raise DomainError("the w-form of the momenta needs T != 0")
    w = rho / t
    sign = 1 if t > 0 else -1
    vv = gen_v(p, w, sign)
    q = gen_q(p, w)
    k = metric_k(p, v)
    out = np.empty_like(v)
    out[0] = (1.0 + p.g * w) * vv * k / q
    out[1:] = (x / t) * vv * k / q
    return sign * out


def metric_tensor(p: PdParams, v, backend: str = "pullback", cfg: Optional[DiffConfig] = None) -> np.ndarray:
    """Finslerian metric tensor ``g_pq = 1/2 d^2 K^2 / dR^p dR^q``.

    ``backend="pullback"`` pulls the quasi-Euclidean tensor back through the
    spherical map (closed form); ``backend="hessian"`` differentiates
    ``K^2/2`` numerically.
    """
    v = as_vector(p, v)
    if not np.any(v):
        raise DomainError("metric tensor is undefined at the zero vector")
    if backend == "pullback":
        from .spherical_map import pullback_metric

        return pullback_metric(p, v)
    if backend == "hessian":
        return hessian_fd(lambda u: 0.5 * metric_k(p, u) ** 2, v, cfg)
    raise DomainError(f"unknown backend {backend!r}")


def apex_radius(p: PdParams) -> float:
    """Largest spatial radius ``k(g)`` of the indicatrix (even in ``g``)."""
    g, h, G = p.g, p.h, p.G
    return math.exp(-0.5 * G * math.atan2(-2.0 * h * g, 2.0 - g * g))


def pd_landmarks(p: PdParams) -> PdLandmarks:
    G = p.G
    common = math.exp(0.5 * G * math.atan(0.5 * G))
    t1 = -math.exp(G * math.pi / 4.0) * common
    t2 = math.exp(-G * math.pi / 4.0) * common
    k = apex_radius(p)
    return PdLandmarks(t1=t1, t2=t2, f=-p.g * k, k=k)


def indicatrix_point(p: PdParams, u) -> np.ndarray:
    """Radially rescale ``u`` onto the unit level set ``K = 1``."""
    u = as_vector(p, u)
    k = metric_k(p, u)
    if k == 0.0:
        raise DomainError("cannot project the zero direction onto the indicatrix")
    return u / k


def _require_unit(value, tol, what):
    if abs(value - 1.0) > tol:
        raise DomainError(f"point is not on the {what} (norm = {value!r})")


def profile_derivatives(p: PdParams, v, tol: float = 1e-8) -> Tuple[float, float]:
    """Slope and curvature ``(dT/d|R|, d^2T/d|R|^2)`` of the indicatrix profile."""
    v = as_vector(p, v)
    _require_unit(metric_k(p, v), tol, "indicatrix")
    t, x, rho = split(v)
    d = t + p.g * rho
    if d == 0.0:
        raise DomainError(
            "T + g|R| = 0: this is the apex, where d|R|/dT = 0 and T(|R|) has a vertical tangent"
        )
    return -rho / d, -_b(p, t, x, rho) / d**3


def inverse_profile_derivatives(p: PdParams, v, tol: float = 1e-8) -> Tuple[float, float]:
    """``(d|R|/dT, d^2|R|/dT^2)`` along the indicatrix; needs ``|R| > 0``."""
    v = as_vector(p, v)
    _require_unit(metric_k(p, v), tol, "indicatrix")
    t, x, rho = split(v)
    if rho == 0.0:
        raise DomainError("|R| = 0: the profile |R|(T) is singular on the T-axis")
    return -(t + p.g * rho) / rho, -_b(p, t, x, rho) / rho**3


def solve_profile_t(p: PdParams, rho: float, upper: bool = True, cfg: RootConfig = RootConfig()) -> float:
    """Solve ``K(T, |R| = rho) = 1`` for ``T`` on the upper or lower branch.

    The two branches are separated by the apex line ``T = -g rho``; only
    ``0 <= rho < k(g)`` has solutions.
    """
    k = apex_radius(p)
    if not 0.0 <= rho < k:
        raise DomainError(f"|R| = {rho} is outside [0, k(g) = {k})")
    x = np.zeros(p.dim - 1)
    x[0] = rho

    def f(t):
        return metric_k(p, event(t, x)) - 1.0

    def fprime(t):
        vv = event(t, x)
        return (t + p.g * rho) * metric_k(p, vv) / _b(p, t, x, rho)

    lm = pd_landmarks(p)
    apex_t = -p.g * rho
    far = lm.t2 if upper else lm.t1
    # K is monotone along each branch, so expand outward until K exceeds 1
    edge = far + (1.0 if upper else -1.0) * max(1.0, abs(far))
    while f(edge) <= 0:
        edge = apex_t + 2.0 * (edge - apex_t)
    bracket = (apex_t, edge)
    return newton_scalar(f, far, RootConfig(tol=cfg.tol, max_iter=cfg.max_iter, bracket=bracket), fprime)
