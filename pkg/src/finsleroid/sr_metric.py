"""Relativistic (pseudo-Euclidean signature) member of the family: the
metric function F_SR, its Hamiltonian H_SR and the hyperboloid landmarks."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Tuple

import numpy as np

from .errors import ConeError, DomainError
from .numerics import minkowski_square
from .pd_metric import as_vector, split, unit_scaled

FORWARD = "forward"
BACKWARD = "backward"
MIXED = "mixed"
CONE = "cone"


@dataclass(frozen=True)
class SrParams:
    g: float
    h: float
    g_plus: float
    g_minus: float
    g_up_plus: float
    g_up_minus: float
    G_plus: float
    G_minus: float
    G_up_plus: float
    G_up_minus: float
    dim: int = 4


class SrLandmarks(NamedTuple):
    """Equatorial radius ``c``, turning point ``(s, z)`` of the hyperboloid."""

    c: float
    z: float
    s: float


def make_sr_params(g: float, dim: int = 4) -> SrParams:
    g = float(g)
    if not math.isfinite(g):
        raise DomainError(f"g must be finite, got {g}")
    if int(dim) != dim or dim < 2:
        raise DomainError(f"dimension must be an integer >= 2, got dim = {dim}")
    h = math.sqrt(1.0 + 0.25 * g * g)
    gp = -0.5 * g + h
    gm = -0.5 * g - h
    gup = 0.5 * g + h
    gum = 0.5 * g - h
    return SrParams(
        g=g, h=h,
        g_plus=gp, g_minus=gm,
        g_up_plus=gup, g_up_minus=gum,
        G_plus=gp / h, G_minus=gm / h,
        G_up_plus=gup / h, G_up_minus=gum / h,
        dim=int(dim),
    )


def _factors(p, t, rho):
    return t + p.g_minus * rho, t + p.g_plus * rho


def _co_factors(p, t, rho):
    return t - rho / p.g_up_plus, t - rho / p.g_up_minus


def _classify(a, b):
    if a == 0.0 or b == 0.0:
        return CONE
    if a > 0 and b > 0:
        return FORWARD
    if a < 0 and b < 0:
        return BACKWARD
    return MIXED


def sector(p: SrParams, v) -> str:
    """Which region the vector lies in relative to the two cone factors."""
    t, _, rho = split(as_vector(p, v))
    return _classify(*_factors(p, t, rho))


def co_sector(p: SrParams, c) -> str:
    t, _, rho = split(as_vector(p, c))
    return _classify(*_co_factors(p, t, rho))


def b_sr(p: SrParams, v) -> float:
    """``(T + g_- |R|)(T + g_+ |R|) = T^2 - g|R|T - |R|^2``."""
    t, x, rho = split(as_vector(p, v))
    return minkowski_square(t, x) - p.g * rho * t


def _b_co(p, t, x, rho):
    # (T^ - |R^|/g^+)(T^ - |R^|/g^-) = T^2 + g|R^|T^ - |R^|^2
    return minkowski_square(t, x) + p.g * rho * t


def f_sr(p: SrParams, v) -> float:
    """``|T + g_-|R||^(G_+/2) * |T + g_+|R||^(-G_-/2)``.

    Both exponents are positive, so the value is 0 on the cone; use
    :func:`sector` to tell cone points apart.
    """
    m, u = unit_scaled(as_vector(p, v))
    t, x, rho = split(u)
    a, b = _factors(p, t, rho)
    # G_+ = 1 - g/2h and -G_- = 1 + g/2h, so the product splits into
    # sqrt|B_SR| times a ratio factor that is exactly 1 at g = 0
    if a == 0.0 or b == 0.0:
        return 0.0
    bsr = minkowski_square(t, x) - p.g * rho * t
    return m * math.sqrt(abs(bsr)) * (abs(b) / abs(a)) ** (0.25 * p.g / p.h)


def h_sr(p: SrParams, c) -> float:
    """``|T^ - |R^|/g^+|^(G^+/2) * |T^ - |R^|/g^-|^(-G^-/2)``."""
    m, u = unit_scaled(as_vector(p, c))
    t, xi, rho = split(u)
    a, b = _co_factors(p, t, rho)
    if a == 0.0 or b == 0.0:
        return 0.0
    return m * math.sqrt(abs(_b_co(p, t, xi, rho))) * (abs(a) / abs(b)) ** (0.25 * p.g / p.h)


def sr_landmarks(p: SrParams) -> SrLandmarks:
    c = (-p.g_minus) ** (-0.5 * p.G_plus) * p.g_plus ** (0.5 * p.G_minus)
    z = p.g_plus ** (-0.5 * p.G_plus) * (-p.g_minus) ** (0.5 * p.G_minus)
    return SrLandmarks(c=c, z=z, s=p.g * z)


def sr_profile_derivatives(p: SrParams, v, tol: float = 1e-8) -> Tuple[float, float]:
    """``(dT/d|R|, d^2T/d|R|^2)`` along ``F_SR = 1``."""
    v = as_vector(p, v)
    fv = f_sr(p, v)
    if abs(fv - 1.0) > tol:
        raise DomainError(f"point is not on the hyperboloid (F_SR = {fv!r})")
    t, _, rho = split(v)
    d = t - p.g * rho
    if d == 0.0:
        raise DomainError("T = g|R|: turning point, where d|R|/dT = 0 and T(|R|) is vertical")
    return rho / d, b_sr(p, v) / d**3


def sr_inverse_profile_derivatives(p: SrParams, v, tol: float = 1e-8) -> Tuple[float, float]:
    """``(d|R|/dT, d^2|R|/dT^2)`` along ``F_SR = 1``; needs ``|R| > 0``."""
    v = as_vector(p, v)
    fv = f_sr(p, v)
    if abs(fv - 1.0) > tol:
        raise DomainError(f"point is not on the hyperboloid (F_SR = {fv!r})")
    t, _, rho = split(v)
    if rho == 0.0:
        raise DomainError("|R| = 0: the profile |R|(T) is singular on the T-axis")
    return (t - p.g * rho) / rho, b_sr(p, v) / rho**3


def _scale_onto(value, u, sec, wanted, names):
    if sec == CONE:
        raise ConeError(f"direction lies on the light cone ({names})", sector=CONE)
    if wanted != "any" and sec != wanted:
        raise ConeError(f"direction lies in the {sec} sector, not {wanted} ({names})", sector=sec)
    return u / value


def hyperboloid_point(p: SrParams, u, sector_name: str = FORWARD) -> np.ndarray:
    """Radially rescale ``u`` onto ``F_SR = 1``.

    By default ``u`` must lie in the forward sector; pass ``sector_name="any"``
    (or an explicit sector) to scale off-cone directions elsewhere.
    """
    u = as_vector(p, u)
    t, _, rho = split(u)
    a, b = _factors(p, t, rho)
    sec = _classify(a, b)
    names = f"T + g_-|R| = {a:.17g}, T + g_+|R| = {b:.17g}"
    return _scale_onto(f_sr(p, u), u, sec, sector_name, names)


def co_hyperboloid_point(p: SrParams, c, sector_name: str = FORWARD) -> np.ndarray:
    c = as_vector(p, c)
    t, _, rho = split(c)
    a, b = _co_factors(p, t, rho)
    sec = _classify(a, b)
    names = f"T^ - |R^|/g^+ = {a:.17g}, T^ - |R^|/g^- = {b:.17g}"
    return _scale_onto(h_sr(p, c), c, sec, sector_name, names)
