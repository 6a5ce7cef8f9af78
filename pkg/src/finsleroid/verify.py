"""Verification battery.

Every identity, landmark and convexity property of the four metric
functions is registered here as a named check with a tolerance.  A check is
a generator that, for one value of ``g``, yields ``(residual, point)`` pairs;
the runner sweeps it over a grid of ``g`` values and condenses the results
into a :class:`VerificationReport`.

Inequality checks (positivity of eigenvalues, signs of curvatures) report a
residual that is at most 1 exactly when the inequality holds, so that the
rule "pass iff max_residual <= tolerance" applies uniformly.
"""

from __future__ import annotations

import json
import math
import zlib
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from . import hamiltonian as hm
from . import pd_metric as pd
from . import spherical_map as sm
from . import sr_metric as sr
from .numerics import DiffConfig, RootConfig, derivative_fd, grad_fd, hessian_fd, jacobian_fd, min_eigen_sym, newton_scalar
from .tolerances import DEFAULT as TOL

FAMILIES = ("PD", "SR", "MAP", "DUAL")
DEFAULT_GRID = (-1.9, -1.5, -1.0, -0.5, -0.1, 0.0, 0.1, 0.5, 1.0, 1.5, 1.9)

# Every property the battery must cover; the registry test enforces that
# each tag is carried by at least one check.
REQUIRED_TAGS = (
    "metric-function", "parity", "generating-function", "derivative-rules",
    "covariant-momenta", "equator-radius", "axis-intercepts", "profile-derivatives",
    "slope-limits", "apex", "sphere-identity", "euler-contraction", "jacobian",
    "jacobian-determinant", "quasi-euclidean", "pullback", "legendre",
    "dual-derivative-rules", "contravariant-components", "j-reciprocity",
    "q-relation", "vw-product", "w-p-map", "t-that-relation", "co-equator",
    "co-intercepts", "co-profile", "co-apex", "sr-equator", "sr-axis",
    "sr-profile", "sr-slope-limits", "sr-turning-point",
    "finsleroid-convexity", "spherical-image", "metric-pullback",
    "figuratrix-mirror", "hyperboloid-convexity",
)

Sample = Tuple[float, dict]


@dataclass(frozen=True)
class CheckSpec:
    name: str
    family: str
    tolerance: float
    sampler: str
    tags: Tuple[str, ...]
    fn: Callable[["Context"], Iterable[Sample]] = field(repr=False, compare=False)
    uses_grid: bool = True


@dataclass
class VerificationReport:
    name: str
    family: str
    samples: int
    max_residual: Optional[float]
    tolerance: float
    passed: bool
    worst_case_input: Optional[dict]

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "family": self.family,
            "samples": self.samples,
            "max_residual": self.max_residual,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "worst_case_input": self.worst_case_input,
        }


@dataclass
class Context:
    g: float
    dim: int
    rng: np.random.Generator

    @property
    def pd(self) -> pd.PdParams:
        return pd.make_pd_params(self.g, self.dim)

    @property
    def pd_mirror(self) -> pd.PdParams:
        return pd.make_pd_params(-self.g, self.dim)

    @property
    def sr(self) -> sr.SrParams:
        return sr.make_sr_params(self.g, self.dim)


REGISTRY: List[CheckSpec] = []


def check(name, family, tolerance, sampler, tags, uses_grid=True):
    def register(fn):
        if any(c.name == name for c in REGISTRY):
            raise ValueError(f"duplicate check name {name!r}")
        REGISTRY.append(CheckSpec(name, family, tolerance, sampler, tuple(tags), fn, uses_grid))
        return fn

    return register


# ---------------------------------------------------------------- sampling


def _directions(rng: np.random.Generator, dim: int, count: int) -> List[np.ndarray]:
    eye = np.eye(dim)
    out = [s * eye[i] for i in range(dim) for s in (1.0, -1.0)]
    ring = count // 4 if dim >= 3 else 0
    for k in range(ring):
        a = 2.0 * math.pi * (k + 0.5) / ring
        v = np.zeros(dim)
        v[1], v[2] = math.cos(a), math.sin(a)
        out.append(v)
    for _ in range(count - ring):
        v = rng.standard_normal(dim)
        out.append(v / np.linalg.norm(v))
    return out


def sample_directions(dim: int, count: int, seed: int) -> List[np.ndarray]:
    """Unit vectors: the ``2*dim`` axis directions, an equatorial (T = 0)
    ring of ``count // 4`` points, and uniformly distributed directions
    making up the rest of ``count``.  Deterministic in ``seed``."""
    if dim < 2:
        raise ValueError(f"dim must be >= 2, got {dim}")
    if count < 0:
        raise ValueError(f"count must be >= 0, got {count}")
    return _directions(np.random.default_rng(seed), dim, count)


def _points(ctx: Context, count: int) -> List[np.ndarray]:
    """Directions with log-uniform magnitudes in [e^-1, e]."""
    dirs = _directions(ctx.rng, ctx.dim, count)
    return [d * math.exp(ctx.rng.uniform(-1.0, 1.0)) for d in dirs]


def _rho(v) -> float:
    return math.sqrt(float(v[1:] @ v[1:]))


def _off_axis(v, margin=TOL.axis_exclusion) -> bool:
    return _rho(v) >= margin * np.linalg.norm(v)


def _unit_spatial(rng, dim) -> np.ndarray:
    u = rng.standard_normal(dim - 1)
    return u / np.linalg.norm(u)


def _rotation(rng, n) -> np.ndarray:
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    return q * np.sign(np.diag(r))


def _pt(g, v) -> dict:
    return {"g": float(g), "point": [float(x) for x in np.ravel(v)]}


def _rel(a, b, scale=None) -> float:
    scale = max(abs(b), 1e-300) if scale is None else scale
    return abs(a - b) / scale


def _vrel(a, b) -> float:
    a, b = np.asarray(a, float), np.asarray(b, float)
    return float(np.max(np.abs(a - b)) / max(float(np.max(np.abs(b))), 1e-300))


def _violation(ok: bool) -> float:
    return 0.0 if ok else math.inf


def _floor_ratio(value, floor) -> float:
    return floor / value if value > 0 else math.inf


# ------------------------------------------------------- PD metric function


@check("pd.euclidean_reduction", "PD", TOL.reduction, "1000 directions x log-uniform scale, g = 0",
       ["metric-function"], uses_grid=False)
def _pd_reduction(ctx):
    p0 = pd.make_pd_params(0.0, ctx.dim)
    for v in _points(ctx, 1000):
        exact = math.sqrt(math.fsum(v * v))
        yield _rel(pd.metric_k(p0, v), exact), _pt(0.0, v)
        yield _rel(hm.hamiltonian_h(p0, v), exact), _pt(0.0, v)


@check("pd.homogeneity", "PD", TOL.closed_form, "60 points, scale b = e^U(-3,3)", ["metric-function"])
def _pd_homogeneity(ctx):
    p = ctx.pd
    for v in _points(ctx, 60):
        b = math.exp(ctx.rng.uniform(-3, 3))
        yield _rel(pd.metric_k(p, b * v), b * pd.metric_k(p, v)), _pt(ctx.g, v)


@check("pd.gt_parity", "PD", TOL.closed_form, "60 points", ["parity"])
def _pd_gt_parity(ctx):
    p, q = ctx.pd, ctx.pd_mirror
    for v in _points(ctx, 60):
        flipped = v.copy()
        flipped[0] = -flipped[0]
        yield _rel(pd.metric_k(q, flipped), pd.metric_k(p, v)), _pt(ctx.g, v)


@check("pd.p_parity_rotation", "PD", TOL.closed_form, "60 points, random spatial rotations", ["parity"])
def _pd_p_parity(ctx):
    p = ctx.pd
    for v in _points(ctx, 60):
        k = pd.metric_k(p, v)
        refl = v.copy()
        refl[1:] = -refl[1:]
        rot = v.copy()
        rot[1:] = _rotation(ctx.rng, ctx.dim - 1) @ v[1:]
        yield max(_rel(pd.metric_k(p, refl), k), _rel(pd.metric_k(p, rot), k)), _pt(ctx.g, v)


@check("pd.t_asymmetry_witness", "PD", 0.5, "(T, |R|) = (1, 1), g != 0; residual 1 if |K(-T)-K(T)| <= 1e-6",
       ["metric-function"])
def _pd_asymmetry(ctx):
    if ctx.g == 0.0:
        return
    p = ctx.pd
    v = pd.event(1.0, np.eye(ctx.dim - 1)[0])
    w = v.copy()
    w[0] = -1.0
    gap = abs(pd.metric_k(p, w) - pd.metric_k(p, v))
    yield (0.0 if gap > TOL.asymmetry_witness else 1.0), _pt(ctx.g, v)


@check("pd.j_unified_vs_branchwise", "PD", TOL.closed_form, "60 points incl. the T = 0 ring", ["metric-function"])
def _pd_j(ctx):
    p = ctx.pd
    for v in _points(ctx, 60):
        yield _rel(pd.j_factor(p, v), pd.j_factor_piecewise(p, v)), _pt(ctx.g, v)


@check("pd.generating_function", "PD", TOL.closed_form, "60 points with T != 0", ["generating-function"])
def _pd_genv(ctx):
    p = ctx.pd
    for v in _points(ctx, 60):
        t = v[0]
        if abs(t) < 1e-3 * np.linalg.norm(v):
            continue
        w = _rho(v) / t
        yield _rel(abs(t) * pd.gen_v(p, w, 1 if t > 0 else -1), pd.metric_k(p, v)), _pt(ctx.g, v)


def _derivative_samples(ctx, n=20):
    for _ in range(n):
        yield ctx.rng.uniform(-4.0, 4.0), (1 if ctx.rng.random() < 0.5 else -1)


# Second-derivative oracles: the sixth-order extrapolated stencil with a wide
# step keeps truncation below 1e-9 while rounding stays harmless.
_SECOND = DiffConfig(base_step=TOL.fd_step_second, richardson_levels=2)


@check("pd.generating_derivatives", "PD", TOL.derivative_fd,
       "20 values w ~ U(-4,4) on both T-sheets; Richardson central differences", ["derivative-rules"])
def _pd_gen_derivatives(ctx):
    p = ctx.pd
    for w, s in _derivative_samples(ctx):
        v1 = derivative_fd(lambda x: pd.gen_v(p, x, s), w)
        v2 = derivative_fd(lambda x: pd.gen_v(p, x, s), w, 2, _SECOND)
        j1 = derivative_fd(lambda x: pd.gen_j(p, x, s), w)
        res = max(
            _rel(pd.gen_v_prime(p, w, s), v1, max(1.0, abs(v1))),
            _rel(pd.gen_v_second(p, w, s), v2, max(1.0, abs(v2))),
            _rel(pd.gen_j_prime(p, w, s), j1, max(1.0, abs(j1))),
        )
        yield res, {"g": ctx.g, "w": w, "sheet": s}


@check("pd.momenta_vs_finite_difference", "PD", TOL.derivative_fd, "40 points; Richardson gradient of K^2/2",
       ["covariant-momenta"])
def _pd_momenta_fd(ctx):
    p = ctx.pd
    for v in _points(ctx, 40):
        fd = grad_fd(lambda u: 0.5 * pd.metric_k(p, u) ** 2, v)
        yield _vrel(pd.covariant_momenta(p, v), fd), _pt(ctx.g, v)


@check("pd.momenta_w_form", "PD", TOL.closed_form, "60 points with T > 0", ["covariant-momenta"])
def _pd_momenta_w(ctx):
    p = ctx.pd
    for v in _points(ctx, 60):
        if v[0] < 1e-3 * np.linalg.norm(v):
            continue
        yield _vrel(pd.covariant_momenta_w(p, v), pd.covariant_momenta(p, v)), _pt(ctx.g, v)


@check("pd.euler_identity", "PD", TOL.composed, "60 points; momenta . v = K^2", ["covariant-momenta"])
def _pd_euler(ctx):
    p = ctx.pd
    for v in _points(ctx, 60):
        k2 = pd.metric_k(p, v) ** 2
        yield _rel(float(pd.covariant_momenta(p, v) @ v), k2), _pt(ctx.g, v)


@check("pd.equator_radius", "PD", TOL.closed_form, "30 unit spatial directions at T = 0", ["equator-radius"])
def _pd_equator(ctx):
    p = ctx.pd
    for _ in range(30):
        v = pd.event(0.0, _unit_spatial(ctx.rng, ctx.dim))
        yield abs(pd.metric_k(p, v) - 1.0), _pt(ctx.g, v)


@check("pd.axis_intercepts", "PD", TOL.closed_form, "the two T-axis landmarks", ["axis-intercepts"])
def _pd_axis(ctx):
    p = ctx.pd
    lm = pd.pd_landmarks(p)
    for t in (lm.t1, lm.t2):
        v = pd.event(t, np.zeros(ctx.dim - 1))
        yield abs(pd.metric_k(p, v) - 1.0), _pt(ctx.g, v)
    yield _violation(lm.t1 < 0 < lm.t2), {"g": ctx.g, "t1": lm.t1, "t2": lm.t2}


@check("pd.apex", "PD", TOL.closed_form, "apex (f, k u) for 10 unit spatial u; f = -g k; d|R|/dT = 0",
       ["apex"])
def _pd_apex(ctx):
    p = ctx.pd
    lm = pd.pd_landmarks(p)
    for _ in range(10):
        v = pd.event(lm.f, lm.k * _unit_spatial(ctx.rng, ctx.dim))
        slope = -(lm.f + p.g * lm.k) / lm.k
        yield max(abs(pd.metric_k(p, v) - 1.0), abs(slope), abs(lm.f + p.g * lm.k)), _pt(ctx.g, v)


@check("pd.apex_closed_form_positive_g", "PD", TOL.closed_form,
       "one-argument-arctangent apex radius, g > 0 only (it is not valid for g < 0)", ["apex"])
def _pd_apex_printed(ctx):
    if ctx.g <= 0.0:
        return
    p = ctx.pd
    g, h, G = p.g, p.h, p.G
    k = math.exp(0.5 * G * (0.5 * math.pi - math.atan((2 - g * g) / (2 * g * h))))
    f = -g * k
    lm = pd.pd_landmarks(p)
    yield max(_rel(k, lm.k), _rel(f, lm.f)), {"g": ctx.g}


def _profile_rhos(ctx, p, n):
    k = pd.apex_radius(p)
    return [k * ctx.rng.uniform(0.05, 0.9) for _ in range(n)]


@check("pd.profile_derivatives_fd", "PD", TOL.finite_difference,
       "8 radii in (0.05k, 0.9k) per branch; T(|R|) traced by Newton", ["profile-derivatives"])
def _pd_profile_fd(ctx):
    p = ctx.pd
    for rho in _profile_rhos(ctx, p, 8):
        for upper in (True, False):
            def t_of(r):
                return pd.solve_profile_t(p, r, upper)

            t = t_of(rho)
            v = pd.event(t, np.r_[rho, np.zeros(ctx.dim - 2)])
            slope, curv = pd.profile_derivatives(p, v)
            d1 = derivative_fd(t_of, rho)
            d2 = derivative_fd(t_of, rho, 2, _SECOND)
            yield max(_rel(slope, d1, max(1.0, abs(d1))), _rel(curv, d2, max(1.0, abs(d2)))), _pt(ctx.g, v)


def _indicatrix_samples(ctx, p, n, branch=None):
    """Indicatrix points from random directions; ``branch`` = +1 keeps the
    part above the apex line (T + g|R| > 0), -1 the part below."""
    out = []
    for u in _directions(ctx.rng, ctx.dim, n):
        v = pd.indicatrix_point(p, u)
        side = v[0] + p.g * _rho(v)
        if branch is not None and side * branch <= TOL.pole_exclusion * np.linalg.norm(v):
            continue
        out.append(v)
    return out


@check("pd.profile_concavity", "PD", 1.0,
       "100 indicatrix points above the apex line; residual <= 1 iff d2T/d|R|2 < 0",
       ["profile-derivatives", "finsleroid-convexity"])
def _pd_concavity(ctx):
    p = ctx.pd
    for v in _indicatrix_samples(ctx, p, 100, branch=+1):
        _, curv = pd.profile_derivatives(p, v)
        yield _violation(curv < 0.0), _pt(ctx.g, v)


@check("pd.inverse_profile_concavity", "PD", 1.0,
       "100 indicatrix points with |R| > 0; residual <= 1 iff d2|R|/dT2 < 0",
       ["profile-derivatives", "finsleroid-convexity"])
def _pd_inverse_concavity(ctx):
    p = ctx.pd
    for v in _indicatrix_samples(ctx, p, 100):
        if _rho(v) == 0.0:
            continue
        _, curv = pd.inverse_profile_derivatives(p, v)
        yield _violation(curv < 0.0), _pt(ctx.g, v)


@check("pd.slope_limits", "PD", TOL.closed_form, "slope 0 at (t2, 0); slope -1/g at (0, 1) for g != 0",
       ["slope-limits"])
def _pd_slope_limits(ctx):
    p = ctx.pd
    lm = pd.pd_landmarks(p)
    top = pd.event(lm.t2, np.zeros(ctx.dim - 1))
    yield abs(pd.profile_derivatives(p, top)[0]), _pt(ctx.g, top)
    if ctx.g != 0.0:
        eq = pd.event(0.0, np.eye(ctx.dim - 1)[0])
        slope = pd.profile_derivatives(p, eq)[0]
        yield abs(slope * p.g + 1.0), _pt(ctx.g, eq)


@check("pd.newton_vs_radial_scaling", "PD", TOL.composed,
       "40 directions away from the apex line; Newton-solved T(|R|) vs u/K(u)", ["profile-derivatives"])
def _pd_newton(ctx):
    p = ctx.pd
    for v in _indicatrix_samples(ctx, p, 40):
        side = v[0] + p.g * _rho(v)
        if abs(side) < 0.05 * np.linalg.norm(v):
            continue
        t = pd.solve_profile_t(p, _rho(v), upper=side > 0)
        yield _rel(t, v[0], max(1.0, abs(v[0]))), _pt(ctx.g, v)


@check("pd.metric_tensor_min_eigenvalue", "PD", 1.0,
       "80 indicatrix points; residual = 1e-8 / min eigenvalue (Jacobi)", ["finsleroid-convexity"])
def _pd_convexity(ctx):
    p = ctx.pd
    for v in _indicatrix_samples(ctx, p, 80):
        lam = min_eigen_sym(pd.metric_tensor(p, v))
        yield _floor_ratio(lam, TOL.min_eigenvalue), _pt(ctx.g, v)


# ------------------------------------------------------------- spherical map


@check("map.sphere_identity", "MAP", TOL.composed, "200 points; |tau(v)| = r K(v)",
       ["sphere-identity", "spherical-image"])
def _map_sphere(ctx):
    p = ctx.pd
    for v in _points(ctx, 200):
        yield _rel(sm.sphere_norm(sm.tau(p, v)), p.r * pd.metric_k(p, v)), _pt(ctx.g, v)


@check("map.indicatrix_to_sphere", "MAP", TOL.composed, "200 indicatrix points land on radius r(g)",
       ["spherical-image"])
def _map_image(ctx):
    p = ctx.pd
    for v in _indicatrix_samples(ctx, p, 200):
        yield _rel(sm.sphere_norm(sm.tau(p, v)), p.r), _pt(ctx.g, v)


@check("map.roundtrip", "MAP", TOL.composed, "100 points each way", ["spherical-image"])
def _map_roundtrip(ctx):
    p = ctx.pd
    for v in _points(ctx, 100):
        yield _vrel(sm.lambda_inv(p, sm.tau(p, v)), v), _pt(ctx.g, v)
    for s in _points(ctx, 100):
        yield _vrel(sm.tau(p, sm.lambda_inv(p, s)), s), {"g": ctx.g, "image": [float(x) for x in s]}


@check("map.homogeneity", "MAP", TOL.closed_form, "60 points, b = e^U(-3,3)", ["spherical-image"])
def _map_homogeneity(ctx):
    p = ctx.pd
    for v in _points(ctx, 60):
        b = math.exp(ctx.rng.uniform(-3, 3))
        yield max(_vrel(sm.tau(p, b * v), b * sm.tau(p, v)),
                  _vrel(sm.lambda_inv(p, b * v), b * sm.lambda_inv(p, v))), _pt(ctx.g, v)


@check("map.w_recovery", "MAP", TOL.composed, "60 points with T != 0: w = |R~|/I~ and Q(w) = S^2/(r I~)^2",
       ["spherical-image"])
def _map_w(ctx):
    p = ctx.pd
    for v in _points(ctx, 60):
        t, rho = v[0], _rho(v)
        if abs(t) < 1e-2 * np.linalg.norm(v):
            continue
        s = sm.tau(p, v)
        i = sm.i_tilde(p, s)
        w = rho / t
        q_img = sm.sphere_norm(s) ** 2 / (p.r * i) ** 2
        yield max(_rel(_rho(s) / i, w, max(1.0, abs(w))), _rel(q_img, pd.gen_q(p, w))), _pt(ctx.g, v)


@check("map.euler_contraction", "MAP", TOL.composed, "60 points; J v = tau(v)", ["euler-contraction"])
def _map_euler(ctx):
    p = ctx.pd
    for v in _points(ctx, 60):
        yield _vrel(sm.tau_jacobian(p, v) @ v, sm.tau(p, v)), _pt(ctx.g, v)


@check("map.inverse_euler_contraction", "MAP", TOL.finite_difference,
       "30 off-axis unit images; finite-difference Jacobian of the inverse map", ["euler-contraction"])
def _map_inverse_euler(ctx):
    p = ctx.pd
    for v in _points(ctx, 30):
        if not _off_axis(v):
            continue
        # images can be tiny (|s| ~ 1e-4 at g = 1.9); the identity is
        # scale-free, so probe the unit image where the FD step is resolved
        s = sm.tau(p, v)
        s = s / sm.sphere_norm(s)
        lam = jacobian_fd(lambda u: sm.lambda_inv(p, u), s)
        yield _vrel(lam @ s, sm.lambda_inv(p, s)), _pt(ctx.g, v)


@check("map.jacobian_vs_finite_difference", "MAP", TOL.finite_difference,
       "30 off-axis points", ["jacobian"])
def _map_jacobian(ctx):
    p = ctx.pd
    for v in _points(ctx, 30):
        if not _off_axis(v):
            continue
        fd = jacobian_fd(lambda u: sm.tau(p, u), v)
        yield _vrel(sm.tau_jacobian(p, v), fd), _pt(ctx.g, v)


@check("map.jacobian_determinant", "MAP", TOL.composed, "60 points; det J = r j^N > 0",
       ["jacobian-determinant", "spherical-image"])
def _map_det(ctx):
    p = ctx.pd
    for v in _points(ctx, 60):
        det = float(np.linalg.det(sm.tau_jacobian(p, v)))
        expected = p.r * pd.j_factor(p, v) ** ctx.dim
        yield (_rel(det, expected) if det > 0 else math.inf), _pt(ctx.g, v)


@check("map.auxiliary_relations", "MAP", TOL.composed,
       "60 points with T != 0, |R| > 0: J^a_b w^b and J^a_c J^b_c", ["jacobian"])
def _map_aux(ctx):
    p = ctx.pd
    g = p.g
    for v in _points(ctx, 60):
        t, x, rho = v[0], v[1:], _rho(v)
        if abs(t) < 1e-2 * np.linalg.norm(v) or rho < 1e-2 * np.linalg.norm(v):
            continue
        jac = sm.tau_jacobian(p, v)
        j = pd.j_factor(p, v)
        wa = x / t
        w = rho / t
        q = pd.gen_q(p, w)
        e = 1.0 + 0.5 * g * w
        spatial = jac[1:, 1:]
        first = spatial @ wa
        first_expected = j * wa * (e + w * w) / q
        ww = np.outer(wa, wa)
        second = spatial @ spatial.T
        second_expected = j * j * (np.eye(ctx.dim - 1) - g * ww / (w * q) + 0.25 * g * g * ww / q**2)
        yield max(_vrel(first, first_expected), _vrel(second, second_expected)), _pt(ctx.g, v)


@check("map.quasi_euclidean_rules", "MAP", TOL.closed_form,
       "30 random unit vectors l: mutual inverses, det = h^2, contractions with l", ["quasi-euclidean"])
def _map_quasi(ctx):
    p = ctx.pd
    h2 = p.h * p.h
    eye = np.eye(ctx.dim)
    for s in _points(ctx, 30):
        n = sm.quasi_euclidean(p, s)
        l = n.l
        yield max(
            float(np.max(np.abs(n.n_lower @ n.n_upper - eye))),
            abs(float(np.linalg.det(n.n_lower)) - h2),
            float(np.max(np.abs(n.n_lower @ l - h2 * l))),
            float(np.max(np.abs(n.n_upper @ l - l / h2))) * h2,
            abs(float(l @ n.n_lower @ l) - h2),
            abs(float(l @ l) - 1.0),
        ), {"g": ctx.g, "image": [float(x) for x in s]}


@check("map.pullback_vs_hessian", "MAP", TOL.finite_difference,
       "30 off-axis indicatrix points; componentwise, scaled by max(1, |g|_max)",
       ["pullback", "metric-pullback"])
def _map_pullback(ctx):
    p = ctx.pd
    for v in _indicatrix_samples(ctx, p, 30):
        if not _off_axis(v):
            continue
        a = sm.pullback_metric(p, v)
        b = pd.metric_tensor(p, v, backend="hessian")
        yield float(np.max(np.abs(a - b))) / max(1.0, float(np.max(np.abs(b)))), _pt(ctx.g, v)


@check("map.pullback_determinant", "MAP", TOL.composed, "60 points; det g = h^2 (r j^N)^2",
       ["pullback", "metric-pullback"])
def _map_pullback_det(ctx):
    p = ctx.pd
    for v in _points(ctx, 60):
        det = float(np.linalg.det(sm.pullback_metric(p, v)))
        expected = p.h**2 * (p.r * pd.j_factor(p, v) ** ctx.dim) ** 2
        yield _rel(det, expected), _pt(ctx.g, v)


# ------------------------------------------------------------ Hamiltonian


@check("dual.mirror", "DUAL", TOL.closed_form, "500 covectors; H(g) = K(-g)", ["figuratrix-mirror"])
def _dual_mirror(ctx):
    p, q = ctx.pd, ctx.pd_mirror
    for c in _points(ctx, 500):
        yield _rel(hm.hamiltonian_h(p, c), pd.metric_k(q, c)), _pt(ctx.g, c)


@check("dual.b_hat_mirror", "DUAL", TOL.closed_form, "60 covectors; B^(g) = B(-g)", ["figuratrix-mirror"])
def _dual_bhat(ctx):
    p, q = ctx.pd, ctx.pd_mirror
    for c in _points(ctx, 60):
        yield _rel(hm.b_hat(p, c), pd.b_form(q, c)), _pt(ctx.g, c)


@check("dual.parity", "DUAL", TOL.closed_form, "60 covectors; gT^-parity, P^-parity, rotations", ["parity"])
def _dual_parity(ctx):
    p, q = ctx.pd, ctx.pd_mirror
    for c in _points(ctx, 60):
        hv = hm.hamiltonian_h(p, c)
        ft = c.copy()
        ft[0] = -ft[0]
        fx = c.copy()
        fx[1:] = -fx[1:]
        rot = c.copy()
        rot[1:] = _rotation(ctx.rng, ctx.dim - 1) @ c[1:]
        yield max(_rel(hm.hamiltonian_h(q, ft), hv), _rel(hm.hamiltonian_h(p, fx), hv),
                  _rel(hm.hamiltonian_h(p, rot), hv)), _pt(ctx.g, c)


@check("dual.j_hat_unified_vs_branchwise", "DUAL", TOL.closed_form, "60 covectors", ["co-equator"])
def _dual_jhat(ctx):
    p = ctx.pd
    for c in _points(ctx, 60):
        yield _rel(hm.j_hat(p, c), hm.j_hat_piecewise(p, c)), _pt(ctx.g, c)


@check("dual.generating_function", "DUAL", TOL.closed_form, "60 covectors with T^ != 0",
       ["generating-function"])
def _dual_genw(ctx):
    p = ctx.pd
    for c in _points(ctx, 60):
        t = c[0]
        if abs(t) < 1e-3 * np.linalg.norm(c):
            continue
        yield _rel(abs(t) * hm.gen_w(p, _rho(c) / t, 1 if t > 0 else -1), hm.hamiltonian_h(p, c)), _pt(ctx.g, c)


@check("dual.generating_derivatives", "DUAL", TOL.derivative_fd,
       "20 values p ~ U(-4,4) on both sheets", ["dual-derivative-rules"])
def _dual_gen_derivatives(ctx):
    p = ctx.pd
    for x0, s in _derivative_samples(ctx):
        w1 = derivative_fd(lambda x: hm.gen_w(p, x, s), x0)
        w2 = derivative_fd(lambda x: hm.gen_w(p, x, s), x0, 2, _SECOND)
        j1 = derivative_fd(lambda x: hm.gen_j_hat(p, x, s), x0)
        yield max(
            _rel(hm.gen_w_prime(p, x0, s), w1, max(1.0, abs(w1))),
            _rel(hm.gen_w_second(p, x0, s), w2, max(1.0, abs(w2))),
            _rel(hm.gen_j_hat_prime(p, x0, s), j1, max(1.0, abs(j1))),
        ), {"g": ctx.g, "p": x0, "sheet": s}


@check("dual.contravariant_vs_finite_difference", "DUAL", TOL.derivative_fd,
       "40 covectors; Richardson gradient of H^2/2", ["contravariant-components"])
def _dual_contra_fd(ctx):
    p = ctx.pd
    for c in _points(ctx, 40):
        fd = grad_fd(lambda u: 0.5 * hm.hamiltonian_h(p, u) ** 2, c)
        yield _vrel(hm.contravariant_from_momenta(p, c), fd), _pt(ctx.g, c)


@check("dual.contravariant_p_form", "DUAL", TOL.closed_form,
       "60 covectors with T^ > 0: R^a = p^a W H/Q^, R^0 = (1 - g p) W H/Q^", ["contravariant-components"])
def _dual_contra_p(ctx):
    p = ctx.pd
    for c in _points(ctx, 60):
        t = c[0]
        if t < 1e-3 * np.linalg.norm(c):
            continue
        pv = _rho(c) / t
        w, qh, hv = hm.gen_w(p, pv), hm.gen_q_hat(p, pv), hm.hamiltonian_h(p, c)
        expected = np.r_[(1.0 - p.g * pv) * w * hv / qh, (c[1:] / t) * w * hv / qh]
        yield _vrel(expected, hm.contravariant_from_momenta(p, c)), _pt(ctx.g, c)


def _wp_samples(ctx, n):
    """Vectors away from the pole set T + g|R| = 0 and from T = 0."""
    p = ctx.pd
    out = []
    for v in _points(ctx, n):
        t, rho = v[0], _rho(v)
        norm = np.linalg.norm(v)
        if abs(t) < 1e-2 * norm or abs(t + p.g * rho) < TOL.pole_exclusion * norm:
            continue
        out.append(v)
    return out


@check("dual.w_p_map", "DUAL", TOL.closed_form,
       "60 values of w = |R|/T away from 1 + g w = 0: inverse maps and 1 + g w = 1/(1 - g p)", ["w-p-map"])
def _dual_wp(ctx):
    p = ctx.pd
    for v in _wp_samples(ctx, 60):
        w = _rho(v) / v[0]
        pv = hm.w_to_p(p, w)
        yield max(_rel(hm.p_to_w(p, pv), w, max(1.0, abs(w))),
                  _rel(1.0 + p.g * w, 1.0 / (1.0 - p.g * pv))), _pt(ctx.g, v)


@check("dual.q_relation", "DUAL", TOL.closed_form, "60 samples; Q(w) = Q^(p)/(1 - g p)^2", ["q-relation"])
def _dual_q(ctx):
    p = ctx.pd
    for v in _wp_samples(ctx, 60):
        w = _rho(v) / v[0]
        pv = hm.w_to_p(p, w)
        yield _rel(pd.gen_q(p, w), hm.gen_q_hat(p, pv) / (1.0 - p.g * pv) ** 2), _pt(ctx.g, v)


def _sheets(p, v):
    t, rho = v[0], _rho(v)
    return (1 if t > 0 else -1), (1 if t + p.g * rho > 0 else -1)


@check("dual.j_reciprocity", "DUAL", TOL.closed_form,
       "60 samples; j^(p) j(w) = 1 under p = w/(1 + g w)", ["j-reciprocity"])
def _dual_jj(ctx):
    p = ctx.pd
    for v in _wp_samples(ctx, 60):
        w = _rho(v) / v[0]
        s, sh = _sheets(p, v)
        yield abs(hm.gen_j_hat(p, hm.w_to_p(p, w), sh) * pd.gen_j(p, w, s) - 1.0), _pt(ctx.g, v)


@check("dual.vw_product", "DUAL", TOL.closed_form, "60 samples; V^2 W^2 = Q Q^", ["vw-product"])
def _dual_vw(ctx):
    p = ctx.pd
    for v in _wp_samples(ctx, 60):
        w = _rho(v) / v[0]
        pv = hm.w_to_p(p, w)
        s, sh = _sheets(p, v)
        lhs = (pd.gen_v(p, w, s) * hm.gen_w(p, pv, sh)) ** 2
        yield _rel(lhs, pd.gen_q(p, w) * hm.gen_q_hat(p, pv)), _pt(ctx.g, v)


@check("dual.normalization_constant", "DUAL", TOL.closed_form,
       "60 samples; j^(p) j(w) = exp(-G atan(G/2)) under p = w/(1 + g w)", ["j-reciprocity"])
def _dual_norm(ctx):
    p = ctx.pd
    target = 1.0 / hm.dual_normalization(p)
    for v in _wp_samples(ctx, 60):
        w = _rho(v) / v[0]
        s, sh = _sheets(p, v)
        yield _rel(hm.gen_j_hat(p, hm.w_to_p(p, w), sh) * pd.gen_j(p, w, s), target), _pt(ctx.g, v)


@check("dual.legendre_consistency", "DUAL", TOL.duality,
       "40 indicatrix points; H(grad K^2/2) = K with a Richardson gradient", ["legendre"])
def _dual_legendre(ctx):
    p = ctx.pd
    for v in _indicatrix_samples(ctx, p, 40):
        c = grad_fd(lambda u: 0.5 * pd.metric_k(p, u) ** 2, v)
        yield abs(hm.hamiltonian_h(p, c) - 1.0), _pt(ctx.g, v)


@check("dual.legendre_consistency_normalized", "DUAL", TOL.duality,
       "40 indicatrix points; exp(G atan(G/2)) H(grad K^2/2) = K", ["legendre"])
def _dual_legendre_norm(ctx):
    p = ctx.pd
    for v in _indicatrix_samples(ctx, p, 40):
        c = grad_fd(lambda u: 0.5 * pd.metric_k(p, u) ** 2, v)
        yield abs(hm.legendre_h(p, c) - 1.0), _pt(ctx.g, v)


@check("dual.momentum_roundtrip", "DUAL", TOL.derivative_fd,
       "60 points; contravariant(covariant(v)) = v", ["contravariant-components", "legendre"])
def _dual_roundtrip(ctx):
    p = ctx.pd
    for v in _points(ctx, 60):
        yield _vrel(hm.contravariant_from_momenta(p, pd.covariant_momenta(p, v)), v), _pt(ctx.g, v)


@check("dual.momentum_roundtrip_normalized", "DUAL", TOL.derivative_fd,
       "60 points; inverse_legendre(covariant(v)) = v", ["contravariant-components", "legendre"])
def _dual_roundtrip_norm(ctx):
    p = ctx.pd
    for v in _points(ctx, 60):
        yield _vrel(hm.inverse_legendre(p, pd.covariant_momenta(p, v)), v), _pt(ctx.g, v)


@check("dual.t_that_relation", "DUAL", TOL.closed_form,
       "60 samples; T^ = (1 + g w) K^2/(Q T) and T = (1 - g p) K^2/(Q^ T^)", ["t-that-relation"])
def _dual_tt(ctx):
    p = ctx.pd
    for v in _wp_samples(ctx, 60):
        t = v[0]
        w = _rho(v) / t
        pv = hm.w_to_p(p, w)
        k2 = pd.metric_k(p, v) ** 2
        that = pd.covariant_momenta(p, v)[0]
        yield max(_rel((1 + p.g * w) * k2 / (pd.gen_q(p, w) * t), that),
                  _rel((1 - p.g * pv) * k2 / (hm.gen_q_hat(p, pv) * that), t)), _pt(ctx.g, v)


@check("dual.co_equator", "DUAL", TOL.closed_form, "30 unit spatial covectors at T^ = 0", ["co-equator"])
def _dual_equator(ctx):
    p = ctx.pd
    for _ in range(30):
        c = pd.event(0.0, _unit_spatial(ctx.rng, ctx.dim))
        yield abs(hm.hamiltonian_h(p, c) - 1.0), _pt(ctx.g, c)


@check("dual.co_intercepts", "DUAL", TOL.closed_form, "T^-axis intercepts -t1(g), -t2(g)", ["co-intercepts"])
def _dual_intercepts(ctx):
    p = ctx.pd
    co = hm.co_landmarks(p)
    for t in (co.t1_co, co.t2_co):
        c = pd.event(t, np.zeros(ctx.dim - 1))
        yield abs(hm.hamiltonian_h(p, c) - 1.0), _pt(ctx.g, c)


@check("dual.co_apex", "DUAL", TOL.closed_form, "co-apex (f(-g), k u); T^ - g|R^| = 0 there", ["co-apex"])
def _dual_apex(ctx):
    p = ctx.pd
    co = hm.co_landmarks(p)
    for _ in range(10):
        c = pd.event(co.f_hat, co.k_hat * _unit_spatial(ctx.rng, ctx.dim))
        yield max(abs(hm.hamiltonian_h(p, c) - 1.0), abs(co.f_hat - p.g * co.k_hat)), _pt(ctx.g, c)


def _solve_co_profile(p, rho, upper, dim):
    """Solve H(T^, rho) = 1 on one side of the line T^ = g rho by Newton."""
    x = np.r_[rho, np.zeros(dim - 2)]
    apex_t = p.g * rho
    co = hm.co_landmarks(p)
    far = co.t1_co if upper else co.t2_co

    def f(t):
        return hm.hamiltonian_h(p, pd.event(t, x)) - 1.0

    edge = far + (1.0 if upper else -1.0) * max(1.0, abs(far))
    while f(edge) <= 0:
        edge = apex_t + 2.0 * (edge - apex_t)
    return newton_scalar(f, far, RootConfig(bracket=(apex_t, edge)))


@check("dual.co_profile_derivatives_fd", "DUAL", TOL.finite_difference,
       "8 radii in (0.05k, 0.9k) per branch; figuratrix traced by Newton", ["co-profile"])
def _dual_profile_fd(ctx):
    p = ctx.pd
    k = hm.co_landmarks(p).k_hat
    for _ in range(8):
        rho = k * ctx.rng.uniform(0.05, 0.9)
        for upper in (True, False):
            def t_of(r):
                return _solve_co_profile(p, r, upper, ctx.dim)

            c = pd.event(t_of(rho), np.r_[rho, np.zeros(ctx.dim - 2)])
            slope, curv = hm.co_profile_derivatives(p, c)
            d1 = derivative_fd(t_of, rho)
            d2 = derivative_fd(t_of, rho, 2, _SECOND)
            yield max(_rel(slope, d1, max(1.0, abs(d1))), _rel(curv, d2, max(1.0, abs(d2)))), _pt(ctx.g, c)


@check("dual.co_profile_concavity", "DUAL", 1.0,
       "100 figuratrix points above the line T^ = g|R^|; residual <= 1 iff d2T^/d|R^|2 < 0",
       ["co-profile", "figuratrix-mirror"])
def _dual_concavity(ctx):
    p = ctx.pd
    for u in _directions(ctx.rng, ctx.dim, 100):
        c = hm.figuratrix_point(p, u)
        side = c[0] - p.g * _rho(c)
        if side <= TOL.pole_exclusion * np.linalg.norm(c):
            continue
        yield _violation(hm.co_profile_derivatives(p, c)[1] < 0.0), _pt(ctx.g, c)


@check("dual.co_slope_limits", "DUAL", TOL.closed_form, "slope 0 at (-t1, 0); slope 1/g at (0, 1)",
       ["co-profile"])
def _dual_slopes(ctx):
    p = ctx.pd
    co = hm.co_landmarks(p)
    top = pd.event(co.t1_co, np.zeros(ctx.dim - 1))
    yield abs(hm.co_profile_derivatives(p, top)[0]), _pt(ctx.g, top)
    if ctx.g != 0.0:
        eq = pd.event(0.0, np.eye(ctx.dim - 1)[0])
        yield abs(hm.co_profile_derivatives(p, eq)[0] * p.g - 1.0), _pt(ctx.g, eq)


@check("dual.metric_tensor_min_eigenvalue", "DUAL", 1.0,
       "40 figuratrix points; numeric Hessian of H^2/2; residual = 1e-8 / min eigenvalue",
       ["figuratrix-mirror"])
def _dual_convexity(ctx):
    p = ctx.pd
    for u in _directions(ctx.rng, ctx.dim, 40):
        c = hm.figuratrix_point(p, u)
        m = hessian_fd(lambda x: 0.5 * hm.hamiltonian_h(p, x) ** 2, c)
        yield _floor_ratio(min_eigen_sym(m), TOL.min_eigenvalue), _pt(ctx.g, c)


# ------------------------------------------------------- relativistic family


@check("sr.params_identities", "SR", TOL.sr_params, "closed-form identities among the derived constants",
       ["sr-equator"])
def _sr_params(ctx):
    q = ctx.sr
    scale = max(1.0, abs(q.g))
    yield max(
        abs(q.g_plus * q.g_minus + 1.0),
        abs(q.g_plus + q.g_minus + q.g) / scale,
        abs(q.g_up_plus - 1.0 / q.g_plus) / scale,
        abs(q.g_up_plus + q.g_minus) / scale,
        abs(q.g_up_minus - 1.0 / q.g_minus) / scale,
        abs(q.g_up_minus + q.g_plus) / scale,
        abs(q.G_plus - q.G_minus - 2.0),
        abs(q.G_up_plus - q.g_up_plus / q.h),
        abs(q.h * q.h - 1.0 - 0.25 * q.g * q.g) / scale**2,
    ), {"g": ctx.g}


def _sr_points(ctx, q, n, wanted=None, co=False):
    """Random vectors at least ``cone_exclusion`` (relative) away from both
    cone factors, optionally restricted to one sector."""
    out = []
    classify = sr.co_sector if co else sr.sector
    factors = sr._co_factors if co else sr._factors
    for v in _points(ctx, n):
        norm = np.linalg.norm(v)
        a, b = factors(q, v[0], _rho(v))
        if min(abs(a), abs(b)) < TOL.cone_exclusion * norm:
            continue
        if wanted is not None and classify(q, v) != wanted:
            continue
        out.append(v)
    return out


@check("sr.minkowski_reduction", "SR", TOL.reduction,
       "1000 points off the cone (relative margin 0.1), g = 0", ["sr-equator"], uses_grid=False)
def _sr_reduction(ctx):
    q = sr.make_sr_params(0.0, ctx.dim)
    for v in _points(ctx, 1000):
        t, rho = v[0], math.sqrt(math.fsum(v[1:] * v[1:]))
        if abs(abs(t) - rho) < 0.1 * np.linalg.norm(v):
            continue
        exact = math.sqrt(abs((t - rho) * (t + rho)))
        yield max(_rel(sr.f_sr(q, v), exact), _rel(sr.h_sr(q, v), exact)), _pt(0.0, v)


@check("sr.homogeneity", "SR", TOL.closed_form, "60 off-cone points, b = e^U(-3,3)", ["sr-axis"])
def _sr_homogeneity(ctx):
    q = ctx.sr
    for v in _sr_points(ctx, q, 60):
        b = math.exp(ctx.rng.uniform(-3, 3))
        yield max(_rel(sr.f_sr(q, b * v), b * sr.f_sr(q, v)),
                  _rel(sr.h_sr(q, b * v), b * sr.h_sr(q, v))), _pt(ctx.g, v)


@check("sr.mirror", "SR", TOL.closed_form, "500 off-cone covectors; H_SR(g) = F_SR(-g)",
       ["hyperboloid-convexity"])
def _sr_mirror(ctx):
    q, qm = ctx.sr, sr.make_sr_params(-ctx.g, ctx.dim)
    for c in _sr_points(ctx, q, 500, co=True):
        yield _rel(sr.h_sr(q, c), sr.f_sr(qm, c)), _pt(ctx.g, c)


@check("sr.quadratic_form", "SR", TOL.closed_form, "60 points; (T + g_-|R|)(T + g_+|R|) = T^2 - g|R|T - |R|^2",
       ["sr-profile"])
def _sr_bform(ctx):
    q = ctx.sr
    for v in _points(ctx, 60):
        t, rho = v[0], _rho(v)
        expected = t * t - q.g * rho * t - rho * rho
        yield abs(sr.b_sr(q, v) - expected) / float(v @ v), _pt(ctx.g, v)


@check("sr.landmarks", "SR", TOL.closed_form,
       "F_SR = 1 at (0, c), (+-1, 0), (s, z); c z = 1; s = g z", ["sr-equator", "sr-axis", "sr-turning-point"])
def _sr_landmarks(ctx):
    q = ctx.sr
    lm = sr.sr_landmarks(q)
    zero = np.zeros(ctx.dim - 2)
    for t, rho in ((0.0, lm.c), (1.0, 0.0), (-1.0, 0.0), (lm.s, lm.z)):
        v = pd.event(t, np.r_[rho, zero])
        yield abs(sr.f_sr(q, v) - 1.0), _pt(ctx.g, v)
    yield max(abs(lm.c * lm.z - 1.0), abs(lm.s - q.g * lm.z)), {"g": ctx.g}


@check("sr.co_landmarks", "SR", TOL.closed_form, "H_SR = 1 at (+-1, 0) and (0, c(-g))", ["sr-axis"])
def _sr_co_landmarks(ctx):
    q = ctx.sr
    lm_m = sr.sr_landmarks(sr.make_sr_params(-ctx.g, ctx.dim))
    zero = np.zeros(ctx.dim - 2)
    for t, rho in ((1.0, 0.0), (-1.0, 0.0), (0.0, lm_m.c), (lm_m.s, lm_m.z)):
        c = pd.event(t, np.r_[rho, zero])
        yield abs(sr.h_sr(q, c) - 1.0), _pt(ctx.g, c)


def _solve_sr_forward(q, rho, dim, fn=sr.f_sr, edge_slope=None):
    """Forward-sheet T(|R|) on a unit level set by bracketed Newton."""
    x = np.r_[rho, np.zeros(dim - 2)]
    lo = edge_slope * rho

    def f(t):
        return fn(q, pd.event(t, x)) - 1.0

    hi = lo + 1.0
    while f(hi) <= 0:
        hi = lo + 2.0 * (hi - lo)
    return newton_scalar(f, 0.5 * (lo + hi), RootConfig(bracket=(lo, hi)))


def _forward_edge(q):
    # forward sector of F_SR: T > max(-g_-, -g_+) |R| = (g/2 + h)|R|
    return max(-q.g_minus, -q.g_plus)


def _co_forward_edge(q):
    return max(1.0 / q.g_up_plus, 1.0 / q.g_up_minus)


def _sr_forward_samples(ctx, q, n, edge):
    """Forward-sheet points with |R|/T up to 0.9 of the cone slope."""
    for _ in range(n):
        yield ctx.rng.uniform(0.02, 0.9) / edge


@check("sr.profile_derivatives_fd", "SR", TOL.finite_difference,
       "10 forward-sheet radii; T(|R|) traced by Newton", ["sr-profile"])
def _sr_profile_fd(ctx):
    q = ctx.sr
    edge = _forward_edge(q)
    for ratio in _sr_forward_samples(ctx, q, 10, edge):
        # pick the radius so that |R|/T = ratio on the unit sheet
        u = pd.event(1.0, np.r_[ratio, np.zeros(ctx.dim - 2)])
        v = sr.hyperboloid_point(q, u)
        rho = _rho(v)

        def t_of(r):
            return _solve_sr_forward(q, r, ctx.dim, edge_slope=edge)

        slope, curv = sr.sr_profile_derivatives(q, v)
        d1 = derivative_fd(t_of, rho)
        d2 = derivative_fd(t_of, rho, 2, _SECOND)
        yield max(_rel(slope, d1, max(1.0, abs(d1))), _rel(curv, d2, max(1.0, abs(d2)))), _pt(ctx.g, v)


@check("sr.profile_convexity", "SR", 1.0,
       "100 forward-sheet points; residual <= 1 iff d2T/d|R|2 > 0", ["sr-profile", "hyperboloid-convexity"])
def _sr_convexity(ctx):
    q = ctx.sr
    for u in _sr_points(ctx, q, 200, wanted=sr.FORWARD)[:100]:
        v = sr.hyperboloid_point(q, u)
        yield _violation(sr.sr_profile_derivatives(q, v)[1] > 0.0), _pt(ctx.g, v)


@check("sr.co_profile_convexity", "SR", TOL.finite_difference,
       "10 forward co-sheet radii; traced second derivative > 0 and equal to the mirrored closed form",
       ["hyperboloid-convexity"])
def _sr_co_convexity(ctx):
    q = ctx.sr
    qm = sr.make_sr_params(-ctx.g, ctx.dim)
    edge = _co_forward_edge(q)
    for ratio in _sr_forward_samples(ctx, q, 10, edge):
        c = sr.co_hyperboloid_point(q, pd.event(1.0, np.r_[ratio, np.zeros(ctx.dim - 2)]))
        rho = _rho(c)

        def t_of(r):
            return _solve_sr_forward(q, r, ctx.dim, fn=sr.h_sr, edge_slope=edge)

        d2 = derivative_fd(t_of, rho, 2, _SECOND)
        closed = sr.sr_profile_derivatives(qm, c)[1]
        res = _rel(closed, d2, max(1.0, abs(d2)))
        yield (res if d2 > 0 else math.inf), _pt(ctx.g, c)


@check("sr.slope_limits", "SR", TOL.closed_form, "slope 0 at (1, 0); slope -1/g at (0, c) for g != 0",
       ["sr-slope-limits"])
def _sr_slopes(ctx):
    q = ctx.sr
    lm = sr.sr_landmarks(q)
    zero = np.zeros(ctx.dim - 2)
    top = pd.event(1.0, np.r_[0.0, zero])
    yield abs(sr.sr_profile_derivatives(q, top)[0]), _pt(ctx.g, top)
    if ctx.g != 0.0:
        eq = pd.event(0.0, np.r_[lm.c, zero])
        yield abs(sr.sr_profile_derivatives(q, eq)[0] * q.g + 1.0), _pt(ctx.g, eq)


@check("sr.turning_point", "SR", TOL.closed_form, "d|R|/dT = 0 at (s, z)", ["sr-turning-point"])
def _sr_turning(ctx):
    q = ctx.sr
    lm = sr.sr_landmarks(q)
    v = pd.event(lm.s, np.r_[lm.z, np.zeros(ctx.dim - 2)])
    yield abs(sr.sr_inverse_profile_derivatives(q, v)[0]), _pt(ctx.g, v)


@check("sr.gradient_duality", "SR", TOL.sr_duality,
       "40 forward-sheet points off the cone; H_SR(grad F_SR^2/2) = F_SR with a Richardson gradient",
       ["hyperboloid-convexity"])
def _sr_duality(ctx):
    q = ctx.sr
    edge = _forward_edge(q)
    for ratio in _sr_forward_samples(ctx, q, 40, edge):
        u = pd.event(1.0, ratio * _unit_spatial(ctx.rng, ctx.dim))
        v = sr.hyperboloid_point(q, u)
        c = grad_fd(lambda x: 0.5 * sr.f_sr(q, x) ** 2, v)
        yield abs(sr.h_sr(q, c) - 1.0), _pt(ctx.g, v)


# ------------------------------------------------------------------ runner

# Checks whose samplers drop points near a singular set; the relative
# exclusion radius is copied into the report's worst_case_input.
EXCLUSIONS: Dict[str, Tuple[str, float]] = {
    "pd.profile_concavity": ("apex line T + g|R| = 0", TOL.pole_exclusion),
    "dual.co_profile_concavity": ("co-apex line T^ - g|R^| = 0", TOL.pole_exclusion),
    "map.inverse_euler_contraction": ("T-axis", TOL.axis_exclusion),
    "map.jacobian_vs_finite_difference": ("T-axis", TOL.axis_exclusion),
    "map.pullback_vs_hessian": ("T-axis", TOL.axis_exclusion),
    **{name: ("w-pole 1 + g w = 0", TOL.pole_exclusion) for name in (
        "dual.contravariant_p_form", "dual.w_p_map", "dual.q_relation", "dual.j_reciprocity",
        "dual.vw_product", "dual.normalization_constant", "dual.t_that_relation",
    )},
    **{name: ("light-cone factors", TOL.cone_exclusion) for name in (
        "sr.homogeneity", "sr.mirror", "sr.profile_convexity",
    )},
}


def _seed_for(seed: int, name: str, index: int) -> np.random.Generator:
    return np.random.default_rng([seed, zlib.crc32(name.encode()), index])


def run_check(spec: CheckSpec, g_grid: Sequence[float], seed: int, dim: int) -> VerificationReport:
    grid = list(g_grid) if spec.uses_grid else [0.0]
    samples = 0
    worst = -math.inf
    worst_input: Optional[dict] = None
    errors: List[str] = []
    for index, g in enumerate(grid):
        ctx = Context(g=float(g), dim=dim, rng=_seed_for(seed, spec.name, index))
        try:
            for residual, point in spec.fn(ctx):
                samples += 1
                r = float(residual)
                if math.isnan(r):
                    r = math.inf
                if r > worst or worst_input is None:
                    worst, worst_input = r, point
        except Exception as exc:  # a failing check must not abort the battery
            errors.append(f"g={g}: {type(exc).__name__}: {exc}")
    if samples == 0:
        worst = 0.0
    passed = not errors and worst <= spec.tolerance
    if errors or spec.name in EXCLUSIONS:
        worst_input = dict(worst_input or {})
    if spec.name in EXCLUSIONS:
        where, radius = EXCLUSIONS[spec.name]
        worst_input["excluded_near"] = where
        worst_input["exclusion_radius"] = radius
    if errors:
        worst_input["errors"] = errors
    max_residual = worst if math.isfinite(worst) else None
    return VerificationReport(spec.name, spec.family, samples, max_residual, spec.tolerance, passed, worst_input)


def run_all(
    g_grid: Sequence[float] = DEFAULT_GRID,
    seed: int = 42,
    dim: int = 4,
    families: Optional[Iterable[str]] = None,
) -> List[VerificationReport]:
    """Run every registered check (optionally only some families) over the grid.

    Reports are sorted by check name, so the output is order-stable and
    byte-identical for identical arguments.
    """
    wanted = set(families) if families is not None else set(FAMILIES)
    specs = sorted((s for s in REGISTRY if s.family in wanted), key=lambda s: s.name)
    return [run_check(s, g_grid, seed, dim) for s in specs]


def reports_to_json(reports: Sequence[VerificationReport]) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=2, allow_nan=False) + "\n"


def summary_table(reports: Sequence[VerificationReport]) -> str:
    width = max((len(r.name) for r in reports), default=10)
    lines = [f"{'status':6}  {'check':{width}}  {'samples':>7}  {'max_residual':>12}  {'tolerance':>9}"]
    for r in reports:
        res = "n/a" if r.max_residual is None else f"{r.max_residual:.3e}"
        lines.append(
            f"{'PASS' if r.passed else 'FAIL':6}  {r.name:{width}}  {r.samples:7d}  {res:>12}  {r.tolerance:9.1e}"
        )
    failed = sum(not r.passed for r in reports)
    lines.append(f"{len(reports) - failed}/{len(reports)} checks passed")
    return "\n".join(lines) + "\n"
