"""Small numerical kernels: finite differences, a safeguarded Newton solver,
and a Jacobi eigenvalue routine for little symmetric matrices."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np

from .errors import ConvergenceError, DomainError, NonFiniteEvaluation


@dataclass(frozen=True)
class DiffConfig:
    """Finite-difference settings.

    The actual step is ``base_step * max(1, |v|_inf)`` so that the relative
    resolution is the same on every shell of a homogeneous function.
    """

    base_step: float = 1e-4
    richardson_levels: int = 1

    def __post_init__(self):
        if not self.base_step > 0:
            raise DomainError(f"base_step must be positive, got {self.base_step}")
        if self.richardson_levels < 0:
            raise DomainError(f"richardson_levels must be >= 0, got {self.richardson_levels}")

    def step_for(self, v) -> float:
        scale = float(np.max(np.abs(v))) if np.size(v) else 0.0
        return self.base_step * max(1.0, scale)


@dataclass(frozen=True)
class RootConfig:
    tol: float = 1e-12
    max_iter: int = 100
    bracket: Optional[Tuple[float, float]] = None

    def __post_init__(self):
        if not self.tol > 0:
            raise DomainError(f"tol must be positive, got {self.tol}")
        if self.max_iter < 1:
            raise DomainError(f"max_iter must be >= 1, got {self.max_iter}")


def _eval(f, x):
    val = f(x)
    if not np.all(np.isfinite(val)):
        raise NonFiniteEvaluation(f"non-finite value {val!r} at probe point {x!r}", point=x)
    return val


def _richardson(estimates, order):
    """Extrapolate a list of estimates taken at steps h, h/2, h/4, ...

    ``order`` is the leading error exponent (2 for central differences).
    """
    table = list(estimates)
    k = order
    while len(table) > 1:
        factor = 2.0**k
        table = [(factor * fine - coarse) / (factor - 1.0) for coarse, fine in zip(table, table[1:])]
        k += 2
    return table[0]


# Second differences divide rounding noise by step**2, so they get a larger
# default step than first differences.
SECOND_ORDER_STEP = 1e-3


def derivative_fd(f: Callable[[float], float], x: float, order: int = 1, cfg: Optional[DiffConfig] = None):
    """First or second derivative of a scalar function by central differences."""
    if order not in (1, 2):
        raise DomainError(f"order must be 1 or 2, got {order}")
    if cfg is None:
        cfg = DiffConfig() if order == 1 else DiffConfig(base_step=SECOND_ORDER_STEP)
    h0 = cfg.step_for(np.array([x]))
    estimates = []
    for level in range(cfg.richardson_levels + 1):
        h = h0 / 2**level
        if order == 1:
            est = (_eval(f, x + h) - _eval(f, x - h)) / (2 * h)
        else:
            est = (_eval(f, x + h) - 2 * _eval(f, x) + _eval(f, x - h)) / (h * h)
        estimates.append(est)
    return _richardson(estimates, 2)


def grad_fd(f: Callable[[np.ndarray], float], v, cfg: DiffConfig = DiffConfig()) -> np.ndarray:
    """Central-difference gradient with Richardson extrapolation.

    With one extrapolation level the truncation error is O(step**4).
    """
    v = np.asarray(v, dtype=float)
    n = v.size
    h0 = cfg.step_for(v)
    estimates = []
    for level in range(cfg.richardson_levels + 1):
        h = h0 / 2**level
        g = np.empty(n)
        for i in range(n):
            e = np.zeros(n)
            e[i] = h
            g[i] = (_eval(f, v + e) - _eval(f, v - e)) / (2 * h)
        estimates.append(g)
    return _richardson(estimates, 2)


def jacobian_fd(f: Callable[[np.ndarray], np.ndarray], v, cfg: DiffConfig = DiffConfig()) -> np.ndarray:
    """Jacobian ``J[i, k] = d f_i / d v_k`` of a vector field."""
    v = np.asarray(v, dtype=float)
    n = v.size
    h0 = cfg.step_for(v)
    estimates = []
    for level in range(cfg.richardson_levels + 1):
        h = h0 / 2**level
        cols = []
        for k in range(n):
            e = np.zeros(n)
            e[k] = h
            cols.append((np.asarray(_eval(f, v + e)) - np.asarray(_eval(f, v - e))) / (2 * h))
        estimates.append(np.column_stack(cols))
    return _richardson(estimates, 2)


def hessian_fd(f: Callable[[np.ndarray], float], v, cfg: Optional[DiffConfig] = None) -> np.ndarray:
    """Second-derivative matrix of a scalar field.

    Off-diagonal entries use the four-point cross stencil, computed once per
    pair, so the result is exactly symmetric.
    """
    if cfg is None:
        cfg = DiffConfig(base_step=SECOND_ORDER_STEP)
    v = np.asarray(v, dtype=float)
    n = v.size
    h0 = cfg.step_for(v)
    f0 = _eval(f, v)
    estimates = []
    for level in range(cfg.richardson_levels + 1):
        h = h0 / 2**level
        m = np.empty((n, n))
        eye = np.eye(n) * h
        for i in range(n):
            m[i, i] = (_eval(f, v + eye[i]) - 2 * f0 + _eval(f, v - eye[i])) / (h * h)
            for k in range(i + 1, n):
                val = (
                    _eval(f, v + eye[i] + eye[k])
                    - _eval(f, v + eye[i] - eye[k])
                    - _eval(f, v - eye[i] + eye[k])
                    + _eval(f, v - eye[i] - eye[k])
                ) / (4 * h * h)
                m[i, k] = m[k, i] = val
        estimates.append(m)
    return _richardson(estimates, 2)


def newton_scalar(
    f: Callable[[float], float],
    seed: float,
    cfg: RootConfig = RootConfig(),
    fprime: Optional[Callable[[float], float]] = None,
) -> float:
    """Solve ``f(x) = 0`` by Newton's method.

    When ``cfg.bracket`` is given, the bracket is maintained and any Newton
    step that leaves it (or stalls on a flat derivative) is replaced by a
    bisection step.  Without a bracket a bad step is fatal.
    """
    if fprime is None:
        def fprime(x):
            return derivative_fd(f, x, 1, DiffConfig(base_step=1e-6, richardson_levels=1))

    lo = hi = None
    if cfg.bracket is not None:
        lo, hi = sorted(map(float, cfg.bracket))
        flo, fhi = f(lo), f(hi)
        if flo == 0:
            return lo
        if fhi == 0:
            return hi
        if flo * fhi > 0:
            raise ConvergenceError(
                f"bracket [{lo}, {hi}] does not straddle a root (f = {flo}, {fhi})",
                last=seed, residual=None,
            )
        if not lo <= seed <= hi:
            seed = 0.5 * (lo + hi)

    x = float(seed)
    fx = f(x)
    for _ in range(cfg.max_iter):
        if not math.isfinite(fx):
            raise ConvergenceError(f"non-finite residual at x = {x}", last=x, residual=fx)
        if abs(fx) <= cfg.tol:
            return x
        if lo is not None:
            if (fx < 0) == (flo < 0):
                lo, flo = x, fx
            else:
                hi = x
        d = fprime(x)
        step_ok = d != 0 and math.isfinite(d)
        x_new = x - fx / d if step_ok else math.nan
        if lo is not None:
            if not (step_ok and lo < x_new < hi):
                x_new = 0.5 * (lo + hi)
        elif not (step_ok and math.isfinite(x_new)):
            raise ConvergenceError(f"Newton step undefined at x = {x}", last=x, residual=fx)
        if x_new == x:
            break
        x = x_new
        fx = f(x)
    if math.isfinite(fx) and abs(fx) <= cfg.tol:
        return x
    raise ConvergenceError(
        f"no convergence after {cfg.max_iter} iterations (x = {x}, f = {fx})", last=x, residual=fx
    )


_SPLITTER = 134217729.0  # 2**27 + 1


def _two_square(a: float) -> Tuple[float, float]:
    """``a*a`` as an exact sum ``hi + lo`` (Veltkamp split)."""
    hi = a * a
    c = _SPLITTER * a
    ah = c - (c - a)
    al = a - ah
    return hi, ((ah * ah - hi) + 2.0 * ah * al) + al * al


def minkowski_square(t: float, x) -> float:
    """``t**2 - |x|**2`` correctly rounded, even next to the light cone."""
    terms = list(_two_square(float(t)))
    for xi in np.asarray(x, dtype=float).ravel():
        hi, lo = _two_square(float(xi))
        terms += (-hi, -lo)
    return math.fsum(terms)


def eigvals_sym(m, sweeps: int = 50) -> np.ndarray:
    """Eigenvalues of a small symmetric matrix by cyclic Jacobi rotations, ascending."""
    a = np.array(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {a.shape}")
    scale = max(1.0, float(np.max(np.abs(a)))) if a.size else 1.0
    asym = float(np.max(np.abs(a - a.T))) if a.size else 0.0
    if asym > 1e-12 * scale:
        raise DomainError(f"matrix is not symmetric (max |m - m^T| = {asym:.3e})")
    a = 0.5 * (a + a.T)
    n = a.shape[0]
    norm = float(np.linalg.norm(a))
    for _ in range(sweeps):
        off = float(np.linalg.norm(a - np.diag(np.diag(a))))
        if off <= 1e-15 * norm:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = float(a[p, q])
                if apq == 0.0:
                    continue
                theta = float(a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    # theta**2 would overflow; the rotation is ~1/(2 theta)
                    t = 0.5 / theta
                else:
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                cp = a[:, p].copy()
                cq = a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
    return np.sort(np.diag(a))


def min_eigen_sym(m) -> float:
    """Smallest eigenvalue of a symmetric matrix."""
    return float(eigvals_sym(m)[0])
