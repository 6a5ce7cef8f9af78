"""Profile curves, surfaces of revolution and the file formats they are
written in.

Every metric here depends on the spatial part only through ``|R|``, so a
unit level set is fully described by its ``(|R|, T)`` profile and the
3-D picture is that profile revolved about the T-axis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from . import hamiltonian as hm
from . import pd_metric as pd
from . import sr_metric as sr
from .errors import DomainError

PD_INDICATRIX = "pd-indicatrix"
PD_FIGURATRIX = "pd-figuratrix"
SR_HYPERBOLOID = "sr-hyperboloid"
SR_CO_HYPERBOLOID = "sr-co-hyperboloid"
PROFILE_FAMILIES = (PD_INDICATRIX, PD_FIGURATRIX, SR_HYPERBOLOID, SR_CO_HYPERBOLOID)
SR_SECTORS = (sr.FORWARD, sr.MIXED, sr.BACKWARD)

# Polar angles closer than this are treated as the same row.
_ANGLE_DEDUP = 1e-12


def fmt(x: float) -> str:
    """17 significant digits: enough to round-trip any double."""
    return f"{float(x) + 0.0:.17g}"


@dataclass
class ProfileCurve:
    """Samples ``(rho, t)`` of a unit level set, ordered by polar angle
    measured from the positive T-axis."""

    family: str
    g: float
    samples: List[Tuple[float, float]]
    sector: Optional[str] = None

    def residuals(self) -> List[float]:
        """``|norm(rho, t) - 1|`` for every sample."""
        norm = unit_function(self.family, self.g)
        return [abs(norm(t, rho) - 1.0) for rho, t in self.samples]

    @property
    def t_extent(self) -> Tuple[float, float]:
        ts = [t for _, t in self.samples]
        return min(ts), max(ts)


@dataclass
class RevolutionMesh:
    vertices: List[Tuple[float, float, float]]
    faces: List[Tuple[int, int, int]] = field(default_factory=list)

    def edges(self) -> set:
        out = set()
        for a, b, c in self.faces:
            for u, v in ((a, b), (b, c), (c, a)):
                out.add((min(u, v), max(u, v)))
        return out

    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges()) + len(self.faces)

    def is_watertight(self) -> bool:
        """Every edge borders exactly two faces."""
        count: dict = {}
        for a, b, c in self.faces:
            for u, v in ((a, b), (b, c), (c, a)):
                key = (min(u, v), max(u, v))
                count[key] = count.get(key, 0) + 1
        return bool(count) and all(n == 2 for n in count.values())


def _check_family(family: str) -> None:
    if family not in PROFILE_FAMILIES:
        raise DomainError(f"unknown profile family {family!r}; expected one of {PROFILE_FAMILIES}")


def unit_function(family: str, g: float) -> Callable[[float, float], float]:
    """The norm whose unit level set the family traces, as a function of ``(t, rho)``."""
    _check_family(family)
    if family in (PD_INDICATRIX, PD_FIGURATRIX):
        p = pd.make_pd_params(g, dim=2)
        fn = pd.metric_k if family == PD_INDICATRIX else hm.hamiltonian_h
    else:
        p = sr.make_sr_params(g, dim=2)
        fn = sr.f_sr if family == SR_HYPERBOLOID else sr.h_sr
    return lambda t, rho: fn(p, np.array([t, rho]))


def _cone_angles(family: str, q: sr.SrParams) -> Tuple[float, float]:
    """Polar angles of the two cone lines ``T = a |R|``, forward one first."""
    if family == SR_HYPERBOLOID:
        a1, a2 = -q.g_minus, -q.g_plus
    else:
        a1, a2 = 1.0 / q.g_up_plus, 1.0 / q.g_up_minus
    return math.atan2(1.0, a1), math.atan2(1.0, a2)


def _angle(t: float, rho: float) -> float:
    return math.atan2(rho, t)


def _merge(grid: Sequence[float], extra: Sequence[float]) -> List[float]:
    out: List[float] = []
    for a in sorted(list(grid) + list(extra)):
        if out and abs(a - out[-1]) <= _ANGLE_DEDUP:
            continue
        out.append(a)
    return out


def _pd_profile(family: str, g: float, samples: int) -> ProfileCurve:
    p = pd.make_pd_params(g, dim=2)
    if family == PD_INDICATRIX:
        project = pd.indicatrix_point
        lm = pd.pd_landmarks(p)
        apex = (lm.f, lm.k)
    else:
        project = hm.figuratrix_point
        co = hm.co_landmarks(p)
        apex = (co.f_hat, co.k_hat)
    grid = np.linspace(0.0, math.pi, samples)
    angles = _merge(grid, [0.0, 0.5 * math.pi, math.pi, _angle(*apex)])
    rows = []
    for a in angles:
        # exact zeros on the axis keep the poles of the mesh on T
        rho_dir = 0.0 if a in (0.0, math.pi) else math.sin(a)
        t_dir = 0.0 if a == 0.5 * math.pi else math.cos(a)
        v = project(p, np.array([t_dir, rho_dir]))
        rows.append((float(v[1]), float(v[0])))
    return ProfileCurve(family, float(g), rows)


def _sr_profile(family: str, g: float, samples: int, sector: str, cone_margin: float) -> ProfileCurve:
    if sector not in SR_SECTORS:
        raise DomainError(f"unknown sector {sector!r}; expected one of {SR_SECTORS}")
    if not 0.0 < cone_margin < 1.0:
        raise DomainError(f"cone_margin must lie in (0, 1), got {cone_margin}")
    q = sr.make_sr_params(g, dim=2)
    # the co-hyperboloid at g is the hyperboloid at -g
    lm = sr.sr_landmarks(q if family == SR_HYPERBOLOID else sr.make_sr_params(-g, dim=2))
    fwd, bwd = _cone_angles(family, q)
    if sector == sr.FORWARD:
        lo, hi = 0.0, fwd - cone_margin * fwd
        marks = [0.0]
    elif sector == sr.BACKWARD:
        lo, hi = bwd + cone_margin * (math.pi - bwd), math.pi
        marks = [math.pi]
    else:
        span = bwd - fwd
        lo, hi = fwd + cone_margin * span, bwd - cone_margin * span
        marks = [a for a in (0.5 * math.pi, _angle(lm.s, lm.z)) if lo <= a <= hi]
    angles = _merge(np.linspace(lo, hi, samples), marks)
    fn = sr.f_sr if family == SR_HYPERBOLOID else sr.h_sr
    rows = []
    for a in angles:
        rho_dir = 0.0 if a in (0.0, math.pi) else math.sin(a)
        t_dir = 0.0 if a == 0.5 * math.pi else math.cos(a)
        u = np.array([t_dir, rho_dir])
        v = u / fn(q, u)
        rows.append((float(v[1]), float(v[0])))
    return ProfileCurve(family, float(g), rows, sector)


def trace_profile(
    family: str,
    g: float,
    samples: int = 64,
    sector: str = sr.FORWARD,
    cone_margin: float = 0.1,
) -> ProfileCurve:
    """Trace the ``(|R|, T)`` profile of a unit level set.

    ``samples`` evenly spaced polar angles are merged with the landmark
    directions (axis intercepts, equator, apex or turning point), so the
    curve passes through those points exactly.  PD profiles run from the
    upper to the lower T-axis intercept.  SR profiles are limited to one
    sector and stop short of the cone by ``cone_margin`` times the angular
    width of that sector, since the surface runs off to infinity there.
    """
    _check_family(family)
    if int(samples) != samples or samples < 3:
        raise DomainError(f"samples must be an integer >= 3, got {samples}")
    if family in (PD_INDICATRIX, PD_FIGURATRIX):
        return _pd_profile(family, g, int(samples))
    return _sr_profile(family, g, int(samples), sector, cone_margin)


def revolve(curve: ProfileCurve, resolution: int = 32) -> RevolutionMesh:
    """Revolve a profile about the T-axis into a triangle mesh.

    Vertices are ``(rho cos phi, rho sin phi, t)``.  Profile rows with
    ``rho = 0`` become single pole vertices closed off by triangle fans, so
    a PD profile (which starts and ends on the axis) gives a closed surface.
    """
    if int(resolution) != resolution or resolution < 8:
        raise DomainError(f"resolution must be an integer >= 8, got {resolution}")
    n = int(resolution)
    phis = [2.0 * math.pi * k / n for k in range(n)]
    trig = [(math.cos(a), math.sin(a)) for a in phis]
    vertices: List[Tuple[float, float, float]] = []
    rings: List[List[int]] = []
    for rho, t in curve.samples:
        if rho == 0.0:
            rings.append([len(vertices)])
            vertices.append((0.0, 0.0, t))
            continue
        start = len(vertices)
        vertices.extend((rho * c, rho * s, t) for c, s in trig)
        rings.append(list(range(start, start + n)))
    faces: List[Tuple[int, int, int]] = []
    for upper, lower in zip(rings, rings[1:]):
        if len(upper) == 1 and len(lower) == 1:
            continue
        if len(upper) == 1:
            pole = upper[0]
            faces.extend((pole, lower[k], lower[(k + 1) % n]) for k in range(n))
        elif len(lower) == 1:
            pole = lower[0]
            faces.extend((upper[k], pole, upper[(k + 1) % n]) for k in range(n))
        else:
            for k in range(n):
                k1 = (k + 1) % n
                faces.append((upper[k], lower[k], lower[k1]))
                faces.append((upper[k], lower[k1], upper[k1]))
    return RevolutionMesh(vertices, faces)


def mesh_residuals(mesh: RevolutionMesh, family: str, g: float) -> List[float]:
    norm = unit_function(family, g)
    return [abs(norm(t, math.hypot(x, y)) - 1.0) for x, y, t in mesh.vertices]


# ------------------------------------------------------------------ writers


def _write(path, text: str) -> None:
    with open(Path(path), "w", encoding="ascii", newline="\n") as fh:
        fh.write(text)


def profile_csv(curve: ProfileCurve) -> str:
    lines = [f"# family: {curve.family}", f"# g: {fmt(curve.g)}"]
    if curve.sector is not None:
        lines.append(f"# sector: {curve.sector}")
    lines.append("rho,t")
    lines.extend(f"{fmt(rho)},{fmt(t)}" for rho, t in curve.samples)
    return "\n".join(lines) + "\n"


def write_profile_csv(curve: ProfileCurve, path) -> None:
    _write(path, profile_csv(curve))


def mesh_obj(mesh: RevolutionMesh) -> str:
    lines = [f"v {fmt(x)} {fmt(y)} {fmt(z)}" for x, y, z in mesh.vertices]
    lines.extend(f"f {a + 1} {b + 1} {c + 1}" for a, b, c in mesh.faces)
    return "\n".join(lines) + "\n"


def write_mesh_obj(mesh: RevolutionMesh, path) -> None:
    _write(path, mesh_obj(mesh))


def read_obj(path) -> RevolutionMesh:
    """Parse the ``v``/``f`` subset written by :func:`write_mesh_obj`."""
    vertices, faces = [], []
    for line in Path(path).read_text().splitlines():
        parts = line.split()
        if not parts:
            continue
        if parts[0] == "v":
            vertices.append(tuple(float(x) for x in parts[1:4]))
        elif parts[0] == "f":
            faces.append(tuple(int(x.split("/")[0]) - 1 for x in parts[1:4]))
    return RevolutionMesh(vertices, faces)


# ------------------------------------------------------------- landmark sweep


def landmark_sweep(family: str, g_min: float, g_max: float, steps: int) -> Tuple[List[str], List[List[float]]]:
    """Landmark quantities on ``steps`` evenly spaced values of ``g``.

    PD rows with ``|g| >= 2`` are outside the family and are dropped.
    """
    if int(steps) != steps or steps < 2:
        raise DomainError(f"steps must be an integer >= 2, got {steps}")
    if not (math.isfinite(g_min) and math.isfinite(g_max)):
        raise DomainError("g range must be finite")
    rows = []
    if family == "pd":
        header = ["g", "t1", "t2", "f", "k"]
        for g in np.linspace(g_min, g_max, int(steps)):
            if not -2.0 < g < 2.0:
                continue
            lm = pd.pd_landmarks(pd.make_pd_params(g))
            rows.append([float(g), lm.t1, lm.t2, lm.f, lm.k])
    elif family == "sr":
        header = ["g", "c", "z", "s"]
        for g in np.linspace(g_min, g_max, int(steps)):
            lm = sr.sr_landmarks(sr.make_sr_params(g))
            rows.append([float(g), lm.c, lm.z, lm.s])
    else:
        raise DomainError(f"unknown family {family!r}; expected 'pd' or 'sr'")
    return header, rows


def sweep_csv(header: Sequence[str], rows: Sequence[Sequence[float]]) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(fmt(x) for x in row) for row in rows)
    return "\n".join(lines) + "\n"
