import math

import numpy as np
import pytest

from finsleroid import export as ex
from finsleroid import hamiltonian as hm
from finsleroid import pd_metric as pd
from finsleroid import sr_metric as sr
from finsleroid.errors import DomainError


def test_fmt_round_trips():
    for x in (0.1, -1.0 / 3.0, 1e-300, 2.0**60, -0.0):
        assert float(ex.fmt(x)) == x
    assert ex.fmt(-0.0) == "0"
    assert ex.fmt(1.0) == "1"


def test_pd_g0_is_quarter_circle_steps():
    curve = ex.trace_profile(ex.PD_INDICATRIX, 0.0, samples=5)
    expected = [(0.0, 1.0), (math.sqrt(0.5), math.sqrt(0.5)), (1.0, 0.0), (math.sqrt(0.5), -math.sqrt(0.5)), (0.0, -1.0)]
    assert len(curve.samples) == 5
    for (rho, t), (er, et) in zip(curve.samples, expected):
        assert rho == pytest.approx(er, abs=1e-15) and t == pytest.approx(et, abs=1e-15)


@pytest.mark.parametrize("family", [ex.PD_INDICATRIX, ex.PD_FIGURATRIX])
@pytest.mark.parametrize("g", [-1.9, -0.5, 0.0, 1.0, 1.9])
def test_pd_profiles_hit_landmarks(family, g):
    curve = ex.trace_profile(family, g, samples=33)
    p = pd.make_pd_params(g)
    if family == ex.PD_INDICATRIX:
        lm = pd.pd_landmarks(p)
        top, bottom, apex = lm.t2, lm.t1, (lm.k, lm.f)
    else:
        co = hm.co_landmarks(p)
        top, bottom, apex = co.t1_co, co.t2_co, (co.k_hat, co.f_hat)
    assert curve.samples[0] == (0.0, pytest.approx(top, rel=1e-14))
    assert curve.samples[-1] == (0.0, pytest.approx(bottom, rel=1e-14))
    assert curve.t_extent == (pytest.approx(bottom, rel=1e-14), pytest.approx(top, rel=1e-14))
    assert any(r == pytest.approx(1.0, abs=1e-14) and t == 0.0 for r, t in curve.samples)
    assert any(r == pytest.approx(apex[0], rel=1e-12) and t == pytest.approx(apex[1], rel=1e-12, abs=1e-15)
               for r, t in curve.samples)
    assert max(curve.residuals()) <= 1e-12


def test_pd_g1_first_row():
    curve = ex.trace_profile(ex.PD_INDICATRIX, 1.0)
    assert curve.samples[0][0] == 0.0
    assert curve.samples[0][1] == pytest.approx(0.5463, abs=1e-4)


def test_sr_mixed_sector_contains_turning_point():
    curve = ex.trace_profile(ex.SR_HYPERBOLOID, 1.0, sector=sr.MIXED)
    assert curve.sector == sr.MIXED
    assert any(r == pytest.approx(0.8064, abs=1e-4) and t == pytest.approx(0.8064, abs=1e-4) for r, t in curve.samples)
    assert any(t == 0.0 and r == pytest.approx(1.2401, abs=1e-4) for r, t in curve.samples)
    assert max(curve.residuals()) <= 1e-12
    q = sr.make_sr_params(1.0, dim=2)
    assert all(sr.sector(q, [t, r]) == sr.MIXED for r, t in curve.samples)


@pytest.mark.parametrize("family", [ex.SR_HYPERBOLOID, ex.SR_CO_HYPERBOLOID])
@pytest.mark.parametrize("sector", ex.SR_SECTORS)
def test_sr_profiles_stay_in_sector(family, sector):
    g = 0.7
    curve = ex.trace_profile(family, g, samples=20, sector=sector)
    assert max(curve.residuals()) <= 1e-12
    assert len(curve.samples) >= 20
    if sector == sr.FORWARD:
        assert curve.samples[0] == (0.0, 1.0)
    if sector == sr.BACKWARD:
        assert curve.samples[-1] == (0.0, -1.0)


def test_profile_argument_errors():
    with pytest.raises(DomainError):
        ex.trace_profile(ex.PD_INDICATRIX, 0.5, samples=2)
    with pytest.raises(DomainError):
        ex.trace_profile("torus", 0.5)
    with pytest.raises(DomainError):
        ex.trace_profile(ex.PD_INDICATRIX, 2.0)
    with pytest.raises(DomainError):
        ex.trace_profile(ex.SR_HYPERBOLOID, 0.5, sector="sideways")
    with pytest.raises(DomainError):
        ex.trace_profile(ex.SR_HYPERBOLOID, 0.5, cone_margin=0.0)


def test_csv_format():
    text = ex.profile_csv(ex.trace_profile(ex.SR_HYPERBOLOID, 1.0, samples=4, sector=sr.MIXED))
    lines = text.split("\n")
    assert lines[:4] == ["# family: sr-hyperboloid", "# g: 1", "# sector: mixed", "rho,t"]
    assert text.endswith("\n") and "\r" not in text
    pd_text = ex.profile_csv(ex.trace_profile(ex.PD_INDICATRIX, 1.0, samples=4))
    assert "# sector" not in pd_text
    rows = [list(map(float, ln.split(","))) for ln in pd_text.splitlines()[3:]]
    assert rows[0][0] == 0.0


def test_write_csv(tmp_path):
    curve = ex.trace_profile(ex.PD_FIGURATRIX, -0.3, samples=9)
    path = tmp_path / "p.csv"
    ex.write_profile_csv(curve, path)
    assert path.read_bytes() == ex.profile_csv(curve).encode("ascii")


@pytest.mark.parametrize("g", [-1.9, 0.0, 1.0])
def test_pd_mesh_is_closed_sphere(g):
    mesh = ex.revolve(ex.trace_profile(ex.PD_INDICATRIX, g, samples=17), resolution=12)
    assert mesh.euler_characteristic() == 2
    assert mesh.is_watertight()
    assert max(ex.mesh_residuals(mesh, ex.PD_INDICATRIX, g)) <= 1e-8


def test_g0_mesh_is_unit_sphere():
    mesh = ex.revolve(ex.trace_profile(ex.PD_INDICATRIX, 0.0, samples=21), resolution=16)
    radii = np.linalg.norm(np.array(mesh.vertices), axis=1)
    assert np.allclose(radii, 1.0, atol=1e-8)


def test_sr_mesh_is_open():
    fwd = ex.revolve(ex.trace_profile(ex.SR_HYPERBOLOID, 0.5, samples=10), resolution=8)
    assert fwd.euler_characteristic() == 1
    assert not fwd.is_watertight()
    mixed = ex.revolve(ex.trace_profile(ex.SR_HYPERBOLOID, 0.5, samples=10, sector=sr.MIXED), resolution=8)
    assert mixed.euler_characteristic() == 0


def test_obj_round_trip(tmp_path):
    mesh = ex.revolve(ex.trace_profile(ex.PD_INDICATRIX, 1.0, samples=9), resolution=10)
    path = tmp_path / "m.obj"
    ex.write_mesh_obj(mesh, path)
    back = ex.read_obj(path)
    assert back.vertices == mesh.vertices
    assert back.faces == mesh.faces
    assert min(min(f) for f in mesh.faces) == 0
    assert "f 1 " in path.read_text()
    with pytest.raises(DomainError):
        ex.revolve(ex.trace_profile(ex.PD_INDICATRIX, 1.0), resolution=7)


def test_pd_sweep():
    header, rows = ex.landmark_sweep("pd", -1.0, 1.0, 3)
    assert header == ["g", "t1", "t2", "f", "k"]
    assert rows[1] == [0.0, -1.0, 1.0, 0.0, 1.0]
    for g, t1, t2, f, k in rows:
        assert t1 < 0 < t2 and k > 0
    # the apex height is odd in g
    assert rows[0][3] == pytest.approx(-rows[2][3], rel=1e-14)
    _, clipped = ex.landmark_sweep("pd", -3.0, 3.0, 7)
    assert [r[0] for r in clipped] == [-1.0, 0.0, 1.0]


def test_sr_sweep_and_csv():
    header, rows = ex.landmark_sweep("sr", -2.0, 3.0, 6)
    assert header == ["g", "c", "z", "s"]
    for _, c, z, _s in rows:
        assert c * z == pytest.approx(1.0, rel=1e-14)
    text = ex.sweep_csv(header, rows)
    assert text.splitlines()[0] == "g,c,z,s"
    assert len(text.splitlines()) == 7
    with pytest.raises(DomainError):
        ex.landmark_sweep("sr", 0.0, 1.0, 1)
    with pytest.raises(DomainError):
        ex.landmark_sweep("xx", 0.0, 1.0, 3)
    with pytest.raises(DomainError):
        ex.landmark_sweep("pd", -math.inf, 1.0, 3)
