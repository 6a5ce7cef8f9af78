import json
import subprocess
import sys

from finsleroid import export as ex
from finsleroid.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_eval_examples(capsys):
    assert run(capsys, "eval", "--family", "pd", "--g", "0", "--point", "3,4,0,0") == (0, "K = 5\n", "")
    code, out, _ = run(capsys, "eval", "--family", "pd", "--g", "1", "--point", "0,0.6,0.8,0")
    assert code == 0 and abs(float(out.split("=")[1]) - 1.0) <= 1e-15
    code, out, _ = run(capsys, "eval", "--family", "sr", "--g", "0", "--point", "5,3,0,0")
    assert code == 0 and out == "F_SR = 4\nsector = forward\n"


def test_eval_dual_momenta_eigen(capsys):
    code, out, _ = run(capsys, "eval", "--g", "-0.5", "--point", "-1,0.2,0,0.3", "--dual", "--momenta", "--eigen")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("H = ") and lines[1].startswith("R^ = ") and lines[2].startswith("eigenvalues = ")
    eig = [float(x) for x in lines[2].split("=")[1].split(",")]
    assert len(eig) == 4 and min(eig) > 0
    code, out, _ = run(capsys, "eval", "--family", "sr", "--g", "1", "--dim", "3", "--point", "0,1,0", "--momenta")
    assert code == 0 and "sector = mixed" in out and "gradient = " in out


def test_eval_errors(capsys):
    code, _, err = run(capsys, "eval", "--g", "1", "--point", "1,2,3")
    assert code == 2 and "--dim" in err
    code, _, err = run(capsys, "eval", "--g", "2.5", "--point", "1,0,0,0")
    assert code == 2 and err.startswith("error:")
    code, _, err = run(capsys, "eval", "--g", "1", "--point", "a,b,c,d")
    assert code == 2
    assert run(capsys, "eval", "--point", "1,0,0,0")[0] == 2


def test_profile_stdout_and_file(capsys, tmp_path):
    code, out, _ = run(capsys, "profile", "--g", "1", "--samples", "9")
    assert code == 0
    assert out == ex.profile_csv(ex.trace_profile(ex.PD_INDICATRIX, 1.0, 9))
    path = tmp_path / "p.csv"
    code, _, _ = run(capsys, "profile", "--family", "sr", "--g", "-1", "--sector", "mixed", "--out", str(path))
    assert code == 0 and "# sector: mixed" in path.read_text()


def test_mesh(capsys, tmp_path):
    path = tmp_path / "m.obj"
    assert run(capsys, "mesh", "--g", "0.5", "--resolution", "12", "--out", str(path))[0] == 0
    mesh = ex.read_obj(path)
    assert mesh.euler_characteristic() == 2 and mesh.is_watertight()
    assert run(capsys, "mesh", "--g", "0.5", "--resolution", "4", "--out", str(path))[0] == 2
    assert run(capsys, "mesh", "--g", "0.5", "--out", str(tmp_path / "missing" / "m.obj"))[0] == 2


def test_sweep_negative_values(capsys):
    code, out, _ = run(capsys, "sweep", "--g-min", "-1", "--g-max", "1", "--steps", "3")
    assert code == 0
    assert out.splitlines()[2] == "0,-1,1,0,1"
    assert run(capsys, "sweep", "--steps", "1")[0] == 2


def test_verify_grid_zero(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify", "--grid", "0", "--out", str(path))
    assert code == 0
    doc = json.loads(path.read_text())
    assert all(entry["pass"] for entry in doc)
    assert "checks passed" in out


def test_verify_negative_grid_and_family(capsys):
    code, out, _ = run(capsys, "verify", "--grid", "-0.5,3", "--family", "sr")
    assert code == 0 and "sr." in out and "pd." not in out


def test_verify_rejects_pd_out_of_range(capsys):
    code, _, err = run(capsys, "verify", "--grid", "3", "--family", "pd")
    assert code == 2 and "-2 < g < 2" in err


def test_verify_default_reports_duality_gap(capsys):
    # the closed-form Hamiltonian is not normalised as an exact Legendre dual,
    # so the unnormalised duality checks fail away from g = 0
    code, out, _ = run(capsys, "verify", "--family", "pd")
    assert code == 1
    assert "dual.j_reciprocity" in out


def test_version_and_help(capsys):
    assert run(capsys, "--version")[0] == 0
    assert run(capsys, "bogus")[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "finsleroid", "eval", "--g", "0", "--point", "3,4,0,0"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "K = 5\n"
