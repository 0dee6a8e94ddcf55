import json
import math

import pytest

from ruledlie import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def cfg(tmp_path, name="scn.json", **kw):
    base = {"name": "t", "algebra": "so3", "curve": {"name": "circle"},
            "surface": {"family": "general", "director": [0, 0, 1]},
            "grid": {"s": [0, 1, 3], "v": [0, 1, 2]}}
    base.update(kw)
    p = tmp_path / name
    p.write_text(json.dumps(base))
    return str(p)


def test_validate_exit_codes(capsys, tmp_path, configs_dir):
    assert run(capsys, "validate", "--config", cfg(tmp_path))[0] == 0
    code, out, _ = run(capsys, "validate", "--config", str(configs_dir / "not_antisymmetric.json"))
    assert code == 1 and "antisymmetry" in json.loads(out)["violations"]
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "validate", "--config", str(bad))[0] == 2
    assert run(capsys, "validate")[0] == 2


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["frobnicate"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["validate", "--jobs", "many"])
    assert exc.value.code == 2
    assert run(capsys, "example-cylinder", "--jobs", "0")[0] == 2


def test_surface_report_files(capsys, tmp_path, configs_dir):
    out = tmp_path / "o"
    code, stdout, _ = run(capsys, "surface-report", "--config", str(configs_dir / "cylinder_so3.json"),
                          "--out", str(out))
    assert code == 0
    summary = json.loads((out / "summary.json").read_text())
    assert summary == json.loads(stdout)
    assert summary["lambda"] == 2 and summary["classification"]["developable"] is False
    header = (out / "surface.csv").read_text().splitlines()[0]
    assert header.split(",")[:16] == ["s", "v", "E", "F", "G", "e", "f", "g", "K", "H", "lambda",
                                      "kappa_g", "kappa_n", "tau_g", "point_type", "pipeline"]
    lines = (out / "surface.csv").read_text().splitlines()
    assert len(lines) == 1 + 25 * 9 * 2
    echoed = json.loads((out / "scenario.json").read_text())
    assert echoed["name"] == "cylinder-so3"


@pytest.mark.parametrize("name, developable, types", [
    ("helix_tangent_developable.json", True, ["parabolic"]),
    ("cylinder_abelian.json", True, ["parabolic"]),
    ("helix_binormal.json", False, ["hyperbolic"]),
])
def test_surface_report_classification(capsys, tmp_path, configs_dir, name, developable, types):
    code, stdout, _ = run(capsys, "surface-report", "--config", str(configs_dir / name), "--out", str(tmp_path))
    cls = json.loads(stdout)["classification"]
    assert code == 0 and cls["developable"] is developable and cls["point_types"] == types


def test_singular_cells_flagged(capsys, tmp_path):
    path = cfg(tmp_path, curve={"name": "helix", "a": 0.8, "b": 0.6},
               surface={"family": "tangent-developable"}, grid={"s": [0, 1, 2], "v": [0, 1, 2]})
    assert run(capsys, "surface-report", "--config", path, "--out", str(tmp_path))[0] == 0
    rows = (tmp_path / "surface.csv").read_text().splitlines()[1:]
    flagged = [r for r in rows if r.endswith(",true")]
    assert len(flagged) == 4 and all(",singular," in r for r in flagged)


def test_outputs_deterministic_and_jobs_invariant(capsys, tmp_path, configs_dir):
    c = str(configs_dir / "helix_normal.json")
    run(capsys, "surface-report", "--config", c, "--out", str(tmp_path / "a"))
    run(capsys, "surface-report", "--config", c, "--out", str(tmp_path / "b"), "--jobs", "4")
    for f in ("surface.csv", "summary.json", "scenario.json"):
        assert (tmp_path / "a" / f).read_bytes() == (tmp_path / "b" / f).read_bytes(), f


def test_echoed_scenario_reparses(capsys, tmp_path, configs_dir):
    run(capsys, "surface-report", "--config", str(configs_dir / "custom_constants.json"), "--out", str(tmp_path))
    code, _, _ = run(capsys, "surface-report", "--config", str(tmp_path / "scenario.json"),
                     "--out", str(tmp_path / "again"))
    assert code == 0
    assert (tmp_path / "surface.csv").read_bytes() == (tmp_path / "again" / "surface.csv").read_bytes()


def test_mesh_cylinder(capsys, tmp_path):
    path = cfg(tmp_path, algebra="abelian", grid={"s": [0, 2, 3], "v": [-1, 1, 2]})
    assert run(capsys, "mesh", "--config", path, "--out", str(tmp_path))[0] == 0
    lines = (tmp_path / "mesh.obj").read_text().splitlines()
    verts = [list(map(float, ln.split()[1:])) for ln in lines if ln.startswith("v ")]
    faces = [ln for ln in lines if ln.startswith("f ")]
    assert len(verts) == 6 and faces == ["f 1 3 4 2", "f 3 5 6 4"]
    assert all(math.isclose(x * x + y * y, 1.0, abs_tol=1e-15) for x, y, _ in verts)


def test_mesh_strip_and_counts(capsys, tmp_path):
    path = cfg(tmp_path, grid={"s": [0, 1, 4], "v": [0, 0, 1]})
    run(capsys, "mesh", "--config", path, "--out", str(tmp_path))
    verts = [ln for ln in (tmp_path / "mesh.obj").read_text().splitlines() if ln.startswith("v ")]
    assert len(verts) == 4
    assert verts[0] == "v 1 0 0"
    path = cfg(tmp_path, curve={"name": "helix", "a": 0.8, "b": 0.6},
               surface={"family": "tangent-developable"}, grid={"s": [0, 5, 50], "v": [0, 2, 20]})
    code, out, _ = run(capsys, "mesh", "--config", path, "--out", str(tmp_path / "m"))
    assert json.loads(out) == {"mesh": str(tmp_path / "m" / "mesh.obj"), "vertices": 1000, "faces": 49 * 19}
    text = (tmp_path / "m" / "mesh.obj").read_text()
    run(capsys, "mesh", "--config", path, "--out", str(tmp_path / "m2"))
    assert (tmp_path / "m2" / "mesh.obj").read_text() == text


def test_verify_pass_and_tight_tol_fail(capsys, tmp_path, configs_dir):
    c = str(configs_dir / "cylinder_abelian_fd.json")
    code, out, _ = run(capsys, "verify", "--config", c, "--out", str(tmp_path))
    assert code == 0 and json.loads(out)["passed"]
    code, out, err = run(capsys, "verify", "--config", c, "--tol", "1e-12")
    assert code == 1 and "FAIL" in err
    assert run(capsys, "verify", "--config", str(tmp_path / "nope.json"))[0] == 2


def test_verify_reports_failed_closed_form(capsys, configs_dir):
    code, out, err = run(capsys, "verify", "--config", str(configs_dir / "helix_tangent_developable.json"))
    rep = json.loads(out)
    assert code == 1 and rep["seed"] == 42
    assert any(f.startswith("H:") for f in rep["failures"])
    assert "at (s, v)" in err


def test_verify_seed_override(capsys, configs_dir):
    _, out, _ = run(capsys, "verify", "--config", str(configs_dir / "cylinder_abelian.json"), "--seed", "7")
    assert json.loads(out)["property_suite"]["seed"] == 7


def test_frenet_and_classify(capsys, tmp_path, configs_dir):
    code, out, _ = run(capsys, "frenet", "--config", str(configs_dir / "helix_general_fd.json"),
                       "--out", str(tmp_path))
    assert code == 0 and json.loads(out)["passed"]
    assert (tmp_path / "frenet.csv").read_text().startswith("s,T1,T2,T3")
    code, out, _ = run(capsys, "classify", "--config", str(configs_dir / "helix_normal.json"))
    assert code == 0 and json.loads(out)["minimal"] is True


def test_example_cylinder_command(capsys, tmp_path):
    code, out, _ = run(capsys, "example-cylinder", "--paper-compat", "--out", str(tmp_path))
    rep = json.loads(out)
    assert code == 0 and rep["lambda"] == 2 and "paper_compat" in rep
    assert (tmp_path / "example_cylinder.json").exists()
    _, out, _ = run(capsys, "example-cylinder")
    assert "paper_compat" not in json.loads(out)
