import json

import pytest

from normalvol import cli, normalcx

from conftest import QUADRANT_JSON

GRAM2 = {"gram": [["1", "0"], ["0", "1"]]}


@pytest.fixture
def quadrant_files(tmp_path):
    paths = {}
    paths["fan"] = tmp_path / "fan.json"
    paths["fan"].write_text(json.dumps(QUADRANT_JSON))
    paths["gram"] = tmp_path / "gram.json"
    paths["gram"].write_text(json.dumps(GRAM2))
    paths["z"] = tmp_path / "z.json"
    paths["z"].write_text(json.dumps({"z": {"r1": "1", "r2": "2", "r3": "3", "r4": "4"}}))
    paths["z2"] = tmp_path / "z2.json"
    paths["z2"].write_text(json.dumps({"z": {"r1": "2", "r2": "1", "r3": "1", "r4": "2"}}))
    paths["z0"] = tmp_path / "z0.json"
    paths["z0"].write_text(json.dumps({"z": {"r1": "0", "r2": "0", "r3": "0", "r4": "0"}}))
    return {k: str(v) for k, v in paths.items()}


def run(capsys, argv):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_fan_validate_pass(quadrant_files, capsys):
    code, out, _ = run(capsys, ["fan-validate", "--fan", quadrant_files["fan"]])
    assert code == 0
    report = json.loads(out)
    assert report["valid"] and report["tropical"]


def test_fan_validate_nontropical(tmp_path, capsys):
    raw = {
        "ambient_dim": 1,
        "rays": [{"id": "p", "u": ["1"]}, {"id": "m", "u": ["-1"]}],
        "max_cones": [{"rays": ["p"], "weight": "1"}, {"rays": ["m"], "weight": "2"}],
    }
    path = tmp_path / "fan.json"
    path.write_text(json.dumps(raw))
    code, out, _ = run(capsys, ["fan-validate", "--fan", str(path)])
    assert code == 2
    report = json.loads(out)
    assert report["valid"] and not report["tropical"]
    assert report["failing_cones"] == [[]]


def test_fan_validate_invalid_json_fan(tmp_path, capsys):
    raw = dict(QUADRANT_JSON, max_cones=[{"rays": ["r1", "r2"], "weight": "1"}])
    path = tmp_path / "fan.json"
    path.write_text(json.dumps(raw))
    code, out, _ = run(capsys, ["fan-validate", "--fan", str(path)])
    assert code == 2
    assert not json.loads(out)["valid"]


def test_volume_single_method(quadrant_files, capsys):
    code, out, _ = run(
        capsys,
        [
            "volume",
            "--fan",
            quadrant_files["fan"],
            "--gram",
            quadrant_files["gram"],
            "--z",
            quadrant_files["z"],
        ],
    )
    assert code == 0
    assert out.strip() == "48"


def test_volume_all_methods_agree(quadrant_files, capsys):
    code, out, _ = run(
        capsys,
        [
            "volume",
            "--fan",
            quadrant_files["fan"],
            "--gram",
            quadrant_files["gram"],
            "--z",
            quadrant_files["z"],
            "--all",
        ],
    )
    assert code == 0
    report = json.loads(out)
    assert report["agree"]
    assert set(report["values"]) == {"recursive", "poly", "geom", "chow"}
    assert set(report["values"].values()) == {"48"}


def test_volume_zero(quadrant_files, capsys):
    code, out, _ = run(
        capsys,
        [
            "volume",
            "--fan",
            quadrant_files["fan"],
            "--gram",
            quadrant_files["gram"],
            "--z",
            quadrant_files["z0"],
        ],
    )
    assert code == 0 and out.strip() == "0"


def test_mixed_volume(quadrant_files, capsys):
    argv = [
        "mixed-volume",
        "--fan",
        quadrant_files["fan"],
        "--gram",
        quadrant_files["gram"],
        "--z",
        quadrant_files["z"],
        "--z",
        quadrant_files["z2"],
    ]
    code, out, _ = run(capsys, argv)
    assert code == 0 and out.strip() == "30"
    code, out, _ = run(capsys, argv + ["--all"])
    assert code == 0
    report = json.loads(out)
    assert report["agree"] and set(report["values"].values()) == {"30"}


def test_deg(quadrant_files, capsys):
    code, out, _ = run(
        capsys,
        [
            "deg",
            "--fan",
            quadrant_files["fan"],
            "--z",
            quadrant_files["z"],
            "--z",
            quadrant_files["z2"],
        ],
    )
    assert code == 0 and out.strip() == "30"


def test_cubical_find(quadrant_files, capsys):
    code, out, _ = run(
        capsys,
        ["cubical-find", "--fan", quadrant_files["fan"], "--gram", quadrant_files["gram"]],
    )
    assert code == 0
    report = json.loads(out)
    assert report["cubical_nonempty"]
    assert report["z"] == {"r1": "1/4", "r2": "1/4", "r3": "1/4", "r4": "1/4"}
    assert report["slack"] == "1/4"


def test_cubical_find_empty_exits_3(quadrant_files, capsys, monkeypatch):
    monkeypatch.setattr(normalcx, "find_cubical", lambda ctx: None)
    code, out, _ = run(
        capsys,
        ["cubical-find", "--fan", quadrant_files["fan"], "--gram", quadrant_files["gram"]],
    )
    assert code == 3
    assert not json.loads(out)["cubical_nonempty"]


def test_af_check_explicit(quadrant_files, capsys):
    code, out, _ = run(
        capsys,
        [
            "af-check",
            "--fan",
            quadrant_files["fan"],
            "--gram",
            quadrant_files["gram"],
            "--z",
            quadrant_files["z"],
            "--z",
            quadrant_files["z2"],
        ],
    )
    assert code == 0
    report = json.loads(out)
    assert report["verdict"] == "pass" and not report["sampled"]
    assert len(report["margins"]) == 1


def test_af_check_sampled_deterministic(quadrant_files, capsys):
    argv = [
        "af-check",
        "--fan",
        quadrant_files["fan"],
        "--gram",
        quadrant_files["gram"],
        "--samples",
        "5",
        "--seed",
        "7",
    ]
    code1, out1, _ = run(capsys, argv)
    code2, out2, _ = run(capsys, argv)
    assert code1 == code2 == 0
    assert out1 == out2
    report = json.loads(out1)
    assert report["sampled"] and report["seed"] == 7 and len(report["margins"]) == 5


def test_af_check_undefined_exits_3(quadrant_files, capsys, monkeypatch):
    monkeypatch.setattr(cli.af, "sample_cubical", lambda ctx, count, seed: [])
    code, out, _ = run(
        capsys,
        ["af-check", "--fan", quadrant_files["fan"], "--gram", quadrant_files["gram"]],
    )
    assert code == 3
    assert json.loads(out)["verdict"] == "undefined"


def test_reduce_check(quadrant_files, capsys):
    code, out, _ = run(
        capsys,
        ["reduce-check", "--fan", quadrant_files["fan"], "--gram", quadrant_files["gram"]],
    )
    assert code == 0
    report = json.loads(out)
    assert report["verdict"] == "pass"
    assert report["condition_i"]["pass"] and report["condition_ii"]["pass"]
    sig = report["condition_ii"]["signatures"][0]
    assert (sig["n_plus"], sig["n_minus"]) == (1, 1)
    assert report["cubical_witness"] is not None


def test_hrw(tmp_path, capsys):
    matroid = tmp_path / "m.json"
    matroid.write_text(json.dumps({"kind": "uniform", "ground_set": ["a", "b", "c"], "rank": 2}))
    out_path = tmp_path / "report.json"
    code, out, _ = run(capsys, ["hrw", "--matroid", str(matroid), "--out", str(out_path)])
    assert code == 0
    report = json.loads(out)
    assert report["verdict"] == "pass"
    assert report["mubar"] == [1, 2] and report["mu"] == [1, 3, 2]
    assert report["e0"] == "a"
    # the embedded fan JSON re-parses to a valid fan
    from normalvol.fan import build_fan

    fan = build_fan(report["bergman_fan"])
    assert fan.d == 1 and sorted(fan.rays) == ["a", "b", "c"]
    assert json.loads(out_path.read_text()) == report


def test_export_mesh(quadrant_files, tmp_path, capsys):
    out_path = tmp_path / "mesh.obj"
    code, out, _ = run(
        capsys,
        [
            "export-mesh",
            "--fan",
            quadrant_files["fan"],
            "--gram",
            quadrant_files["gram"],
            "--z",
            quadrant_files["z"],
            "--out",
            str(out_path),
        ],
    )
    assert code == 0
    report = json.loads(out)
    assert report["cones"] == 4 and report["vertices"] == 16
    text = out_path.read_text()
    assert text.count("g cone_") == 4
    assert sum(1 for line in text.splitlines() if line.startswith("v ")) == 16
    assert sum(1 for line in text.splitlines() if line.startswith("f ")) == 8


def test_caps_env(quadrant_files, capsys, monkeypatch):
    monkeypatch.setenv("NORMALVOL_CAPS", "max_dim=1")
    code, _, err = run(capsys, ["fan-validate", "--fan", quadrant_files["fan"]])
    assert code == 2
    monkeypatch.setenv("NORMALVOL_CAPS", "max_widgets=1")
    code, _, err = run(capsys, ["fan-validate", "--fan", quadrant_files["fan"]])
    assert code == 2
    assert "unknown cap" in json.loads(err)["error"]


def test_error_reported_on_stderr(quadrant_files, capsys, tmp_path):
    bad_gram = tmp_path / "bad.json"
    bad_gram.write_text(json.dumps({"gram": [["1", "2"], ["0", "1"]]}))
    code, out, err = run(
        capsys,
        [
            "volume",
            "--fan",
            quadrant_files["fan"],
            "--gram",
            str(bad_gram),
            "--z",
            quadrant_files["z"],
        ],
    )
    assert code == 2 and out == ""
    assert "error" in json.loads(err)
