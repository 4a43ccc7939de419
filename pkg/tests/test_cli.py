"""Command-line behavior: exit codes, report shapes, determinism."""

import json

import pytest

from latticegas.cli import run


def run_capture(capsys, argv):
    code = run(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, argv):
    code, out, _ = run_capture(capsys, argv)
    return code, json.loads(out)


def test_forces_verify_reports_unit_maximum(capsys):
    code, body = run_json(capsys, ["forces", "verify", "--d2", "5"])
    assert code == 0
    assert body["results"]["fstar"] == "1/1"
    assert body["results"]["config_count"] == 82
    assert body["results"]["signatures"] == [[0], [1, 2], [2, 2, 2]]


def test_census_matches_known_count(capsys):
    code, body = run_json(capsys, ["pc", "census", "--d2", "10"])
    assert code == 0
    assert body["results"]["census"] == 208


def test_r3_brute_example(capsys):
    code, body = run_json(capsys, ["sublat", "r3", "--ell", "7", "--brute"])
    assert code == 0
    assert body["results"]["r3"] == 54
    code, body = run_json(capsys, ["sublat", "r3", "--ell", "7"])
    assert body["results"]["r3"] == 54


def test_build_check_round_trip(tmp_path, capsys):
    code, out, _ = run_capture(
        capsys, ["pc", "build", "--d2", "5", "--family", "d5", "--seq", "01"]
    )
    assert code == 0
    cfg = tmp_path / "pc.json"
    cfg.write_text(out, encoding="utf-8")
    code, body = run_json(capsys, ["pc", "check", "--d2", "5", "--in", str(cfg)])
    assert code == 0
    assert body["results"] == {
        "admissible": True,
        "perfect": True,
        "density": "1/9",
        "shift_count": 18,
    }


def test_check_fails_with_exit_one_on_imperfect_input(tmp_path, capsys):
    cfg = tmp_path / "thin.json"
    cfg.write_text(
        json.dumps({"basis": [[4, 0, 0], [0, 4, 0], [0, 0, 4]], "offsets": [[0, 0, 0]], "d2": 2}),
        encoding="utf-8",
    )
    code, body = run_json(capsys, ["pc", "check", "--d2", "2", "--in", str(cfg)])
    assert code == 1
    assert body["results"]["perfect"] is False
    assert body["results"]["admissible"] is True


def test_usage_errors_exit_two(capsys):
    assert run(["forces", "verify"]) == 2
    capsys.readouterr()
    assert run(["forces", "verify", "--d2", "11"]) == 2
    capsys.readouterr()
    assert run(["nonsense"]) == 2
    capsys.readouterr()
    assert run(["pc", "build", "--d2", "5", "--family", "d5"]) == 2
    capsys.readouterr()
    assert run(["pc", "check", "--d2", "5", "--in", "/no/such/file.json"]) == 2
    capsys.readouterr()


def test_table_densities_rows(capsys):
    code, body = run_json(capsys, ["table", "densities"])
    assert code == 0
    rows = body["results"]["rows"]
    assert [9, 120, "1/20"] in rows
    assert [4, "ℵ₀", "1/8"] in rows
    assert [18, "ℵ₀", "1/54"] in rows


def test_exc_pipeline(tmp_path, capsys):
    code, out, _ = run_capture(
        capsys, ["pc", "build", "--d2", "5", "--family", "d5", "--seq", "01"]
    )
    cfg = tmp_path / "pc.json"
    cfg.write_text(out, encoding="utf-8")

    code, body = run_json(
        capsys, ["exc", "classify", "--d2", "5", "--pc", str(cfg), "--site", "0,2,1"]
    )
    assert code == 0 and body["results"]["type"] == "IIa"

    ins = tmp_path / "ins.json"
    ins.write_text(json.dumps({"sites": [[0, 2, 1]]}), encoding="utf-8")
    code, body = run_json(
        capsys, ["exc", "report", "--d2", "5", "--pc", str(cfg), "--insert", str(ins)]
    )
    assert code == 0
    assert body["results"]["energy"] == 2
    assert body["results"]["type"] == "IIa"
    assert all(pair[1] == "2/3" for pair in body["results"]["excesses"])

    code, body = run_json(capsys, ["exc", "iia-density", "--pc", str(cfg)])
    assert code == 0
    assert body["results"] == {"count": 2, "density": "1/9"}


def test_window_census_default_background(capsys):
    code, body = run_json(
        capsys, ["exc", "window-census", "--d2", "5", "--layers", "2", "--radius", "6"]
    )
    assert code == 0
    assert body["results"]["all_terminal_iia"] is True
    assert len(body["results"]["survivors"]) == 6


def test_sublat_enumerate_csv(capsys):
    code, out, _ = run_capture(capsys, ["sublat", "enumerate", "--ell", "3", "--format", "csv"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "b11,b12,b13,b21,b22,b23,b31,b32,b33,class_id,stabilizer_order"
    assert len(lines) == 6
    assert all(len(line.split(",")) == 11 for line in lines[1:])


def test_sublat_classes_reports_the_flag(capsys):
    code, body = run_json(capsys, ["sublat", "classes", "--ell", "9"])
    assert code == 0
    assert body["results"]["mismatched_sizes"] == [12]
    assert body["results"]["oracle_histogram"] == {"1": 1, "4": 1, "12": 1}


def test_sublat_quaternion(capsys):
    code, body = run_json(capsys, ["sublat", "quaternion", "1,1,0,0"])
    assert code == 0
    assert body["results"]["norm_sq"] == 2
    assert body["results"]["sublattice_basis"] == [[2, 0, 0], [0, 2, 0], [0, 0, 2]]
    assert run(["sublat", "quaternion", "0,0,0,0"]) == 2
    capsys.readouterr()


def test_fcc_join(capsys):
    code, body = run_json(capsys, ["sublat", "enumerate", "--ell", "2", "--fcc"])
    assert code == 0
    assert body["results"]["pcs_total"] == 16


def test_json_output_is_byte_identical(capsys):
    _, out1, _ = run_capture(capsys, ["pc", "census", "--d2", "9"])
    _, out2, _ = run_capture(capsys, ["pc", "census", "--d2", "9"])
    assert out1 == out2


def test_threads_hint_does_not_change_results(capsys):
    _, out1, _ = run_capture(capsys, ["forces", "verify", "--d2", "3"])
    _, out2, _ = run_capture(capsys, ["forces", "verify", "--d2", "3", "--threads", "8"])
    body1, body2 = json.loads(out1), json.loads(out2)
    assert body1["results"] == body2["results"]


def test_no_json_renders_text(capsys):
    code, out, _ = run_capture(capsys, ["forces", "verify", "--d2", "5", "--no-json"])
    assert code == 0
    assert "fstar = 1/1" in out
    with pytest.raises(json.JSONDecodeError):
        json.loads(out)


def test_progress_goes_to_stderr_only(capsys):
    _, out, err = run_capture(capsys, ["pc", "census", "--d2", "9"])
    assert "enumerating" in err
    json.loads(out)


def test_slide_subcommand(capsys):
    code, body = run_json(capsys, ["pc", "slide", "--l", "2", "--n", "9"])
    assert code == 0
    assert body["results"] == {"removed": 4, "bound": 8, "within_bound": True}
