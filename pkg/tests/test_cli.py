import json

import pytest

from bicyclic.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_alg_mul(capsys):
    code, out, _ = run(capsys, "alg", "mul", "y", "x")
    assert code == 0 and out.strip() == "1"


def test_alg_nf(capsys):
    code, out, _ = run(capsys, "alg", "nf", "x*y - x*y")
    assert code == 0 and out.strip() == "0"


def test_alg_eta(capsys):
    code, out, _ = run(capsys, "alg", "eta", "x^2*y")
    assert code == 0 and out.strip() == "x*y^2"


def test_alg_rep(capsys):
    code, out, _ = run(capsys, "alg", "rep", "--dim", "3", "x")
    assert code == 0
    assert out.splitlines() == ["0 0 0", "1 0 0", "0 1 0"]


def test_alg_laurent(capsys):
    code, out, _ = run(capsys, "alg", "laurent", "x^2*y")
    assert code == 0 and out.strip() == "t"


def test_alg_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "alg", "nf", "x^-1")
    assert code == 2
    assert "position 2" in err


def _write(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(json.dumps(data), encoding="utf-8")
    return str(path)


CASE_II = {
    "U": {"type": "inf"},
    "V": {"type": "fin", "lambda": "1"},
    "delta_x": {"cols": {"0": {"coords": {"0": "1"}}}},
}


def test_ext_split(tmp_path, capsys):
    path = _write(tmp_path, "case2_e0.json", CASE_II)
    code, out, _ = run(capsys, "ext", "split", path)
    assert code == 0
    verdict = json.loads(out)
    assert verdict["verdict"] == "nonsplit"
    assert verdict["certificate"]["reeliminated"]


def test_ext_classify(tmp_path, capsys):
    case_i = {
        "U": {"type": "fin", "lambda": "1"},
        "V": {"type": "inf"},
        "delta_x": {"cols": {"0": {"d": "1"}}},
    }
    path = _write(tmp_path, "case1.json", case_i)
    code, out, _ = run(capsys, "ext", "classify", path)
    assert code == 0
    rep = json.loads(out)
    assert rep["case"] == "i"
    assert rep["oracle_verdict"] == "split"
    assert rep["comparison"] == "AGREES"


def test_ext_validate_bad_spec(tmp_path, capsys):
    bad = {
        "U": {"type": "inf"},
        "V": {"type": "fin", "lambda": "1"},
        "delta_x": {"cols": {"0": {"coords": {"1": "1"}}}},
        "delta_y": {"cols": {}},
    }
    path = _write(tmp_path, "bad.json", bad)
    code, out, _ = run(capsys, "ext", "validate", path)
    assert code == 1
    err = json.loads(out)["error"]
    assert err["type"] == "IncompatibleDelta"
    assert err["basis_index"] == 0
    assert err["residual"] == {"0": "1"}


def test_ext_validate_good_spec(tmp_path, capsys):
    path = _write(tmp_path, "ok.json", CASE_II)
    code, out, _ = run(capsys, "ext", "validate", path)
    assert code == 0 and json.loads(out) == {"valid": True}


def test_ext_iso_and_equiv(tmp_path, capsys):
    a = _write(tmp_path, "a.json", CASE_II)
    b_data = dict(CASE_II)
    b_data["delta_x"] = {"cols": {"0": {"coords": {"0": "2"}}}}
    b = _write(tmp_path, "b.json", b_data)
    code, out, _ = run(capsys, "ext", "iso", a, b)
    assert code == 0
    res = json.loads(out)
    assert res["isomorphic"] is True
    code, out, _ = run(capsys, "ext", "equiv", a, b)
    assert code == 0 and json.loads(out) == {"equivalent": True}


def test_ext_iso_shape_mismatch(tmp_path, capsys):
    a = _write(tmp_path, "a.json", CASE_II)
    fin = {
        "U": {"type": "fin", "lambda": "1"},
        "V": {"type": "fin", "lambda": "1"},
        "delta_x": {"cols": {"0": {"d": "1"}}},
    }
    b = _write(tmp_path, "fin.json", fin)
    code, out, _ = run(capsys, "ext", "iso", a, b)
    assert code == 1
    assert json.loads(out)["error"]["type"] == "ShapeMismatch"


def test_ext_missing_file(tmp_path, capsys):
    with pytest.raises(SystemExit) as err:
        run(capsys, "ext", "split", str(tmp_path / "missing.json"))
    assert err.value.code == 2


def test_verify_small_window(tmp_path, capsys):
    out_path = tmp_path / "report.json"
    code, _, _ = run(
        capsys,
        "verify",
        "--max-degree",
        "4",
        "--slack-cap",
        "4",
        "--out",
        str(out_path),
    )
    assert code == 0
    report = json.loads(out_path.read_text(encoding="utf-8"))
    assert report["summary"]["FAIL"] == 0
    assert report["summary"]["PASS"] >= 20
    assert "ext-coboundary-probe" in report["discrepancies"]


def test_verify_text_format(capsys):
    code, out, _ = run(capsys, "verify", "--max-degree", "4", "--slack-cap", "4", "--format", "text")
    assert code == 0
    assert "checks:" in out
    assert "DISCREPANCY" in out


def test_verify_dot_output(tmp_path, capsys):
    dot_path = tmp_path / "graph.dot"
    code, out, _ = run(
        capsys,
        "verify",
        "--max-degree",
        "4",
        "--slack-cap",
        "4",
        "--format",
        "dot",
        "--out",
        str(dot_path),
    )
    assert code == 0
    dot = dot_path.read_text(encoding="utf-8")
    assert '"P_1" -> "P_1";' in dot
    assert dot.count("->") == 2
    # the report still lands on stdout
    assert json.loads(out)["summary"]["FAIL"] == 0


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as err:
        main(["alg", "unknown"])
    assert err.value.code == 2
