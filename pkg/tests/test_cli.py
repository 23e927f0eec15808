import csv
import io
import json
import math

import pytest

from sheetplasmon.cli import ConfigError, emit, run


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def test_dispersion_rows():
    code, text = call("dispersion", "--c0", "1e-3", "--qmin", "0.02", "--qmax", "0.1", "--n", "9")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(text)))
    assert len(rows) == 9
    assert list(rows[0]) == ["qt", "wt", "det_residual", "nullity_gap", "status"]
    assert float(rows[3]["wt"]) == pytest.approx(0.010130177426329212, rel=1e-12)
    assert text.endswith("\r\n")


def test_dispersion_json_has_null_vectors():
    code, text = call("dispersion", "--c0", "1e-3", "--qmin", "0.05", "--n", "1", "--json")
    assert code == 0
    rec = json.loads(text)[0]
    assert len(rec["null_vector"]) == 6 and rec["null_vector"][5] == [1.0, 0.0]


def test_negative_c0():
    assert call("dispersion", "--c0", "-1")[0] == 1


def test_check_passes():
    code, text = call("check")
    assert code == 0
    assert "FAIL" not in text and "all checks passed" in text


def test_unknown_flag_and_command(capsys):
    assert call("dispersion", "--bogus")[0] == 1
    assert call("nonsense")[0] == 1
    assert "usage" in capsys.readouterr().err


def test_help_exits_zero(capsys):
    assert call("dispersion", "--help")[0] == 0
    assert "--qmin" in capsys.readouterr().out


def test_mixed_units_rejected():
    assert call("dispersion", "--c0", "1e-3", "--eta0", "1", "--coupling", "2e-3")[0] == 1
    assert call("dispersion", "--eta0", "1")[0] == 1


def test_physical_units_equivalent():
    a = call("dispersion", "--c0", "1e-3", "--qmin", "0.05", "--n", "1")[1]
    b = call("dispersion", "--eta0", "1", "--coupling", "2e-3", "--qmin", "0.05", "--n", "1")[1]
    assert a == b


def test_no_root_exit_code():
    assert call("amplitude", "--qt", "0.6")[0] == 2


def test_config_precedence(tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"c0": 1e-3, "qmin": 0.03, "qmax": 0.05, "n": 3}))
    code, text = call("dispersion", "--config", str(cfg))
    assert code == 0 and len(text.strip().splitlines()) == 4
    code, text = call("dispersion", "--config", str(cfg), "--n", "2")
    assert code == 0 and len(text.strip().splitlines()) == 3
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"colour": "red"}))
    assert call("dispersion", "--config", str(bad))[0] == 1
    assert call("dispersion", "--config", str(tmp_path / "missing.json"))[0] == 1


def test_reproducible_output():
    args = ("semiclassical", "--c0", "1e-3", "--qgrid", "0.02,0.05,0.08", "--seed", "3")
    assert call(*args)[1] == call(*args)[1]


def test_semiclassical_columns():
    code, text = call("semiclassical", "--qgrid", "0.02,0.05")
    rows = list(csv.DictReader(io.StringIO(text)))
    assert code == 0 and len(rows) == 2
    assert {"wt_exact", "wt_leading", "wt_corrected", "rel_dev_leading", "rel_dev_corrected"} <= set(rows[0])


def test_amplitude_and_propagator_output():
    code, text = call("amplitude", "--qt", "0.05", "--zmax", "4", "--n", "5")
    rows = list(csv.DictReader(io.StringIO(text)))
    assert code == 0 and len(rows) == 5 and float(rows[0]["z"]) == 0
    code, text = call("propagator", "--w=-0.9+0.01j", "--n", "3", "--format", "json")
    recs = json.loads(text)
    assert code == 0 and len(recs) == 3 and recs[0]["w_im"] == 0.01


def test_dump_operator(tmp_path):
    path = tmp_path / "op.txt"
    code, text = call("check", "--dump-operator", str(path), "--grid-n", "100")
    assert code == 0
    lines = path.read_text().splitlines()
    assert lines[0] == "100" and len(lines) == 1 + 100 * 100


def test_emit_empty_and_quoting():
    buf = io.StringIO()
    emit([], "csv", buf, ["a", "b"])
    assert buf.getvalue() == "a,b\r\n"
    buf = io.StringIO()
    emit([{"a": 1.0, "b": "x,y"}], "csv", buf)
    assert buf.getvalue() == 'a,b\r\n1,"x,y"\r\n'


def test_emit_json_round_trip():
    recs = [{"x": 0.1 + 0.2, "y": 1e-300, "s": "ok"}, {"x": -math.pi, "y": 2.0, "s": "ok"}]
    buf = io.StringIO()
    emit(recs, "json", buf)
    assert json.loads(buf.getvalue()) == recs


def test_emit_never_writes_nan():
    buf = io.StringIO()
    emit([{"x": float("nan"), "y": 1.0, "status": "ok"}], "csv", buf)
    row = next(csv.DictReader(io.StringIO(buf.getvalue())))
    assert row["x"] == "" and row["status"].startswith("failed")
    assert "nan" not in buf.getvalue().lower()


def test_emit_rejects_unknown_format():
    with pytest.raises(ConfigError):
        emit([{"a": 1}], "xml", io.StringIO())
