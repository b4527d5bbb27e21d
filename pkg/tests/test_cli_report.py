import io
import json

import numpy as np
import pytest

from ccomplete import cli
from ccomplete.report import emit_report


def _run(*args):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(args), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_check_exit_codes(fixture_path):
    code, out, _ = _run("check", fixture_path("hartogs.json"))
    assert code == 1 and json.loads(out)["witnesses"][0]["j"] == 2
    assert _run("check", fixture_path("polydisc.json"))[0] == 0
    assert _run("check", fixture_path("halfspace.json"))[0] == 2
    code, _, err = _run("check", fixture_path("empty.json"))
    assert code == 3 and "empty" in err
    assert _run("check", "does-not-exist.json")[0] == 3


def test_peak(fixture_path):
    code, out, _ = _run("peak", fixture_path("p0.json"), "--zeta", "1,0", "1,0", "--eps", "0.01")
    data = json.loads(out)
    assert code == 0 and data["q"] == 70 and data["beta"] == [70, 99]
    assert "sup_bound" in data and "diophantine_errors" in data
    assert _run("peak", fixture_path("p0.json"), "--zeta", "1,x")[0] == 3
    assert _run("peak", fixture_path("p0.json"), "--zeta", "1", "1", "--eps", "1e-9", "--qmax", "100")[0] == 4


def test_envelope(fixture_path):
    code, out, _ = _run("envelope", fixture_path("sym3.json"))
    data = json.loads(out)
    assert code == 0 and abs(data["gap"]) <= 1e-7


def test_boost(fixture_path):
    args = ("boost", fixture_path("polydisc.json"), "--zeta", "1", "0.6", "--eta", "0.3", "0.3")
    code, out, _ = _run(*args, "-K", "10", "--grid", "300")
    data = json.loads(out)
    assert code == 0 and data["passed"] and data["seed"] == cli.DEFAULT_SEED
    code, _, err = _run("boost", fixture_path("p0.json"), "--zeta", "1", "1", "-K", "12", "--grid", "10")
    assert code == 4 and "k=9" in err


def test_potential_probe_orbit(fixture_path, tmp_path):
    code, out, _ = _run("--seed", "3", "potential", fixture_path("mixed_measure.json"), "--zeta", "1,0")
    data = json.loads(out)
    assert code == 0 and data["seed"] == 3 and abs(data["prop11_functional"] - 0.30047) < 1e-3
    code, out, _ = _run("potential", fixture_path("origin_measure.json"), "--zeta", "1", "--nu", "5")
    assert code == 0 and len(json.loads(out)["cauchy_points"]) == 5
    assert _run("probe", fixture_path("polydisc.json"), "--base", "0", "0", "--target", "1", "0")[0] == 0
    assert _run("probe", fixture_path("polydisc.json"), "--base", "0", "0", "--target", "0.5", "0")[0] == 1
    target = tmp_path / "orbit.json"
    assert _run("--output", str(target), "orbit", "--alpha", "sqrt2", "-N", "1000")[0] == 0
    assert json.loads(target.read_text())["star_discrepancy"] <= 0.005
    assert _run("orbit", "--alpha", "1/2", "-N", "100")[0] == 1
    assert _run("orbit", "--alpha", "pi", "-N", "100")[0] == 3


def test_bad_usage():
    assert _run()[0] == 3
    assert _run("frobnicate")[0] == 3


def test_text_format(fixture_path):
    code, out, _ = _run("--format", "text", "check", fixture_path("polydisc.json"))
    assert code == 0 and out.startswith("domain: ")
    assert "verdict: \"c_complete\"" in out


def test_emit_report_determinism_and_roundtrip():
    x = 0.1 + 0.2
    data = {"b": x, "a": [1, np.float64(2.5), complex(1, -2)], "c": {"z": np.arange(3)},
            "n": float("nan"), "i": float("inf"), "t": True, "s": "naïve"}
    a, b = emit_report(data), emit_report(data)
    assert a == b
    assert list(json.loads(a)) == ["b", "a", "c", "n", "i", "t", "s"]
    assert json.loads(a)["b"] == x
    assert json.loads(a)["a"][2] == [1, -2]
    assert json.loads(a)["i"] == "inf"
    with pytest.raises(ValueError):
        emit_report(data, "xml")
    with pytest.raises(TypeError):
        emit_report({"x": object()})


def test_parse_helpers():
    assert cli.parse_complex("1.5,-2") == complex(1.5, -2)
    assert cli.parse_complex("3") == 3
    assert cli.parse_real_expr("sqrt(2)") == pytest.approx(2**0.5)
    assert cli.parse_real_expr("3/7") == pytest.approx(3 / 7)
