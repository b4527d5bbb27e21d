import pytest

from ccomplete import completeness as cc, geom


def _check(fixture_path, name):
    return cc.zwonek_check(geom.load_domain(fixture_path(name)))


def test_polydisc(fixture_path):
    rep = _check(fixture_path, "polydisc.json")
    assert rep.verdict == cc.C_COMPLETE and rep.bounded and rep.witnesses == ()


def test_hartogs_witness(fixture_path):
    rep = _check(fixture_path, "hartogs.json")
    assert rep.verdict == cc.NOT_C_COMPLETE
    (w,) = rep.witnesses
    assert w["j"] == 2 and w["kind"] == "axis" and w["blocking_rows"] == [0]


def test_unbounded(fixture_path):
    rep = _check(fixture_path, "halfspace.json")
    assert rep.verdict == cc.NOT_APPLICABLE and not rep.bounded
    assert {w["kind"] for w in rep.witnesses} == {"unbounded"}


def test_report_key_order(fixture_path):
    keys = list(_check(fixture_path, "annulus_disc.json").to_dict())
    assert keys == ["verdict", "bounded", "axis_results", "witnesses"]


@pytest.mark.parametrize(
    "rows, verdict",
    [
        ([([1, 0], 0), ([0, 1], 0), ([1, 1], -0.5)], cc.C_COMPLETE),
        ([([1, -2], 0), ([0, 1], 0)], cc.NOT_C_COMPLETE),
        ([([-1, 0], 1), ([0, -1], 1), ([1, 0], 0), ([0, 1], 0)], cc.C_COMPLETE),
    ],
)
def test_more_domains(rows, verdict):
    D = geom.domain_from_dict({"n": 2, "constraints": [{"a": a, "b": b} for a, b in rows]})
    assert cc.zwonek_check(D).verdict == verdict
