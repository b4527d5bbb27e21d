"""One block of checks per acceptance criterion; the summary prints PASS/FAIL per criterion."""
import io
import math
import subprocess
import sys
import time

import numpy as np
import pytest

from ccomplete import booster, completeness, edwards, geom, hyperbolic, orbit, peak, potential1d
from ccomplete.cli import run
from oracles import grid_dual_min, vertex_dual_min

SEED = 20130917
LN2 = math.log(2)
SQRT2 = math.sqrt(2)


# 1. Discrete Edwards duality --------------------------------------------------

@pytest.mark.criterion(1)
def test_c1_duality_gap_and_runtime():
    t0 = time.perf_counter()
    for s in range(200):
        inst = edwards.random_instance(s)
        assert inst.size - 1 <= 25 and len(inst.generators) <= 10
        res = edwards.envelope(inst)
        assert abs(res.primal_value - res.dual_value) <= 1e-7 * (1 + abs(res.primal_value)), s
    elapsed = time.perf_counter() - t0
    print(f"200 instances in {elapsed:.2f}s")
    assert elapsed < 10.0


@pytest.mark.criterion(1)
def test_c1_small_instances_match_grid_and_vertex_oracles():
    checked = 0
    for s in range(200):
        inst = edwards.random_instance(s)
        if inst.size - 1 > 6:
            continue
        checked += 1
        dual, _ = edwards.dual_envelope(inst)
        grid, _ = grid_dual_min(inst.Psi, inst.phi, inst.base, steps=100)
        vert = vertex_dual_min(inst.Psi, inst.phi, inst.base)
        assert abs(grid - dual) <= 0.02, (s, grid, dual)
        assert abs(vert - dual) <= 1e-9, (s, vert, dual)
    assert checked >= 20


# 2. Peak certificate anchor on P0 ----------------------------------------------

@pytest.mark.criterion(2)
def test_c2_p0_certificate(fixture_path):
    D = geom.load_domain(fixture_path("p0.json"))
    cert = peak.build_certificate(D, [1, 1], [0.5, 0.5], eps=0.01)
    assert cert.diophantine.q == 70
    assert cert.diophantine.beta == (70, 99)
    assert abs(cert.sup_bound - 2 ** (99 - 70 * SQRT2)) <= 1e-12
    assert abs(cert.sup_bound - 1.0035066) <= 1e-6
    assert abs(abs(cert.value_at_eta) / 2.0**-169 - 1) <= 1e-12
    # The decimal 0.1875400 in the criterion disagrees with 2^-(1+sqrt2) = 0.18760711...;
    # the closed form is asserted.
    assert abs(cert.R - 2 ** -(1 + SQRT2)) <= 1e-9
    assert abs(cert.value_at_eta) <= cert.R


@pytest.mark.criterion(2)
def test_c2_sup_bound_strictly_decreasing(fixture_path):
    D = geom.load_domain(fixture_path("p0.json"))
    sups = [peak.build_certificate(D, [1, 1], [0.5, 0.5], eps=e).sup_bound for e in (0.1, 0.03, 0.01)]
    assert sups[0] > sups[1] > sups[2] >= 1.0


# 3. Booster ------------------------------------------------------------------

def _booster_run(D, zeta, eta, K=40, points=10_000):
    family = peak.weak_peak_family(D, zeta, eta, K=K)
    b = booster.BoosterFunction.build(family, zeta)
    grid = geom.sample_points(D, points, SEED, near=zeta, shells=points // 2)
    return b, booster.verify_peak(b, grid, k_check=6)


def _assert_booster(b, rep):
    assert rep.points == 10_000
    assert rep.max_abs_F < 1
    for k in range(1, 7):
        assert rep.uk_worst_margin[k] >= 0 or rep.uk_counts[k] == 0
    assert sum(rep.uk_counts.values()) > 0
    assert rep.zeta_gap <= 2.0**-b.K
    assert rep.passed, rep.violations[:3]


@pytest.mark.criterion(3)
def test_c3_booster_polydisc(fixture_path):
    D = geom.load_domain(fixture_path("polydisc.json"))
    b, rep = _booster_run(D, np.array([1, 0.6], complex), np.array([0.3, 0.3], complex))
    _assert_booster(b, rep)
    assert abs(rep.zeta_gap - 4.5e-13) < 0.1e-13


@pytest.mark.criterion(3)
def test_c3_booster_p0(fixture_path):
    D = geom.load_domain(fixture_path("p0.json"))
    b, rep = _booster_run(D, np.array([1, 1], complex), np.array([0.5, 0.5], complex))
    _assert_booster(b, rep)


# 4. Completeness verdicts ------------------------------------------------------

@pytest.mark.criterion(4)
@pytest.mark.parametrize(
    "name, verdict",
    [
        ("polydisc.json", completeness.C_COMPLETE),
        ("hartogs.json", completeness.NOT_C_COMPLETE),
        ("annulus_disc.json", completeness.C_COMPLETE),
        ("halfspace.json", completeness.NOT_APPLICABLE),
    ],
)
def test_c4_verdicts(fixture_path, name, verdict):
    rep = completeness.zwonek_check(geom.load_domain(fixture_path(name)))
    assert rep.verdict == verdict
    if name == "hartogs.json":
        assert [w["j"] for w in rep.witnesses] == [2]


@pytest.mark.criterion(4)
@pytest.mark.parametrize("name", ["polydisc.json", "annulus_disc.json"])
def test_c4_complete_domains_have_peak_certificates(fixture_path, name):
    D = geom.load_domain(fixture_path(name))
    assert completeness.zwonek_check(D).verdict == completeness.C_COMPLETE
    pts = geom.sample_boundary_points(D, 5, SEED)
    for z in pts:
        assert np.all(np.abs(z) > 0)
        cert = peak.build_certificate(D, z)
        assert cert.one_minus(z) == 0
        assert abs(cert.value_at_eta) <= cert.R
        assert cert.sup_bound < 1 + 1e-2


# 5. Disc-average functional near a point --------------------------------------

@pytest.mark.criterion(5)
def test_c5_mixed_measure():
    mu = potential1d.PlanarMeasure.from_atoms([(1.0, 0.3), (2.0, 0.7)])
    val = potential1d.prop11_functional(mu, 1.0, 1e-3)
    assert abs(val - 0.30047) <= 1e-3


@pytest.mark.criterion(5)
def test_c5_r_schedule_converges_to_atom_mass():
    mu = potential1d.PlanarMeasure.from_atoms([(2.0, 1.0)])
    vals = [potential1d.prop11_functional(mu, 1.0, r) for r in (0.1, 0.01, 0.001)]
    assert vals[0] > vals[1] > vals[2] > 0
    for r, v in zip((0.1, 0.01, 0.001), vals):
        # value = (2r/3)(1 + O(r^2)) for an atom at distance 1
        assert abs(v / (2 * r / 3) - 1) <= r


# 6. Cauchy extraction ------------------------------------------------------------

@pytest.mark.criterion(6)
def test_c6_extract_cauchy_unit_disc():
    mu = potential1d.PlanarMeasure.from_atoms([(0.0, 1.0)])
    ext = potential1d.extract_cauchy(mu, 1.0, potential1d.unit_disc(), 20)
    assert ext.complete and len(ext.points) == 20
    for nu, eta in enumerate(ext.points, start=1):
        assert abs(eta) < 1
        assert abs(1 - eta) <= 2.0**-nu
        assert abs(1 - eta) * (1 / abs(eta)) <= 2.0**-nu


# 7. Diophantine step --------------------------------------------------------------

@pytest.mark.criterion(7)
def test_c7_diophantine_anchors():
    d = peak.diophantine((1, SQRT2), 0.01, 200)
    assert (d.q, d.beta) == (70, (70, 99))
    # frozen from a 40-digit brute-force oracle over q <= 1e5
    d = peak.diophantine((1, SQRT2), 0.001, 10**5)
    assert (d.q, d.beta) == (408, (408, 577))


# 8. Orbit density -------------------------------------------------------------------

@pytest.mark.criterion(8)
def test_c8_orbit_discrepancy():
    assert orbit.orbit_discrepancy(SQRT2, 10_000).star_discrepancy <= 0.005
    assert orbit.orbit_discrepancy(0.5, 100).star_discrepancy >= 0.4


# 9. Hyperbolic kernel ----------------------------------------------------------------

@pytest.mark.criterion(9)
def test_c9_poincare_anchor():
    assert abs(hyperbolic.poincare(0, 0.5) - 0.5493061443) <= 1e-9


@pytest.mark.criterion(9)
def test_c9_mobius_invariance():
    from ccomplete.rng import uniform

    u = uniform(SEED, 6000).reshape(1000, 6)
    disc = lambda r, t: 0.95 * math.sqrt(r) * complex(math.cos(2 * math.pi * t), math.sin(2 * math.pi * t))
    for r in u:
        a, b, c = disc(r[0], r[1]), disc(r[2], r[3]), disc(r[4], r[5])
        phi = hyperbolic.disc_automorphism(2 * math.pi * r[1] * r[3], c)
        assert abs(hyperbolic.poincare(phi(a), phi(b)) - hyperbolic.poincare(a, b)) <= 1e-12


# 10. Determinism ----------------------------------------------------------------------

def _cli_commands(fx):
    return [
        ["check", fx("hartogs.json")],
        ["peak", fx("p0.json"), "--zeta", "1,0", "1,0", "--eps", "0.01"],
        ["boost", fx("polydisc.json"), "--zeta", "1", "0.6", "--eta", "0.3", "0.3", "-K", "12", "--grid", "500"],
        ["envelope", fx("sym3.json")],
        ["potential", fx("mixed_measure.json"), "--zeta", "1,0", "--samples", "5000"],
        ["probe", fx("polydisc.json"), "--base", "0", "0", "--target", "1", "0"],
        ["orbit", "--alpha", "sqrt(2)", "-N", "10000"],
    ]


@pytest.mark.criterion(10)
def test_c10_reports_byte_identical_across_processes(fixture_path):
    for cmd in _cli_commands(fixture_path):
        outs = [
            subprocess.run(
                [sys.executable, "-m", "ccomplete", "--seed", "7", *cmd], capture_output=True, check=False
            )
            for _ in range(2)
        ]
        assert outs[0].returncode == outs[1].returncode
        assert outs[0].stdout == outs[1].stdout and outs[0].stdout, cmd
        buf = io.StringIO()
        run(["--seed", "7", *cmd], stdout=buf, stderr=io.StringIO())
        assert buf.getvalue().encode() == outs[0].stdout
