import math

import numpy as np
import pytest

from ccomplete import booster, geom, peak
from ccomplete.errors import CertificateViolation, InputError
from ccomplete.rng import uniform


def test_cayley_threshold_examples():
    assert not booster.cayley_threshold(1.0, 0)
    assert booster.cayley_threshold(0.5, 0.9)
    assert not booster.cayley_threshold(0.1, -0.5)
    assert booster.cayley_threshold(0.1, 1)
    with pytest.raises(InputError):
        booster.cayley_threshold(0, 0.5)


def test_cayley_threshold_agrees_with_real_part():
    u = uniform(3, 4000).reshape(2000, 2)
    for r, t in u:
        z = 0.999 * math.sqrt(r) * complex(math.cos(2 * math.pi * t), math.sin(2 * math.pi * t))
        for eps in (1.0, 0.3, 0.05):
            re = ((1 + z) / (1 - z)).real
            if abs(re - 1 / eps) > 1e-9:
                assert booster.cayley_threshold(eps, z) == (re > 1 / eps)


def test_gap_bound():
    assert booster.peak_gap_bound(1) == pytest.approx(2 / 3)
    assert booster.peak_gap_bound(3) == pytest.approx(2 / 9)
    vals = [booster.peak_gap_bound(k) for k in range(1, 30)]
    assert all(a > b for a, b in zip(vals, vals[1:]))


class _Const:
    def __init__(self, value):
        self.value = value

    def __call__(self, z):
        return self.value


def test_closed_forms():
    K = 40
    b = booster.BoosterFunction.build([_Const(1.0)] * K, [1])
    assert b.h(0) == pytest.approx(booster.h_at_peak(K), rel=1e-15)
    assert abs(booster.one_minus_F(b, 0)) == pytest.approx(2 / (2.0 ** (K + 2) - 2 - 2.0**-K), rel=1e-12)
    assert abs(booster.one_minus_F(b, 0)) <= 2.0**-K
    z = booster.BoosterFunction.build([_Const(0.0)] * 20, [1])
    h = z.h(0)
    # f = 0 makes every Cayley term (1 + e) / (e + 1) = 1, so h = 1 - 2^-K
    assert h == pytest.approx(1 - 2.0**-20, abs=1e-15)
    assert abs(booster.evaluate_F(z, 0)) < 1e-5


def _disc_family(K):
    # f_k(l) = ((1 + l) / 2)^m_k peaks at 1 with |f_k| <= 1
    fam = []
    for k in range(1, K + 1):
        m = 2**k
        fam.append(lambda l, m=m: ((1 + complex(np.ravel(l)[0])) / 2) ** m)
    return fam


def test_synthetic_disc_family_passes():
    b = booster.BoosterFunction.build(_disc_family(12), [1.0])
    u = uniform(9, 20000).reshape(10000, 2)
    grid = [0.9999 * math.sqrt(r) * complex(math.cos(2 * math.pi * t), math.sin(2 * math.pi * t)) for r, t in u]
    grid += [1 - 2.0**-j for j in range(1, 30)]
    rep = booster.verify_peak(b, grid, zeta=[1.0], k_check=6)
    assert rep.passed and rep.max_abs_F < 1 and rep.zeta_gap <= 2.0**-12


def test_corrupted_family_raises():
    fam = _disc_family(4)
    f1 = fam[0]
    fam[0] = lambda l: 1.5 * f1(l)
    b = booster.BoosterFunction.build(fam, [1.0])
    with pytest.raises(CertificateViolation) as err:
        booster.verify_peak(b, [0.9, 0.99], zeta=[1.0])
    assert err.value.k == 1


def test_build_validates_K():
    with pytest.raises(InputError):
        booster.BoosterFunction.build([], [1])
    with pytest.raises(InputError):
        booster.BoosterFunction.build([_Const(0.0)], [1], K=2)


def test_p0_reachable_depth(fixture_path):
    """P0 works up to the depth the Diophantine search can reach (K <= 8)."""
    D = geom.load_domain(fixture_path("p0.json"))
    zeta = np.array([1, 1], complex)
    fam = peak.weak_peak_family(D, zeta, [0.5, 0.5], K=8)
    b = booster.BoosterFunction.build(fam, zeta)
    grid = geom.sample_points(D, 10_000, 20130917, near=zeta, shells=5000)
    rep = booster.verify_peak(b, grid, k_check=6)
    assert rep.passed and rep.max_abs_F < 1 and rep.zeta_gap <= 2.0**-8
    assert all(rep.uk_counts[k] > 0 for k in range(1, 7))
