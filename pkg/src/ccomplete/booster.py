"""Strict peak functions from weak-peak families via the Cayley series.

Given f_k with |f_k| < 1 + eps_k, f_k(zeta) = 1 (eps_k = 4^-k), put
f~_k = f_k / (1 + eps_k) and

    h = sum_k 2^-k (1 + f~_k) / (1 - f~_k),      F = (h - 1) / (h + 1).

Each Cayley term has positive real part, so |F| < 1; on
U_k = {|f_k - 1| < eps_k} one gets Re h >= 2^k and |F - 1| <= 2 / (2^k + 1).

All terms are computed from d = 1 - f_k, which stays accurate when eps_k is
far below machine epsilon (1 + 4^-40 == 1 in double precision).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import CertificateViolation, InputError

STABLE_SWITCH = 1e6
K_DEFAULT = 40


def eps_k(k: int) -> float:
    return 4.0**-k


def cayley_threshold(eps: float, z: complex) -> bool:
    """Re((1+z)/(1-z)) > 1/eps, decided by the equivalent disc test and cross-checked."""
    if not eps > 0:
        raise InputError("eps must be positive")
    z = complex(z)
    if z == 1:
        return True
    disc_margin = eps / (1 + eps) - abs(z - 1 / (1 + eps))
    re_margin = ((1 + z) / (1 - z)).real - 1 / eps
    inside = disc_margin > 0
    if inside != (re_margin > 0) and abs(disc_margin) > 1e-10 and abs(re_margin) > 1e-10:
        raise ArithmeticError(f"Cayley threshold tests disagree at z={z!r}, eps={eps}")
    return inside


def peak_gap_bound(k: int) -> float:
    if k < 1:
        raise InputError("k must be at least 1")
    return 2.0 / (2.0**k + 1.0)


def h_at_peak(K: int) -> float:
    """Closed form of h_K(zeta) when every f_k(zeta) = 1."""
    return 2.0 ** (K + 2) - 3.0 - 2.0**-K


def _one_minus(f, z) -> complex:
    om = getattr(f, "one_minus", None)
    return complex(om(z)) if om is not None else 1.0 - complex(f(z))


@dataclass(frozen=True)
class BoosterFunction:
    family: tuple = field(repr=False)
    zeta: tuple
    K: int

    @classmethod
    def build(cls, family: Sequence, zeta, K: int | None = None) -> "BoosterFunction":
        K = len(family) if K is None else K
        if K < 1 or K > len(family):
            raise InputError(f"truncation K={K} needs 1 <= K <= {len(family)}")
        return cls(tuple(family), tuple(np.asarray(zeta, dtype=complex).ravel()), K)

    def terms(self, z):
        """Per-k data at z: (d_k = 1 - f_k(z), Cayley term of f~_k)."""
        out = []
        for k in range(1, self.K + 1):
            e = eps_k(k)
            d = _one_minus(self.family[k - 1], z)
            # |f|^2 - 1 = |d|^2 - 2 Re d; premise is |f| < 1 + e.
            excess = abs(d) ** 2 - 2 * d.real - (2 * e + e * e)
            if not excess < 0:
                raise CertificateViolation(
                    f"premise |f_{k}| < 1 + 4^-{k} fails at z={list(np.ravel(z))}", point=z, k=k
                )
            term = (2 + e - d) / (e + d)
            if not term.real > 0:
                raise CertificateViolation(f"Cayley term {k} has Re <= 0", point=z, k=k)
            out.append((d, term))
        return out

    def h(self, z) -> complex:
        return sum(2.0**-k * t for k, (_, t) in enumerate(self.terms(z), start=1))

    def __call__(self, z) -> complex:
        return evaluate_F(self, z)


def evaluate_F(b: BoosterFunction, z) -> complex:
    h = b.h(z)
    if abs(h) > STABLE_SWITCH:
        return 1 - 2 / (h + 1)
    return (h - 1) / (h + 1)


def one_minus_F(b: BoosterFunction, z) -> complex:
    return 2 / (b.h(z) + 1)


@dataclass
class PeakVerification:
    passed: bool
    points: int
    max_abs_F: float
    zeta_gap: float
    zeta_gap_bound: float
    uk_counts: dict
    uk_worst_margin: dict
    uk_min_re_h_ratio: dict
    violations: list

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "points": self.points,
            "max_abs_F": self.max_abs_F,
            "zeta_gap": self.zeta_gap,
            "zeta_gap_bound": self.zeta_gap_bound,
            "uk_counts": {str(k): v for k, v in self.uk_counts.items()},
            "uk_worst_margin": {str(k): v for k, v in self.uk_worst_margin.items()},
            "uk_min_re_h_over_2k": {str(k): v for k, v in self.uk_min_re_h_ratio.items()},
            "violations": self.violations,
        }


def verify_peak(b: BoosterFunction, grid, zeta=None, k_check: int | None = None) -> PeakVerification:
    """Check |F| < 1 on the grid, the U_k gap bounds, and |F_K(zeta) - 1| <= 2^-K.

    Margins are ``bound + 1e-6 - |F - 1|`` (positive = satisfied).  Premise
    failures of the family raise :class:`CertificateViolation`.
    """
    zeta = b.zeta if zeta is None else tuple(np.asarray(zeta, dtype=complex).ravel())
    k_check = b.K if k_check is None else min(k_check, b.K)
    counts = {k: 0 for k in range(1, k_check + 1)}
    worst = {k: math.inf for k in counts}
    re_ratio = {k: math.inf for k in counts}
    violations = []
    max_abs = 0.0
    n = 0
    for z in grid:
        n += 1
        terms = b.terms(z)
        h = sum(2.0**-k * t for k, (_, t) in enumerate(terms, start=1))
        gap = abs(2 / (h + 1))
        F = 1 - 2 / (h + 1) if abs(h) > STABLE_SWITCH else (h - 1) / (h + 1)
        max_abs = max(max_abs, abs(F))
        if not abs(F) < 1:
            violations.append({"kind": "abs_F", "point": _pt(z), "value": abs(F)})
        for k in counts:
            if abs(terms[k - 1][0]) < eps_k(k):
                counts[k] += 1
                margin = peak_gap_bound(k) + 1e-6 - gap
                worst[k] = min(worst[k], margin)
                re_ratio[k] = min(re_ratio[k], h.real / 2.0**k)
                if margin < 0:
                    violations.append({"kind": f"U_{k}", "point": _pt(z), "value": gap})
    zeta_gap = abs(one_minus_F(b, zeta))
    bound = 2.0**-b.K
    if not zeta_gap <= bound:
        violations.append({"kind": "zeta", "point": _pt(zeta), "value": zeta_gap})
    return PeakVerification(
        not violations, n, max_abs, zeta_gap, bound, counts, worst, re_ratio, violations
    )


def _pt(z):
    return [[complex(v).real, complex(v).imag] for v in np.ravel(z)]
