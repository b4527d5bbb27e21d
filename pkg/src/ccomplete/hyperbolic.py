"""Poincaré distance and monomial lower bounds for the Carathéodory pseudodistance."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import lp
from .errors import InputError
from .geom import ReinhardtDomain, contains, coordinate_log_max

SUP_TOL = 1e-12
ESCAPE_THRESHOLD = 10.0


def mobius_distance(a: complex, b: complex) -> float:
    """Pseudo-hyperbolic distance |a - b| / |1 - conj(b) a|."""
    return abs(a - b) / abs(1 - b.conjugate() * a)


def poincare(a: complex, b: complex) -> float:
    """Poincaré distance atanh(m(a, b)) in the unit disc."""
    a, b = complex(a), complex(b)
    if not (abs(a) < 1 and abs(b) < 1):
        raise InputError("Poincaré distance needs both points in the open unit disc")
    if a == b:
        return 0.0
    return math.atanh(mobius_distance(a, b))


def disc_automorphism(theta: float, a: complex):
    """z -> e^{i theta} (z - a) / (1 - conj(a) z), an automorphism of the disc for |a| < 1."""
    rot = complex(math.cos(theta), math.sin(theta))
    a = complex(a)
    return lambda z: rot * (z - a) / (1 - a.conjugate() * z)


@dataclass(frozen=True)
class MonomialMap:
    """z -> coef * prod z_j^beta_j with integer exponents."""

    coef: complex
    beta: tuple

    def __call__(self, z) -> complex:
        out = complex(self.coef)
        for zj, bj in zip(np.asarray(z, dtype=complex), self.beta):
            if bj < 0 and zj == 0:
                raise InputError("negative exponent at a zero coordinate")
            out *= complex(zj) ** int(bj)
        return out


@dataclass(frozen=True)
class BoundedMapFamily:
    domain: ReinhardtDomain
    maps: tuple
    sup_bounds: tuple

    def __len__(self):
        return len(self.maps)


def certify_family(D: ReinhardtDomain, maps: Sequence[MonomialMap]) -> BoundedMapFamily:
    """Certify ``sup_D |f| <= 1`` for each monomial via an LP over the log-image."""
    sups = []
    for f in maps:
        if len(f.beta) != D.n:
            raise InputError("monomial exponent length does not match domain dimension")
        res = lp.max_linear_over_polytope(D.polytope, np.asarray(f.beta, dtype=float))
        if res.unbounded:
            raise InputError(f"monomial {f.beta} is unbounded on {D.label!r}")
        s = abs(f.coef) * math.exp(res.value)
        if s > 1 + SUP_TOL:
            raise InputError(f"monomial {f.beta} has sup {s:.17g} > 1 on {D.label!r}")
        sups.append(s)
    return BoundedMapFamily(D, tuple(maps), tuple(sups))


def coordinate_family(D: ReinhardtDomain) -> BoundedMapFamily:
    """Coordinate maps rescaled by their certified sup: z_j / max|z_j|."""
    top = coordinate_log_max(D)
    if not np.all(np.isfinite(top)):
        raise InputError("coordinate family needs a bounded domain")
    maps = [
        MonomialMap(math.exp(-t), tuple(int(i == k) for i in range(D.n))) for k, t in enumerate(top)
    ]
    return certify_family(D, maps)


def _rho_clamped(a: complex, b: complex) -> float:
    # Certified |f| <= 1 can still round onto the circle; treat that as escaping.
    m = mobius_distance(a, b) if a != b else 0.0
    return math.atanh(m) if m < 1 else math.inf


def caratheodory_lb(D: ReinhardtDomain, family: BoundedMapFamily, z, w) -> float:
    """max over the family of rho(f(z), f(w)); a lower bound for c_D(z, w)."""
    for p in (z, w):
        if not contains(D, p):
            raise InputError(f"point {p!r} is not in {D.label!r}")
    return max((_rho_clamped(f(z), f(w)) for f in family.maps), default=0.0)


@dataclass(frozen=True)
class EscapeReport:
    divergent: bool
    sup_modulus: float
    max_distance: float
    threshold: float


def escape_probe(D, family, base, seq, threshold: float = ESCAPE_THRESHOLD) -> EscapeReport:
    """Numeric probe of c-finite compactness along a sequence (evidence, not proof)."""
    seq = list(seq)
    if not seq:
        raise InputError("escape probe needs a non-empty sequence")
    sup_mod = max(abs(f(z)) for f in family.maps for z in seq)
    dist = max(caratheodory_lb(D, family, base, z) for z in seq)
    return EscapeReport(dist > threshold, sup_mod, dist, threshold)
