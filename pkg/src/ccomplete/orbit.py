"""Boundary orbits of |z| |w|^alpha = 1 and the discrepancy of k*alpha mod 1.

The orbit lambda -> (z0 e^{-alpha lambda}, w0 e^{lambda}) with lambda = i t stays
on the boundary piece; sampling t = 2 pi k turns the z-angle into k*alpha mod 1,
so small star discrepancy certifies (at desk scale) that the orbit fills the
torus of angles.  This is evidence for the density step only; the absence of a
continuous peak function is a non-existence statement and is not computed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InputError

IDENTITY_TOL = 1e-12
RATIONAL_TOL = 1e-12


@dataclass(frozen=True)
class OrbitSpec:
    alpha: float
    z0: complex
    w0: complex
    N: int = 100

    def __post_init__(self):
        if not self.alpha > 0:
            raise InputError("alpha must be positive")
        if abs(abs(self.z0) * abs(self.w0) ** self.alpha - 1) > IDENTITY_TOL:
            raise InputError("base point must satisfy |z0| |w0|^alpha = 1")

    @classmethod
    def on_boundary(cls, alpha: float, w0: complex, N: int = 100, z_phase: float = 0.0):
        z0 = abs(w0) ** -alpha * complex(math.cos(z_phase), math.sin(z_phase))
        return cls(alpha, z0, complex(w0), N)


def orbit_points(spec: OrbitSpec, N: int | None = None, step: float = 2 * math.pi) -> list:
    """Points (z0 e^{-i alpha t_k}, w0 e^{i t_k}) with t_k = k * step, k = 0..N-1."""
    N = spec.N if N is None else N
    if N < 1:
        raise InputError("N must be at least 1")
    t = step * np.arange(N)
    z = spec.z0 * np.exp(-1j * spec.alpha * t)
    w = spec.w0 * np.exp(1j * t)
    return list(zip(z.tolist(), w.tolist()))


@dataclass(frozen=True)
class DiscrepancyReport:
    alpha: float
    N: int
    star_discrepancy: float
    rational_warning: bool
    period: int | None

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "N": self.N,
            "star_discrepancy": self.star_discrepancy,
            "rational_warning": self.rational_warning,
            "period": self.period,
            "scope": "certifies orbit-angle density only; non-existence of a peak function is not computed",
        }


def star_discrepancy(x) -> float:
    """Exact star discrepancy of points in [0, 1): max_i max(i/N - x_(i), x_(i) - (i-1)/N)."""
    x = np.sort(np.asarray(x, dtype=float))
    N = x.size
    i = np.arange(1, N + 1)
    return float(max(np.max(i / N - x), np.max(x - (i - 1) / N)))


def orbit_discrepancy(alpha: float, N: int) -> DiscrepancyReport:
    if N < 2:
        raise InputError("N must be at least 2")
    k = np.arange(1, N + 1, dtype=np.float64)
    frac = np.mod(k * alpha, 1.0)
    dist = np.minimum(frac, 1 - frac)
    hit = np.nonzero(dist <= RATIONAL_TOL * k)[0]
    period = int(k[hit[0]]) if hit.size else None
    return DiscrepancyReport(float(alpha), N, star_discrepancy(frac), period is not None, period)
