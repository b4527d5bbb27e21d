"""Newton potentials of finite planar measures and the one-variable Cauchy extraction.

Measures are finite atom clouds, so the potential
M(xi) = sum_i w_i / |p_i - xi| is exact and the disc averages near a
boundary point are stable under fixed-order quadrature.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import InputError
from .rng import DEFAULT_SEED, uniform

RADIAL_NODES = 64
ANGULAR_NODES = 256
ATOM_TOL = 0.0


@dataclass(frozen=True)
class PlanarMeasure:
    points: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.points, dtype=complex).ravel()
        w = np.asarray(self.weights, dtype=float).ravel()
        if p.shape != w.shape or p.size == 0:
            raise InputError("measure needs matching, non-empty points and weights")
        if np.any(w <= 0):
            raise InputError("atom weights must be positive")
        if abs(w.sum() - 1) > 1e-12:
            raise InputError(f"weights sum to {w.sum():.17g}, expected 1")
        object.__setattr__(self, "points", p)
        object.__setattr__(self, "weights", w)

    @classmethod
    def from_atoms(cls, atoms) -> "PlanarMeasure":
        pts, ws = zip(*atoms)
        return cls(np.array(pts, dtype=complex), np.array(ws, dtype=float))

    def mass_at(self, zeta: complex) -> float:
        return float(self.weights[self.points == zeta].sum())


def load_measure(path) -> PlanarMeasure:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
        atoms = [(complex(a["p"][0], a["p"][1]), float(a["w"])) for a in data["atoms"]]
    except (json.JSONDecodeError, KeyError, TypeError, IndexError) as exc:
        raise InputError(f"malformed measure file: {exc}") from None
    return PlanarMeasure.from_atoms(atoms)


def newton_potential(mu: PlanarMeasure, xi) -> float | np.ndarray:
    """M(xi) = sum w_i / |p_i - xi|; +inf at an atom.  Vectorized over ``xi``."""
    x = np.asarray(xi, dtype=complex)
    dist = np.abs(mu.points[:, None] - x.ravel()[None, :])
    with np.errstate(divide="ignore"):
        vals = (mu.weights[:, None] / dist).sum(axis=0)
    return float(vals[0]) if x.ndim == 0 else vals.reshape(x.shape)


def prop11_functional(mu: PlanarMeasure, zeta: complex, r: float) -> float:
    """(1/(pi r^2)) * integral over D(zeta, r) of |w - zeta| M(w) dA(w).

    The atom at zeta contributes exactly its weight; the rest uses a polar
    Gauss-Legendre (radial) x trapezoid (angular) rule centred at zeta.
    """
    if not r > 0:
        raise InputError("r must be positive")
    zeta = complex(zeta)
    at = mu.points == zeta
    exact = float(mu.weights[at].sum())
    rest = ~at
    if not rest.any():
        return exact
    x, wx = np.polynomial.legendre.leggauss(RADIAL_NODES)
    rho = 0.5 * r * (x + 1)
    wrho = 0.5 * r * wx
    theta = 2 * np.pi * np.arange(ANGULAR_NODES) / ANGULAR_NODES
    w = zeta + rho[:, None] * np.exp(1j * theta)[None, :]
    dist = np.abs(mu.points[rest][:, None, None] - w[None])
    M = (mu.weights[rest][:, None, None] / dist).sum(axis=0)
    # integrand |w - zeta| M(w) times the polar Jacobian rho
    inner = (rho[:, None] * M * rho[:, None]).sum(axis=1) * (2 * np.pi / ANGULAR_NODES)
    return exact + float(inner @ wrho) / (np.pi * r * r)


def _disc_samples(zeta: complex, r: float, samples: int, seed: int) -> np.ndarray:
    u = uniform(seed, 2 * samples)
    return zeta + r * np.sqrt(u[:samples]) * np.exp(2j * np.pi * u[samples:])


def pi_set_density(mu, zeta, eps: float, r: float, samples: int = 20000, seed: int = DEFAULT_SEED):
    """Monte Carlo fraction of D(zeta, r) where |w - zeta| M(w) > eps."""
    if not (eps > 0 and r > 0):
        raise InputError("eps and r must be positive")
    w = _disc_samples(complex(zeta), r, samples, seed)
    prod = np.abs(w - zeta) * newton_potential(mu, w)
    return float(np.mean(prod > eps))


@dataclass(frozen=True)
class PlanarDomainSampler:
    """Membership predicate for a planar domain (vectorized over complex arrays)."""

    contains: Callable
    name: str = ""

    def __call__(self, w) -> np.ndarray:
        return np.asarray(self.contains(np.asarray(w, dtype=complex)), dtype=bool)


def unit_disc() -> PlanarDomainSampler:
    return PlanarDomainSampler(lambda w: np.abs(w) < 1, "unit-disc")


def slit_disc() -> PlanarDomainSampler:
    """Unit disc minus the segment [0, 1)."""

    def inside(w):
        on_slit = (w.imag == 0) & (w.real >= 0) & (w.real < 1)
        return (np.abs(w) < 1) & ~on_slit

    return PlanarDomainSampler(inside, "slit-disc")


@dataclass(frozen=True)
class DensityEstimate:
    ratio: float
    stderr: float
    samples: int
    seed: int


def density_ratio(sampler, zeta, r: float, samples: int = 20000, seed: int = DEFAULT_SEED):
    """Monte Carlo estimate of area(D(zeta, r) & D) / (pi r^2) with its standard error."""
    if not r > 0:
        raise InputError("r must be positive")
    hits = sampler(_disc_samples(complex(zeta), r, samples, seed))
    p = float(hits.mean())
    return DensityEstimate(p, math.sqrt(max(p * (1 - p), 0.0) / samples), samples, seed)


def poly_eval(coeffs, z):
    """Horner evaluation; ``coeffs`` in ascending powers."""
    acc = 0
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def modulus_jensen_check(coeffs, mu: PlanarMeasure, zeta, tol: float = 1e-12) -> bool:
    lhs = abs(poly_eval(coeffs, complex(zeta)))
    rhs = float(sum(w * abs(poly_eval(coeffs, p)) for p, w in zip(mu.points, mu.weights)))
    return lhs <= rhs + tol


def difference_quotient(coeffs, eta):
    """Coefficients (ascending) of (f(z) - f(eta)) / (z - eta) by synthetic division."""
    coeffs = list(coeffs)
    if len(coeffs) <= 1:
        return [0 * (coeffs[0] if coeffs else 0)]
    n = len(coeffs) - 1
    out = [0] * n
    acc = coeffs[n]
    out[n - 1] = acc
    for k in range(n - 1, 0, -1):
        acc = coeffs[k] + acc * eta
        out[k - 1] = acc
    return out


@dataclass(frozen=True)
class CauchyExtraction:
    points: tuple
    products: tuple
    failed_at: Optional[int]

    @property
    def complete(self) -> bool:
        return self.failed_at is None


def extract_cauchy(mu, zeta, sampler, nu_max: int, rays: int = 16, levels: int = 3):
    """Points eta_nu in D with |zeta - eta_nu| <= 2^-nu and |zeta - eta_nu| M(eta_nu) <= 2^-nu.

    Searches ``rays`` directions at dyadic radii 2^-(nu+1) .. 2^-(nu+5), doubling the
    angular and radial resolution at each of ``levels`` refinements.  Among valid
    candidates at the first level that has any, the smallest product wins.
    """
    zeta = complex(zeta)
    if mu.mass_at(zeta) > 0:
        raise InputError("measure has an atom at zeta")
    pts, prods = [], []
    for nu in range(1, nu_max + 1):
        bound = 2.0**-nu
        found = None
        for level in range(levels + 1):
            na = rays << level
            nr = 4 << level
            radii = 2.0 ** -(nu + 1 + np.arange(nr + 1) / (1 << level))
            theta = 2 * np.pi * np.arange(na) / na
            cand = zeta + (radii[:, None] * np.exp(1j * theta)[None, :]).ravel()
            inside = sampler(cand)
            cand = cand[inside]
            if cand.size == 0:
                continue
            prod = np.abs(zeta - cand) * newton_potential(mu, cand)
            ok = np.nonzero(prod <= bound)[0]
            if ok.size:
                i = ok[np.argmin(prod[ok])]
                found = (complex(cand[i]), float(prod[i]))
                break
        if found is None:
            return CauchyExtraction(tuple(pts), tuple(prods), nu)
        pts.append(found[0])
        prods.append(found[1])
    return CauchyExtraction(tuple(pts), tuple(prods), None)
