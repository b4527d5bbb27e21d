"""Discrete Edwards duality over finitely generated cones.

The cone is S = {c0 + sum_g t_g psi_g : c0 real, t >= 0} with generators
psi_g(x) = Re(c_g x^beta_g).  On a finite point set the envelope

    Phi_x(phi) = sup{psi(x) : psi in S, psi <= phi}

and the minimum of the integral of phi over Jensen measures at x are a
primal/dual LP pair, so they agree exactly (up to solver tolerance).  On a
finite instance the envelope is never -inf: c0 = min(phi) is feasible.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from . import lp
from .errors import InputError, NumericError
from .rng import uniform

REPRESENTING_TOL = 1e-9
JENSEN = "jensen"
REPRESENTING = "representing"


@dataclass(frozen=True)
class Generator:
    """psi(x) = Re(c * prod x_j^beta_j)."""

    c: complex
    beta: tuple

    def __call__(self, x) -> float:
        val = complex(self.c)
        for xj, bj in zip(x, self.beta):
            if bj < 0 and xj == 0:
                raise InputError("negative exponent at a zero coordinate")
            val *= complex(xj) ** int(bj)
        return val.real


@dataclass(frozen=True)
class EnvelopeInstance:
    points: tuple
    generators: tuple
    phi: np.ndarray
    base: int = 0
    Psi: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        pts = tuple(tuple(complex(v) for v in np.ravel(p)) for p in self.points)
        if not pts:
            raise InputError("instance needs at least one point")
        n = len(pts[0])
        if any(len(p) != n for p in pts):
            raise InputError("points have inconsistent dimensions")
        if not self.generators:
            raise InputError("instance needs at least one generator")
        if any(len(g.beta) != n for g in self.generators):
            raise InputError("generator exponent length does not match point dimension")
        phi = np.asarray(self.phi, dtype=float).ravel()
        if phi.shape[0] != len(pts):
            raise InputError("phi must have one value per point")
        if not 0 <= self.base < len(pts):
            raise InputError("base index out of range")
        Psi = np.array([[g(p) for p in pts] for g in self.generators], dtype=float)
        if not (np.all(np.isfinite(Psi)) and np.all(np.isfinite(phi))):
            raise InputError("generator values or phi are not finite")
        phi.setflags(write=False)
        Psi.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "Psi", Psi)

    @property
    def size(self) -> int:
        return len(self.points)

    def with_phi(self, phi) -> "EnvelopeInstance":
        return EnvelopeInstance(self.points, self.generators, phi, self.base)

    def with_generators(self, generators) -> "EnvelopeInstance":
        return EnvelopeInstance(self.points, tuple(generators), self.phi, self.base)


@dataclass(frozen=True)
class DiscreteMeasure:
    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float).ravel()
        object.__setattr__(self, "weights", w)

    @classmethod
    def dirac(cls, size: int, index: int) -> "DiscreteMeasure":
        w = np.zeros(size)
        w[index] = 1.0
        return cls(w)

    def integrate(self, values) -> float:
        return float(self.weights @ np.asarray(values, dtype=float))


@dataclass(frozen=True)
class EnvelopeResult:
    primal_value: float
    c0: float
    t: np.ndarray
    dual_value: float
    measure: DiscreteMeasure
    gap: float

    def to_dict(self) -> dict:
        return {
            "primal": self.primal_value,
            "dual": self.dual_value,
            "gap": self.gap,
            "c0": self.c0,
            "t": self.t.tolist(),
            "measure": self.measure.weights.tolist(),
            "cone": "finitely generated (free constant + nonnegative generator span)",
        }


def primal_envelope(inst: EnvelopeInstance):
    """(value, c0, t) maximizing c0 + t . psi(x_base) subject to c0 + t . psi(x_i) <= phi_i."""
    G, N = inst.Psi.shape
    obj = np.concatenate([[1.0], inst.Psi[:, inst.base]])
    A = np.hstack([np.ones((N, 1)), inst.Psi.T])
    nonneg = (False,) + (True,) * G
    sol = lp.solve(lp.LPProblem.from_arrays(obj, A_ub=A, b_ub=inst.phi, nonneg=nonneg))
    if not sol.optimal:
        raise NumericError(f"primal envelope LP returned {sol.status}")
    return sol.value, float(sol.point[0]), sol.point[1:].copy()


def dual_envelope(inst: EnvelopeInstance):
    """(value, measure) minimizing the integral of phi over discrete Jensen measures."""
    G, N = inst.Psi.shape
    A_ub = -inst.Psi
    b_ub = -inst.Psi[:, inst.base]
    sol = lp.solve(
        lp.LPProblem.from_arrays(
            -inst.phi, A_ub=A_ub, b_ub=b_ub, A_eq=np.ones((1, N)), b_eq=[1.0], nonneg=True
        )
    )
    if not sol.optimal:
        raise NumericError(f"dual envelope LP returned {sol.status}")
    w = np.clip(sol.point, 0.0, None)
    w /= w.sum()
    return -sol.value, DiscreteMeasure(w)


def envelope(inst: EnvelopeInstance) -> EnvelopeResult:
    p, c0, t = primal_envelope(inst)
    d, mu = dual_envelope(inst)
    return EnvelopeResult(p, c0, t, d, mu, p - d)


def verify_measure(inst: EnvelopeInstance, mu: DiscreteMeasure, mode: str = JENSEN) -> bool:
    w = mu.weights
    if w.shape[0] != inst.size:
        raise InputError("measure size does not match instance")
    if np.any(w < -REPRESENTING_TOL) or abs(w.sum() - 1) > REPRESENTING_TOL:
        return False
    lhs = inst.Psi @ w
    rhs = inst.Psi[:, inst.base]
    if mode == JENSEN:
        return bool(np.all(lhs >= rhs - REPRESENTING_TOL))
    if mode == REPRESENTING:
        return bool(np.all(np.abs(lhs - rhs) <= REPRESENTING_TOL))
    raise InputError(f"unknown mode {mode!r}")


def max_offbase_mass(inst: EnvelopeInstance):
    """Largest mass a discrete representing measure can put off the base point.

    Zero means delta_base is the only representing measure on the instance.
    Returns (mass, measure).
    """
    G, N = inst.Psi.shape
    obj = np.ones(N)
    obj[inst.base] = 0.0
    A_eq = np.vstack([np.ones((1, N)), inst.Psi])
    b_eq = np.concatenate([[1.0], inst.Psi[:, inst.base]])
    sol = lp.solve(lp.LPProblem.from_arrays(obj, A_eq=A_eq, b_eq=b_eq, nonneg=True))
    if not sol.optimal:
        raise NumericError(f"off-base mass LP returned {sol.status}")
    return max(0.0, sol.value), DiscreteMeasure(np.clip(sol.point, 0.0, None))


def peak_generators(g, zeta) -> tuple:
    """Generators +-Re g, +-Im g for a monomial certificate g = z^beta / zeta^beta."""
    beta = tuple(int(b) for b in g.beta)
    scale = 1.0
    for zj, bj in zip(np.ravel(zeta), beta):
        scale /= complex(zj) ** bj
    return (
        Generator(scale, beta),
        Generator(-scale, beta),
        Generator(-1j * scale, beta),
        Generator(1j * scale, beta),
    )


def peak_family_profile(g, zeta, points, radius: float, powers=(1, 2, 4, 8, 16), sup_bound=1.0):
    """(m, M, c) for powers g^m: M = sup_bound^m, c = max |g^m| off the ball B(zeta, radius).

    Exhibits numerically the bounded family with |f| <= c away from zeta.
    """
    zeta = np.ravel(np.asarray(zeta, dtype=complex))
    far = [p for p in points if np.linalg.norm(np.asarray(p, dtype=complex) - zeta) >= radius]
    base = max((abs(g(p)) for p in far), default=0.0)
    return [(m, sup_bound**m, base**m) for m in powers]


def instance_from_dict(data: dict) -> EnvelopeInstance:
    try:
        raw_points = data["points"]
        gens = data["generators"]
        phi = data["phi"]
    except (KeyError, TypeError):
        raise InputError("instance needs 'points', 'generators' and 'phi'") from None
    points = []
    for p in raw_points:
        if len(p) == 2 and all(isinstance(v, (int, float)) for v in p):
            points.append((complex(p[0], p[1]),))
        else:
            points.append(tuple(complex(v[0], v[1]) for v in p))
    generators = []
    for g in gens:
        c = g.get("c", [1.0, 0.0])
        generators.append(Generator(complex(c[0], c[1]), tuple(int(b) for b in g["beta"])))
    return EnvelopeInstance(tuple(points), tuple(generators), phi, int(data.get("base", 0)))


def load_instance(path) -> EnvelopeInstance:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed instance file: {exc}") from None
    return instance_from_dict(data)


def random_instance(seed: int, max_points: int = 25, max_generators: int = 10, dim: int = 2):
    """Seeded instance: points in the polydisc of C^dim, monomial generators, random phi."""
    u = uniform(seed, 4 + 4 * max_points * dim + 4 * max_generators * (dim + 2) + max_points + 1)
    pos = 0

    def take(k):
        nonlocal pos
        out = u[pos : pos + k]
        pos += k
        return out

    N = 1 + int(take(1)[0] * max_points)
    G = 1 + int(take(1)[0] * max_generators)
    r = take(2 * (N + 1) * dim)
    pts = np.sqrt(r[: (N + 1) * dim]) * np.exp(2j * np.pi * r[(N + 1) * dim :])
    pts = pts.reshape(N + 1, dim) * 0.95
    gens = []
    for _ in range(G):
        v = take(dim + 2)
        beta = tuple(int(x * 4) for x in v[:dim])
        c = complex(2 * v[dim] - 1, 2 * v[dim + 1] - 1)
        gens.append(Generator(c, beta))
    phi = 2 * take(N + 1) - 1
    return EnvelopeInstance(tuple(map(tuple, pts)), tuple(gens), phi, 0)
