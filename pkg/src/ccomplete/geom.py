"""Log-polyhedral Reinhardt domains.

A domain is the set of z in C^n with ``sum_j a_j log|z_j| < b`` for every
constraint ``(a, b)``.  Points on coordinate axes are handled by the rule in
:func:`contains`, which is the one keeping the domain open and Reinhardt.

Coordinate indices ``j`` in the axis API are 1-based, as in ``V_j = {z_j = 0}``.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import lp
from .errors import EmptyDomainError, InputError, NotBoundaryPointError
from .rng import uniform

BOUNDARY_TOL = 1e-9


@dataclass(frozen=True)
class Constraint:
    a: tuple
    b: float


@dataclass(frozen=True)
class LogPolytope:
    """Closed polyhedron ``{u : A u <= b}`` in u-space, u_j = log|z_j|."""

    A: np.ndarray
    b: np.ndarray

    @property
    def dim(self) -> int:
        return self.A.shape[1]

    def slack(self, u) -> np.ndarray:
        return self.b - self.A @ np.asarray(u, dtype=float)


@dataclass(frozen=True)
class ReinhardtDomain:
    n: int
    constraints: tuple
    label: str = ""
    polytope: LogPolytope = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise InputError("dimension must be at least 1")
        cons = tuple(
            c if isinstance(c, Constraint) else Constraint(tuple(map(float, c[0])), float(c[1]))
            for c in self.constraints
        )
        for i, c in enumerate(cons):
            if len(c.a) != self.n:
                raise InputError(f"constraint {i} has {len(c.a)} exponents, expected {self.n}")
            if not (all(map(math.isfinite, c.a)) and math.isfinite(c.b)):
                raise InputError(f"constraint {i} has non-finite data")
        object.__setattr__(self, "constraints", cons)
        A = np.array([c.a for c in cons], dtype=float).reshape(len(cons), self.n)
        b = np.array([c.b for c in cons], dtype=float)
        A.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "polytope", LogPolytope(A, b))
        if chebyshev_center(A, b) is None:
            raise EmptyDomainError(f"domain {self.label!r} has empty log-image")

    @property
    def A(self) -> np.ndarray:
        return self.polytope.A

    @property
    def b(self) -> np.ndarray:
        return self.polytope.b


@dataclass(frozen=True)
class AxisStatus:
    j: int
    closure_meets: bool
    interior_meets: bool
    closure_ray: Optional[tuple] = None
    blocking_rows: tuple = ()


def chebyshev_center(A, b, cap: float = 1.0):
    """Point of ``{A u < b}`` maximizing the minimum normalized slack (capped at ``cap``).

    Returns ``(u, radius)`` or None when the open polyhedron is empty.
    """
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    m, n = A.shape
    norms = np.linalg.norm(A, axis=1)
    zero = norms == 0
    if np.any(b[zero] <= 0):
        return None
    if n == 0:
        return np.zeros(0), cap
    rows = ~zero
    A_ub = np.vstack([np.hstack([A[rows], norms[rows, None]]), np.eye(1, n + 1, n)])
    b_ub = np.concatenate([b[rows], [cap]])
    sol = lp.solve(lp.LPProblem.from_arrays(np.eye(1, n + 1, n).ravel(), A_ub=A_ub, b_ub=b_ub))
    if sol.status != lp.OPTIMAL or sol.value <= lp.FEAS_TOL:
        return None
    return sol.point[:n], sol.value


def _num(tok):
    """Parse a number or an ``{"expr": name, "of": x, "times": k}`` token."""
    if isinstance(tok, bool):
        raise InputError("booleans are not numbers")
    if isinstance(tok, (int, float)):
        return float(tok)
    if isinstance(tok, dict) and "expr" in tok:
        fn = {"sqrt": math.sqrt, "log": math.log, "ln": math.log, "exp": math.exp}.get(tok["expr"])
        if fn is None:
            raise InputError(f"unknown expression {tok['expr']!r}")
        try:
            val = fn(_num(tok.get("of", 1.0)))
        except ValueError as exc:
            raise InputError(f"cannot evaluate {tok!r}: {exc}") from None
        return val * _num(tok.get("times", 1.0))
    raise InputError(f"expected a number, got {tok!r}")


def domain_from_dict(data: dict) -> ReinhardtDomain:
    try:
        n = data["n"]
        rows = data["constraints"]
    except (KeyError, TypeError):
        raise InputError("domain needs fields 'n' and 'constraints'") from None
    if not isinstance(n, int) or isinstance(n, bool):
        raise InputError("'n' must be an integer")
    cons = []
    for i, row in enumerate(rows):
        try:
            cons.append(Constraint(tuple(_num(x) for x in row["a"]), _num(row["b"])))
        except (KeyError, TypeError):
            raise InputError(f"constraint {i} needs fields 'a' and 'b'") from None
    return ReinhardtDomain(n, tuple(cons), str(data.get("label", "")))


def parse_domain(text: str) -> ReinhardtDomain:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed domain file: {exc}") from None
    return domain_from_dict(data)


def load_domain(path) -> ReinhardtDomain:
    with open(path, encoding="utf-8") as fh:
        return parse_domain(fh.read())


def _check_point(D: ReinhardtDomain, z) -> np.ndarray:
    z = np.asarray(z, dtype=complex).ravel()
    if z.shape[0] != D.n:
        raise InputError(f"point has {z.shape[0]} coordinates, domain has {D.n}")
    return z


def contains(D: ReinhardtDomain, z) -> bool:
    z = _check_point(D, z)
    zero = z == 0
    u = np.log(np.abs(np.where(zero, 1.0, z)))
    for c in D.constraints:
        a = np.asarray(c.a)
        if np.any(a[zero] < 0):
            return False
        if np.any(a[zero] > 0):
            continue
        if not float(a[~zero] @ u[~zero]) < c.b:
            return False
    return True


def axis_status(D: ReinhardtDomain, j: int) -> AxisStatus:
    if not 1 <= j <= D.n:
        raise InputError(f"axis index {j} outside 1..{D.n}")
    k = j - 1
    res = lp.max_linear_over_polytope(D.polytope, -np.eye(D.n)[k])
    closure = res.unbounded
    col = D.A[:, k]
    blocking = tuple(int(i) for i in np.nonzero(col < 0)[0])
    interior = False
    if not blocking:
        sel = col == 0
        A_red = np.delete(D.A[sel], k, axis=1)
        interior = chebyshev_center(A_red, D.b[sel]) is not None
    return AxisStatus(
        j, closure, interior, tuple(res.ray.tolist()) if closure else None, blocking
    )


def coordinate_log_max(D: ReinhardtDomain) -> np.ndarray:
    """max u_j over the closed log-polytope for each j (inf when unbounded above)."""
    return np.array(
        [lp.max_linear_over_polytope(D.polytope, np.eye(D.n)[k]).value for k in range(D.n)]
    )


def is_bounded(D: ReinhardtDomain) -> bool:
    return bool(np.all(np.isfinite(coordinate_log_max(D))))


def log_modulus(z) -> np.ndarray:
    z = np.asarray(z, dtype=complex).ravel()
    if np.any(z == 0):
        raise InputError("log-modulus needs nonzero coordinates")
    return np.log(np.abs(z))


def boundary_contact(D: ReinhardtDomain, zeta) -> tuple:
    """Indices of constraints active at a boundary point with nonzero coordinates."""
    zeta = _check_point(D, zeta)
    if np.any(zeta == 0):
        raise InputError("boundary_contact needs nonzero coordinates; project first")
    u = log_modulus(zeta)
    norms = np.maximum(np.linalg.norm(D.A, axis=1), 1.0)
    s = D.polytope.slack(u) / norms
    if np.any(s < -BOUNDARY_TOL):
        raise NotBoundaryPointError(f"point lies outside the closure (violation {-s.min():.3g})")
    active = tuple(int(i) for i in np.nonzero(s <= BOUNDARY_TOL)[0])
    if not active:
        raise NotBoundaryPointError(f"point is interior (min slack {s.min():.3g})")
    return active


def interior_point(D: ReinhardtDomain) -> np.ndarray:
    """Positive real point at the capped Chebyshev center of the log-image."""
    u, _ = chebyshev_center(D.A, D.b)
    return np.exp(u).astype(complex)


def sample_boundary_points(D: ReinhardtDomain, count: int, seed: int) -> list:
    """Boundary points with nonzero coordinates, hit by seeded rays from the center.

    Each point carries seeded unit-modulus phases.  Directions whose ray never
    leaves the polytope are skipped.
    """
    u0, _ = chebyshev_center(D.A, D.b)
    out = []
    stream = 0
    while len(out) < count:
        if stream > 1000 * (count + 1):
            raise InputError("could not find bounded rays; is the domain bounded in any direction?")
        r = uniform(seed, 3 * D.n, start=3 * D.n * stream)
        stream += 1
        d = np.sqrt(-2 * np.log1p(-r[: D.n])) * np.cos(2 * np.pi * r[D.n : 2 * D.n])
        rate = D.A @ d
        hit = rate > 1e-12
        if not hit.any():
            continue
        t = np.min(D.polytope.slack(u0)[hit] / rate[hit])
        phases = np.exp(2j * np.pi * r[2 * D.n :])
        out.append(np.exp(u0 + t * d) * phases)
    return out


def sample_points(D: ReinhardtDomain, count: int, seed: int, near=None, shells: int = 0) -> list:
    """Seeded points of D: uniform in a bounding polydisc, plus optional shells near ``near``.

    Shell points are ``near * (1 - t w)`` for dyadically shrinking ``t`` and random
    complex ``w``; only points inside D are kept.  Requires a bounded domain.
    """
    rmax = np.exp(coordinate_log_max(D))
    if not np.all(np.isfinite(rmax)):
        raise InputError("sampling needs a bounded domain")
    out = []
    stream = 0
    n_uniform = count - shells
    while len(out) < n_uniform:
        r = uniform(seed, 2 * D.n, start=2 * D.n * stream)
        stream += 1
        z = rmax * np.sqrt(r[: D.n]) * np.exp(2j * np.pi * r[D.n :])
        if contains(D, z):
            out.append(z)
        if stream > 10_000 * (count + 1):
            raise InputError("rejection sampling failed; domain too thin")
    if shells and near is not None:
        near = np.asarray(near, dtype=complex)
        level = 0
        while len(out) < count:
            r = uniform(seed + 1, 2 * D.n, start=2 * D.n * stream)
            stream += 1
            t = 2.0 ** -(1 + (level % 40))
            level += 1
            w = np.sqrt(r[: D.n]) * np.exp(2j * np.pi * r[D.n :])
            z = near * (1 - t * w)
            if contains(D, z):
                out.append(z)
            if level > 10_000 * (shells + 1):
                raise InputError("shell sampling failed; is the point on the boundary of D?")
    return out
