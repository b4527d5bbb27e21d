"""Monomial weak-peak certificates at boundary points of log-polyhedral domains.

Pipeline: supporting functional xi at u(zeta) -> integer approximation
(q, beta) of q*xi -> monomial g = z^beta / zeta^beta whose sup over D is
computed exactly by an LP over the log-image -> Möbius normalization that
moves an interior point eta to 0 -> the family f_k with sup < 1 + 4^-k.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import lp
from .errors import (
    DiophantineExhaustedError,
    EpsilonTooLargeError,
    InputError,
    NotBoundaryPointError,
    NumericError,
    SignConditionError,
)
from .geom import (
    ReinhardtDomain,
    axis_status,
    boundary_contact,
    contains,
    interior_point,
    log_modulus,
)

Q_MAX = 10**5
LEVEL_TOL = 1e-9
_CHUNK = 1 << 15


def expm1_complex(w: complex) -> complex:
    """exp(w) - 1 without cancellation for small |w|."""
    x, y = w.real, w.imag
    if x == -math.inf:
        return -1.0 + 0j
    s = math.sin(0.5 * y)
    return complex(math.expm1(x) * math.cos(y) - 2.0 * s * s, math.exp(x) * math.sin(y))


@dataclass(frozen=True)
class MonomialRatio:
    """g(z) = prod (z_j / zeta_j)^beta_j, evaluated in log space so g(zeta) == 1 exactly."""

    beta: tuple
    zeta: tuple

    def log_value(self, z) -> complex:
        total = 0j
        for zj, cj, bj in zip(np.asarray(z, dtype=complex), self.zeta, self.beta):
            if bj == 0:
                continue
            if zj == 0:
                if bj < 0:
                    raise InputError("negative exponent at a zero coordinate")
                return complex(-math.inf, 0.0)
            total += bj * complex(
                math.log(abs(zj)) - math.log(abs(cj)), cmath.phase(zj) - cmath.phase(cj)
            )
        return total

    def __call__(self, z) -> complex:
        L = self.log_value(z)
        return 0j if L.real == -math.inf else cmath.exp(L)

    def one_minus(self, z) -> complex:
        return -expm1_complex(self.log_value(z))


@dataclass(frozen=True)
class SupportFunctional:
    xi: tuple
    level: float
    active: tuple
    signs: tuple

    @property
    def phi_log(self):
        """u -> xi . u, i.e. log of phi(z) = prod |z_j|^xi_j."""
        xi = np.asarray(self.xi)
        return lambda u: float(xi @ u)


@dataclass(frozen=True)
class DiophantineApprox:
    q: int
    beta: tuple
    eps: float
    errors: tuple


@dataclass(frozen=True)
class PeakCertificate:
    label: str
    zeta: tuple
    eta: tuple
    functional: SupportFunctional
    diophantine: DiophantineApprox
    log_sup_bound: float
    sup_bound: float
    value_at_eta: complex
    R: float
    g: MonomialRatio = field(repr=False)
    sketch_based: bool = False
    dropped: tuple = ()

    def __call__(self, z) -> complex:
        return self.g(z)

    def one_minus(self, z) -> complex:
        return self.g.one_minus(z)

    def to_dict(self) -> dict:
        return {
            "domain": self.label,
            "zeta": [[z.real, z.imag] for z in self.zeta],
            "eta": [[z.real, z.imag] for z in self.eta],
            "xi": list(self.functional.xi),
            "level": self.functional.level,
            "active_constraints": list(self.functional.active),
            "q": self.diophantine.q,
            "beta": list(self.diophantine.beta),
            "eps": self.diophantine.eps,
            "diophantine_errors": list(self.diophantine.errors),
            "sup_bound": self.sup_bound,
            "log_sup_bound": self.log_sup_bound,
            "value_at_eta": [self.value_at_eta.real, self.value_at_eta.imag],
            "abs_value_at_eta": abs(self.value_at_eta),
            "R": self.R,
            "sketch_based": self.sketch_based,
            "dropped_coordinates": list(self.dropped),
        }


def support_functional(D: ReinhardtDomain, zeta) -> SupportFunctional:
    active = boundary_contact(D, zeta)
    u = log_modulus(zeta)
    xi = D.A[list(active)].mean(axis=0)
    xi[np.abs(xi) <= 1e-12 * np.abs(xi).max()] = 0.0
    for j in range(1, D.n + 1):
        if xi[j - 1] < 0 and axis_status(D, j).closure_meets:
            raise SignConditionError(
                f"averaged normal has xi_{j} = {xi[j - 1]:.6g} < 0 but the closure meets V_{j}"
            )
    level = float(xi @ u)
    res = lp.max_linear_over_polytope(D.polytope, xi)
    if res.unbounded or res.value > level + LEVEL_TOL * (1 + abs(level)):
        raise NumericError("supporting functional certificate failed: LP max exceeds level")
    return SupportFunctional(tuple(xi.tolist()), level, active, tuple(int(s) for s in np.sign(xi)))


def diophantine(xi, eps: float, q_max: int = Q_MAX) -> DiophantineApprox:
    """Smallest q in [2, q_max] with |q xi_j - round(q xi_j)| <= eps and matching signs."""
    if not eps > 0:
        raise InputError("eps must be positive")
    xi = np.asarray(xi, dtype=float)
    sgn = np.sign(xi)
    for start in range(2, q_max + 1, _CHUNK):
        q = np.arange(start, min(start + _CHUNK, q_max + 1), dtype=np.float64)
        qx = q[:, None] * xi[None, :]
        beta = np.rint(qx)
        err = np.abs(qx - beta)
        ok = np.all(err <= eps, axis=1) & np.all(np.sign(beta) == sgn, axis=1)
        hit = np.nonzero(ok)[0]
        if hit.size:
            i = int(hit[0])
            return DiophantineApprox(
                int(q[i]), tuple(int(b) for b in beta[i]), float(eps), tuple(err[i].tolist())
            )
    raise DiophantineExhaustedError(
        f"no q <= {q_max} approximates xi within eps={eps:g}; raise eps or q_max"
    )


def project_zero_coords(D: ReinhardtDomain, zeta):
    """Drop coordinates where zeta vanishes; returns (reduced domain, reduced zeta, kept indices)."""
    zeta = np.asarray(zeta, dtype=complex).ravel()
    if zeta.shape[0] != D.n:
        raise InputError("point dimension does not match domain")
    dropped = np.nonzero(zeta == 0)[0]
    kept = np.nonzero(zeta != 0)[0]
    if dropped.size == 0:
        return D, zeta, tuple(range(D.n))
    for j in dropped:
        if np.any(D.A[:, j] < 0) or not axis_status(D, int(j) + 1).interior_meets:
            raise NotBoundaryPointError(
                f"coordinate {j + 1} vanishes but D does not meet V_{j + 1}: point not approachable"
            )
    if kept.size == 0:
        raise NotBoundaryPointError("the origin lies in D, not on its boundary")
    sub = D.A[:, dropped]
    rows = np.all(sub == 0, axis=1)
    reduced = ReinhardtDomain(
        int(kept.size),
        tuple((tuple(D.A[i, kept].tolist()), float(D.b[i])) for i in np.nonzero(rows)[0]),
        f"{D.label}|proj",
    )
    try:
        boundary_contact(reduced, zeta[kept])
    except NotBoundaryPointError as exc:
        raise NotBoundaryPointError(f"not a boundary point after projection: {exc}") from None
    return reduced, zeta[kept], tuple(int(k) for k in kept)


def build_certificate(D: ReinhardtDomain, zeta, eta=None, eps: float = 0.01, q_max: int = Q_MAX):
    zeta = np.asarray(zeta, dtype=complex).ravel()
    if zeta.shape[0] != D.n:
        raise InputError("zeta dimension does not match domain")
    eta = interior_point(D) if eta is None else np.asarray(eta, dtype=complex).ravel()
    if eta.shape[0] != D.n or np.any(eta == 0) or not contains(D, eta):
        raise InputError("eta must be a point of D with nonzero coordinates")

    reduced, zr, kept = project_zero_coords(D, zeta)
    sf = support_functional(reduced, zr)
    dio = diophantine(sf.xi, eps, q_max)
    beta = np.zeros(D.n, dtype=np.int64)
    beta[list(kept)] = dio.beta
    xi = np.zeros(D.n)
    xi[list(kept)] = sf.xi
    dropped = tuple(j for j in range(D.n) if j not in kept)

    res = lp.max_linear_over_polytope(D.polytope, beta.astype(float))
    if res.unbounded:
        raise NumericError(f"monomial exponent {beta.tolist()} unbounded on the domain")
    u_zeta = np.log(np.abs(zeta[list(kept)]))
    # zeta lies in the closure, so the LP max dominates beta . u(zeta); clamp rounding.
    log_sup = max(0.0, res.value - float(np.asarray(dio.beta, dtype=float) @ u_zeta))
    g = MonomialRatio(tuple(int(b) for b in beta), tuple(complex(z) for z in zeta))
    g_eta = g(eta)
    R = math.exp(float(xi[list(kept)] @ (np.log(np.abs(eta[list(kept)])) - u_zeta)))
    if abs(g_eta) > R:
        raise EpsilonTooLargeError(
            f"|g(eta)| = {abs(g_eta):.6g} exceeds R = {R:.6g}; try eps <= {eps / 10:g}",
            eps / 10,
        )
    return PeakCertificate(
        D.label,
        tuple(complex(z) for z in zeta),
        tuple(complex(z) for z in eta),
        sf,
        dio,
        log_sup,
        math.exp(log_sup),
        complex(g_eta),
        R,
        g,
        bool(dropped),
        tuple(j + 1 for j in dropped),
    )


@dataclass(frozen=True)
class NormalizedMap:
    """g(l) = a (1+e) (f(l) - c) / ((1+e)^2 - conj(c) f(l)) with c = f(eta).

    Evaluated through 1 - g = (1-f)(s^2 - |c|^2) / ((1-c)(s^2 - conj(c) f)), s = 1+e,
    so g(zeta) == 1 exactly whenever f(zeta) == 1 exactly.
    """

    f: object = field(repr=False)
    eps: float
    c: complex
    a: complex
    sup_bound: float
    analytic_bound: float

    def one_minus(self, z) -> complex:
        d = _one_minus(self.f, z)
        s = 1.0 + self.eps
        s2 = s * s
        c = self.c
        return d * (s2 - abs(c) ** 2) / ((1 - c) * (s2 - c.conjugate() + c.conjugate() * d))

    def __call__(self, z) -> complex:
        return 1.0 - self.one_minus(z)


def _one_minus(f, z) -> complex:
    om = getattr(f, "one_minus", None)
    return complex(om(z)) if om is not None else 1.0 - complex(f(z))


def mobius_normalize(f, sup_bound: float, f_eta: complex, log_sup: Optional[float] = None):
    """Normalize a map with sup <= 1+e and f(zeta) = 1 so that eta goes to 0.

    ``log_sup`` (log of the sup bound) keeps e = sup - 1 accurate when it is tiny.
    """
    eps = math.expm1(log_sup) if log_sup is not None else sup_bound - 1.0
    if eps < 0:
        raise InputError("sup bound must be at least 1 for a map with f(zeta) = 1")
    c = complex(f_eta)
    s = 1.0 + eps
    if abs(c) >= s:
        raise InputError(f"|f(eta)| = {abs(c):.6g} must be below the sup bound {s:.6g}")
    if c == 1:
        raise InputError("f(eta) = 1: eta cannot be separated from zeta")
    a = (s * s - c.conjugate()) / (s * (1 - c))
    # |1 - conj(c)| and |1 - c| round identically, so eps == 0 gives exactly 1.
    sup = abs(s * s - c.conjugate()) / (s * abs(1 - c))
    r = abs(c)
    bound = (1 + (2 * eps + eps * eps) / (1 - r)) / s if r < 1 else math.inf
    return NormalizedMap(f, eps, c, a, sup, bound)


@dataclass(frozen=True)
class PeakMember:
    """One member f_k of the weak-peak family: |f_k| < 1 + eps_k, f_k(zeta) = 1, f_k(eta) = 0."""

    k: int
    eps: float
    certificate: PeakCertificate
    normalized: NormalizedMap

    @property
    def sup_bound(self) -> float:
        return self.normalized.sup_bound

    def __call__(self, z) -> complex:
        return self.normalized(z)

    def one_minus(self, z) -> complex:
        return self.normalized.one_minus(z)


def weak_peak_family(D, zeta, eta=None, K: int = 40, q_max: int = Q_MAX, max_halvings: int = 60):
    """Members f_1..f_K with certified sup |f_k| < 1 + 4^-k, f_k(zeta) = 1, f_k(eta) = 0."""
    if K < 0:
        raise InputError("K must be nonnegative")
    family = []
    cache = {}
    for k in range(1, K + 1):
        eps_k = 4.0**-k
        eps_try = eps_k
        member = None
        for _ in range(max_halvings):
            try:
                cert = build_certificate(D, zeta, eta, eps_try, q_max)
            except EpsilonTooLargeError:
                eps_try /= 2
                continue
            except DiophantineExhaustedError:
                raise DiophantineExhaustedError(
                    f"family member k={k} needs sup < 1 + {eps_k:g}; Diophantine search "
                    f"exhausted q <= {q_max} at eps={eps_try:g}",
                    k=k,
                ) from None
            key = cert.diophantine.beta
            if key not in cache:
                cache[key] = mobius_normalize(
                    cert, cert.sup_bound, cert.value_at_eta, cert.log_sup_bound
                )
            norm = cache[key]
            if norm.sup_bound - 1.0 < eps_k:
                member = PeakMember(k, eps_k, cert, norm)
                break
            eps_try /= 2
        if member is None:
            raise DiophantineExhaustedError(
                f"family member k={k}: no certificate reached sup < 1 + {eps_k:g}", k=k
            )
        family.append(member)
    return family
