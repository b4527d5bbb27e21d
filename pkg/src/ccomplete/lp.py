"""Dense two-phase simplex with Bland's anti-cycling rule.

Every optimization in the package (boundedness, axis reach, monomial sup-norms,
envelope duality) is a small dense LP, so the solver favours determinism and
certificates over speed: optimal answers carry dual values, unbounded answers
carry a verified recession ray.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import ConditioningError, EmptyDomainError, InputError

LE = "<="
EQ = "="

FEAS_TOL = 1e-9
PIVOT_TOL = 1e-9
BLOWUP = 1e14
MAX_ITER = 50_000

OPTIMAL = "optimal"
UNBOUNDED = "unbounded"
INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class Row:
    a: tuple
    relation: str
    b: float


@dataclass(frozen=True)
class LPProblem:
    """maximize ``objective . x`` subject to ``rows``; ``nonneg[j]`` marks x_j >= 0."""

    objective: tuple
    rows: tuple
    nonneg: tuple

    @classmethod
    def from_arrays(cls, c, A_ub=None, b_ub=None, A_eq=None, b_eq=None, nonneg=False):
        c = tuple(float(v) for v in np.asarray(c, dtype=float).ravel())
        n = len(c)
        rows = []
        for A, b, rel in ((A_ub, b_ub, LE), (A_eq, b_eq, EQ)):
            if A is None:
                continue
            A = np.asarray(A, dtype=float)
            if A.ndim != 2 or A.shape[1] != n:
                raise InputError(f"constraint matrix has shape {A.shape}, expected (*, {n})")
            b = np.asarray(b, dtype=float).ravel()
            if b.shape[0] != A.shape[0]:
                raise InputError("right-hand side length does not match row count")
            rows.extend(Row(tuple(map(float, a)), rel, float(bi)) for a, bi in zip(A, b))
        if isinstance(nonneg, (bool, np.bool_)):
            nonneg = (bool(nonneg),) * n
        return cls(c, tuple(rows), tuple(bool(v) for v in nonneg))


@dataclass(frozen=True)
class LPSolution:
    status: str
    value: float
    point: Optional[np.ndarray]
    duals: Optional[np.ndarray]
    ray: Optional[np.ndarray] = None

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


def _validate(p: LPProblem):
    n = len(p.objective)
    if n == 0:
        raise InputError("LP needs at least one variable")
    if len(p.nonneg) != n:
        raise InputError("variable-bound list does not match objective length")
    c = np.array(p.objective, dtype=float)
    if not np.all(np.isfinite(c)):
        raise InputError("objective has non-finite entries")
    m = len(p.rows)
    A = np.zeros((m, n))
    b = np.zeros(m)
    is_eq = np.zeros(m, dtype=bool)
    for i, r in enumerate(p.rows):
        if len(r.a) != n:
            raise InputError(f"row {i} has {len(r.a)} coefficients, expected {n}")
        if r.relation not in (LE, EQ):
            raise InputError(f"row {i}: unknown relation {r.relation!r}")
        A[i] = r.a
        b[i] = r.b
        is_eq[i] = r.relation == EQ
    if not (np.all(np.isfinite(A)) and np.all(np.isfinite(b))):
        raise InputError("constraint data has non-finite entries")
    return c, A, b, is_eq, np.array(p.nonneg, dtype=bool)


def _pivot(T, i, j):
    T[i] /= T[i, j]
    col = T[:, j].copy()
    col[i] = 0.0
    T -= np.outer(col, T[i])
    if np.abs(T).max() > BLOWUP:
        raise ConditioningError("simplex tableau entry exceeded 1e14")


def _refactor(T, basis, base) -> bool:
    """Rebuild the tableau from the original rows: T = B^-1 [A | b]."""
    try:
        T[:] = np.linalg.solve(base[:, basis], base)
    except np.linalg.LinAlgError:
        return False
    return True


def _iterate(T, basis, cost, allowed, base=None):
    """Run Bland's rule on tableau ``T`` (last column = rhs). Returns (status, entering).

    ``base`` is the untouched tableau; it is used to refactor before an
    unboundedness verdict, so drift in the reduced costs cannot fake a ray.
    """
    ncols = T.shape[1] - 1
    tol_rc = 1e-11 * max(1.0, np.abs(cost).max())
    refreshed = False
    for _ in range(MAX_ITER):
        r = cost[:ncols] - cost[basis] @ T[:, :ncols]
        cand = np.nonzero((r > tol_rc) & allowed)[0]
        if cand.size == 0:
            return OPTIMAL, None
        j = int(cand[0])
        col = T[:, j]
        pos = col > PIVOT_TOL
        if not pos.any():
            if base is not None and not refreshed and _refactor(T, basis, base):
                refreshed = True
                continue
            return UNBOUNDED, j
        refreshed = False
        rows = np.nonzero(pos)[0]
        ratios = T[rows, -1] / col[rows]
        rmin = ratios.min()
        ties = rows[ratios <= rmin + 1e-12 * (1.0 + abs(rmin))]
        i = int(ties[np.argmin(basis[ties])])
        _pivot(T, i, j)
        basis[i] = j
    raise ConditioningError("simplex iteration limit reached")


def solve(p: LPProblem) -> LPSolution:
    c, A, b, is_eq, nonneg = _validate(p)
    m, n = A.shape

    # Row equilibration; all-zero rows are decided directly.
    scale = np.abs(A).max(axis=1) if m else np.zeros(0)
    keep = scale > 0
    for i in np.nonzero(~keep)[0]:
        bad = abs(b[i]) > FEAS_TOL if is_eq[i] else b[i] < -FEAS_TOL
        if bad:
            return LPSolution(INFEASIBLE, float("nan"), None, None)
    rows_idx = np.nonzero(keep)[0]
    As = A[rows_idx] / scale[rows_idx, None]
    bs = b[rows_idx] / scale[rows_idx]
    eq = is_eq[rows_idx]
    mk = len(rows_idx)

    # Split free variables into positive and negative parts.
    pos_col = np.zeros(n, dtype=int)
    neg_col = -np.ones(n, dtype=int)
    cols = []
    for j in range(n):
        pos_col[j] = len(cols)
        cols.append(As[:, j])
        if not nonneg[j]:
            neg_col[j] = len(cols)
            cols.append(-As[:, j])
    ns = len(cols)
    struct = np.column_stack(cols) if mk else np.zeros((0, ns))

    le_rows = np.nonzero(~eq)[0]
    n_slack = len(le_rows)
    flip = np.where(bs < 0, -1.0, 1.0)
    std = np.zeros((mk, ns + n_slack))
    std[:, :ns] = struct
    for k, i in enumerate(le_rows):
        std[i, ns + k] = 1.0
    std *= flip[:, None]
    rhs = bs * flip

    basis = -np.ones(mk, dtype=int)
    for k, i in enumerate(le_rows):
        if flip[i] > 0:
            basis[i] = ns + k
    art_rows = np.nonzero(basis < 0)[0]
    n_art = len(art_rows)
    ntot = ns + n_slack + n_art
    T = np.zeros((mk, ntot + 1))
    T[:, : ns + n_slack] = std
    for k, i in enumerate(art_rows):
        T[i, ns + n_slack + k] = 1.0
        basis[i] = ns + n_slack + k
    T[:, -1] = rhs

    if n_art:
        cost1 = np.zeros(ntot)
        cost1[ns + n_slack:] = -1.0
        _iterate(T, basis, cost1, np.ones(ntot, dtype=bool), T.copy())
        infeas = -(cost1[basis] @ T[:, -1])
        if infeas > FEAS_TOL * max(1.0, np.abs(rhs).max(initial=0.0)):
            return LPSolution(INFEASIBLE, float("nan"), None, None)
        # Drive remaining (zero-level) artificials out, dropping redundant rows.
        drop = []
        for i in range(mk):
            if basis[i] >= ns + n_slack:
                cand = np.nonzero(np.abs(T[i, : ns + n_slack]) > PIVOT_TOL)[0]
                if cand.size:
                    _pivot(T, i, int(cand[0]))
                    basis[i] = int(cand[0])
                else:
                    drop.append(i)
        alive = np.setdiff1d(np.arange(mk), drop)
        T = np.hstack([T[alive, : ns + n_slack], T[alive, -1:]])
        basis = basis[alive]
        row_map = rows_idx[alive]
        flip_kept = flip[alive]
        std = std[alive]
    else:
        row_map = rows_idx
        flip_kept = flip

    ncols = ns + n_slack
    cost2 = np.zeros(ncols)
    for j in range(n):
        cost2[pos_col[j]] = c[j]
        if neg_col[j] >= 0:
            cost2[neg_col[j]] = -c[j]
    base = np.hstack([std, (rhs[alive] if n_art else rhs)[:, None]])
    status, entering = _iterate(T, basis, cost2, np.ones(ncols, dtype=bool), base)

    xs = np.zeros(ncols)
    xs[basis] = T[:, -1]
    x = _to_original(xs, pos_col, neg_col)

    if status == UNBOUNDED:
        d = np.zeros(ncols)
        d[entering] = 1.0
        d[basis] = -T[:, entering]
        ray = _to_original(d, pos_col, neg_col)
        ray /= np.abs(ray).max()
        return LPSolution(UNBOUNDED, float("inf"), x, None, ray)

    duals = np.zeros(m)
    if len(basis):
        B = std[:, basis]
        y = np.linalg.solve(B.T, cost2[basis])
        duals[row_map] = y * flip_kept / scale[row_map]
    return LPSolution(OPTIMAL, float(c @ x), x, duals)


def _to_original(xs, pos_col, neg_col):
    x = xs[pos_col].copy()
    has_neg = neg_col >= 0
    x[has_neg] -= xs[neg_col[has_neg]]
    return x


@dataclass(frozen=True)
class PolytopeMax:
    value: float
    point: Optional[np.ndarray]
    multipliers: Optional[np.ndarray]
    ray: Optional[np.ndarray]

    @property
    def unbounded(self) -> bool:
        return self.ray is not None


def max_linear_over_polytope(P, c: Sequence[float]) -> PolytopeMax:
    """sup of ``c . u`` over the closed polytope ``{u : P.A u <= P.b}`` (u free)."""
    A = np.asarray(P.A, dtype=float)
    c = np.asarray(c, dtype=float)
    if A.ndim != 2 or A.shape[1] != c.shape[0]:
        raise InputError(f"objective length {c.shape[0]} does not match polytope dimension")
    sol = solve(LPProblem.from_arrays(c, A_ub=A, b_ub=P.b, nonneg=False))
    if sol.status == INFEASIBLE:
        raise EmptyDomainError("polytope is empty")
    if sol.status == UNBOUNDED:
        return PolytopeMax(float("inf"), sol.point, None, sol.ray)
    return PolytopeMax(sol.value, sol.point, sol.duals, None)
