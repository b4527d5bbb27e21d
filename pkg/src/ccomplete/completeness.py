"""Decidable c-completeness criterion for log-polyhedral Reinhardt domains.

A bounded (hence c-hyperbolic) pseudoconvex Reinhardt domain is c-complete
exactly when every coordinate hyperplane V_j touched by the closure is also
met by the domain itself.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import lp
from .geom import ReinhardtDomain, axis_status

C_COMPLETE = "c_complete"
NOT_C_COMPLETE = "not_c_complete"
NOT_APPLICABLE = "not_applicable"


@dataclass(frozen=True)
class CompletenessReport:
    verdict: str
    bounded: bool
    axis_results: tuple
    witnesses: tuple

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "bounded": self.bounded,
            "axis_results": [
                {
                    "j": s.j,
                    "closure_meets": s.closure_meets,
                    "interior_meets": s.interior_meets,
                }
                for s in self.axis_results
            ],
            "witnesses": [dict(w) for w in self.witnesses],
        }


def zwonek_check(D: ReinhardtDomain) -> CompletenessReport:
    statuses = tuple(axis_status(D, j) for j in range(1, D.n + 1))
    unbounded = []
    for k in range(D.n):
        res = lp.max_linear_over_polytope(D.polytope, np.eye(D.n)[k])
        if res.unbounded:
            unbounded.append({"j": k + 1, "kind": "unbounded", "ray": res.ray.tolist()})
    if unbounded:
        return CompletenessReport(NOT_APPLICABLE, False, statuses, tuple(unbounded))

    witnesses = []
    for s in statuses:
        if s.closure_meets and not s.interior_meets:
            w = {"j": s.j, "kind": "axis", "ray": list(s.closure_ray)}
            if s.blocking_rows:
                w["blocking_rows"] = list(s.blocking_rows)
            else:
                w["reduced_system"] = "infeasible"
            witnesses.append(w)
    verdict = NOT_C_COMPLETE if witnesses else C_COMPLETE
    return CompletenessReport(verdict, True, statuses, tuple(witnesses))
