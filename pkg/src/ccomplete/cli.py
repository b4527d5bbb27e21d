"""Command-line front end.

Exit codes: 0 success/affirmative, 1 negative verdict, 2 not applicable,
3 input error, 4 numeric failure.
"""
from __future__ import annotations

import argparse
import math
import re
import sys
from dataclasses import dataclass, field

import numpy as np

from . import booster, completeness, edwards, geom, hyperbolic, orbit, peak, potential1d
from .errors import CCompleteError, InputError, NumericError
from .report import emit_report
from .rng import DEFAULT_SEED

EXIT_OK, EXIT_NEGATIVE, EXIT_NA, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2, 3, 4
COMMANDS = ("check", "peak", "boost", "envelope", "potential", "probe", "orbit")


@dataclass
class RunConfig:
    command: str
    inputs: list
    options: dict = field(default_factory=dict)
    seed: int = DEFAULT_SEED
    fmt: str = "json"
    output: str | None = None


def parse_complex(tok: str) -> complex:
    parts = tok.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise InputError(f"cannot parse complex number {tok!r}; use re,im")


def parse_real_expr(tok: str) -> float:
    """A real from '1.5', '3/7', 'sqrt(2)' or 'sqrt2'."""
    t = tok.strip().replace(" ", "")
    m = re.fullmatch(r"sqrt\(?([0-9.eE+-]+)\)?", t)
    try:
        if m:
            return math.sqrt(float(m.group(1)))
        if "/" in t:
            a, b = t.split("/")
            return float(a) / float(b)
        return float(t)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"cannot parse real expression {tok!r}") from None


def _range(name, lo=None, hi=None):
    def check(v):
        if (lo is not None and v < lo) or (hi is not None and v > hi):
            raise InputError(f"--{name}={v} outside [{lo}, {hi}]")
        return v

    return check


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ccomplete", description=__doc__.splitlines()[0])
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--output", default=None)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", help="c-completeness verdict for a Reinhardt domain")
    s.add_argument("domain")

    s = sub.add_parser("peak", help="monomial weak-peak certificate")
    s.add_argument("domain")
    s.add_argument("--zeta", nargs="+", required=True)
    s.add_argument("--eta", nargs="+")
    s.add_argument("--eps", type=float, default=0.01)
    s.add_argument("--qmax", type=int, default=peak.Q_MAX)

    s = sub.add_parser("boost", help="booster peak function and grid verification")
    s.add_argument("domain")
    s.add_argument("--zeta", nargs="+", required=True)
    s.add_argument("--eta", nargs="+")
    s.add_argument("-K", type=int, default=booster.K_DEFAULT)
    s.add_argument("--grid", type=int, default=10_000)
    s.add_argument("--kcheck", type=int, default=6)
    s.add_argument("--qmax", type=int, default=peak.Q_MAX)

    s = sub.add_parser("envelope", help="discrete Edwards duality for an instance file")
    s.add_argument("instance")

    s = sub.add_parser("potential", help="Newton potential functionals near a point")
    s.add_argument("measure")
    s.add_argument("--zeta", required=True)
    s.add_argument("--r", type=float, default=1e-3)
    s.add_argument("--eps", type=float, default=0.01)
    s.add_argument("--samples", type=int, default=20_000)
    s.add_argument("--region", choices=("disc", "slit"), default="disc")
    s.add_argument("--nu", type=int, default=20)

    s = sub.add_parser("probe", help="escape probe along a segment towards a boundary point")
    s.add_argument("domain")
    s.add_argument("--base", nargs="+", required=True)
    s.add_argument("--target", nargs="+", required=True)
    s.add_argument("-N", type=int, default=40)
    s.add_argument("--threshold", type=float, default=hyperbolic.ESCAPE_THRESHOLD)

    s = sub.add_parser("orbit", help="star discrepancy of the irrational boundary orbit")
    s.add_argument("--alpha", required=True)
    s.add_argument("-N", type=int, default=10_000)
    return p


def _point(tokens):
    return np.array([parse_complex(t) for t in tokens], dtype=complex)


def _check(cfg):
    D = geom.load_domain(cfg.inputs[0])
    rep = completeness.zwonek_check(D)
    out = {"domain": D.label, **rep.to_dict()}
    code = {
        completeness.C_COMPLETE: EXIT_OK,
        completeness.NOT_C_COMPLETE: EXIT_NEGATIVE,
        completeness.NOT_APPLICABLE: EXIT_NA,
    }[rep.verdict]
    return out, code


def _peak(cfg):
    o = cfg.options
    D = geom.load_domain(cfg.inputs[0])
    eta = _point(o["eta"]) if o.get("eta") else None
    _range("eps", 1e-15, 1.0)(o["eps"])
    cert = peak.build_certificate(D, _point(o["zeta"]), eta, o["eps"], o["qmax"])
    return cert.to_dict(), EXIT_OK


def _boost(cfg):
    o = cfg.options
    D = geom.load_domain(cfg.inputs[0])
    _range("K", 1, 60)(o["K"])
    _range("grid", 1, 10**6)(o["grid"])
    zeta = _point(o["zeta"])
    eta = _point(o["eta"]) if o.get("eta") else None
    family = peak.weak_peak_family(D, zeta, eta, o["K"], o["qmax"])
    b = booster.BoosterFunction.build(family, zeta)
    grid = geom.sample_points(D, o["grid"], cfg.seed, near=zeta, shells=o["grid"] // 2)
    rep = booster.verify_peak(b, grid, k_check=o["kcheck"])
    out = {
        "domain": D.label,
        "seed": cfg.seed,
        "K": b.K,
        "exponents": [list(m.certificate.diophantine.beta) for m in family],
        "member_sup_bounds": [m.sup_bound for m in family],
        **rep.to_dict(),
    }
    return out, EXIT_OK if rep.passed else EXIT_NEGATIVE


def _envelope(cfg):
    inst = edwards.load_instance(cfg.inputs[0])
    res = edwards.envelope(inst)
    mass, _ = edwards.max_offbase_mass(inst)
    out = {**res.to_dict(), "max_offbase_mass": mass,
           "jensen_ok": edwards.verify_measure(inst, res.measure, edwards.JENSEN)}
    ok = abs(res.gap) <= 1e-7 * (1 + abs(res.primal_value))
    return out, EXIT_OK if ok else EXIT_NUMERIC


def _potential(cfg):
    o = cfg.options
    mu = potential1d.load_measure(cfg.inputs[0])
    zeta = parse_complex(o["zeta"])
    _range("r", 1e-12, 10.0)(o["r"])
    sampler = potential1d.unit_disc() if o["region"] == "disc" else potential1d.slit_disc()
    dens = potential1d.density_ratio(sampler, zeta, o["r"], o["samples"], cfg.seed)
    out = {
        "seed": cfg.seed,
        "zeta": zeta,
        "r": o["r"],
        "eps": o["eps"],
        "mass_at_zeta": mu.mass_at(zeta),
        "newton_potential_at_zeta": potential1d.newton_potential(mu, zeta),
        "prop11_functional": potential1d.prop11_functional(mu, zeta, o["r"]),
        "pi_set_density": potential1d.pi_set_density(mu, zeta, o["eps"], o["r"], o["samples"], cfg.seed),
        "domain": sampler.name,
        "density_ratio": dens.ratio,
        "density_stderr": dens.stderr,
    }
    if mu.mass_at(zeta) == 0:
        ext = potential1d.extract_cauchy(mu, zeta, sampler, o["nu"])
        out["cauchy_points"] = list(ext.points)
        out["cauchy_failed_at"] = ext.failed_at
    return out, EXIT_OK


def _probe(cfg):
    o = cfg.options
    D = geom.load_domain(cfg.inputs[0])
    base, target = _point(o["base"]), _point(o["target"])
    seq = [base + (1 - 2.0**-n) * (target - base) for n in range(1, o["N"] + 1)]
    fam = hyperbolic.coordinate_family(D)
    rep = hyperbolic.escape_probe(D, fam, base, seq, o["threshold"])
    out = {"domain": D.label, "divergent": rep.divergent, "sup_modulus": rep.sup_modulus,
           "max_distance": rep.max_distance, "threshold": rep.threshold,
           "note": "numeric probe along a segment; not a proof of c-finite compactness"}
    return out, EXIT_OK if rep.divergent else EXIT_NEGATIVE


def _orbit(cfg):
    o = cfg.options
    alpha = parse_real_expr(o["alpha"])
    _range("N", 2, 10**8)(o["N"])
    rep = orbit.orbit_discrepancy(alpha, o["N"])
    return rep.to_dict(), EXIT_NEGATIVE if rep.rational_warning else EXIT_OK


_DISPATCH = {
    "check": _check,
    "peak": _peak,
    "boost": _boost,
    "envelope": _envelope,
    "potential": _potential,
    "probe": _probe,
    "orbit": _orbit,
}


def _config(ns) -> RunConfig:
    inputs = [getattr(ns, k) for k in ("domain", "instance", "measure") if hasattr(ns, k)]
    skip = {"command", "seed", "format", "output", "domain", "instance", "measure"}
    opts = {k: v for k, v in vars(ns).items() if k not in skip}
    return RunConfig(ns.command, inputs, opts, ns.seed, ns.format, ns.output)


def run(args, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        ns = parser.parse_args(list(args))
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    cfg = _config(ns)
    try:
        result, code = _DISPATCH[cfg.command](cfg)
    except (InputError, OSError) as exc:
        print(f"input error: {exc}", file=stderr)
        return EXIT_INPUT
    except (NumericError, CCompleteError, ArithmeticError) as exc:
        print(f"numeric failure: {exc}", file=stderr)
        return EXIT_NUMERIC
    text = emit_report(result, cfg.fmt)
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return code


def main():
    sys.exit(run(sys.argv[1:]))
