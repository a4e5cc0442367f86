"""Command line front end: ``rclift <command> [options]``.

Every command prints a JSON report with a ``pass`` flag.  Exit status is 0
when the report passes, 1 when a verification fails (the report is still
printed) and 2 for malformed input.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import __version__
from .analytic import TaylorFn, positive_real_margin, random_schur
from .config import DEFAULT_DEGREE, DEFAULT_SAMPLES, DEFAULT_TOL, OMEGA_TOL_FACTOR
from .dataset import PRESETS, build_omega, random_dataset, random_dims, validate
from .exceptions import DimensionMismatch, RCLError
from .jmap import (
    canonical_parameter,
    constrained_from_pair,
    j_gamma,
    parameter_to_constrained,
    s_omega_margin,
)
from .lifting import (
    build_big_omega,
    defect_map,
    gamma_from_pair,
    settled_gamma,
    tail_mass,
    uniqueness_check,
    verify_solution,
)
from .majorant import majorant_gap, v_from_theta, w_from_contraction_parameter
from .schurpair import pair_from_parameter, parameter_from_pair, verify_pair
from .serialize import (
    MalformedInput,
    decode_dataset,
    decode_gamma,
    decode_taylor,
    dumps,
    encode_dataset,
    encode_gamma,
    encode_pair,
    encode_taylor,
    load,
)


def _omega_tol(args) -> float:
    return OMEGA_TOL_FACTOR * args.tol


def _pr_order(T: TaylorFn) -> int:
    return min(16, T.degree + 1)


def _param(args, shape, attr="param"):
    path = getattr(args, attr)
    if path is None:
        return None
    H = decode_taylor(load(path))
    if H.shape != tuple(shape):
        raise MalformedInput(f"parameter must have shape {tuple(shape)}, got {H.shape}")
    return H


def cmd_gen(args) -> dict:
    rng = np.random.default_rng(args.seed)
    dims = tuple(args.dims) if args.dims else random_dims(rng, preset=args.preset)
    ds = random_dataset(args.seed, dims, args.preset)
    text = dumps(encode_dataset(ds))
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    rep = validate(ds, args.tol)
    out = {"dims": list(ds.dims), "preset": args.preset, "seed": args.seed, "validation": rep.to_dict(), "pass": rep.passed}
    if not args.output:
        out["dataset"] = encode_dataset(ds)
    return out


def cmd_validate(args) -> dict:
    rep = validate(decode_dataset(load(args.data)), args.tol)
    return {"validation": rep.to_dict(), "pass": rep.passed}


def cmd_omega(args) -> dict:
    od = build_omega(decode_dataset(load(args.data)), tol=args.tol)
    s = od.summary()
    return {"omega": s, "pass": s["relation_residual"] <= _omega_tol(args)}


def cmd_solve(args) -> dict:
    od = build_omega(decode_dataset(load(args.data)), tol=args.tol)
    H = _param(args, od.restriction.param_shape)
    if H is None:
        H = TaylorFn.zeros(*od.restriction.param_shape)
    p = pair_from_parameter(od, H, tol=args.tol)
    g = gamma_from_pair(p, args.degree)
    pr = verify_pair(p, n_samples=args.samples, tol=args.tol)
    sr = verify_solution(od, g, args.tol)
    return {
        "pair": encode_pair(p),
        "gamma": encode_gamma(g),
        "pair_report": pr.to_dict(),
        "solution_report": sr.to_dict(),
        "pass": pr.passed and sr.passed,
    }


def cmd_verify(args) -> dict:
    ds = decode_dataset(load(args.data))
    sr = verify_solution(ds, decode_gamma(load(args.gamma)), args.tol)
    return {"solution_report": sr.to_dict(), "pass": sr.passed}


def cmd_jmap(args) -> dict:
    otol = _omega_tol(args)
    od = build_omega(decode_dataset(load(args.data)), tol=args.tol)
    g = decode_gamma(load(args.gamma))
    bo = build_big_omega(od, g, tol=otol)
    if args.C is not None:
        C = _param(args, (bo.dim, bo.dim), "C")
    else:
        C1 = _param(args, bo.restriction.param_shape, "C1")
        C = canonical_parameter(bo) if C1 is None else parameter_to_constrained(bo, C1, tol=args.tol)
    member = s_omega_margin(C, bo, otol, args.samples)
    p = j_gamma(g, C, big_omega=bo, tol=otol)
    back = gamma_from_pair(p, g.degree)
    upto = max(g.degree - C.degree - 2, 0)
    resid = back.theta.distance(g.theta, upto)
    pr = verify_pair(p, n_samples=args.samples, tol=otol, omega=od)
    return {
        "pair": encode_pair(p),
        "constrained_parameter": member.to_dict(),
        "pair_report": pr.to_dict(),
        "roundtrip_residual": resid,
        "roundtrip_degree": upto,
        "w0_deviation": p.w0_deviation,
        "pass": member.passed and pr.passed and resid <= otol,
    }


def cmd_majorant(args) -> dict:
    otol = _omega_tol(args)
    g = decode_gamma(load(args.gamma))
    _, basis, _ = defect_map(g)
    C = _param(args, (basis.dim, basis.dim), "C")
    if C is None:
        C = TaylorFn.zeros(basis.dim, basis.dim)
    V = v_from_theta(g.theta)
    W = w_from_contraction_parameter(g, C, tol=args.tol)
    gap = majorant_gap(g.theta, W, args.samples)
    v_margin = positive_real_margin(V, _pr_order(V))
    d_margin = positive_real_margin(W - V, _pr_order(W))
    return {
        "V": encode_taylor(V),
        "W": encode_taylor(W),
        "gap": gap,
        "V_positive_real_margin": v_margin,
        "W_minus_V_positive_real_margin": d_margin,
        "pass": min(gap, v_margin, d_margin) >= -otol,
    }


def cmd_unique(args) -> dict:
    ds = decode_dataset(load(args.data))
    return {"verdict": uniqueness_check(ds, tol=args.tol).value, "pass": True}


def cmd_roundtrip(args) -> dict:
    otol = _omega_tol(args)
    od = build_omega(decode_dataset(load(args.data)), tol=args.tol)
    H = _param(args, od.restriction.param_shape)
    if H is None:
        H = random_schur(np.random.default_rng(args.seed), *od.restriction.param_shape, degree=2)
    p = pair_from_parameter(od, H, tol=args.tol)
    # --degree is the starting point; grow it until the symbol's tail is negligible
    g = settled_gamma(p, args.degree, args.tol**2)
    N = g.degree
    sr = verify_solution(od, g, args.tol)
    bo = build_big_omega(od, g, tol=otol)
    C = constrained_from_pair(g, p, tol=otol)
    member = s_omega_margin(C, bo, otol, args.samples)
    p2 = j_gamma(g, C, tol=otol)
    g2 = gamma_from_pair(p2, N)
    upto = max(N - H.degree - 2, 0)
    H2 = parameter_from_pair(p2, otol, omega=od)
    res = {
        "pair": max(p2.F.distance(p.F, upto), p2.G.distance(p.G, upto)),
        "gamma": g2.theta.distance(g.theta, upto),
        "parameter": H2.distance(H, upto),
    }
    return {
        "solution_report": sr.to_dict(),
        "big_omega": bo.summary(),
        "constrained_parameter": member.to_dict(),
        "residuals": res,
        "degree_used": N,
        "tail_mass": tail_mass(gamma_from_pair(p, 2 * N), N),
        "compared_through_degree": upto,
        "pass": sr.passed and member.passed and max(res.values()) <= otol,
    }


COMMANDS = {
    "gen": (cmd_gen, "generate a seeded random data set"),
    "validate": (cmd_validate, "check the data set constraints"),
    "omega": (cmd_omega, "summarize the coupling contraction"),
    "solve": (cmd_solve, "solution from a Schur-class parameter"),
    "verify": (cmd_verify, "verify a candidate solution"),
    "jmap": (cmd_jmap, "Schur pair of a solution and a constrained parameter"),
    "majorant": (cmd_majorant, "positive real majorants of a solution"),
    "unique": (cmd_unique, "uniqueness verdict"),
    "roundtrip": (cmd_roundtrip, "parameter -> pair -> solution -> pair -> parameter"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--degree", type=int, default=DEFAULT_DEGREE, help="truncation degree N")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="tolerance (Omega-level checks use 10x)")
    common.add_argument("--samples", type=int, default=DEFAULT_SAMPLES, help="boundary samples per check")
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(prog="rclift", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    sp = {name: sub.add_parser(name, parents=[common], help=h) for name, (_, h) in COMMANDS.items()}

    sp["gen"].add_argument("--preset", choices=PRESETS, default="generic")
    sp["gen"].add_argument("--dims", type=int, nargs=3, metavar=("N0", "NH", "NHP"))
    sp["gen"].add_argument("-o", "--output")
    for name in ("validate", "omega", "solve", "verify", "jmap", "unique", "roundtrip"):
        sp[name].add_argument("data", help="data set JSON file")
    for name in ("verify", "jmap"):
        sp[name].add_argument("gamma", help="solution JSON file")
    sp["majorant"].add_argument("gamma", help="solution JSON file")
    for name in ("solve", "roundtrip"):
        sp[name].add_argument("--param", help="parameter H as a series JSON file")
    grp = sp["jmap"].add_mutually_exclusive_group()
    grp.add_argument("--C", help="constrained parameter C as a series JSON file")
    grp.add_argument("--C1", help="free parameter C1 as a series JSON file")
    sp["majorant"].add_argument("--C", help="Schur-class parameter on the defect space of Gamma")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.degree < 1 or args.tol <= 0 or args.samples < 8:
        print("rclift: need --degree >= 1, --tol > 0 and --samples >= 8", file=sys.stderr)
        return 2
    func = COMMANDS[args.command][0]
    try:
        report = func(args)
    except (MalformedInput, DimensionMismatch) as exc:
        print(f"rclift {args.command}: malformed input: {exc}", file=sys.stderr)
        return 2
    except RCLError as exc:
        report = {"error": type(exc).__name__, "message": str(exc), "pass": False}
    report = {"command": args.command, "version": __version__, **report}
    sys.stdout.write(dumps(report))
    return 0 if report["pass"] else 1


if __name__ == "__main__":
    sys.exit(main())
