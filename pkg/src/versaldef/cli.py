"""Command line interface.

Four subcommands: ``emit`` writes curves, the versal family, or the
base ideal in plain text, JSON, or as runnable Singular / Macaulay2
scripts; ``verify`` runs a named check suite and reports pass/fail;
``invariants`` prints the numeric invariants of a curve; ``groebner``
computes a basis (or an elimination ideal) for polynomials read from a
file, inferring the ring from the variable names that occur.

Exit codes: 0 success, 1 at least one check failed, 2 usage error,
3 a computation hit its declared budget.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from typing import List, Optional, Sequence, Tuple

from . import curves, versal, verify
from .groebner import (
    Budget,
    BudgetExceeded,
    DEFAULT_BUDGET,
    DEGREVLEX,
    LEX,
    Ideal,
    buchberger,
    eliminate,
)
from .poly import ParseError, Polynomial, VarRegistry, build_registry, parse, to_str
from .report import FAIL, PASS, SKIPPED_BUDGET

FORMATS = ("plain", "json", "singular", "macaulay2")

USAGE_ERROR = 2
BUDGET_EXIT = 3


# ---------------------------------------------------------------------------
# export formats


def _export_name(name: str, fmt: str) -> str:
    if fmt == "singular":
        m = re.fullmatch(r"z(\d+)", name)
        if m:
            return f"z({m.group(1)})"
        return name
    if fmt == "macaulay2":
        m = re.fullmatch(r"z(\d+)", name)
        if m:
            return f"z_{m.group(1)}"
        m = re.fullmatch(r"a_(\d+)_(\d+)", name)
        if m:
            return f"a_({m.group(1)},{m.group(2)})"
        return name
    return name


def _mapping_comment(reg: VarRegistry, fmt: str, prefix: str) -> List[str]:
    renames = [
        f"{_export_name(nm, fmt)} = {nm}" for nm in reg.names if _export_name(nm, fmt) != nm
    ]
    lines = [f"{prefix} generated by versaldef"]
    if renames:
        lines.append(f"{prefix} variable map: " + ", ".join(renames))
    if reg.antisymmetric_pairs and any(nm.startswith("a_") for nm in reg.names):
        lines.append(
            f"{prefix} pair parameters are antisymmetric: a_j_i with j > i means -a_i_j"
        )
    return lines


def _script_singular(reg: VarRegistry, gens: Sequence[Polynomial]) -> str:
    mapped = [_export_name(nm, "singular") for nm in reg.names]
    if all(w == 1 for w in reg.weights):
        order = "dp"
    else:
        order = "wp(" + ",".join(str(w) for w in reg.weights) + ")"
    lines = _mapping_comment(reg, "singular", "//")
    lines.append(f"ring r = 0, ({', '.join(mapped)}), {order};")
    if gens:
        body = ",\n  ".join(to_str(g, mapped) for g in gens)
        lines.append(f"ideal I =\n  {body};")
    else:
        lines.append("ideal I = 0;")
    return "\n".join(lines) + "\n"


def _script_macaulay2(reg: VarRegistry, gens: Sequence[Polynomial]) -> str:
    mapped = [_export_name(nm, "macaulay2") for nm in reg.names]
    degrees = ""
    if any(w != 1 for w in reg.weights):
        degrees = ", Degrees => {" + ",".join(str(w) for w in reg.weights) + "}"
    lines = _mapping_comment(reg, "macaulay2", "--")
    lines.append(f"R = QQ[{', '.join(mapped)}{degrees}];")
    if gens:
        body = ",\n  ".join(to_str(g, mapped) for g in gens)
        lines.append(f"I = ideal(\n  {body});")
    else:
        lines.append("I = ideal 0_R;")
    return "\n".join(lines) + "\n"


def _render(reg: VarRegistry, gens: Sequence[Polynomial], fmt: str, json_payload: dict) -> str:
    if fmt == "plain":
        return "\n".join(to_str(g) for g in gens) + "\n"
    if fmt == "json":
        return json.dumps(json_payload, indent=2, sort_keys=True) + "\n"
    if fmt == "singular":
        return _script_singular(reg, gens)
    if fmt == "macaulay2":
        return _script_macaulay2(reg, gens)
    raise ValueError(f"unknown format {fmt!r}")


# ---------------------------------------------------------------------------
# emit


def _emit_curve(args) -> Tuple[VarRegistry, List[Polynomial], dict]:
    n = args.n
    if args.curve == "L":
        if n < 3:
            raise ValueError("generic lines need n >= 3")
        presentation = curves.G_FORM if args.presentation == "g" else curves.F_FORM
        ideal = curves.lines_ideal(n, presentation)
        spec = curves.CurveSpec(curves.LINES_GENERIC, n, presentation=presentation)
        return ideal.registry, list(ideal.generators), {
            "curve": spec.to_json_dict(),
            "variables": list(ideal.registry.names),
            "generators": [to_str(g) for g in ideal.generators],
        }
    if args.curve == "axes":
        if n < 2:
            raise ValueError("coordinate axes need n >= 2")
        reg = build_registry(nz=n)
        gens = [
            Polynomial.var(reg, f"z{i}") * Polynomial.var(reg, f"z{j}")
            for i in range(1, n + 1)
            for j in range(i + 1, n + 1)
        ]
        spec = curves.CurveSpec(curves.AXES, n)
        return reg, gens, {
            "curve": spec.to_json_dict(),
            "variables": list(reg.names),
            "generators": [to_str(g) for g in gens],
        }
    if args.curve == "elliptic":
        gens = curves.elliptic_monomial_table(n)
        spec = curves.CurveSpec(curves.MONOMIAL_ELLIPTIC, n)
    elif args.curve == "rational":
        gens = curves.rational_monomial_table(n)
        spec = curves.CurveSpec(curves.MONOMIAL_RATIONAL, n)
    else:
        raise ValueError(f"unknown curve kind {args.curve!r}")
    reg = gens[0].reg
    return reg, list(gens), {
        "curve": spec.to_json_dict(),
        "variables": list(reg.names),
        "generators": [to_str(g) for g in gens],
    }


def _emit_family(args) -> Tuple[VarRegistry, List[Polynomial], dict]:
    family = versal.main_family(args.n)
    reg = family.total[0].reg
    return reg, list(family.total), family.to_json_dict()


def _emit_base(args) -> Tuple[VarRegistry, List[Polynomial], dict]:
    ideal = versal.base_ideal(args.n, minimal=args.minimal)
    return ideal.registry, list(ideal.generators), {
        "n": args.n,
        "minimal": bool(args.minimal),
        "parameters": list(ideal.registry.names),
        "generators": [to_str(g) for g in ideal.generators],
    }


def _cmd_emit(args, out) -> int:
    if args.what == "curve":
        reg, gens, payload = _emit_curve(args)
    elif args.what == "family":
        reg, gens, payload = _emit_family(args)
    else:
        reg, gens, payload = _emit_base(args)
    out.write(_render(reg, gens, args.format, payload))
    return 0


# ---------------------------------------------------------------------------
# verify


def _cmd_verify(args, out) -> int:
    budget = Budget(max_pairs=args.spair_budget, max_terms=args.term_budget)
    names = list(verify.SUITES) if args.suite == "all" else [args.suite]
    n_range = tuple(args.n) if args.n else None
    reports = [verify.run_suite(nm, n_range, budget, seed=args.seed) for nm in names]

    for rep in reports:
        for c in rep.checks:
            line = f"{c.status:14s} {c.id}"
            if c.details and c.status != PASS:
                line += f"  [{c.details}]"
            print(line)
        s = rep.summary
        print(
            f"suite {rep.suite}: {s['pass']} passed, {s['fail']} failed, "
            f"{s['skipped']} skipped (n = {rep.n_range[0]}..{rep.n_range[1]})"
        )

    if out is not sys.stdout:
        if len(reports) == 1:
            out.write(reports[0].to_json())
        else:
            payload = [r.to_json_dict() for r in reports]
            out.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")

    if any(c.status == FAIL for r in reports for c in r.checks):
        return 1
    if any(c.status == SKIPPED_BUDGET for r in reports for c in r.checks):
        return BUDGET_EXIT
    return 0


# ---------------------------------------------------------------------------
# invariants


def _cmd_invariants(args, out) -> int:
    if args.family == "L":
        m = args.index  # number of lines
        if m < 4:
            raise ValueError("need at least 4 lines")
        n = m - 1
        data = {
            "delta": m,
            "r": m,
            "mu": m + 1,
            "g": 1,
            "dimT1": curves.elliptic_t1_formula(n, m),
            "dimT2": max(0, curves.t2_formula(n)),
        }
    elif args.family in ("elliptic", "rational"):
        n = args.index
        if n < 2:
            raise ValueError("need n >= 2")
        if args.family == "elliptic":
            semi = curves.semigroup_invariants(range(n + 1, 2 * n + 1))
        else:
            semi = curves.semigroup_invariants(range(n, 2 * n))
        num = curves.numeric_invariants(semi.delta, branches=1)
        data = {
            "delta": semi.delta,
            "r": 1,
            "mu": num.mu,
            "g": num.genus,
            "mult": semi.multiplicity,
        }
    else:
        raise ValueError(f"unknown family {args.family!r}")

    if args.format == "json":
        out.write(json.dumps(data, indent=2, sort_keys=True) + "\n")
    else:
        out.write(", ".join(f"{k} {v}" for k, v in data.items()) + "\n")
    return 0


# ---------------------------------------------------------------------------
# ad-hoc groebner runs


_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


def _infer_registry(lines: Sequence[str]) -> VarRegistry:
    nz = 0
    y = t = s = False
    npairs = 0
    params: set = set()
    for line in lines:
        for name in _NAME_RE.findall(line):
            m = re.fullmatch(r"z(\d+)", name)
            if m:
                nz = max(nz, int(m.group(1)))
                continue
            if name == "y":
                y = True
            elif name == "t":
                t = True
            elif name == "s":
                s = True
            else:
                m = re.fullmatch(r"a_(\d+)_(\d+)", name)
                if m:
                    npairs = max(npairs, int(m.group(1)), int(m.group(2)))
                    continue
                m = re.fullmatch(r"a_(\d+)", name)
                if m:
                    params.add(int(m.group(1)))
                    continue
                raise ValueError(f"cannot place variable {name!r} in a registry")
    return build_registry(
        nz=nz, y=y, t=t, s=s, npairs=npairs, params=tuple(sorted(params))
    )


def _cmd_groebner(args, out) -> int:
    with open(args.file, "r", encoding="utf-8") as fh:
        raw = fh.readlines()
    lines = [ln.strip() for ln in raw]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ValueError(f"no polynomials in {args.file}")
    reg = _infer_registry(lines)
    polys = [parse(ln, reg) for ln in lines]
    budget = Budget(max_pairs=args.spair_budget, max_terms=args.term_budget)
    ideal = Ideal(reg, polys)
    if args.eliminate:
        drop = [v.strip() for v in args.eliminate.split(",") if v.strip()]
        result = eliminate(ideal, drop, budget)
        reg, gens = result.registry, list(result.generators)
        label = {"eliminated": drop}
    else:
        order = LEX if args.order == "lex" else DEGREVLEX
        gb = buchberger(ideal, order, budget)
        reg, gens = gb.registry, list(gb.basis)
        label = {"order": args.order}
    payload = dict(label)
    payload.update(
        {"variables": list(reg.names), "basis": [to_str(g) for g in gens]}
    )
    out.write(_render(reg, gens, args.format, payload))
    return 0


# ---------------------------------------------------------------------------
# argument plumbing


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="versaldef",
        description="Versal deformations of generic-lines curve singularities: "
        "construction, verification, and export.",
    )
    parser.add_argument(
        "--config",
        metavar="FILE",
        help="JSON file with default option values (command line wins)",
    )

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=FORMATS, default=None, help="output format (default plain)"
    )
    common.add_argument("--out", metavar="FILE", default=None, help="write output to FILE")
    common.add_argument(
        "--spair-budget", type=int, default=None, metavar="N",
        help="abort Groebner runs after N S-pairs",
    )
    common.add_argument(
        "--term-budget", type=int, default=None, metavar="N",
        help="abort reductions when a polynomial exceeds N terms",
    )
    common.add_argument(
        "--seed", type=int, default=None, metavar="N",
        help="seed for the extra sampled-parameter checks",
    )

    sub = parser.add_subparsers(dest="command", required=True)

    emit = sub.add_parser("emit", help="write curves, families, or base ideals")
    emit_sub = emit.add_subparsers(dest="what", required=True)

    ec = emit_sub.add_parser("curve", parents=[common], help="a curve presentation")
    ec.add_argument("curve", choices=("L", "axes", "elliptic", "rational"),
                    help="L: generic lines in n-space; axes: coordinate axes; "
                    "elliptic/rational: monomial curves")
    ec.add_argument("n", type=int, help="ambient dimension n")
    ec.add_argument("--presentation", choices=("g", "f"), default="g",
                    help="g: pair quadrics with y; f: y-free differences")

    ef = emit_sub.add_parser("family", parents=[common], help="the versal family")
    ef.add_argument("--n", type=int, required=True)

    eb = emit_sub.add_parser("base", parents=[common], help="the base-space ideal")
    eb.add_argument("--n", type=int, required=True)
    eb.add_argument("--minimal", action="store_true", help="minimal system instead of the full one")

    ver = sub.add_parser("verify", parents=[common], help="run a verification suite")
    ver.add_argument("suite", choices=tuple(verify.SUITES) + ("all",))
    ver.add_argument("--n", type=int, nargs=2, metavar=("LO", "HI"),
                     help="inclusive n range (default per suite)")

    inv = sub.add_parser("invariants", parents=[common], help="numeric invariants of a curve")
    inv.add_argument("family", choices=("L", "elliptic", "rational"),
                     help="L: m generic lines; elliptic/rational: monomial curves")
    inv.add_argument("index", type=int, help="number of lines for L, n for monomial curves")

    gro = sub.add_parser("groebner", parents=[common],
                         help="Groebner basis of polynomials from a file (one per line)")
    gro.add_argument("file")
    gro.add_argument("--order", choices=("degrevlex", "lex"), default="degrevlex")
    gro.add_argument("--eliminate", metavar="VARS",
                     help="comma-separated variables to eliminate instead")

    return parser


_CONFIG_KEYS = ("format", "out", "spair_budget", "term_budget", "seed")


def _apply_config(args) -> None:
    config = {}
    if args.config:
        with open(args.config, "r", encoding="utf-8") as fh:
            config = json.load(fh)
        unknown = set(config) - set(_CONFIG_KEYS)
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
    defaults = {
        "format": "plain",
        "out": None,
        "spair_budget": DEFAULT_BUDGET.max_pairs,
        "term_budget": DEFAULT_BUDGET.max_terms,
        "seed": None,
    }
    for key in _CONFIG_KEYS:
        if getattr(args, key, None) is None:
            setattr(args, key, config.get(key, defaults[key]))
    if args.format not in FORMATS:
        raise ValueError(f"unknown format {args.format!r}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        _apply_config(args)
        out = sys.stdout
        if args.out:
            out = open(args.out, "w", encoding="utf-8")
        try:
            if args.command == "emit":
                return _cmd_emit(args, out)
            if args.command == "verify":
                return _cmd_verify(args, out)
            if args.command == "invariants":
                return _cmd_invariants(args, out)
            return _cmd_groebner(args, out)
        finally:
            if out is not sys.stdout:
                out.close()
    except BudgetExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return BUDGET_EXIT
    except (ValueError, KeyError, ParseError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
