"""Command-line front end.

All commands print line-delimited JSON with sorted keys; identical
invocations with identical seeds are byte-identical.  Exit codes: 0 on
success, 1 when a theorem check reports a violation, 2 on usage or parse
errors.  LT_FORGE_PRECISION overrides the default precision.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .errors import LTForgeError
from .exprparse import ExprError, parse_element
from .lubintate import eval_exp, eval_log, get_context, torsion_field
from .structure import (
    min_log_valuation,
    module_basis,
    log_image_basis,
    regularity_check,
    spanning_set,
    torsion_generating_sets,
)
from .tower import FieldElement, make_tower
from .verify import THEOREM_IDS, SuiteConfig, run_all, run_theorem


def _emit(obj):
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


def _default_precision():
    env = os.environ.get("LT_FORGE_PRECISION")
    return int(env) if env else 64


def _parse_tower(args):
    parts = [int(t) for t in args.tower.split(",")]
    if len(parts) != 3:
        raise ExprError("--tower wants p,f,e")
    p, f, e = parts
    eis = [int(t) for t in args.eis.split(",")] if args.eis else None
    unram = [int(t) for t in args.unram.split(",")] if args.unram else None
    return make_tower(p, f, e, eis, args.precision, unram)


def _parse_elem(args, field):
    text = args.element
    if text.lstrip().startswith("{"):
        return FieldElement.from_json(json.loads(text), field)
    return parse_element(text, field)


def _ctx_for(args, p):
    return get_context(p, args.series, args.trunc_degree, args.precision)


def cmd_field(args):
    field = _parse_tower(args)
    _emit({"field": field.descriptor(), "degree": field.degree,
           "residue_size": field.p ** field.f,
           "uniformizer": field.uniformizer().to_json()["coeffs"]})
    return 0


def cmd_ctx(args):
    ctx = _ctx_for(args, args.p)
    _emit(ctx.describe())
    return 0


def cmd_log(args):
    field = _parse_tower(args)
    ctx = _ctx_for(args, field.p)
    x = _parse_elem(args, field)
    y = eval_log(ctx, x)
    out = {"log": y.to_json()}
    try:
        out["valuation"] = y.valuation()
    except LTForgeError:
        out["valuation"] = None
    _emit(out)
    return 0


def cmd_exp(args):
    field = _parse_tower(args)
    ctx = _ctx_for(args, field.p)
    x = _parse_elem(args, field)
    y = eval_exp(ctx, x)
    _emit({"exp": y.to_json(), "valuation": y.valuation()})
    return 0


def cmd_basis(args):
    field = _parse_tower(args)
    ctx = _ctx_for(args, field.p)
    reg = regularity_check(field, ctx)
    if reg.is_regular:
        gens = log_image_basis(field, ctx) if args.log else module_basis(field, ctx)
    else:
        gens = spanning_set(field, ctx)
    _emit({"field": field.descriptor(), "kind": gens.kind,
           "size": len(gens), "levels": gens.levels,
           "elements": [g.to_json()["coeffs"] for g in gens.elements]})
    return 0


def cmd_regular(args):
    field = _parse_tower(args)
    ctx = _ctx_for(args, field.p)
    rep = regularity_check(field, ctx)
    _emit({"field": field.descriptor(), **rep.to_json()})
    return 0


def cmd_minval(args):
    field = _parse_tower(args)
    ctx = _ctx_for(args, field.p)
    r = min_log_valuation(field, ctx)
    _emit({"field": field.descriptor(), **r})
    return 0


def cmd_verify(args):
    cfg = SuiteConfig(precision=args.precision, trunc_degree=args.trunc_degree,
                      series_kind=args.series, sample_count=args.samples,
                      seed=args.seed)
    if args.tower:
        parts = tuple(int(t) for t in args.tower.split(","))
        cfg = SuiteConfig(primes=(parts[0],), towers=(parts,),
                          precision=args.precision,
                          trunc_degree=args.trunc_degree,
                          series_kind=args.series,
                          sample_count=args.samples, seed=args.seed)
    elif args.p:
        cfg = SuiteConfig(primes=(args.p,),
                          towers=tuple(t for t in cfg.towers if t[0] == args.p)
                          or ((args.p, 1, 1),),
                          precision=args.precision,
                          trunc_degree=args.trunc_degree,
                          series_kind=args.series,
                          sample_count=args.samples, seed=args.seed)
    if args.all:
        reports = run_all(cfg)
    else:
        if not args.theorem:
            raise ExprError("verify wants --theorem <id> or --all")
        kwargs = {}
        if args.theorem == "kernel" and args.lt_level:
            kwargs = {"level": args.lt_level, "p": args.p}
        reports = run_theorem(args.theorem, cfg, **kwargs)
    bad = 0
    for r in reports:
        _emit(r)
        if r["status"] != "consistent":
            bad += 1
    return 1 if bad else 0


def build_parser():
    ap = argparse.ArgumentParser(
        prog="ltforge",
        description="Exact Lubin-Tate formal group computations over Q_p "
                    "towers: logarithms, bases and theorem verification.")
    sub = ap.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", "-N", type=int,
                        default=_default_precision(),
                        help="absolute w-adic precision (default 64 or "
                             "LT_FORGE_PRECISION)")
    common.add_argument("--trunc-degree", "-D", type=int, default=128,
                        help="series truncation degree")
    common.add_argument("--series", default="multiplicative",
                        choices=("multiplicative", "basic"),
                        help="which Lubin-Tate series backs the context")

    tower_flags = argparse.ArgumentParser(add_help=False, parents=[common])
    tower_flags.add_argument("--tower", required=True,
                             help="p,f,e (Eisenstein default X^e - p)")
    tower_flags.add_argument("--eis", help="Eisenstein coefficients, low to high")
    tower_flags.add_argument("--unram", help="unramified polynomial mod p")

    s = sub.add_parser("field", parents=[tower_flags],
                       help="construct and describe a tower")
    s.set_defaults(func=cmd_field)

    s = sub.add_parser("ctx", parents=[common],
                       help="construct and describe a context")
    s.add_argument("--p", type=int, required=True)
    s.set_defaults(func=cmd_ctx)

    s = sub.add_parser("log", parents=[tower_flags],
                       help="evaluate the formal logarithm")
    s.add_argument("--element", required=True,
                   help="expression over {p,w,z,+,-,*,^,()} or JSON")
    s.set_defaults(func=cmd_log)

    s = sub.add_parser("exp", parents=[tower_flags],
                       help="evaluate the formal exponential")
    s.add_argument("--element", required=True)
    s.set_defaults(func=cmd_exp)

    s = sub.add_parser("basis", parents=[tower_flags],
                       help="emit the module basis or spanning set")
    s.add_argument("--log", action="store_true",
                   help="emit logarithm images instead of the lifts")
    s.set_defaults(func=cmd_basis)

    s = sub.add_parser("regular", parents=[tower_flags],
                       help="test pi-regularity")
    s.set_defaults(func=cmd_regular)

    s = sub.add_parser("minval", parents=[tower_flags],
                       help="minimal valuation in the logarithm image")
    s.set_defaults(func=cmd_minval)

    s = sub.add_parser("verify", parents=[common], help="run theorem checks")
    s.add_argument("--theorem", choices=THEOREM_IDS)
    s.add_argument("--all", action="store_true")
    s.add_argument("--tower", help="restrict to one tower p,f,e")
    s.add_argument("--p", type=int, help="restrict to one prime")
    s.add_argument("--lt-level", type=int, help="torsion level for kernel")
    s.add_argument("--samples", type=int, default=25)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_verify)
    return ap


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as ex:
        return 2 if ex.code else 0
    try:
        return args.func(args)
    except (ExprError, json.JSONDecodeError, ValueError, KeyError) as ex:
        _emit({"error": str(ex) or type(ex).__name__})
        return 2
    except LTForgeError as ex:
        _emit({"error": str(ex), "kind": type(ex).__name__})
        return 1


if __name__ == "__main__":
    sys.exit(main())
