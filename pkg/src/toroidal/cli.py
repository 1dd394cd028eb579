"""Command line interface: ``toroidal <subcommand> ...``.

All numbers are printed as exact rationals.  Exit status is 0 when the
command succeeded and every requested check passed, 1 when a check failed
and 2 on bad input.
"""

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import serialization as ser
from .algebra_core import RankMismatch, ToroidalAlgebra, box
from .analysis import support_and_bound
from .subalgebras import coordinate_change
from .tensor_modules import TAU0, DeRhamConfig, WeightTable, derham_image_dims
from .verify import SUITES, run_suite, suite_cover

CACHE_ENV = "TOROIDAL_CACHE_DIR"


def dump(obj):
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"


def _algebra(args, required=True):
    if args.config:
        return ser.config_from_json(ser.load_file(args.config))
    if required:
        return ToroidalAlgebra(1)
    return None


def _twist(args):
    return ser.automorphism_from_json(ser.load_file(args.twist)) if args.twist else None


def _rationals(text):
    return [Fraction(x) for x in text.split(",")] if text else []


def _ints(text):
    return tuple(int(x) for x in text.split(",")) if text else ()


# --------------------------------------------------------------------------
# subcommands


def cmd_bracket(args, out):
    alg = _algebra(args)
    a = ser.element_from_json(ser.load_file(args.lhs), alg)
    b = ser.element_from_json(ser.load_file(args.rhs), alg)
    A = _twist(args)
    if A is not None:
        a, b = coordinate_change(a, A), coordinate_change(b, A)
    out.write(dump(ser.element_to_json(alg.bracket(a, b), alg)))
    return 0


def cmd_act(args, out):
    alg = _algebra(args)
    module = ser.module_from_json(ser.load_file(args.module), alg)
    a = ser.element_from_json(ser.load_file(args.element), module.alg)
    A = _twist(args)
    if A is not None:
        a = coordinate_change(a, A)
    v = ser.vector_from_json(ser.load_file(args.vector))
    out.write(dump(ser.vector_to_json(module.act(a, v))))
    return 0


def cmd_cocycle(args, out):
    alg = _algebra(args)
    r, s = _ints(args.r), _ints(args.s)
    if len(r) != alg.rank or len(s) != alg.rank:
        raise RankMismatch(f"degrees need {alg.rank} entries")
    report = {"config": ser.config_to_json(alg), "i": args.i, "r": list(r), "j": args.j,
              "s": list(s)}
    for which in (1, 2):
        terms = alg.cocycle_terms(which, args.i, r, args.j, s)
        report[f"phi{which}"] = ser.element_to_json(alg.normal_form(terms), alg)
    report["phi"] = ser.element_to_json(alg.cocycle_value(args.i, r, args.j, s), alg)
    out.write(dump(report))
    return 0


def cmd_verify(args, out):
    kw = {}
    if args.seed is not None and args.suite not in ("sl-embedding", "solenoidal", "differentiators"):
        kw["seed"] = args.seed
    if args.order is not None:
        if args.suite != "differentiators":
            raise ValueError("--order only applies to the differentiators suite")
        kw["order"] = args.order
    if args.window is not None:
        if args.suite == "derham":
            kw["radius"] = args.window
        elif args.suite == "differentiators":
            kw["radius"] = args.window
    if args.degree is not None:
        if args.suite != "derham":
            raise ValueError("--degree only applies to the derham suite")
        kw["degrees"] = [args.degree]
    checks = run_suite(args.suite, **kw)
    ok = all(c.ok for c in checks)
    out.write(dump({"suite": args.suite, "passed": ok,
                    "checks": [c.to_json() for c in checks]}))
    return 0 if ok else 1


def _emit_table(table, args, out, extra=None):
    if args.format == "tsv":
        out.write(table.to_tsv())
        if extra:
            for k, v in sorted(extra.items()):
                out.write(f"# {k}: {json.dumps(v, sort_keys=True)}\n")
    else:
        data = table.to_json()
        if extra:
            data.update(extra)
        out.write(dump(data))


def cmd_weights(args, out):
    alg = _algebra(args, required=False)
    data = ser.load_file(args.module)
    if isinstance(data, dict) and "verma" in data:
        return _run_verma(data, data["verma"].get("depth", 1), data["verma"].get("radius", 1),
                          args, out, alg)
    module = ser.module_from_json(data, alg)
    radius = args.window or 1
    rank = getattr(module, "lattice_rank", None)
    window = list(box(radius, rank)) if rank is not None else None
    rep = support_and_bound(module, window)
    _emit_table(rep.table, args, out, {"support_pattern": rep.pattern,
                                       "max_dim": rep.max_dim, "min_dim": rep.min_dim,
                                       "uniform_bound": rep.uniform_bound})
    return 0


def cmd_derham(args, out):
    alg = _algebra(args)
    alpha = _rationals(args.alpha) or [0] * alg.rank
    cfg = DeRhamConfig(alg.rank, alpha, args.degree)
    if cfg.degree >= cfg.rank:
        raise ValueError("the image of d needs a form degree below n+1")
    radius = args.window or 1
    table = derham_image_dims(cfg, list(box(radius, alg.rank)))
    rep = support_and_bound(table, bound=len(table) and max(table.values()))
    _emit_table(table, args, out, {"support_pattern": rep.pattern})
    return 0


def _verma_X(data, alg):
    from .verma import TrivialTopModule
    if data.get("flavor") == "trivial":
        if alg is None:
            alg = ser.config_from_json(data["algebra"])
        return TrivialTopModule(alg)
    module = ser.module_from_json(dict(data, flavor=TAU0), alg)
    return module


def _run_verma(data, depth, radius, args, out, alg=None):
    from .verma import (VermaWindow, build_verma, cache_key, compute_radical,
                        l_of_x_multiplicities, radical_maximality)
    X = _verma_X(data, alg)
    cache_dir = args.cache_dir or os.environ.get(CACHE_ENV)
    wjson = {"depth": depth, "radius": radius}
    key = cache_key({"module": data, "algebra": ser.config_to_json(X.alg),
                     "twist": ser.automorphism_to_json(_twist(args)) if args.twist else None},
                    wjson)
    path = Path(cache_dir) / f"verma-{key}.json" if cache_dir else None
    if path is not None and path.exists():
        cached = json.loads(path.read_text())
        table = WeightTable.from_json(cached["table"])
        extra = cached["report"]
    else:
        prev = None
        if radius > 1:
            prev = compute_radical(build_verma(X, VermaWindow(depth, radius - 1)))
        state = compute_radical(build_verma(X, VermaWindow(depth, radius)))
        table = l_of_x_multiplicities(state, prev)
        A = _twist(args)
        if A is not None:
            twisted = WeightTable(table.rank, table.value_name)
            twisted.meta = dict(table.meta, twist=ser.automorphism_to_json(A))
            for w in table.weights():
                extra_cols = {c: table.columns[c][w] for c in table.columns if w in table.columns[c]}
                twisted.set(A.map_weight(w), table[w], **extra_cols)
            table = twisted
        stable = table.columns.get("stable", {})
        extra = {"stabilization": {
            "compared_with_radius": radius - 1 if prev is not None else None,
            "stable_weights": sum(stable.values()),
            "unstable_weights": len(stable) - sum(stable.values()),
        }, "saturated_depths": state.saturated,
            "radical_maximality_failures": len(radical_maximality(state, 1))}
        if path is not None:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(dump({"table": table.to_json(), "report": extra}))
    _emit_table(table, args, out, extra)
    return 0 if not extra.get("radical_maximality_failures") else 1


def cmd_verma(args, out):
    # ``verma --config X.json`` names the module itself; an algebra config
    # (recognised by its "n" key) may instead accompany a positional module.
    if args.module is None:
        if not args.config:
            raise ValueError("verma needs a module config")
        alg, data = None, ser.load_file(args.config)
        if "n" in data:
            raise ValueError("--config is an algebra config; give the module file too")
    else:
        alg = _algebra(args, required=False)
        data = ser.load_file(args.module)
    return _run_verma(data, args.depth, args.radius, args, out, alg)


def cmd_twist(args, out):
    alg = _algebra(args)
    if not args.twist:
        raise ValueError("twist needs --twist A.json")
    A = _twist(args)
    if A.size != alg.rank:
        raise RankMismatch(f"automorphism of size {A.size} for rank {alg.rank}")
    report = {"A": ser.automorphism_to_json(A), "inverse": [list(r) for r in A.B]}
    if args.element:
        a = ser.element_from_json(ser.load_file(args.element), alg)
        report["image"] = ser.element_to_json(coordinate_change(a, A), alg)
    out.write(dump(report))
    return 0


def cmd_cover(args, out):
    checks = suite_cover(seed=args.seed or 0)
    ok = all(c.ok for c in checks)
    out.write(dump({"suite": "cover", "passed": ok, "checks": [c.to_json() for c in checks]}))
    return 0 if ok else 1


# --------------------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="algebra configuration JSON")
    common.add_argument("--window", type=int, help="window radius (>= 1)")
    common.add_argument("--seed", type=int, help="random seed for sampled checks")
    common.add_argument("--format", choices=("json", "tsv"), default="json")
    common.add_argument("--cache-dir", help=f"cache directory (or ${CACHE_ENV})")
    common.add_argument("--twist", help="lattice automorphism JSON (row-major integers)")

    p = argparse.ArgumentParser(prog="toroidal", description=__doc__.splitlines()[0],
                                parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("bracket", parents=[common], help="bracket of two elements")
    s.add_argument("lhs")
    s.add_argument("rhs")
    s.set_defaults(func=cmd_bracket)

    s = sub.add_parser("act", parents=[common], help="act with an element on a module vector")
    s.add_argument("module")
    s.add_argument("element")
    s.add_argument("vector")
    s.set_defaults(func=cmd_act)

    s = sub.add_parser("cocycle", parents=[common], help="phi1, phi2 on (t^r d_i, t^s d_j)")
    s.add_argument("--i", type=int, required=True)
    s.add_argument("--r", required=True, help="comma separated degree")
    s.add_argument("--j", type=int, required=True)
    s.add_argument("--s", required=True, help="comma separated degree")
    s.set_defaults(func=cmd_cocycle)

    s = sub.add_parser("verify", parents=[common], help="run a verification suite")
    s.add_argument("suite", choices=sorted(SUITES))
    s.add_argument("--order", type=int)
    s.add_argument("--degree", type=int, help="form degree for the derham suite")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("weights", parents=[common], help="weight table of a module")
    s.add_argument("module")
    s.set_defaults(func=cmd_weights)

    s = sub.add_parser("derham", parents=[common], help="ranks of d on the window")
    s.add_argument("--alpha", help="comma separated rationals")
    s.add_argument("--degree", type=int, default=0)
    s.set_defaults(func=cmd_derham)

    s = sub.add_parser("verma", parents=[common], help="windowed L(X) multiplicities")
    s.add_argument("module", nargs="?", help="tau_0-module config X (or pass it as --config)")
    s.add_argument("--depth", type=int, default=1)
    s.add_argument("--radius", type=int, default=1)
    s.set_defaults(func=cmd_verma)

    s = sub.add_parser("twist", parents=[common], help="apply T_A to an element")
    s.add_argument("element", nargs="?")
    s.set_defaults(func=cmd_twist)

    s = sub.add_parser("cover", parents=[common], help="A-cover checks")
    s.set_defaults(func=cmd_cover)
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.window is not None and args.window < 1:
        parser.error("--window must be >= 1")
    try:
        return args.func(args, out)
    except ser.ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError, IndexError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
