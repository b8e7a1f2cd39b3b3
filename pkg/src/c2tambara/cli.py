"""Command-line front end.

Subcommands: axioms, eval, free-normalize, bispan-compose, bispan-eval,
radjoint, adjunction.  Success exits 0, axiom or adjunction violations exit
1, every error path (bad flags, malformed files, parse or level errors,
missing capabilities) exits 2.  Output is plain ASCII and deterministic.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from .adjoint import construct, verify_adjunction
from .bispans import (
    bispan_from_obj, bispan_to_obj, compose, element_tuple_from_obj,
    element_tuple_to_obj, evaluate,
)
from .errors import CapabilityError, ExprError, InputMismatchError, MembershipError
from .expr import parse_and_evaluate
from .free import (
    FREE_GREEN_FIXED, FREE_GREEN_UNDERLYING, FREE_TAMBARA_FIXED,
    FREE_TAMBARA_UNDERLYING, FreeGreenUnderlying, FreeTambaraUnderlying,
)
from .functors import (
    FIXED, UNDERLYING, FiniteTambaraFunctor, burnside, check_green_axioms,
    check_tambara_axioms, finite_functor_from_obj,
)

_FREE_BUILTINS = {
    "builtin:free-green-fixed": FREE_GREEN_FIXED,
    "builtin:free-green-underlying": FREE_GREEN_UNDERLYING,
    "builtin:free-tambara-fixed": FREE_TAMBARA_FIXED,
    "builtin:free-tambara-underlying": FREE_TAMBARA_UNDERLYING,
}

_T_NAME = re.compile(r"t_(\d+)$")
_TIJ_NAME = re.compile(r"t_\{(\d+),(\d+)\}$")


def _load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputMismatchError(f"{path}: {exc}")
    except json.JSONDecodeError as exc:
        raise InputMismatchError(f"{path}: invalid JSON: {exc}")


def _resolve_functor(spec):
    if spec == "builtin:burnside":
        return burnside()
    if spec in _FREE_BUILTINS:
        return _FREE_BUILTINS[spec]
    if spec.startswith("builtin:"):
        raise InputMismatchError(f"unknown builtin functor {spec!r}")
    return finite_functor_from_obj(_load_json(spec))


class EvalContext:
    """Variable resolution for expression evaluation in one functor.

    Free builtins provide their generator classes; the Burnside functor
    provides t; any functor accepts --bind values.  For a fixed generator
    the name x doubles as its own restriction, so it is level-polymorphic.
    """

    def __init__(self, functor, bindings=None):
        self.functor = functor
        self.bindings = dict(bindings or {})

    def _builtin_levels(self, name):
        f = self.functor
        if f in (FREE_GREEN_FIXED, FREE_TAMBARA_FIXED):
            if name == "x":
                return None
            if name == "t" or (name == "n" and f is FREE_TAMBARA_FIXED):
                return FIXED
        elif f in (FREE_GREEN_UNDERLYING, FREE_TAMBARA_UNDERLYING):
            if name == "x":
                return UNDERLYING
            if name == "t":
                return FIXED
            if f is FREE_TAMBARA_UNDERLYING and (name == "n" or _T_NAME.match(name)):
                return FIXED
            if f is FREE_GREEN_UNDERLYING and _TIJ_NAME.match(name):
                return FIXED
        elif f is burnside() and name == "t":
            return FIXED
        return "unknown"

    def level_of(self, name):
        if name in self.bindings:
            return None
        lvl = self._builtin_levels(name)
        if lvl == "unknown":
            raise ExprError(f"unknown variable {name!r} for {self.functor.name}")
        return lvl

    def value_of(self, name, level):
        if name in self.bindings:
            return self._binding_value(name, level)
        f = self.functor
        if name == "x":
            if f in (FREE_GREEN_FIXED, FREE_TAMBARA_FIXED):
                gen = f.generator()
                return gen if level == FIXED else f.res(gen)
            return f.generator()
        if name == "n":
            return f.norm_class()
        if name == "t":
            return f.t_class()
        m = _T_NAME.match(name)
        if m and isinstance(f, FreeTambaraUnderlying):
            return f.t_i(int(m.group(1)))
        m = _TIJ_NAME.match(name)
        if m and isinstance(f, FreeGreenUnderlying):
            return f.t_ij(int(m.group(1)), int(m.group(2)))
        raise ExprError(f"variable {name!r} has no {level} value here")

    def _binding_value(self, name, level):
        text = self.bindings[name]
        elems = self.functor.elements(level)
        if elems is not None and text in elems:
            return text
        base = EvalContext(self.functor)
        return parse_and_evaluate(text, self.functor, level,
                                  base.level_of, base.value_of)


def _parse_bindings(pairs):
    out = {}
    for item in pairs or ():
        if "=" not in item:
            raise InputMismatchError(f"--bind needs VAR=VALUE, got {item!r}")
        name, value = item.split("=", 1)
        out[name.strip()] = value.strip()
    return out


# --- subcommands -------------------------------------------------------------

def _cmd_axioms(args):
    functor = finite_functor_from_obj(_load_json(args.file))
    if args.tambara and not functor.has_norm:
        raise CapabilityError("functor file has no norm table; cannot check "
                              "tambara axioms")
    samples = None if args.samples is None else args.samples
    check = check_tambara_axioms if args.tambara else check_green_axioms
    report = check(functor, samples=samples, seed=args.seed)
    print(report.render())
    return 0 if report.ok else 1


def _cmd_eval(args):
    functor = _resolve_functor(args.functor)
    ctx = EvalContext(functor, _parse_bindings(args.bind))
    value = parse_and_evaluate(args.expr, functor, args.level,
                               ctx.level_of, ctx.value_of)
    print(functor.render(args.level, value))
    return 0


def _cmd_free_normalize(args):
    table = {
        ("fixed", "trivial"): FREE_GREEN_FIXED,
        ("underlying", "trivial"): FREE_GREEN_UNDERLYING,
        ("fixed", "complete"): FREE_TAMBARA_FIXED,
        ("underlying", "complete"): FREE_TAMBARA_UNDERLYING,
    }
    functor = table[(args.generator, args.system)]
    ctx = EvalContext(functor)
    value = parse_and_evaluate(args.expr, functor, args.level,
                               ctx.level_of, ctx.value_of)
    print(functor.render(args.level, value))
    return 0


def _cmd_bispan_compose(args):
    outer = bispan_from_obj(_load_json(args.first))
    inner = bispan_from_obj(_load_json(args.second))
    result = compose(outer, inner)
    print(json.dumps(bispan_to_obj(result), indent=2, sort_keys=True))
    return 0


def _cmd_bispan_eval(args):
    span = bispan_from_obj(_load_json(args.bispan))
    if args.functor in _FREE_BUILTINS:
        raise InputMismatchError(
            "bispan-eval takes builtin:burnside or a functor file")
    functor = _resolve_functor(args.functor)
    values = element_tuple_from_obj(_load_json(args.input), span.S, functor)
    result = evaluate(span, functor, values)
    print(json.dumps(element_tuple_to_obj(result, functor), sort_keys=True))
    return 0


def _cmd_radjoint(args):
    functor = finite_functor_from_obj(_load_json(args.file))
    green = functor.as_green() if isinstance(functor, FiniteTambaraFunctor) else functor
    adj = construct(green)
    for level in (FIXED, UNDERLYING):
        carrier = adj.elements(level)
        print(f"{level} level ({len(carrier)} elements):")
        for pair in carrier:
            print(f"  {adj.render(level, pair)}")
    if args.print_table:
        for level in (FIXED, UNDERLYING):
            carrier = adj.elements(level)
            for opname in ("add", "mul"):
                op = getattr(adj, opname)
                print(f"{opname} [{level}]:")
                for a in carrier:
                    for b in carrier:
                        print(f"  {adj.render(level, a)} , {adj.render(level, b)}"
                              f" -> {adj.render(level, op(level, a, b))}")
        for opname, src, dst in (("conj", UNDERLYING, UNDERLYING),
                                 ("res", FIXED, UNDERLYING),
                                 ("tr", UNDERLYING, FIXED),
                                 ("norm", UNDERLYING, FIXED)):
            op = getattr(adj, opname)
            print(f"{opname}:")
            for a in adj.elements(src):
                print(f"  {adj.render(src, a)} -> {adj.render(dst, op(a))}")
    if args.check_axioms:
        report = check_tambara_axioms(adj)
        print(report.render())
        if not report.ok:
            return 1
    return 0


def _cmd_adjunction(args):
    green = finite_functor_from_obj(_load_json(args.green))
    if isinstance(green, FiniteTambaraFunctor):
        green = green.as_green()
    tambara = finite_functor_from_obj(_load_json(args.tambara))
    if not tambara.has_norm:
        raise CapabilityError("--tambara file needs a norm table")
    report = verify_adjunction(tambara, green)
    print(report.render())
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="c2tambara",
        description="Exact algebra for C2-equivariant Green and Tambara functors.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("axioms", help="check the axioms of a functor file")
    p.add_argument("file")
    p.add_argument("--tambara", action="store_true",
                   help="also check the norm identities")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", action="store_true",
                      help="check every element tuple (default)")
    mode.add_argument("--samples", type=int, metavar="K",
                      help="check K sampled tuples per identity")
    p.add_argument("--seed", type=int, default=0, metavar="S")
    p.set_defaults(fn=_cmd_axioms)

    p = sub.add_parser("eval", help="evaluate an expression in a functor")
    p.add_argument("--functor", required=True,
                   help="builtin:burnside, builtin:free-*, or a functor file")
    p.add_argument("--level", required=True, choices=[FIXED, UNDERLYING])
    p.add_argument("--bind", action="append", metavar="VAR=VALUE")
    p.add_argument("expr")
    p.set_defaults(fn=_cmd_eval)

    p = sub.add_parser("free-normalize",
                       help="print the normal form of an expression in a free functor")
    p.add_argument("--generator", required=True, choices=[FIXED, UNDERLYING])
    p.add_argument("--system", required=True, choices=["trivial", "complete"])
    p.add_argument("--level", required=True, choices=[FIXED, UNDERLYING])
    p.add_argument("expr")
    p.set_defaults(fn=_cmd_free_normalize)

    p = sub.add_parser("bispan-compose",
                       help="compose two bispan files (second applied first)")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(fn=_cmd_bispan_compose)

    p = sub.add_parser("bispan-eval", help="evaluate a bispan on an element tuple")
    p.add_argument("--functor", required=True)
    p.add_argument("--input", required=True, metavar="TUPLE.json")
    p.add_argument("bispan")
    p.set_defaults(fn=_cmd_bispan_eval)

    p = sub.add_parser("radjoint",
                       help="build the right adjoint of a Green functor file")
    p.add_argument("file")
    p.add_argument("--print-table", action="store_true")
    p.add_argument("--check-axioms", action="store_true")
    p.set_defaults(fn=_cmd_radjoint)

    p = sub.add_parser("adjunction", help="verify the adjunction on a fixture pair")
    p.add_argument("--green", required=True, metavar="R.json")
    p.add_argument("--tambara", required=True, metavar="S.json")
    p.set_defaults(fn=_cmd_adjunction)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ExprError, InputMismatchError, MembershipError, CapabilityError,
            ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
