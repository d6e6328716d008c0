"""``ljc``: parse, reduce, decide SN, type and translate terms, and run the
verification suites.

Exit codes: 0 success or property holds, 1 property fails or untypable,
2 malformed input, 3 unknown (fuel ran out).
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from typing import Optional

from . import harness
from .classify import classify
from .es import es_steps, lam_steps
from .esterms import es_free_vars, es_size
from .isn import Holds, isn_betapi, isn_dbeta
from .quant import Deriv, check_derivation_es, check_derivation_j, from_json, render, sequent, to_json
from .reduction import ReductionTrace, Step, is_erasing, isn_strategy_step, leftmost_step, parse_rules, wh_redex, wh_step
from .search import No, Yes, sn_search
from .simple_types import infer_simple, show_simple
from .syntax import ParseError, parse_es, parse_lam, parse_term, show, show_es
from .synthesis import synthesize_quant
from .terms import free_vars, size, subterm
from .translations import MAPS, translate

OK, FAIL, BAD_INPUT, UNKNOWN = 0, 1, 2, 3

PARSERS = {"j": parse_term, "es": parse_es, "lam": parse_lam}
PRINTERS = {"j": show, "es": show_es, "lam": show_es}
DEFAULT_RULES = {"j": "dbeta", "es": "dB,s", "lam": "beta"}
DEFAULT_STEPS = 10_000


class InputError(Exception):
    pass


def _fuel(args) -> Optional[int]:
    if getattr(args, "fuel", None) is not None:
        return args.fuel
    env = os.environ.get("LJC_FUEL")
    if env:
        try:
            return int(env)
        except ValueError:
            raise InputError(f"LJC_FUEL must be an integer, got {env!r}") from None
    return None


def _read(args) -> str:
    if args.term is not None:
        return args.term
    if args.file is not None:
        try:
            with open(args.file, encoding="utf-8") as fh:
                return fh.read()
        except OSError as e:
            raise InputError(f"cannot read {args.file}: {e.strerror}") from None
    return sys.stdin.read()


def _term(args, calculus: Optional[str] = None):
    calculus = calculus or args.calculus
    text = _read(args).strip()
    try:
        return PARSERS[calculus](text)
    except ParseError as e:
        # show the offending line with a caret under the position
        line_start = text.rfind("\n", 0, e.pos) + 1
        line_end = text.find("\n", e.pos)
        line = text[line_start : None if line_end < 0 else line_end]
        raise InputError(f"parse error: {e}\n  {line}\n  {' ' * (e.pos - line_start)}^") from None


def _emit(args, text: str, obj) -> None:
    if args.format == "json":
        print(json.dumps(obj, ensure_ascii=False, indent=2))
    else:
        print(text)


# -- subcommands ----------------------------------------------------------------------


def cmd_parse(args) -> int:
    t = _term(args)
    p = PRINTERS[args.calculus]
    if args.calculus == "j":
        flags = dataclasses.asdict(classify(t))
        info = {"term": p(t), "size": size(t), "free": sorted(free_vars(t)), "flags": flags}
        text = p(t) + "\n" + "  ".join(f"{k}={v}" for k, v in flags.items())
    else:
        info = {"term": p(t), "size": es_size(t), "free": sorted(es_free_vars(t))}
        text = p(t)
    _emit(args, text, info)
    return OK


def _next_step(calculus: str, rules):
    if calculus == "j":
        if rules == {"wh"}:
            return _wh_step
        if rules == {"dbeta"}:
            # weak-head first, so the first step is the restricted redex
            return isn_strategy_step
        return lambda t: leftmost_step(rules, t)
    fn = es_steps if calculus == "es" else lam_steps

    def first(m):
        found = fn(rules, m)
        return found[0] if found else None

    return first


def _wh_step(t):
    path = wh_redex(t)
    if path is None:
        return None
    return Step("dbeta", path, is_erasing("dbeta", subterm(t, path)), wh_step(t)[1])


def _reduce(args):
    t = _term(args)
    rules = parse_rules(args.rules or DEFAULT_RULES[args.calculus])
    limit = args.steps if args.steps is not None else (_fuel(args) or DEFAULT_STEPS)
    nxt = _next_step(args.calculus, rules)
    trace = ReductionTrace(t)
    cur = t
    done = False
    for _ in range(limit):
        s = nxt(cur)
        if s is None:
            done = True
            break
        trace.steps.append(s)
        cur = s.result
    else:
        done = nxt(cur) is None
    return trace, cur, done


def cmd_reduce(args, normal_form: bool = False) -> int:
    try:
        trace, cur, done = _reduce(args)
    except ValueError as e:
        raise InputError(str(e)) from None
    p = PRINTERS[args.calculus]
    obj = {"result": p(cur), "steps": len(trace), "normal": done}
    text = p(cur)
    if args.trace:
        obj["trace"] = trace.to_json(p)
        text = trace.to_text(p)
    _emit(args, text, obj)
    if normal_form and not done:
        print(f"no normal form within {len(trace)} steps", file=sys.stderr)
        return UNKNOWN
    return OK


def cmd_nf(args) -> int:
    args.steps = None
    return cmd_reduce(args, normal_form=True)


def _isn(t, rules, fuel):
    if rules == {"dbeta"}:
        return isn_dbeta(t, fuel), "dbeta"
    if rules == {"beta", "pi"}:
        return isn_betapi(t, fuel), "betapi"
    raise InputError("the inductive method covers the rule sets dbeta and beta,pi")


def _isn_text(v) -> str:
    if isinstance(v, Holds):
        return "yes"
    if v.sn is False:
        return f"no (stuck at {show(v.obligation)}: {v.reason})"
    return f"unknown (fuel spent {v.fuel_spent})"


def _brute_text(v, p) -> str:
    if isinstance(v, Yes):
        return f"yes (longest reduction {v.maxred})"
    if isinstance(v, No):
        return f"no (loop of {len(v.witness) - v.cycle_start} step(s))"
    return f"unknown (states {v.fuel_spent})"


def cmd_sn(args) -> int:
    t = _term(args)
    fuel = _fuel(args)
    p = PRINTERS[args.calculus]
    try:
        rules = parse_rules(args.rules or DEFAULT_RULES[args.calculus])
    except ValueError as e:
        raise InputError(str(e)) from None
    method = args.method
    if args.calculus != "j" and method != "brute":
        if args.method_given:
            raise InputError("only the brute-force method applies to ES and lambda terms")
        method = "brute"
    verdicts = {}
    obj: dict = {"term": p(t), "rules": sorted(rules)}
    lines = []
    if method in ("isn", "both"):
        v, system = _isn(t, rules, fuel)
        verdicts["isn"] = v.sn
        obj["isn"] = {True: "yes", False: "no", None: "unknown"}[v.sn]
        lines.append(f"isn: {_isn_text(v)}")
        if args.emit_witness and isinstance(v, Holds):
            obj["isn_witness"] = v.witness.render(show)
            lines.append(v.witness.render(show))
    if method in ("brute", "both"):
        try:
            v = sn_search(t, rules, fuel)
        except ValueError as e:
            raise InputError(str(e)) from None
        verdicts["brute"] = v.sn
        obj["brute"] = {True: "yes", False: "no", None: "unknown"}[v.sn]
        if isinstance(v, Yes):
            obj["maxred"] = v.maxred
        lines.append(f"brute: {_brute_text(v, p)}")
        if args.emit_witness and isinstance(v, No):
            obj["loop"] = v.witness.to_json(p)
            obj["loop_start"] = v.cycle_start
            lines.append(v.witness.to_text(p))
    _emit(args, "\n".join(lines), obj)
    if any(s is None for s in verdicts.values()):
        return UNKNOWN
    known = set(verdicts.values())
    if len(known) > 1:
        print("the methods disagree", file=sys.stderr)
        return FAIL
    return OK if known == {True} else FAIL


def cmd_type(args) -> int:
    if args.calculus != "j":
        raise InputError("typing is available for J terms")
    t = _term(args)
    if args.system == "simple":
        res = infer_simple(t)
        if res is None:
            _emit(args, "untypable", {"term": show(t), "typable": False})
            return FAIL
        env, ty, _ = res
        ctx = ", ".join(f"{x}:{show_simple(s)}" for x, s in env.items())
        _emit(args, f"{ctx} ⊢ {show(t)} : {show_simple(ty)}".lstrip(), {
            "term": show(t),
            "typable": True,
            "env": {x: show_simple(s) for x, s in env.items()},
            "type": show_simple(ty),
        })
        return OK
    d = synthesize_quant(t, _fuel(args))
    if not isinstance(d, Deriv):
        print(f"no derivation within the fuel (spent {d.fuel_spent})", file=sys.stderr)
        return UNKNOWN
    if args.emit_derivation:
        if args.format == "json":
            print(json.dumps(to_json(d), ensure_ascii=False, indent=1))
        else:
            print(render(d))
        return OK
    _emit(args, sequent(d), {
        "term": show(t),
        "env": {x: [str(s) for s in m] for x, m in d.env.items},
        "type": str(d.type),
        "size": d.size,
    })
    return OK


def cmd_check_derivation(args) -> int:
    text = _read(args)
    try:
        d = from_json(json.loads(text), args.calculus)
    except json.JSONDecodeError as e:
        raise InputError(f"malformed JSON at line {e.lineno}, column {e.colno}: {e.msg}") from None
    except ParseError as e:
        raise InputError(f"malformed term or type in the derivation: {e}") from None
    except (KeyError, TypeError, AttributeError) as e:
        raise InputError(f"malformed derivation: missing or bad field {e}") from None
    rep = check_derivation_j(d) if args.calculus == "j" else check_derivation_es(d)
    _emit(args, f"accepted: {sequent(d)}" if rep else "rejected:\n  " + "\n  ".join(rep.errors), {
        "accepted": rep.ok,
        "errors": list(rep.errors),
        "conclusion": sequent(d),
    })
    return OK if rep else FAIL


def cmd_translate(args) -> int:
    src, dst, _ = MAPS[args.map]
    t = _term(args, src)
    img = translate(args.map, t)
    text = PRINTERS[dst](img)
    _emit(args, text, {"map": args.map, "source": PRINTERS[src](t), "image": text, "calculus": dst})
    return OK


def cmd_verify(args) -> int:
    names = harness.SUITE_NAMES if args.suite == "all" else (args.suite,)
    reports = []
    for name in names:
        cfg = harness.SuiteConfig(name, args.max_size, args.var_pool, _fuel(args), args.jobs)
        rep = harness.run_suite(cfg)
        reports.append(rep)
        if args.format == "text":
            print(rep.summary(), flush=True)
            for v in rep.violations:
                print(f"  {v['check']}: {v['term']} ({v['detail']}); replay: {v['replay']}")
    if args.format == "json":
        out = [r.to_json() for r in reports]
        print(json.dumps(out[0] if len(out) == 1 else out, ensure_ascii=False, indent=2))
    return OK if all(r.ok for r in reports) else FAIL


# -- argument parsing ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ljc", description="Generalized applications, explicit substitutions and their type systems.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--calculus", choices=("j", "es", "lam"), default="j", help="term grammar (default j)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--fuel", type=int, help="work budget; overrides LJC_FUEL")
    src = argparse.ArgumentParser(add_help=False)
    src.add_argument("term", nargs="?", help="term text; read from --file or stdin when omitted")
    src.add_argument("--file", "-f", help="read the input from this file")

    sub = ap.add_subparsers(dest="command", required=True)
    p = sub.add_parser("parse", parents=[common, src], help="parse and pretty-print a term")
    p.set_defaults(fn=cmd_parse)

    for name, fn, hint in (("reduce", cmd_reduce, "follow a reduction strategy"), ("nf", cmd_nf, "reduce to normal form")):
        p = sub.add_parser(name, parents=[common, src], help=hint)
        p.add_argument("--rules", help="comma-separated rules (default: dbeta, dB,s or beta); wh runs the weak-head strategy")
        p.add_argument("--trace", action="store_true", help="print every step")
        if name == "reduce":
            p.add_argument("--steps", type=int, help="stop after this many steps")
        p.set_defaults(fn=fn)

    p = sub.add_parser("sn", parents=[common, src], help="decide strong normalization")
    p.add_argument("--rules", help="comma-separated rules (default as for reduce)")
    p.add_argument("--method", choices=("isn", "brute", "both"), help="inductive predicate, graph search or both (default both for J)")
    p.add_argument("--emit-witness", action="store_true", help="print the proof tree or the loop")
    p.set_defaults(fn=cmd_sn)

    p = sub.add_parser("type", parents=[common, src], help="type a J term")
    p.add_argument("--system", choices=("simple", "quant"), default="quant")
    p.add_argument("--emit-derivation", action="store_true", help="print the whole derivation")
    p.set_defaults(fn=cmd_type)

    p = sub.add_parser("check-derivation", parents=[common, src], help="check a JSON derivation")
    p.set_defaults(fn=cmd_check_derivation)

    p = sub.add_parser("translate", parents=[common, src], help="apply a translation")
    p.add_argument("--map", required=True, choices=sorted(MAPS))
    p.set_defaults(fn=cmd_translate)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("--suite", default="all", choices=("all",) + harness.SUITE_NAMES)
    p.add_argument("--max-size", type=int, default=6)
    p.add_argument("--var-pool", type=int, default=2)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(fn=cmd_verify)
    return ap


def main(argv=None) -> int:
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))
    args = build_parser().parse_args(argv)
    if args.command == "sn":
        args.method_given = args.method is not None
        if args.method is None:
            args.method = "both" if args.calculus == "j" else "brute"
    try:
        return args.fn(args)
    except InputError as e:
        print(str(e), file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
