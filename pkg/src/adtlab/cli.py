"""Command-line front end.

Every subcommand is a thin wrapper around one library call; nothing is
decided here.  Exit codes: 0 for any computed verdict (including No and
NoUpToBound), 1 for usage, parse or precondition errors, 2 when a budget
refuses the computation.

With ``--format json`` each run prints exactly one object with the keys
``command``, ``inputs``, ``result`` and, where applicable, ``witness``,
``bound``, ``depth`` and ``size``.  All ordering is deterministic, so
identical inputs give byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from adtlab import core, decision, fo, semantics, sere, witness
from adtlab.core import DEFAULT_BUDGET, BudgetError, PropSet, Trace
from adtlab.generators import gen
from adtlab.textio import (
    ParseError,
    infer_adt_props,
    infer_letter_props,
    parse_adt,
    parse_fo,
    parse_sere,
    parse_trace_file,
    render,
    render_trace,
    render_trace_file,
)


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _props_flag(text: str) -> PropSet:
    names = tuple(name.strip() for name in text.split(","))
    return PropSet(names)


def _load_adt(path: str, props: PropSet | None) -> tuple[core.Adt, PropSet]:
    text = _read(path)
    if props is None:
        props = infer_adt_props(text)
    return parse_adt(text, props), props


def _load_traces(args) -> tuple[PropSet, list[Trace]]:
    props, traces = parse_trace_file(_read(args.traces))
    if args.props is not None and args.props != props:
        raise ValueError("--props disagrees with the trace file header")
    return props, traces


def _inputs(args, *fields: str) -> dict:
    out = {}
    for f in fields:
        value = getattr(args, f.replace("-", "_"))
        if isinstance(value, PropSet):
            value = list(value.names)
        out[f] = value
    return out


def _verdict_payload(v: decision.Verdict) -> tuple[dict, list[str]]:
    fields: dict = {"result": {"answer": v.answer, "method": v.method}}
    lines = [v.answer]
    if v.witness is not None:
        fields["witness"] = render_trace(v.witness)
        lines.append(f"witness: {render_trace(v.witness)}")
    if v.bound is not None:
        fields["bound"] = v.bound
        lines.append(f"bound: {v.bound}")
    if v.depth is not None:
        fields["depth"] = v.depth
        lines.append(f"depth: {v.depth}")
    lines.append(f"method: {v.method}")
    return fields, lines


# ---------------------------------------------------------------------------
# subcommands


def _cmd_parse(args):
    given = [o for o in ("adt", "fo", "sere", "traces") if getattr(args, o) is not None]
    if len(given) != 1:
        raise ValueError("give exactly one of --adt, --fo, --sere, --traces")
    kind = given[0]
    if kind == "adt":
        t, props = _load_adt(args.adt, args.props)
        args.props = props
        out = render(t)
    elif kind == "fo":
        text = _read(args.fo)
        if args.props is None:
            args.props = infer_letter_props(text)
        out = render(parse_fo(text, args.props))
    elif kind == "sere":
        text = _read(args.sere)
        if args.props is None:
            args.props = infer_letter_props(text)
        out = render(parse_sere(text, args.props))
    else:
        props, traces = _load_traces(args)
        args.props = props
        out = render_trace_file(props, traces).rstrip("\n")
    fields = {"inputs": _inputs(args, kind, "props"), "result": out}
    return fields, out.split("\n")


def _cmd_depth(args):
    t, props = _load_adt(args.adt, args.props)
    args.props = props
    depth = core.counterdepth(t)
    return {"inputs": _inputs(args, "adt", "props"), "result": depth, "depth": depth}, [str(depth)]


def _cmd_size(args):
    t, props = _load_adt(args.adt, args.props)
    args.props = props
    n = core.size(t)
    return {"inputs": _inputs(args, "adt", "props"), "result": n, "size": n}, [str(n)]


def _cmd_member(args):
    props, traces = _load_traces(args)
    args.props = props
    t = parse_adt(_read(args.adt), props)
    answers = [semantics.member(t, w) for w in traces]
    fields = {"inputs": _inputs(args, "adt", "traces", "props"), "result": answers}
    return fields, [str(a).lower() for a in answers]


def _cmd_enumerate(args):
    t, props = _load_adt(args.adt, args.props)
    args.props = props
    found = semantics.enumerate_traces(t, args.maxlen, args.budget)
    fields = {
        "inputs": _inputs(args, "adt", "props", "maxlen", "budget"),
        "result": [render_trace(w) for w in found],
        "bound": args.maxlen,
    }
    lines = [f"bound: {args.maxlen}"] + [render_trace(w) for w in found]
    return fields, lines


def _cmd_gen(args):
    t, props = _load_adt(args.adt, args.props)
    args.props = props
    g = gen(t, cap=args.budget)
    ordered = g.ordered()
    fields = {
        "inputs": _inputs(args, "adt", "props", "budget"),
        "result": {"traces": [render_trace(w) for w in ordered], "sound": g.sound},
    }
    lines = [f"sound: {str(g.sound).lower()}"] + [render_trace(w) for w in ordered]
    return fields, lines


def _cmd_nonempty(args):
    t, props = _load_adt(args.adt, args.props)
    args.props = props
    v = decision.nonempty(t, method=args.method, maxlen=args.maxlen, budget=args.budget)
    fields, lines = _verdict_payload(v)
    fields["inputs"] = _inputs(args, "adt", "props", "method", "maxlen", "budget")
    return fields, lines


def _cmd_equiv(args):
    text1, text2 = _read(args.adt), _read(args.adt2)
    props = args.props
    if props is None:
        merged = set(infer_adt_props(text1).names) | set(infer_adt_props(text2).names)
        props = PropSet(tuple(sorted(merged)))
    args.props = props
    t1, t2 = parse_adt(text1, props), parse_adt(text2, props)
    v = decision.equiv(t1, t2, method=args.method, maxlen=args.maxlen, budget=args.budget)
    fields, lines = _verdict_payload(v)
    fields["inputs"] = _inputs(args, "adt", "adt2", "props", "method", "maxlen", "budget")
    return fields, lines


def _cmd_to_fo(args):
    t, props = _load_adt(args.adt, args.props)
    args.props = props
    out = render(fo.adt_to_fo(t))
    return {"inputs": _inputs(args, "adt", "props"), "result": out}, [out]


def _cmd_fo_eval(args):
    props, traces = _load_traces(args)
    args.props = props
    phi = parse_fo(_read(args.fo), props)
    answers = [fo.eval_fo(phi, w) for w in traces]
    fields = {"inputs": _inputs(args, "fo", "traces", "props"), "result": answers}
    return fields, [str(a).lower() for a in answers]


def _cmd_fo_sat(args):
    text = _read(args.fo)
    if args.props is None:
        args.props = infer_letter_props(text)
    phi = parse_fo(text, args.props)
    found = fo.sat_bounded(phi, args.maxlen, props=args.props, budget=args.budget)
    fields: dict = {"inputs": _inputs(args, "fo", "props", "maxlen", "budget")}
    if found is None:
        fields["result"] = decision.NO_UP_TO_BOUND
        fields["bound"] = args.maxlen
        lines = [decision.NO_UP_TO_BOUND, f"bound: {args.maxlen}"]
    else:
        fields["result"] = decision.YES
        fields["witness"] = render_trace(found)
        fields["bound"] = args.maxlen
        lines = [decision.YES, f"witness: {render_trace(found)}", f"bound: {args.maxlen}"]
    return fields, lines


def _cmd_to_pi2(args):
    t, props = _load_adt(args.adt, args.props)
    args.props = props
    phi = fo.adt0_to_pi2(t)
    cls = fo.alternation(phi)
    out = render(phi)
    fields = {
        "inputs": _inputs(args, "adt", "props"),
        "result": {"formula": out, "level": cls.level, "kind": cls.kind},
    }
    return fields, [out, f"kind: {cls.kind}", f"level: {cls.level}"]


def _cmd_sigma1_to_adt(args):
    text = _read(args.fo)
    props = args.props if args.props is not None else infer_letter_props(text)
    args.props = props
    phi = parse_fo(text, props)
    t = fo.sigma1_to_adt(phi, props=props)
    out = render(t)
    fields = {
        "inputs": _inputs(args, "fo", "props"),
        "result": out,
        "depth": core.counterdepth(t),
        "size": core.size(t),
    }
    return fields, [out]


def _cmd_to_sere(args):
    t, props = _load_adt(args.adt, args.props)
    args.props = props
    e = sere.adt_to_sere(t)
    out = render(e)
    fields = {
        "inputs": _inputs(args, "adt", "props"),
        "result": out,
        "size": sere.node_count(e),
    }
    return fields, [out]


def _cmd_from_sere(args):
    text = _read(args.sere)
    if args.props is None:
        args.props = infer_letter_props(text)
    e = parse_sere(text, args.props)
    t = sere.sere_to_adt(e, props=args.props)
    out = render(t)
    fields = {
        "inputs": _inputs(args, "sere", "props"),
        "result": out,
        "depth": core.counterdepth(t),
        "size": core.size(t),
    }
    return fields, [out]


def _cmd_sere_member(args):
    props, traces = _load_traces(args)
    args.props = props
    e = parse_sere(_read(args.sere), props)
    answers = [sere.sere_member(e, w) for w in traces]
    fields = {"inputs": _inputs(args, "sere", "traces", "props"), "result": answers}
    return fields, [str(a).lower() for a in answers]


def _cmd_witness(args):
    t, plus, minus = witness.build_witness_adt(args.k)
    if args.enumerate is not None:
        found = semantics.enumerate_traces(t, args.enumerate, args.budget)
        words = [witness.trace_to_word(w) for w in found]
        fields = {
            "inputs": _inputs(args, "k", "enumerate", "budget"),
            "result": words,
            "bound": args.enumerate,
        }
        return fields, [", ".join(words), f"bound: {args.enumerate}"]
    rows = [("W", t), ("Wplus", plus), ("Wminus", minus)]
    fields = {
        "inputs": _inputs(args, "k"),
        "result": {
            name: {"size": core.size(tree), "depth": core.counterdepth(tree)}
            for name, tree in rows
        },
    }
    lines = [
        f"{name}: size {core.size(tree)} depth {core.counterdepth(tree)}"
        for name, tree in rows
    ]
    return fields, lines


# ---------------------------------------------------------------------------
# argument plumbing

_HANDLERS = {
    "parse": _cmd_parse,
    "depth": _cmd_depth,
    "size": _cmd_size,
    "member": _cmd_member,
    "enumerate": _cmd_enumerate,
    "gen": _cmd_gen,
    "nonempty": _cmd_nonempty,
    "equiv": _cmd_equiv,
    "to-fo": _cmd_to_fo,
    "fo-eval": _cmd_fo_eval,
    "fo-sat": _cmd_fo_sat,
    "to-pi2": _cmd_to_pi2,
    "sigma1-to-adt": _cmd_sigma1_to_adt,
    "to-sere": _cmd_to_sere,
    "from-sere": _cmd_from_sere,
    "sere-member": _cmd_sere_member,
    "witness": _cmd_witness,
}


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument(
        "--props",
        type=_props_flag,
        default=None,
        help="comma-separated proposition names (when no header provides them)",
    )

    parser = argparse.ArgumentParser(
        prog="adtlab",
        description="Attack-defense trees with trace semantics: membership, "
        "emptiness, equivalence and logic/expression translations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, *, adt=False, adt2=False, fo_file=False, sere_file=False,
            traces=False, bounds=False, method=None, help=""):
        p = sub.add_parser(name, parents=[common], help=help)
        if adt:
            p.add_argument("--adt", required=True, metavar="FILE")
        if adt2:
            p.add_argument("--adt2", required=True, metavar="FILE")
        if fo_file:
            p.add_argument("--fo", required=True, metavar="FILE")
        if sere_file:
            p.add_argument("--sere", required=True, metavar="FILE")
        if traces:
            p.add_argument("--traces", required=True, metavar="FILE")
        if bounds:
            p.add_argument("--maxlen", type=int, default=4)
            p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
        if method is not None:
            p.add_argument("--method", choices=method, default="auto")
        return p

    p = add("parse", help="parse one input file and print its canonical form")
    p.add_argument("--adt", metavar="FILE")
    p.add_argument("--fo", metavar="FILE")
    p.add_argument("--sere", metavar="FILE")
    p.add_argument("--traces", metavar="FILE")
    add("depth", adt=True, help="countermeasure nesting depth of a tree")
    add("size", adt=True, help="node count of a tree")
    add("member", adt=True, traces=True, help="membership of each trace in the tree language")
    add("enumerate", adt=True, bounds=True, help="all accepted traces up to --maxlen")
    p = add("gen", adt=True, help="generator set of a tree")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    add("nonempty", adt=True, bounds=True, method=("auto", "gen", "bounded"),
        help="is the language non-empty?")
    add("equiv", adt=True, adt2=True, bounds=True,
        method=("auto", "gen0", "reduction", "bounded"),
        help="do two trees have the same language?")
    add("to-fo", adt=True, help="first-order formula with the same language")
    add("fo-eval", fo_file=True, traces=True, help="evaluate a formula on each trace")
    add("fo-sat", fo_file=True, bounds=True, help="search for a satisfying trace up to --maxlen")
    add("to-pi2", adt=True, help="forall-exists formula for a depth-0 tree")
    add("sigma1-to-adt", fo_file=True, help="depth-0 tree for an existential formula")
    add("to-sere", adt=True, help="extended regular expression with the same language")
    add("from-sere", sere_file=True, help="tree with the same language as an expression")
    add("sere-member", sere_file=True, traces=True,
        help="membership of each trace in the expression language")
    p = add("witness", help="the separating witness family")
    p.add_argument("k", type=int)
    p.add_argument("--enumerate", type=int, default=None, metavar="N",
                   help="list the accepted words up to length N")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        fields, lines = _HANDLERS[args.command](args)
    except BudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ParseError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.format == "json":
        payload = {"command": args.command, "inputs": fields.pop("inputs")}
        payload["result"] = fields.pop("result")
        payload.update(fields)
        print(json.dumps(payload))
    else:
        for line in lines:
            print(line)
    return 0


if __name__ == "__main__":
    sys.exit(main())
