"""Command-line interface.

Exit codes: 0 success, 1 I/O or parse error, 2 a negative answer
(not in class, not isomorphic, reconstruction failed, selftest failed).
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import (
    GenerationBudgetExhausted,
    NotNearSiblingPair,
    NotRealizableOrOutOfClass,
    TripnetError,
)
from .iso import are_isomorphic
from .network import (
    Network,
    cherries,
    has_near_reticulations,
    is_normal,
    is_tree_child,
    near_sibling_pairs,
    near_stack_pairs,
    reticulated_cherries,
    shortcuts,
    vertex_kind,
    visibility_set,
)
from .newick import parse_enewick, write_arcs, write_dot, write_enewick
from .reconstruct import reconstruct_from_triples
from .transforms import GeneratorConfig, nni_near_sibling, random_normal_network
from .triples import format_triples, parse_triples, quartet_caterpillars, rooted_triples

SCHEMA_VERSION = 1
WRITERS = {"enewick": write_enewick, "arcs": write_arcs, "dot": write_dot}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _emit(args, payload: dict, text: str):
    if args.json:
        payload = {"schema_version": SCHEMA_VERSION, "command": args.command, **payload}
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(text)


def _render(N: Network, fmt: str) -> str:
    return WRITERS[fmt](N)


# -- subcommands --------------------------------------------------------

def cmd_triples(args) -> int:
    N = parse_enewick(_read(args.network))
    R = rooted_triples(N)
    text = format_triples(R)
    payload = {"leaves": R.sorted_universe(), "triples": [list(t) for t in R]}
    if args.quartets:
        Q = sorted(quartet_caterpillars(N))
        text += "".join(f"{q}\n" for q in Q)
        payload["quartets"] = [list(q) for q in Q]
    _emit(args, payload, text)
    return 0


def _check_report(N: Network, ids: bool) -> dict:
    ns = near_sibling_pairs(N)
    nk = near_stack_pairs(N)
    return {
        "leaves": sorted(N.leaves),
        "binary_acyclic": True,
        "tree_child": is_tree_child(N),
        "shortcuts": [[str(u), str(v)] for u, v in shortcuts(N)],
        "normal": is_normal(N),
        "near_sibling_pairs": [{"u": str(p.u), "v": str(p.v), "comparable": p.comparable} for p in ns],
        "near_stack_pairs": [{"u": str(p.u), "v": str(p.v), "comparable": p.comparable} for p in nk],
        "cherries": [list(c) for c in cherries(N)],
        "reticulated_cherries": [{"a": rc.a, "b": rc.b} for rc in reticulated_cherries(N)],
        "vertices": [
            {"id": str(v), "kind": vertex_kind(N, v).name.lower(), "label": N.label(v),
             "children": [str(c) for c in N.children(v)],
             "visibility": sorted(visibility_set(N, v))}
            for v in N.vertices
        ] if ids else [
            {"label": N.label(v), "kind": vertex_kind(N, v).name.lower(),
             "visibility": sorted(visibility_set(N, v))}
            for v in N.vertices
        ],
    }


def _check_text(rep: dict, ids: bool) -> str:
    yn = {True: "yes", False: "no"}
    out = [
        f"leaves: {' '.join(rep['leaves'])}",
        "binary and acyclic: yes",
        f"tree-child: {yn[rep['tree_child']]}",
        "shortcuts: " + (", ".join(f"{u}->{v}" for u, v in rep["shortcuts"]) or "none"),
        f"normal: {yn[rep['normal']]}",
    ]
    for key, name in (("near_sibling_pairs", "near-sibling pairs"), ("near_stack_pairs", "near-stack pairs")):
        pairs = rep[key]
        out.append(f"{name}: " + (", ".join(
            f"({p['u']},{p['v']}) {'comparable' if p['comparable'] else 'not comparable'}"
            for p in pairs) or "none"))
    out.append("cherries: " + (", ".join(f"{{{a},{b}}}" for a, b in rep["cherries"]) or "none"))
    out.append("reticulated cherries: " + (", ".join(
        f"{{{rc['a']},{rc['b']}}} (reticulation leaf {rc['b']})"
        for rc in rep["reticulated_cherries"]) or "none"))
    out.append("visibility sets:")
    for v in rep["vertices"]:
        vis = "{" + ",".join(v["visibility"]) + "}"
        name = v["id"] if ids else (v["label"] or "-")
        extra = f" label={v['label']}" if ids and v["label"] else ""
        kids = f" children={','.join(v['children'])}" if ids and v["children"] else ""
        out.append(f"  {name} {v['kind']}{extra}{kids} V={vis}")
    return "\n".join(out) + "\n"


def cmd_check(args) -> int:
    N = parse_enewick(_read(args.network))
    rep = _check_report(N, args.ids)
    ok = rep["normal"] and not has_near_reticulations(N)
    rep["in_class"] = ok
    _emit(args, rep, _check_text(rep, args.ids) + f"in class: {'yes' if ok else 'no'}\n")
    return 0 if ok else 2


def cmd_reconstruct(args) -> int:
    R = parse_triples(_read(args.triples))
    try:
        res = reconstruct_from_triples(R)
    except NotRealizableOrOutOfClass as exc:
        sys.stderr.write(f"reconstruction failed: {exc.reason}\n")
        if exc.witness is not None:
            sys.stderr.write(f"witness: {exc.witness}\n")
        _emit(args, {"ok": False, "reason": exc.reason,
                     "witness": None if exc.witness is None else str(exc.witness),
                     "steps": [s.describe() for s in exc.steps]},
              f"failed: {exc}\n")
        return 2
    for note in res.notes:
        sys.stderr.write(f"note: {note}\n")
    text = _render(res.network, args.format)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    _emit(args, {"ok": True, "network": write_enewick(res.network).strip(),
                 "steps": [s.describe() for s in res.steps], "notes": res.notes},
          "" if args.output else text)
    return 0


def cmd_iso(args) -> int:
    A = parse_enewick(_read(args.a))
    B = parse_enewick(_read(args.b))
    iso = are_isomorphic(A, B)
    _emit(args, {"isomorphic": iso}, f"{'isomorphic' if iso else 'not isomorphic'}\n")
    return 0 if iso else 2


def cmd_nni(args) -> int:
    N = parse_enewick(_read(args.network))
    parts = args.pair.split(",")
    if len(parts) != 2:
        raise UsageError("--pair expects two vertex ids separated by a comma")
    by_name = {str(v): v for v in N.vertices}
    missing = [p for p in parts if p.strip() not in by_name]
    if missing:
        raise UsageError(f"unknown vertex id {missing[0]!r}; see 'check --ids'")
    u, v = (by_name[p.strip()] for p in parts)
    try:
        M = nni_near_sibling(N, u, v)
    except NotNearSiblingPair as exc:
        sys.stderr.write(f"{exc}\n")
        return 2
    _emit(args, {"network": write_enewick(M).strip()}, _render(M, args.format))
    return 0


def cmd_gen(args) -> int:
    cfg = GeneratorConfig(seed=args.seed, n_leaves=args.leaves, n_reticulations=args.retics,
                          forbid_near=not args.allow_near, max_rejections=args.max_rejections)
    try:
        N = random_normal_network(cfg)
    except GenerationBudgetExhausted as exc:
        sys.stderr.write(f"generation failed: {exc}\n")
        return 2
    _emit(args, {"network": write_enewick(N).strip(), "seed": args.seed}, _render(N, args.format))
    return 0


def cmd_selftest(args) -> int:
    from .selftest import run_all
    size = "full" if args.full else args.size
    echo = None if args.json else (lambda line: (sys.stdout.write(line + "\n"), sys.stdout.flush()))
    results = run_all(size, echo=echo)
    ok = all(r.passed for r in results)
    payload = {"size": size, "passed": ok, "criteria": [
        {"number": r.number, "name": r.name, "passed": r.passed, "detail": r.detail,
         "seconds": round(r.seconds, 3)} for r in results]}
    summary = f"{sum(r.passed for r in results)}/{len(results)} criteria passed\n"
    _emit(args, payload, summary)
    return 0 if ok else 2


# -- wiring -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    netfmt = _Parser(add_help=False)
    netfmt.add_argument("--format", choices=sorted(WRITERS), default="enewick",
                        help="network output format (default: enewick)")

    p = _Parser(prog="tripnet", description="Rooted triples of phylogenetic networks.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("triples", parents=[common], help="print the displayed rooted triples")
    s.add_argument("network", help="extended Newick file, or - for stdin")
    s.add_argument("--quartets", action="store_true", help="also print 4-leaf caterpillars")
    s.set_defaults(func=cmd_triples)

    s = sub.add_parser("check", parents=[common], help="report class membership")
    s.add_argument("network")
    s.add_argument("--ids", action="store_true", help="show internal vertex ids")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("reconstruct", parents=[common, netfmt], help="rebuild a network from triples")
    s.add_argument("triples", help="triple file, or - for stdin")
    s.add_argument("-o", "--output", help="write the network here instead of stdout")
    s.set_defaults(func=cmd_reconstruct)

    s = sub.add_parser("iso", parents=[common], help="test two networks for isomorphism")
    s.add_argument("a")
    s.add_argument("b")
    s.set_defaults(func=cmd_iso)

    s = sub.add_parser("nni", parents=[common, netfmt], help="interchange at a near-sibling pair")
    s.add_argument("network")
    s.add_argument("--pair", required=True, help="vertex ids u,v as shown by 'check --ids'")
    s.set_defaults(func=cmd_nni)

    s = sub.add_parser("gen", parents=[common, netfmt], help="generate a random normal network")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--leaves", type=int, default=5)
    s.add_argument("--retics", type=int, default=1)
    s.add_argument("--allow-near", action="store_true", help="allow near reticulations")
    s.add_argument("--max-rejections", type=int, default=GeneratorConfig.max_rejections)
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("selftest", parents=[common], help="run the acceptance suites")
    s.add_argument("--size", choices=("small", "full"), default="small")
    s.add_argument("--full", action="store_true", help="same as --size full")
    s.set_defaults(func=cmd_selftest)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"tripnet: {exc}\n")
        return 1
    except OSError as exc:
        sys.stderr.write(f"tripnet: {exc}\n")
        return 1
    except (TripnetError, ValueError) as exc:
        sys.stderr.write(f"tripnet: {type(exc).__name__}: {exc}\n")
        return 1


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
