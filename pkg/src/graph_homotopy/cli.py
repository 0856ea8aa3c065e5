"""Command-line interface.

Exit codes: 0 success, 1 the property asked about is false (or a suite
failed), 2 usage or parse error, 3 a search budget or size cap ran out.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import io as gio
from .errors import GraphError, TooLargeError
from .exponential import DEFAULT_CAP, enumerate_homs, hom_graph, realize_exponential
from .graph import Graph, coproduct, product, vertex_label
from .groupoid import DEFAULT_PAD_BUDGET, fundamental_group_probe, prune_fully, walks_equivalent
from .homotopy import DEFAULT_MAX_STATES, are_homotopic, spider_decompose
from .pleat import duplicate_vertex, find_folds, homotopy_equivalent, is_stiff, pleat
from .search import EQUIVALENT, INEQUIVALENT
from .verify import DEFAULT_SEED, SUITES, reports_to_tsv, run_suite

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise gio.ParseError(f"cannot read file: {exc.strerror}", path) from None


def _graph(path: str) -> Graph:
    if path == "-":
        return gio.parse_graph(_read(path))
    return gio.load_graph(path)


def _json_out(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def _graph_out(g: Graph, args) -> None:
    data = gio.emit_dot(g) if args.format == "dot" else gio.emit_graph(g)
    sys.stdout.buffer.write(data)
    sys.stdout.flush()


def _require_json(args, what: str) -> None:
    if args.format != "json":
        raise UsageError(f"{what} has no DOT rendering; use --format json")


def _walk(path: str, graph_path: str | None):
    g = _graph(graph_path) if graph_path else None
    if path == "-":
        return gio.walk_from_doc(json.loads(_read(path)), graph=g)
    return gio.load_walk(path, graph=g)


def cmd_product(args) -> int:
    _graph_out(product(_graph(args.g), _graph(args.h)), args)
    return EXIT_OK


def cmd_coproduct(args) -> int:
    _graph_out(coproduct(_graph(args.g), _graph(args.h)), args)
    return EXIT_OK


def cmd_exp(args) -> int:
    cap = args.budget if args.budget is not None else DEFAULT_CAP
    _graph_out(realize_exponential(_graph(args.g), _graph(args.h), cap).realized, args)
    return EXIT_OK


def cmd_homs(args) -> int:
    g, h = _graph(args.g), _graph(args.h)
    if args.format == "dot":
        _graph_out(hom_graph(g, h), args)
        return EXIT_OK
    homs = enumerate_homs(g, h)
    _json_out({"count": len(homs), "maps": [gio.map_to_doc(f, False)["map"] for f in homs]})
    return EXIT_OK


def cmd_hom_graph(args) -> int:
    _graph_out(hom_graph(_graph(args.g), _graph(args.h)), args)
    return EXIT_OK


def cmd_homotopic(args) -> int:
    _require_json(args, "homotopic")
    g, h = _graph(args.g), _graph(args.h)
    f1 = gio.load_map(args.f, g, h)
    f2 = gio.load_map(args.f2, g, h)
    hty = are_homotopic(f1, f2)
    out = {"homotopic": hty is not None}
    if hty is not None:
        out["length"] = hty.length
        if args.witness:
            out["witness"] = gio.homotopy_to_doc(hty)
    _json_out(out)
    return EXIT_OK if hty is not None else EXIT_FALSE


def cmd_spider(args) -> int:
    _require_json(args, "spider")
    f1 = gio.load_map(args.f)
    f2 = gio.load_map(args.f2, f1.source, f1.target)
    chain = spider_decompose(f1, f2)
    _json_out({"moves": len(chain) - 1, "chain": [gio.map_to_doc(m, False)["map"] for m in chain]})
    return EXIT_OK


def cmd_stiff(args) -> int:
    _require_json(args, "stiff")
    g = _graph(args.g)
    folds = find_folds(g)
    _json_out({"stiff": not folds,
               "folds": [[vertex_label(f.removed), vertex_label(f.into)] for f in folds]})
    return EXIT_OK if is_stiff(g) else EXIT_FALSE


def cmd_pleat(args) -> int:
    g = _graph(args.g)
    seed = args.seed if args.seed is not None else DEFAULT_SEED
    res = pleat(g, args.policy, seed=seed if args.policy == "random" else None)
    if args.figure:
        from .plotting import plot_pleat

        plot_pleat(g, res.pleat, args.figure)
    if args.trace:
        _require_json(args, "pleat --trace")
        _json_out({
            "pleat": gio.graph_to_doc(res.pleat),
            "folds": [[vertex_label(f.removed), vertex_label(f.into)] for f in res.fold_sequence],
            "retraction": gio.map_to_doc(res.embedding, False)["map"],
        })
    else:
        _graph_out(res.pleat, args)
    return EXIT_OK


def cmd_equiv(args) -> int:
    _require_json(args, "equiv")
    res = homotopy_equivalent(_graph(args.g), _graph(args.h))
    out: dict = {"equivalent": res.equivalent}
    pg, ph = res.pleats
    out["pleats"] = [gio.graph_to_doc(pg.pleat), gio.graph_to_doc(ph.pleat)]
    if res.equivalent:
        out["forward"] = gio.map_to_doc(res.forward, False)["map"]
        out["backward"] = gio.map_to_doc(res.backward, False)["map"]
    _json_out(out)
    return EXIT_OK if res.equivalent else EXIT_FALSE


def cmd_duplicate(args) -> int:
    g = _graph(args.g)
    d = duplicate_vertex(g, args.vertex)
    if args.format == "dot":
        _graph_out(d.graph, args)
        return EXIT_OK
    _json_out({
        "graph": gio.graph_to_doc(d.graph),
        "twin": vertex_label(d.twin),
        "iota1": gio.map_to_doc(d.iota1, False)["map"],
        "iota2": gio.map_to_doc(d.iota2, False)["map"],
        "rho": gio.map_to_doc(d.rho, False)["map"],
    })
    return EXIT_OK


def cmd_walk_reduce(args) -> int:
    _require_json(args, "walk-reduce")
    w = _walk(args.walk, args.graph)
    _json_out(gio.walk_to_doc(prune_fully(w)))
    return EXIT_OK


def cmd_walk_equiv(args) -> int:
    _require_json(args, "walk-equiv")
    a = _walk(args.a, args.graph)
    b = _walk(args.b, args.graph)
    if a.graph != b.graph:
        b = gio.walk_from_doc(gio.walk_to_doc(b), graph=a.graph)
    pad = args.budget if args.budget is not None else DEFAULT_PAD_BUDGET
    res = walks_equivalent(a, b, pad, max_states=args.max_states)
    out = {"status": res.status, "reason": res.reason, "extensions": res.extensions,
           "explored": res.explored}
    if res.witness:
        out["witness"] = [{"move": s.kind, "vertices": gio.walk_to_doc(s.walk)["vertices"]}
                          for s in res.witness]
    _json_out(out)
    if res.status == EQUIVALENT:
        return EXIT_OK
    return EXIT_FALSE if res.status == INEQUIVALENT else EXIT_BUDGET


def cmd_pi1(args) -> int:
    _require_json(args, "pi1")
    g = _graph(args.g)
    pad = args.budget if args.budget is not None else DEFAULT_PAD_BUDGET
    probe = fundamental_group_probe(g, args.base, args.max_len, pad)
    _json_out({
        "base": vertex_label(probe.base),
        "max_len": probe.max_len,
        "classes": [gio.walk_to_doc(c.representative)["vertices"] for c in probe.classes],
        "saturated": probe.saturated,
        "walks_examined": probe.walks_examined,
        "unresolved": probe.unresolved,
    })
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.all:
        names = list(SUITES)
    elif args.suite:
        names = args.suite
    else:
        raise UsageError("verify needs --all or at least one --suite")
    seed = args.seed if args.seed is not None else DEFAULT_SEED
    reports = [run_suite(n, args.max_vertices, seed, args.workers) for n in names]
    if args.report_dir:
        out_dir = Path(args.report_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / "report.json").write_text(
            json.dumps([r.to_dict() for r in reports], indent=2, sort_keys=True) + "\n")
        (out_dir / "report.tsv").write_text(reports_to_tsv(reports))
        from .plotting import plot_report_summary

        plot_report_summary(reports, out_dir / "summary.png")
    # stdout omits wall time so identical runs give identical bytes
    summary = []
    for r in reports:
        d = r.to_dict()
        d.pop("wall_time")
        summary.append(d)
    _json_out(summary)
    if any(r.failures for r in reports):
        return EXIT_FALSE
    if any(r.budget_exhausted for r in reports):
        return EXIT_BUDGET
    return EXIT_OK


def _positive(text: str) -> int:
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "dot"), default="json")
    common.add_argument("--seed", type=int, default=None, help="random seed (default 0)")
    common.add_argument("--budget", type=_positive, default=None,
                        help="size cap for exp, pad budget for walk-equiv and pi1")
    common.add_argument("--max-vertices", type=_positive, default=None,
                        help="graph size bound for verify suites")

    parser = argparse.ArgumentParser(prog="graph-homotopy",
                                     description="Homotopy computations on finite graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, *positionals):
        p = sub.add_parser(name, parents=[common], help=help_text)
        for pos in positionals:
            p.add_argument(pos)
        p.set_defaults(func=func)
        return p

    add("product", cmd_product, "categorical product of two graphs", "g", "h")
    add("coproduct", cmd_coproduct, "disjoint union of two graphs", "g", "h")
    add("exp", cmd_exp, "realise the exponential graph H^G", "g", "h")
    add("homs", cmd_homs, "list all morphisms G -> H", "g", "h")
    add("hom-graph", cmd_hom_graph, "the graph of morphisms G -> H inside H^G", "g", "h")
    p = add("homotopic", cmd_homotopic, "are two morphisms G -> H homotopic", "g", "h", "f", "f2")
    p.add_argument("--witness", action="store_true", help="include a shortest homotopy")
    add("spider", cmd_spider, "spider-move chain between adjacent morphisms", "f", "f2")
    add("stiff", cmd_stiff, "test stiffness and list folds", "g")
    p = add("pleat", cmd_pleat, "fold a graph down to its pleat", "g")
    p.add_argument("--policy", choices=("first", "random"), default="first")
    p.add_argument("--trace", action="store_true", help="emit the fold sequence")
    p.add_argument("--figure", metavar="PATH", help="also draw the graph and its pleat to PATH")
    add("equiv", cmd_equiv, "decide homotopy equivalence of two graphs", "g", "h")
    add("duplicate", cmd_duplicate, "add a twin of a vertex", "g", "vertex")
    p = add("walk-reduce", cmd_walk_reduce, "prune a walk fully", "walk")
    p.add_argument("--graph", help="graph file overriding the walk's own reference")
    p = add("walk-equiv", cmd_walk_equiv, "are two walks equivalent rel endpoints", "a", "b")
    p.add_argument("--graph", help="graph file overriding the walks' own references")
    p.add_argument("--max-states", type=_positive, default=DEFAULT_MAX_STATES)
    p = add("pi1", cmd_pi1, "probe closed-walk classes at a base vertex", "g")
    p.add_argument("--base", required=True)
    p.add_argument("--max-len", type=_positive, default=6)
    p = sub.add_parser("verify", parents=[common], help="run property suites")
    p.add_argument("--all", action="store_true")
    p.add_argument("--suite", action="append", choices=sorted(SUITES))
    p.add_argument("--report-dir", metavar="DIR", help="write report.json, report.tsv and summary.png")
    p.add_argument("--workers", type=_positive, default=1)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TooLargeError as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (GraphError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
