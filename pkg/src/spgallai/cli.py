"""Command-line entry point: ``python -m spgallai <command> ...``.

Exit codes: 0 success, 1 usage error, 2 bad input (malformed edge list or a
graph outside the command's domain), 3 a verification or assertion failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import asdict

from . import dp as lpdp
from . import oracle
from .corpus import FAMILIES, GenSpec, generate, named_graph
from .decomposition import decomposition_from_embedding, make_nice, nice_to_json
from .gallai import ALGORITHMS, ReportMismatch, TheoremViolation, nice_decomposition
from .graph import GraphFormatError, PreconditionError, is_connected, parse_edge_list, serialize_edge_list
from .harness import (
    BenchConfig,
    BenchTimeout,
    VerifyConfig,
    bench_csv,
    decade_ratios,
    default_jobs,
    run_bench,
    summarize,
    verify_corpus,
    write_failure_dump,
)
from .prooftrace import LemmaViolation, run_trace, verify_trace
from .sp import K4MinorCertificate, complete_to_two_tree, embedding_to_json, recognize_partial_two_tree

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _read_graph(path: str):
    if path == "-":
        data = sys.stdin.buffer.read()
    else:
        try:
            with open(path, "rb") as fh:
                data = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse_edge_list(data)


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


# -- commands ---------------------------------------------------------------------


def cmd_recognize(args) -> int:
    g = _read_graph(args.input)
    res = recognize_partial_two_tree(g)
    if isinstance(res, K4MinorCertificate):
        sets = [sorted(s) for s in res.branch_sets]
        payload = {"partial_2_tree": False, "k4_branch_sets": sets}
        text = "not a partial 2-tree; K4 minor branch sets: " + " | ".join(" ".join(map(str, s)) for s in sets)
    else:
        payload = {"partial_2_tree": True, "elimination_order": list(res)}
        text = "partial 2-tree; elimination order: " + " ".join(map(str, res))
    _emit(args, payload, text)
    return EXIT_OK


def cmd_embed(args) -> int:
    emb = complete_to_two_tree(_read_graph(args.input))
    payload = embedding_to_json(emb)
    virtual = [f"{u}-{v}" for u, v in emb.virtual_edges()]
    text = f"2-tree on {emb.n} vertices, base edge {emb.base_edge[0]}-{emb.base_edge[1]}, virtual edges: {' '.join(virtual) or '-'}"
    _emit(args, payload, text)
    return EXIT_OK


def cmd_decompose(args) -> int:
    g = _read_graph(args.input)
    td = decomposition_from_embedding(complete_to_two_tree(g))
    if args.raw:
        payload = {
            "root": td.root,
            "nodes": [{"bag": list(b), "parent": p} for b, p in zip(td.bags, td.parent)],
        }
        text = f"{len(td.bags)} bags, width {td.width}"
    else:
        ntd = make_nice(td)
        payload = nice_to_json(ntd)
        text = f"{len(ntd)} nodes, width {ntd.width}"
    _emit(args, payload, text)
    return EXIT_OK


def cmd_lp(args) -> int:
    g = _read_graph(args.input)
    if not is_connected(g):
        raise PreconditionError("disconnected", "lp needs a connected graph")
    if g.n == 1:
        L, path, counts = 0, (0,), []
    else:
        table = lpdp.run_forward_dp(nice_decomposition(g), g)
        L = lpdp.longest_path_length(table)
        path = lpdp.extract_longest_path(table) if args.path else None
        counts = table.config_counts() if args.dump_tables else None
    payload = {"n": g.n, "m": g.m, "L": L}
    lines = [f"L = {L}"]
    if args.path:
        payload["path"] = list(path)
        lines.append("path: " + " ".join(map(str, path)))
    if args.dump_tables:
        payload["config_counts"] = counts
        lines.append(f"max configurations per node: {max(counts, default=0)}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_gallai(args) -> int:
    g = _read_graph(args.input)
    algo = ALGORITHMS[args.algo]
    report = algo(g, args.cap) if args.algo == "oracle" else algo(g, verify_theorem=args.verify_theorem)
    if args.verify_theorem and not report.gallai_vertices:
        raise TheoremViolation("empty Gallai set")
    payload = report.to_json()
    text = f"L = {report.L}\nGallai vertices: {' '.join(map(str, sorted(report.gallai_vertices))) or '(none)'}"
    _emit(args, payload, text)
    return EXIT_OK


def cmd_oracle(args) -> int:
    g = _read_graph(args.input)
    cap = args.cap
    what = args.what
    if what == "paths":
        lps = oracle.enumerate_longest_paths(g, cap)
        payload = {"L": lps.L, "count": len(lps)}
        if args.dump_paths:
            payload["paths"] = [list(p) for p in lps.paths]
        text = f"L = {lps.L}, {len(lps)} longest paths"
    elif what == "gallai":
        gs = oracle.gallai_set_bruteforce(g, cap)
        payload = {"L": oracle.longest_path_length(g, cap), "gallai": sorted(gs)}
        if args.dump_paths:
            payload["paths"] = [list(p) for p in oracle.enumerate_longest_paths(g, cap).paths]
        text = f"Gallai vertices: {' '.join(map(str, sorted(gs))) or '(none)'}"
    elif what == "classify":
        lps = oracle.enumerate_longest_paths(g, cap)
        cls = oracle.classify_longest_paths(lps, *args.triple)
        payload = {k: sorted(list(p) for p in v) if isinstance(v, frozenset) else v for k, v in asdict(cls).items()}
        if not args.dump_paths:
            payload = {k: (len(v) if isinstance(v, list) else v) for k, v in payload.items()}
        text = ", ".join(f"{k}={len(v) if isinstance(v, frozenset) else v}" for k, v in asdict(cls).items())
    elif what == "pairwise":
        ok = oracle.pairwise_intersection_holds(g, cap)
        payload, text = {"pairwise_intersection": ok}, str(ok).lower()
    elif what == "pwise":
        ok = oracle.p_wise_common_vertex(g, args.p, cap)
        payload, text = {"p": args.p, "common_vertex": ok}, str(ok).lower()
    elif what == "hamiltonian":
        cyc = oracle.hamiltonian_cycle_exists(g, cap)
        path = oracle.hamiltonian_path_exists(g, cap)
        payload = {"hamiltonian_cycle": cyc, "hamiltonian_path": path}
        text = f"cycle: {str(cyc).lower()}, path: {str(path).lower()}"
    else:
        tw = oracle.exact_treewidth(g, cap)
        payload, text = {"treewidth": tw}, f"treewidth = {tw}"
    _emit(args, payload, text)
    return EXIT_OK


def cmd_trace(args) -> int:
    g = _read_graph(args.input)
    tr = run_trace(g, args.cap)
    payload = tr.to_json()
    payload.update(n=g.n, m=g.m)
    status = EXIT_OK
    if args.verify:
        problems = verify_trace(tr, g)
        payload["verified"] = not problems
        payload["problems"] = problems
        if problems:
            status = EXIT_VERIFY
    text = "\n".join(
        [f"{s.kind}: triangle={s.triangle} edge={s.edge} component={sorted(s.component.vertices) if s.component else None}"
         for s in tr.steps] + [f"final vertex: {tr.final_vertex}"]
    )
    if args.verify:
        text += "\n" + ("verified" if status == EXIT_OK else "FAILED: " + "; ".join(payload["problems"]))
    _emit(args, payload, text)
    return status


def cmd_gen(args) -> int:
    if args.name:
        try:
            g = named_graph(args.name)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    else:
        if args.family is None or args.n is None:
            raise UsageError("gen needs --name, or --family and --n")
        try:
            g = generate(GenSpec(args.family, args.n, args.seed, args.p))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    sys.stdout.write(serialize_edge_list(g))
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = VerifyConfig(args.count, args.max_n, args.seed, args.family, args.jobs or default_jobs(), args.cap)
    results = verify_corpus(cfg)
    summary = summarize(results)
    if summary["failed"]:
        write_failure_dump(args.dump, results)
        summary["dump"] = args.dump
    rows = [f"{'n':>4} {'count':>6} {'failed':>6}"]
    rows += [f"{r['n']:>4} {r['count']:>6} {r['failed']:>6}" for r in summary["by_n"]]
    rows.append(f"total {summary['count']} instances, {summary['failed']} failed")
    _emit(args, summary, "\n".join(rows))
    return EXIT_VERIFY if summary["failed"] else EXIT_OK


def cmd_bench(args) -> int:
    cfg = BenchConfig(tuple(args.sizes), args.seed, args.naive_max, budget_s=args.budget)
    try:
        rows = run_bench(cfg)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    except BenchTimeout as exc:
        sys.stderr.write(f"bench: {exc}\n")
        return EXIT_VERIFY
    text = bench_csv(rows)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    sys.stdout.write(text)
    worst = 0.0
    for s, t, r in decade_ratios(rows, "millis_fast"):
        sys.stderr.write(f"fast ratio {s}->{t}: {r:.2f}\n")
        worst = max(worst, r)
    for s, t, r in decade_ratios(rows, "millis_naive"):
        sys.stderr.write(f"naive ratio {s}->{t}: {r:.2f} (not asserted)\n")
    if worst > cfg.max_fast_ratio:
        sys.stderr.write(f"fast growth ratio {worst:.2f} exceeds {cfg.max_fast_ratio}\n")
        return EXIT_VERIFY
    return EXIT_OK


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="spgallai", description="Longest paths and Gallai vertices of series-parallel graphs.")
    parser.add_argument("--format", choices=("json", "text"), default="json", help="output format (default json)")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    # repeated on every subcommand so the flags work on either side of it
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS, help="output format")
    common.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def command(name, fn, help_text, graph_input=True):
        p = sub.add_parser(name, help=help_text, description=help_text, parents=[common])
        if graph_input:
            p.add_argument("input", nargs="?", default="-", help="edge-list file, or - for stdin (default)")
        p.set_defaults(func=fn)
        return p

    command("recognize", cmd_recognize, "decide partial 2-tree membership; print an elimination order or a K4 minor")
    command("embed", cmd_embed, "complete a connected series-parallel graph to a spanning 2-tree")
    p = command("decompose", cmd_decompose, "build the tree decomposition (nice by default)")
    p.add_argument("--raw", action="store_true", help="emit the triangle decomposition instead of the nice one")
    p = command("lp", cmd_lp, "longest path length via the decomposition DP")
    p.add_argument("--path", action="store_true", help="also extract one longest path")
    p.add_argument("--dump-tables", action="store_true", help="include per-node feasible configuration counts")
    p = command("gallai", cmd_gallai, "compute the Gallai vertices")
    p.add_argument("--algo", choices=sorted(ALGORITHMS), default="fast")
    p.add_argument("--verify-theorem", action="store_true", help="exit 3 if the Gallai set is empty")
    p.add_argument("--cap", type=int, default=oracle.DEFAULT_CAP, help="vertex cap for --algo oracle")
    p = sub.add_parser("oracle", help="brute-force ground truth for small graphs", parents=[common])
    osub = p.add_subparsers(dest="what", required=True, parser_class=_Parser)
    oracle_help = {
        "paths": "enumerate all longest paths",
        "gallai": "Gallai set by intersecting all longest paths",
        "classify": "sort longest paths by which of U, V, W they contain",
        "pairwise": "do all pairs of longest paths intersect",
        "pwise": "do all groups of P longest paths share a vertex",
        "hamiltonian": "Hamiltonian cycle and path existence",
        "treewidth": "exact treewidth by subset DP",
    }
    for what, text in oracle_help.items():
        q = osub.add_parser(what, help=text, description=text, parents=[common])
        q.add_argument("input", nargs="?", default="-", help="edge-list file, or - for stdin (default)")
        q.add_argument("--cap", type=int, default=oracle.DEFAULT_CAP, help="largest vertex count accepted")
        q.add_argument("--dump-paths", action="store_true", help="include the full path lists")
        if what == "classify":
            q.add_argument("--triple", type=int, nargs=3, metavar=("U", "V", "W"), required=True)
        if what == "pwise":
            q.add_argument("--p", type=int, default=3, help="group size")
        q.set_defaults(func=cmd_oracle)
    p = command("trace", cmd_trace, "run the triangle/edge/component certificate engine")
    p.add_argument("--verify", action="store_true", help="re-check every step; exit 3 on failure")
    p.add_argument("--cap", type=int, default=oracle.DEFAULT_CAP)
    p = command("gen", cmd_gen, "generate a graph in edge-list format", graph_input=False)
    p.add_argument("--family", choices=FAMILIES)
    p.add_argument("--n", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--p", type=float, default=0.3, help="density knob of the family")
    p.add_argument("--name", help="named graph: petersen, wvz, k4, triangle, path:K, cycle:K, star:K, fan:K")
    p = command("verify", cmd_verify, "check every algorithm against the oracle on a random corpus", graph_input=False)
    p.add_argument("--count", type=int, default=500)
    p.add_argument("--max-n", type=int, default=12)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--family", choices=FAMILIES, default="series_parallel")
    p.add_argument("--jobs", type=int, default=0, help="worker processes (default: available CPUs)")
    p.add_argument("--cap", type=int, default=oracle.DEFAULT_CAP)
    p.add_argument("--dump", default="verify_failures.txt", help="reproducer file written on failure")
    p = command("bench", cmd_bench, "time naive and fast Gallai search; CSV on stdout", graph_input=False)
    p.add_argument("--sizes", type=int, nargs="+", default=[100, 1000, 10_000, 100_000])
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--naive-max", type=int, default=1000, help="largest size on which naive runs")
    p.add_argument("--out", help="also write the CSV here")
    p.add_argument("--budget", type=float, help="seconds allowed per timed call; exit 3 if exceeded")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except (GraphFormatError, PreconditionError) as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return EXIT_INPUT
    except (TheoremViolation, LemmaViolation, ReportMismatch, AssertionError) as exc:
        sys.stderr.write(f"verification failed: {exc}\n")
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
