"""Command-line front end: constructions, formula checks, reductions, bench.

Exit codes: 0 success, 1 verification mismatch (details in the report),
2 usage errors (including unreadable/unwritable paths).
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from dynagrid import __version__
from dynagrid.apsp import run_apsp_reduction, run_incremental_worstcase
from dynagrid.bench import run_bench
from dynagrid.engines import UpdateMode
from dynagrid.graph import dijkstra, validate_grid_subgraph
from dynagrid.graphio import (
    graph_to_dot,
    graph_to_json,
    matrix_from_json,
    matrix_from_text,
)
from dynagrid.gridembed import (
    assemble_double_grid,
    boolean_inner_distance,
    boolean_terminal_distance,
    embed_boolean,
    embed_weighted,
    weighted_terminal_distance,
)
from dynagrid.matching import MatchingObjective, run_matching_reduction
from dynagrid.matrices import (
    dims,
    ones,
    random_boolean_matrix,
    random_boolean_vector,
    random_matrix,
    zeros,
)
from dynagrid.oracles import min_plus_product, oumv_answer
from dynagrid.oumv import build_unit_instance, check_unit_planarity, run_oumv
from dynagrid.matching import build_split_instance
from dynagrid.reports import (
    bench_csv,
    inputs_digest,
    ledger_to_csv,
    ledger_to_json,
    report_json,
    resolve_report_path,
    write_report,
)
from dynagrid.sssp import default_kernel
from dynagrid.variants import Variant, run_variant_reduction

_MODES = {
    "full": UpdateMode.FULL,
    "weight-only": UpdateMode.WEIGHT_ONLY,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dynagrid",
        description="Grid gadget constructions and dynamic shortest-path reductions.")
    parser.add_argument("--version", action="version", version=f"dynagrid {__version__}")
    parser.add_argument("--report-dir", default=None,
                        help="directory for relative output paths "
                             "(env DYNAGRID_REPORT_DIR)")
    sub = parser.add_subparsers(dest="command", required=True)

    p_embed = sub.add_parser("embed", help="build one grid embedding")
    p_embed.add_argument("--rows", type=int, required=True)
    p_embed.add_argument("--cols", type=int, required=True)
    p_embed.add_argument("--matrix", default="ones",
                         help="ones | zeros | random | path to a JSON/text matrix")
    p_embed.add_argument("--weighted", action="store_true")
    p_embed.add_argument("--x", type=int, default=1, help="entry bound for --weighted")
    p_embed.add_argument("--seed", type=int, default=0)
    p_embed.add_argument("--density", type=float, default=0.5,
                         help="one-density for random boolean matrices")
    p_embed.add_argument("--format", choices=("json", "dot"), default="json")
    p_embed.add_argument("--out", default=None, help="output path (stdout if omitted)")

    p_verify = sub.add_parser("verify-formulas",
                              help="check closed-form distances against Dijkstra")
    p_verify.add_argument("--rows", type=int, required=True)
    p_verify.add_argument("--cols", type=int, required=True)
    p_verify.add_argument("--trials", type=int, default=8,
                          help="random matrices per shape")
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--x", type=int, default=None,
                          help="also check weighted embeddings with this bound")

    p_reduce = sub.add_parser("reduce", help="execute a reduction end to end")
    p_reduce.add_argument("kind", choices=("apsp", "matching", "oumv", "st",
                                           "girth", "diameter"))
    p_reduce.add_argument("--n", type=int, required=True)
    p_reduce.add_argument("--nalpha", type=int, default=None)
    p_reduce.add_argument("--nbeta", type=int, default=None)
    p_reduce.add_argument("--alpha", type=float, default=None,
                          help="compute nalpha as floor(n**alpha)")
    p_reduce.add_argument("--beta", type=float, default=None,
                          help="compute nbeta as floor(n**beta)")
    p_reduce.add_argument("--x", type=int, default=8, help="entry bound")
    p_reduce.add_argument("--seed", type=int, default=0)
    p_reduce.add_argument("--engine", default="naive", choices=("naive", "cached"))
    p_reduce.add_argument("--mode", default=None,
                          choices=("full", "weight-only", "incremental-rollback"),
                          help="defaults to weight-only where the reduction "
                               "supports it, else full")
    p_reduce.add_argument("--kernel", default="auto",
                          choices=("auto", "compiled", "python"))
    p_reduce.add_argument("--base-shift", type=int, default=0)
    p_reduce.add_argument("--objective", default="min", choices=("min", "max"),
                          help="matching objective")
    p_reduce.add_argument("--pairs", type=int, default=None,
                          help="vector pairs for oumv (default n)")
    p_reduce.add_argument("--y", type=int, default=None,
                          help="heavy weight for st/diameter/matching-max")
    p_reduce.add_argument("--rho", type=int, default=2,
                          help="parked-weight factor in weight-only mode")
    p_reduce.add_argument("--verify", action="store_true",
                          help="cross-check the output against the brute-force oracle")
    p_reduce.add_argument("--traces", action="store_true",
                          help="include per-phase distances in the report")
    p_reduce.add_argument("--json", default=None, help="write the run report here")
    p_reduce.add_argument("--ledger-out", default=None,
                          help="export the ledger with timings (.csv or .json)")

    p_bench = sub.add_parser("bench", help="measure reduction workloads")
    p_bench.add_argument("--n", type=int, nargs="+", required=True)
    p_bench.add_argument("--x", type=int, default=8)
    p_bench.add_argument("--engine", nargs="+", default=["naive"],
                         choices=("naive", "cached"))
    p_bench.add_argument("--kernel", default="auto",
                         choices=("auto", "compiled", "python", "both"))
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument("--csv", default=None, help="write the bench table here")

    p_export = sub.add_parser("export", help="emit a construction as JSON or DOT")
    p_export.add_argument("--kind", required=True,
                          choices=("boolean", "weighted", "double-grid", "split", "unit"))
    p_export.add_argument("--rows", type=int, required=True)
    p_export.add_argument("--cols", type=int, required=True)
    p_export.add_argument("--matrix", default="random")
    p_export.add_argument("--x", type=int, default=8)
    p_export.add_argument("--seed", type=int, default=0)
    p_export.add_argument("--density", type=float, default=0.5)
    p_export.add_argument("--format", choices=("json", "dot"), default="json")
    p_export.add_argument("--out", default=None)
    return parser


def _load_matrix(spec: str, rows: int, cols: int, bound: int, weighted: bool,
                 seed: int, density: float) -> list[list[int]]:
    if spec == "ones":
        return ones(rows, cols)
    if spec == "zeros":
        return zeros(rows, cols)
    if spec == "random":
        rng = random.Random(seed)
        if weighted:
            return random_matrix(rows, cols, bound, rng)
        return random_boolean_matrix(rows, cols, rng, density)
    path = Path(spec)
    text = path.read_text(encoding="utf-8")
    m = matrix_from_json(text) if path.suffix == ".json" else matrix_from_text(text)
    if dims(m) != (rows, cols):
        raise ValueError(f"matrix in {spec} is {dims(m)}, expected {(rows, cols)}")
    return m


def _emit(text: str, out: str | None, report_dir: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        path = resolve_report_path(out, report_dir)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")


def _cmd_embed(args) -> int:
    m = _load_matrix(args.matrix, args.rows, args.cols, args.x, args.weighted,
                     args.seed, args.density)
    emb = embed_weighted(m, args.x) if args.weighted else embed_boolean(m)
    report = validate_grid_subgraph(emb.graph)
    if not report.valid:
        print(f"grid validation failed: {report}", file=sys.stderr)
        return 1
    text = graph_to_dot(emb.graph) if args.format == "dot" else graph_to_json(emb.graph) + "\n"
    _emit(text, args.out, args.report_dir)
    print(f"embedded {args.rows}x{args.cols}: {emb.graph.node_count} nodes, "
          f"{emb.graph.edge_count} edges, grid-valid", file=sys.stderr)
    return 0


def _cmd_verify_formulas(args) -> int:
    rng = random.Random(args.seed)
    mismatches = []
    checked = 0
    for rows in range(1, args.rows + 1):
        for cols in range(1, args.cols + 1):
            mats = [ones(rows, cols), zeros(rows, cols)]
            mats += [random_boolean_matrix(rows, cols, rng) for _ in range(args.trials)]
            for m in mats:
                emb = embed_boolean(m)
                for j in range(1, cols + 1):
                    dm = dijkstra(emb.graph, emb.a(j))
                    for k in range(1, rows + 1):
                        want = boolean_terminal_distance(rows, cols, j, k, m[k - 1][j - 1])
                        got = dm.distance(emb.b(k))
                        checked += 1
                        if got != want:
                            mismatches.append(("boolean", rows, cols, j, k, got, want))
                for i in range(1, rows + 1):
                    for j in range(1, cols + 1):
                        dm = dijkstra(emb.graph, emb.u(i, j))
                        for k in range(i + 1, rows + 1):
                            want = boolean_inner_distance(rows, cols, i, j, k,
                                                          m[k - 1][j - 1])
                            got = dm.distance(emb.b(k))
                            checked += 1
                            if got != want:
                                mismatches.append(("inner", rows, cols, i, j, k, got, want))
                if args.x:
                    wm = [[rng.randint(0, args.x) for _ in range(cols)]
                          for _ in range(rows)]
                    wemb = embed_weighted(wm, args.x)
                    for j in range(1, cols + 1):
                        dm = dijkstra(wemb.graph, wemb.a(j))
                        for k in range(1, rows + 1):
                            want = weighted_terminal_distance(
                                rows, cols, j, k, wm[k - 1][j - 1], args.x)
                            got = dm.distance(wemb.b(k))
                            checked += 1
                            if got != want:
                                mismatches.append(("weighted", rows, cols, j, k, got, want))
    if mismatches:
        for item in mismatches[:20]:
            print(f"MISMATCH {item}", file=sys.stderr)
        print(f"{len(mismatches)} mismatches out of {checked} checks", file=sys.stderr)
        return 1
    print(f"all {checked} closed-form checks passed")
    return 0


def _shape(args) -> tuple[int, int]:
    n_alpha = args.nalpha
    n_beta = args.nbeta
    if n_alpha is None:
        n_alpha = max(1, int(args.n ** args.alpha)) if args.alpha else args.n
    if n_beta is None:
        n_beta = max(1, int(args.n ** args.beta)) if args.beta else args.n
    return n_alpha, n_beta


def _cmd_reduce(args) -> int:
    n_alpha, n_beta = _shape(args)
    kernel = None if args.kernel == "auto" else args.kernel
    if args.mode is None:
        args.mode = "full" if args.kind in ("girth", "oumv") else "weight-only"
    if args.kind == "oumv" and args.mode != "full":
        print("the oumv reduction inserts and deletes edges; only full mode works",
              file=sys.stderr)
        return 2
    rng = random.Random(args.seed)
    params = {
        "command": f"reduce {args.kind}",
        "n": args.n, "n_alpha": n_alpha, "n_beta": n_beta, "x": args.x,
        "seed": args.seed, "engine": args.engine, "mode": args.mode,
        "kernel": kernel or default_kernel(), "base_shift": args.base_shift,
    }
    report: dict = {"params": params}
    oracle_match = None

    if args.kind == "oumv":
        m = random_boolean_matrix(n_beta, n_alpha, rng)
        count = args.pairs if args.pairs is not None else args.n
        pairs = [(random_boolean_vector(n_beta, rng), random_boolean_vector(n_alpha, rng))
                 for _ in range(count)]
        params["pairs"] = count
        instance = build_unit_instance(m)
        result = run_oumv(instance, pairs, args.engine, kernel=kernel)
        report["inputs"] = {"m": m, "digest": inputs_digest(m=m, pairs=pairs)}
        report["output"] = {"bits": "".join(map(str, result.bits))}
        report["ledger"] = result.ledger.counts()
        planarity = check_unit_planarity(instance)
        report["planarity_ok"] = planarity.valid
        if args.traces:
            report["traces"] = result.distances
        if args.verify:
            expect = [oumv_answer(m, u, v) for u, v in pairs]
            oracle_match = expect == result.bits
            if not oracle_match:
                report["oracle_expected"] = "".join(map(str, expect))
    else:
        a = random_matrix(args.n, n_beta, args.x, rng)
        b = random_matrix(n_beta, n_alpha, args.x, rng)
        report["inputs"] = {"a": a, "b": b, "digest": inputs_digest(a=a, b=b)}
        if args.kind == "apsp":
            if args.mode == "incremental-rollback":
                result = run_incremental_worstcase(
                    a, b, args.x, args.engine, base_shift=args.base_shift,
                    kernel=kernel, collect_traces=args.traces)
                report["state_restored"] = result.initial_digest == result.final_digest
            else:
                result = run_apsp_reduction(
                    a, b, args.x, args.engine, _MODES[args.mode],
                    base_shift=args.base_shift, kernel=kernel,
                    collect_traces=args.traces)
        elif args.kind == "matching":
            params["objective"] = args.objective
            result = run_matching_reduction(
                a, b, args.x, MatchingObjective(args.objective), args.y,
                base_shift=args.base_shift, collect_matchings=args.traces)
            report["matching_weights"] = result.matching_weights
            if args.traces:
                report["matchings"] = result.matchings
        else:
            variant = Variant(args.kind)
            params["variant"] = args.kind
            if args.mode == "incremental-rollback":
                print("incremental-rollback applies to the apsp reduction only",
                      file=sys.stderr)
                return 2
            result = run_variant_reduction(
                a, b, args.x, variant, args.engine, _MODES[args.mode],
                y=args.y, rho=args.rho, crossing_shift=args.base_shift,
                kernel=kernel)
            params["y"] = result.instance.y
            report["answers"] = result.answers
        report["output"] = {"product": result.product}
        report["ledger"] = result.ledger.counts()
        if args.traces and getattr(result, "traces", None) is not None:
            report["traces"] = result.traces
            report["pair_spread"] = {str(j): list(span)
                                     for j, span in result.pair_spread().items()}
        if args.verify:
            expected = min_plus_product(a, b)
            oracle_match = result.product == expected
            if not oracle_match:
                report["oracle_expected"] = expected

    if args.verify:
        report["oracle_match"] = bool(oracle_match)
    if args.json:
        write_report(resolve_report_path(args.json, args.report_dir), report)
    else:
        sys.stdout.write(report_json(report))
    if args.ledger_out:
        path = resolve_report_path(args.ledger_out, args.report_dir)
        path.parent.mkdir(parents=True, exist_ok=True)
        text = (ledger_to_json(result.ledger) if path.suffix == ".json"
                else ledger_to_csv(result.ledger))
        path.write_text(text, encoding="utf-8")
    if args.verify and not oracle_match:
        print("oracle mismatch: reduction output disagrees with brute force",
              file=sys.stderr)
        return 1
    print(f"reduce {args.kind}: ok (ledger {report['ledger']})", file=sys.stderr)
    return 0


def _cmd_bench(args) -> int:
    rows = run_bench(args.n, args.x, args.engine, args.kernel, args.seed)
    text = bench_csv(rows)
    if args.csv:
        path = resolve_report_path(args.csv, args.report_dir)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    for row in rows:
        per_query = row["query_ns_total"] // max(1, row["queries"])
        print(f"n={row['n']} engine={row['engine']} kernel={row['kernel']}: "
              f"{row['queries']} queries, {per_query} ns/query", file=sys.stderr)
    return 0


def _cmd_export(args) -> int:
    weighted = args.kind in ("weighted", "double-grid", "split")
    m = _load_matrix(args.matrix, args.rows, args.cols, args.x, weighted,
                     args.seed, args.density)
    if args.kind == "boolean":
        g = embed_boolean(m).graph
    elif args.kind == "weighted":
        g = embed_weighted(m, args.x).graph
    elif args.kind == "double-grid":
        g = assemble_double_grid(m, args.x).graph
    elif args.kind == "split":
        g = build_split_instance(m, args.x).graph
    else:
        g = build_unit_instance(m).graph
    text = graph_to_dot(g) if args.format == "dot" else graph_to_json(g) + "\n"
    _emit(text, args.out, args.report_dir)
    print(f"export {args.kind}: {g.node_count} nodes, {g.edge_count} edges",
          file=sys.stderr)
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "embed":
            return _cmd_embed(args)
        if args.command == "verify-formulas":
            return _cmd_verify_formulas(args)
        if args.command == "reduce":
            return _cmd_reduce(args)
        if args.command == "bench":
            return _cmd_bench(args)
        return _cmd_export(args)
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
