"""Command-line interface.

Subcommands: compute, verify-extremal, hasse, search-path, conjecture,
simulate. Exit codes form the CI contract: 0 success, 2 parse/usage
error, 3 structurally invalid graph (e.g. disconnected), 4 numerical
disagreement or failed verification assertion.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import dataclass

from .errors import ConsistencyError, DisconnectedError, GraphError, NotATreeError, TwgParseError
from .extremal import best_path_assignment, extremal_scan, weight_multiset
from .forests import alpha_forest, kappa_forest
from .graphs import WeightedGraph, enumerate_free_trees, parse_twg
from .homorder import connected_graph_corpus, conjecture_scan
from .simulate import estimate_hitting
from .spectral import alpha_spectral, kappa_spectral
from .transfers import build_hasse, hasse_to_dot
from .walks import hitting_matrix, walk_stats

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_GRAPH = 3
EXIT_ASSERTION = 4

METHOD_AGREEMENT_RTOL = 1e-6

METHODS = {
    "exact": lambda g: (walk_stats(g).alpha, walk_stats(g).kappa),
    "forest": lambda g: (alpha_forest(g), kappa_forest(g)),
    "spectral": lambda g: (alpha_spectral(g), kappa_spectral(g)),
}


@dataclass(frozen=True)
class RunReport:
    """Per-method results for one input, with the cross-method deltas."""

    command: str
    input_digest: str
    n: int
    edge_count: int
    methods: dict
    max_rel_delta: float
    wall_time_s: float

    def to_json_dict(self) -> dict:
        return {
            "command": self.command,
            "input_digest": self.input_digest,
            "n": self.n,
            "edge_count": self.edge_count,
            "methods": self.methods,
            "max_rel_delta": self.max_rel_delta,
            "wall_time_s": self.wall_time_s,
        }


def _sig12(x: float) -> float:
    return float(format(x, ".12g"))


def _read_graph(path: str) -> WeightedGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_twg(fh.read())


def _digest(path: str) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def _parse_weights(text: str) -> tuple[float, ...]:
    try:
        return weight_multiset([float(tok) for tok in text.split(",") if tok.strip()])
    except ValueError as exc:
        raise GraphError(f"bad weights list {text!r}: {exc}") from exc


def _emit(args, payload: dict, human_lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in human_lines:
            print(line)


def cmd_compute(args) -> int:
    t0 = time.perf_counter()
    g = _read_graph(args.input)
    selected = list(METHODS) if args.method == "all" else [args.method]
    results = {}
    for name in selected:
        alpha, kappa = METHODS[name](g)
        results[name] = {"alpha": _sig12(alpha), "kappa": _sig12(kappa)}
    delta = 0.0
    for stat in ("alpha", "kappa"):
        vals = [results[name][stat] for name in selected]
        spread = max(vals) - min(vals)
        delta = max(delta, spread / max(abs(v) for v in vals))
    report = RunReport(
        command="compute",
        input_digest=_digest(args.input),
        n=g.n,
        edge_count=len(g.edges),
        methods=results,
        max_rel_delta=delta,
        wall_time_s=round(time.perf_counter() - t0, 6),
    )
    lines = [f"n={g.n} edges={len(g.edges)} vol={g.vol:.12g}"]
    for name in selected:
        lines.append(
            f"{name:>9}: alpha={results[name]['alpha']:.12g} kappa={results[name]['kappa']:.12g}"
        )
    if len(selected) > 1:
        lines.append(f"max relative delta across methods: {delta:.3e}")
    payload = report.to_json_dict()
    if args.hitting:
        h = hitting_matrix(g)
        payload["hitting"] = [[_sig12(x) for x in row] for row in h.tolist()]
        if not args.json:
            lines.append("hitting matrix:")
            for row in h:
                lines.append("  " + " ".join(f"{x:12.6g}" for x in row))
    _emit(args, payload, lines)
    gate = max(METHOD_AGREEMENT_RTOL, args.tol)
    if delta > gate:
        print(f"method disagreement {delta:.3e} exceeds {gate}", file=sys.stderr)
        return EXIT_ASSERTION
    return EXIT_OK


def cmd_verify_extremal(args) -> int:
    weights = _parse_weights(args.weights)
    report = extremal_scan(weights, args.stat)
    lines = [
        f"family size: {report.family_size}",
        f"{args.stat} max = {report.max_value:.12g} attained by {len(report.argmax_codes)} tree(s)",
        f"{args.stat} min = {report.min_value:.12g} attained by {len(report.argmin_codes)} tree(s)",
    ]
    for t in report.argmax_trees:
        lines.append(f"  argmax layout: {[w for _, _, w in t.edges]} degseq={t.degree_sequence()}")
    for t in report.argmin_trees:
        lines.append(f"  argmin layout: {[w for _, _, w in t.edges]} degseq={t.degree_sequence()}")
    if report.polarized_value is not None:
        lines.append(f"polarized paths share {args.stat} = {report.polarized_value:.12g}")
    _emit(args, report.to_json_dict(), lines)
    return EXIT_OK


def cmd_hasse(args) -> int:
    if not 2 <= args.n <= 8:
        raise GraphError("hasse supports tree sizes 2..8")
    trees = enumerate_free_trees(args.n)
    diagram = build_hasse(trees, args.mode)
    dot = hasse_to_dot(diagram)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(dot)
    else:
        print(dot, end="")
    print(f"nodes={len(diagram.nodes)} covers={len(diagram.covers)}", file=sys.stderr)
    return EXIT_OK


def cmd_search_path(args) -> int:
    weights = _parse_weights(args.weights)
    result = best_path_assignment(weights)
    lines = [
        f"best kappa over {len(result.evaluations)} distinct orders: {result.kappa:.12g}",
        f"assignment: {list(result.assignment)}",
        f"objective:  {result.objective:.12g}",
    ]
    _emit(args, result.to_json_dict(), lines)
    return EXIT_OK


def cmd_conjecture(args) -> int:
    corpus = connected_graph_corpus(2, args.corpus_max)
    report = conjecture_scan(args.n, corpus=corpus)
    dominant = sum(1 for p in report.pairs if p.verdict == "dominates")
    lines = [
        f"trees of size {args.n}: {len(report.alphas)}; corpus graphs: {report.corpus_size}",
        f"ordered pairs: {len(report.pairs)}; corpus-dominant: {dominant}",
        f"violations: {len(report.violations)}",
    ]
    for a, b, aa, ab in report.violations:
        lines.append(f"  violation: alpha {aa:.9g} -> {ab:.9g} (corpus false positive suspected)")
    _emit(args, report.to_json_dict(), lines)
    return EXIT_OK


def cmd_simulate(args) -> int:
    g = _read_graph(args.input)
    est = estimate_hitting(g, args.src, args.dst, args.trials, args.seed)
    payload = {
        "mean": est.mean,
        "stderr": est.stderr,
        "trials": est.trials,
        "seed": est.seed,
    }
    lines = [
        f"estimated hitting time {args.src} -> {args.dst}: "
        f"{est.mean:.6g} (stderr {est.stderr:.3g}, trials {est.trials}, seed {est.seed})"
    ]
    _emit(args, payload, lines)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="treewalk",
        description="Random-walk functionals on weighted graphs by three mutually "
        "verifying methods, plus extremal weighted-tree verification.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p):
        p.add_argument("--json", action="store_true", help="emit JSON instead of text")
        p.add_argument(
            "--tol",
            type=float,
            default=1e-9,
            help="relative comparison tolerance; compute fails on method "
            "disagreement beyond max(1e-6, tol)",
        )

    p = sub.add_parser("compute", help="alpha/kappa for a TWG file")
    p.add_argument("--input", required=True)
    p.add_argument("--method", choices=["exact", "forest", "spectral", "all"], default="all")
    p.add_argument("--hitting", action="store_true", help="include the full hitting matrix")
    common(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("verify-extremal", help="exhaustive extremal scan over one weight multiset")
    p.add_argument("--weights", required=True, help="comma-separated positive weights")
    p.add_argument("--stat", choices=["alpha", "kappa"], required=True)
    common(p)
    p.set_defaults(func=cmd_verify_extremal)

    p = sub.add_parser("hasse", help="Hasse diagram of the transfer order on simple trees")
    p.add_argument("--n", type=int, required=True, help="tree size, 2..8")
    p.add_argument("--mode", choices=["size", "volume"], default="size")
    p.add_argument("--output", help="DOT output path (stdout when omitted)")
    common(p)
    p.set_defaults(func=cmd_hasse)

    p = sub.add_parser("search-path", help="kappa-maximizing path ordering of a weight multiset")
    p.add_argument("--weights", required=True)
    common(p)
    p.set_defaults(func=cmd_search_path)

    p = sub.add_parser("conjecture", help="hom-dominance vs alpha scan over free trees")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--corpus-max", type=int, default=5, help="largest corpus graph size")
    common(p)
    p.set_defaults(func=cmd_conjecture)

    p = sub.add_parser("simulate", help="Monte Carlo hitting-time estimate")
    p.add_argument("--input", required=True)
    p.add_argument("--from", dest="src", type=int, required=True)
    p.add_argument("--to", dest="dst", type=int, required=True)
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(func=cmd_simulate)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except TwgParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except FileNotFoundError as exc:
        print(f"cannot read input: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (DisconnectedError, NotATreeError) as exc:
        print(f"invalid graph: {exc}", file=sys.stderr)
        return EXIT_GRAPH
    except ConsistencyError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_ASSERTION
    except GraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
