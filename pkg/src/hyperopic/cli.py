"""Command-line front end: ``hyperopic <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 bad input, 3 resource limit.
"""

from __future__ import annotations

import argparse
import csv
import inspect
import json
import sys
import time
from dataclasses import asdict, dataclass, field

from . import acceptance, density
from .graphs import (FAMILIES, Graph, GraphError, build_graph, clique_join_coclique, co_clique,
                     generate, join, metrics, to_edge_list, to_graph6)
from .solver import (CLASSICAL, Limits, SearchLimitExceeded, classical_cop_number,
                     hyperopic_cop_number, hyperopic_copwin)
from .strategies import (CATALOG, StrategyInapplicable, make_strategy, playout, transcript_lines,
                         verify_strategy)

OK, FAILED, BAD_INPUT, LIMIT = 0, 1, 2, 3


class BadInput(Exception):
    pass


@dataclass
class RunRecord:
    graph: str
    n: int
    m: int
    metrics: dict
    c: int | None = None
    c_H: int | None = None
    c_H_relation: str = "="
    method: str = "solver"
    rounds_bound: int | None = None
    elapsed: float = 0.0
    limits: dict = field(default_factory=dict)
    limit_hit: str | None = None

    def as_dict(self) -> dict:
        return asdict(self)

    def human(self) -> str:
        parts = [f"{self.graph}: n={self.n} m={self.m}"]
        if self.c is not None:
            parts.append(f"c = {self.c}")
        if self.c_H is not None:
            parts.append(f"c_H {self.c_H_relation} {self.c_H} ({self.method})")
        if self.rounds_bound is not None:
            parts.append(f"rounds <= {self.rounds_bound}")
        if self.limit_hit:
            parts.append(f"LIMIT: {self.limit_hit}")
        parts.append(f"{self.elapsed:.2f}s")
        limits = ", ".join(f"{k}={v}" for k, v in self.limits.items())
        return "  ".join(parts) + f"  [limits: {limits}]"


CSV_HEADER = ["graph", "n", "m", "c", "c_H", "c_H_relation", "method", "rounds_bound",
              "elapsed", "limit_hit"]


# ------------------------------------------------------------------ graph args

def _add_graph_args(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("graph")
    g.add_argument("--family", choices=sorted(FAMILIES), help="generate a graph from a family")
    g.add_argument("--input", help="edge-list or graph6 file ('-' for stdin)")
    g.add_argument("--format", choices=["edgelist", "graph6"], help="input format (sniffed if omitted)")
    for name in ("n", "m", "q", "r", "s"):
        g.add_argument(f"--{name}", type=int)
    g.add_argument("--seed", type=int)
    g.add_argument("--extra", type=float, help="edge probability for random_connected")
    g.add_argument("--edges", help="removed edges for clique_minus_edges, e.g. 0-1,2-3")


def _add_limit_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-positions", type=int, default=Limits.max_positions)
    p.add_argument("--time-budget", type=float, default=Limits.time_budget,
                   help="seconds per solve (default %(default)s)")


def _limits(args) -> Limits:
    return Limits(args.max_positions, args.time_budget)


def _parse_edges(text: str) -> list[tuple[int, int]]:
    try:
        return [tuple(int(x) for x in part.split("-")) for part in text.split(",") if part]
    except ValueError:
        raise BadInput(f"cannot parse edges {text!r}; expected u-v,u-v") from None


def load_graph(args) -> Graph:
    if bool(args.family) == bool(args.input):
        raise BadInput("give exactly one of --family or --input")
    if args.input:
        try:
            text = sys.stdin.read() if args.input == "-" else open(args.input).read()
        except OSError as exc:
            raise BadInput(str(exc)) from None
        return build_graph(text, args.format, path=args.input)
    fn = FAMILIES[args.family]
    accepted = inspect.signature(fn).parameters
    given = {k: getattr(args, k) for k in ("n", "m", "q", "r", "s", "seed", "extra")
             if getattr(args, k, None) is not None}
    if args.edges is not None:
        given["edges"] = _parse_edges(args.edges)
    unknown = set(given) - set(accepted)
    if unknown:
        raise BadInput(f"{args.family} does not take {', '.join(sorted(unknown))}")
    try:
        return generate(args.family, **given)
    except TypeError as exc:
        raise BadInput(f"{args.family}: {exc}") from None


# ------------------------------------------------------------------ commands

def _emit_records(records: list[RunRecord], args, out) -> None:
    if args.json:
        for rec in records:
            out.write(json.dumps(rec.as_dict(), sort_keys=True) + "\n")
    elif args.csv:
        w = csv.DictWriter(out, fieldnames=CSV_HEADER, extrasaction="ignore", lineterminator="\n")
        w.writeheader()
        for rec in records:
            w.writerow(rec.as_dict())
    else:
        for rec in records:
            out.write(rec.human() + "\n")


def cmd_solve(args, out) -> int:
    g = load_graph(args)
    if not g.is_connected():
        raise BadInput("graph is not connected")
    limits = _limits(args)
    rec = RunRecord(g.describe(), g.n, g.m, metrics(g).as_dict(), limits=asdict(limits))
    t = time.perf_counter()
    status = OK
    try:
        if args.k is not None:
            res = hyperopic_copwin(g, args.k, limits)
            rec.method = f"solver (k={args.k} {'wins' if res.cop_win else 'loses'})"
            rec.c_H = args.k
            rec.c_H_relation = "<=" if res.cop_win else ">"
            rec.rounds_bound = res.rounds_bound
        else:
            h = hyperopic_cop_number(g, limits)
            rec.c_H = h
            rec.rounds_bound = hyperopic_copwin(g, h, limits).rounds_bound
        if not args.no_classical:
            rec.c = classical_cop_number(g, limits)
    except SearchLimitExceeded as exc:
        rec.limit_hit = exc.reason
        if exc.lower is not None and rec.c_H is None:
            rec.c_H, rec.c_H_relation, rec.method = exc.lower, ">=", "solver (bracket)"
        status = LIMIT
    rec.elapsed = time.perf_counter() - t
    _emit_records([rec], args, out)
    return status


def _strategy_params(args, g: Graph) -> tuple[Graph, dict]:
    params = {}
    if args.name == "join_isolated":
        if not args.join_coclique:
            raise BadInput("join_isolated needs --join-coclique S (the graph becomes G v co-K_S)")
        params["base"] = g
        g = join(g, co_clique(args.join_coclique))
    if args.name == "dominating_set" and args.k is not None:
        params["k"] = args.k
    if args.name == "lonely_lift" and args.d is not None:
        params["d"] = args.d
    return g, params


def cmd_strategy(args, out) -> int:
    g, params = _strategy_params(args, load_graph(args))
    limits = _limits(args)
    try:
        s = make_strategy(args.name, g, limits=limits, **params)
    except (StrategyInapplicable, ValueError) as exc:
        out.write(f"{args.name}: inapplicable on {g.describe()}: {exc}\n")
        return BAD_INPUT
    visibility = CLASSICAL if args.classical else "hyperopic"
    if args.action == "run":
        out.write(transcript_lines(playout(g, s, args.robber, args.robber_seed,
                                           visibility=visibility)))
        return OK
    v = verify_strategy(g, s, limits, visibility)
    if args.json:
        payload = {"strategy": v.strategy, "graph": g.describe(), "k": v.k, "outcome": v.outcome,
                   "rounds": v.rounds, "explored": v.explored, "reason": v.reason,
                   "witness": [list(c) + [r] for c, r in v.witness],
                   "claim": f"c_H <= {v.k}" if v.captured else None}
        out.write(json.dumps(payload, sort_keys=True) + "\n")
    elif v.captured:
        out.write(f"{args.name} on {g.describe()}: capture with k={v.k} within {v.rounds} rounds "
                  f"({v.explored} positions); certifies c_H <= {v.k}\n")
    else:
        out.write(f"{args.name} on {g.describe()}: ESCAPE ({v.reason}); witness {v.witness}\n")
    return OK if v.captured else FAILED


def cmd_chain(args, out) -> int:
    try:
        target = density.parse_target(args.target)
        chain = density.chain_for(target, args.terms)
    except ValueError as exc:
        raise BadInput(str(exc)) from None
    status = OK
    checks = []
    if args.crosscheck:
        limits = _limits(args)
        for e in chain.elements:
            if e.order > args.crosscheck_max:
                continue
            h = hyperopic_cop_number(clique_join_coclique(e.i, e.j), limits)
            checks.append((e.n, e.i, e.j, h, e.cop_number))
            if h != e.cop_number:
                status = FAILED
    out.write(chain.to_json() + "\n" if args.emit == "json" else chain.to_csv())
    for n, i, j, h, f in checks:
        mark = "ok" if h == f else "MISMATCH"
        print(f"# crosscheck n={n} (i={i}, j={j}): solver c_H = {h}, formula {f} {mark}",
              file=sys.stderr)
    return status


def cmd_verify(args, out) -> int:
    results = acceptance.run_all(set(args.only) if args.only else None,
                                 report=lambda line: out.write(line + "\n"))
    failed = [r for r in results if not r.passed]
    out.write(f"{len(results) - len(failed)}/{len(results)} checks passed\n")
    if any("resource limit" in r.detail for r in failed):
        return LIMIT
    return FAILED if failed else OK


def cmd_gap_search(args, out) -> int:
    limits = _limits(args)
    graphs = acceptance.small_connected_graphs(args.max_n, min_n=4)
    if args.random:
        graphs += acceptance.random_corpus(args.random, args.max_n, args.seed or 0)
    seen = searched = 0
    for g in graphs:
        m = metrics(g)
        if m.diameter is None or m.diameter < 3:
            continue
        searched += 1
        c = classical_cop_number(g, limits)
        h = hyperopic_cop_number(g, limits, start=c)
        if h - c >= 2:
            seen += 1
            out.write(f"gap {h - c}: {to_graph6(g)} c = {c}, c_H = {h}\n")
    out.write(f"searched {searched} graphs with diameter >= 3 (n <= {args.max_n}); "
              f"{seen} with c_H - c = 2 found (absence here proves nothing beyond this range)\n")
    return OK


def cmd_generate(args, out) -> int:
    g = load_graph(args)
    out.write(to_graph6(g) + "\n" if args.out_format == "graph6" else to_edge_list(g))
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hyperopic", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="exact hyperopic (and classical) cop number")
    _add_graph_args(p)
    _add_limit_args(p)
    p.add_argument("--k", type=int, help="only decide whether k cops win")
    p.add_argument("--no-classical", action="store_true", help="skip the classical cop number")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--csv", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("strategy", help="play or verify a catalog strategy")
    p.add_argument("action", choices=["run", "verify"])
    p.add_argument("name", choices=sorted(CATALOG))
    _add_graph_args(p)
    _add_limit_args(p)
    p.add_argument("--robber", choices=["adversarial", "random"], default="adversarial")
    p.add_argument("--robber-seed", type=int, default=0, help="seed for the random robber")
    p.add_argument("--k", type=int, help="cop count for dominating_set")
    p.add_argument("--d", type=int, help="cop count for lonely_lift (default 2)")
    p.add_argument("--join-coclique", type=int, help="for join_isolated: play on G v co-K_S")
    p.add_argument("--classical", action="store_true", help="robber always visible")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_strategy)

    p = sub.add_parser("chain", help="density chain for a target in [0, 1/2]")
    p.add_argument("--target", required=True, help="a/b, a decimal, or " + ", ".join(density.NAMED_TARGETS))
    p.add_argument("--terms", type=int, default=10)
    p.add_argument("--emit", choices=["csv", "json"], default="csv")
    p.add_argument("--crosscheck", action="store_true", help="solve small elements exactly")
    p.add_argument("--crosscheck-max", type=int, default=9, help="largest |V| to solve")
    _add_limit_args(p)
    p.set_defaults(func=cmd_chain)

    p = sub.add_parser("verify-theorems", help="run the acceptance suite")
    p.add_argument("--only", type=int, nargs="+", choices=[c[0] for c in acceptance.CHECKS])
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gap-search", help="look for diameter >= 3 graphs with c_H = c + 2")
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--random", type=int, default=0, help="extra random connected graphs")
    p.add_argument("--seed", type=int)
    _add_limit_args(p)
    p.set_defaults(func=cmd_gap_search)

    p = sub.add_parser("generate", help="emit a family graph")
    _add_graph_args(p)
    p.add_argument("--out-format", choices=["edgelist", "graph6"], default="edgelist")
    p.set_defaults(func=cmd_generate)
    return parser


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return OK if exc.code == 0 else BAD_INPUT
    try:
        return args.func(args, out)
    except (BadInput, GraphError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT
    except SearchLimitExceeded as exc:
        print(f"resource limit: {exc.reason}", file=sys.stderr)
        return LIMIT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
