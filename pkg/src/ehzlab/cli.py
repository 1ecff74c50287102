"""Command-line front end.

Subcommands: capacity, decide, reduce, fas, verify, example.  Exit codes
are a stable contract: 0 success/YES, 1 NO, 2 parse or usage error,
3 solver error, 4 golden or verification mismatch.  All rationals print
reduced as "p" or "p/q"; vertex labels and orderings print 1-based.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .capacity import (
    CapacityResult,
    capacity_at_uniform_multiplier,
    capacity_simplex,
    capacity_upper_bound,
    decide_capacity_leq,
)
from .digraph import (
    BipartiteTournament,
    arc_family,
    digraph,
    eliminate_extra_vertex,
    format_graph,
    format_tournament,
    max_acyclic_value,
    min_fas,
    parse_graph,
    parse_tournament,
    reachable_set,
    tournament_digraph,
)
from .errors import (
    EhzlabError,
    GoldenMismatch,
    NotSimplex,
    ParseError,
    SolverError,
)
from .polytope import format_polytope, parse_polytope
from .ratlinalg import format_rational, parse_rational
from .reduction import (
    build_bundle,
    solve_fas_via_capacity,
    verify_rounding_identity,
)
from .rng import SplitMix64, random_tournament

EXIT_OK = 0
EXIT_NO = 1
EXIT_PARSE = 2
EXIT_SOLVER = 3
EXIT_MISMATCH = 4


@dataclass(frozen=True)
class RunConfig:
    """Parsed invocation: one command plus every knob it may consume."""

    command: str
    path: str | None = None
    gamma: Fraction | None = None
    seed: int = 0
    trials: int = 100
    n: int = 1
    m: int = 1
    threads: int = 1
    epsilon: Fraction | None = None
    mode: str = "auto"
    limit_facets: int | None = None
    prune_cyclic: bool = False
    json_output: bool = False
    out_polytope: str | None = None
    out_graph: str | None = None


def _rational_arg(token: str) -> Fraction:
    try:
        return parse_rational(token)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _seed_arg(token: str) -> int:
    try:
        value = int(token)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad seed {token!r}") from exc
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return value


def _positive_arg(token: str) -> int:
    try:
        value = int(token)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad count {token!r}") from exc
    if value < 1:
        raise argparse.ArgumentTypeError("count must be at least 1")
    return value


def _default_threads() -> int:
    raw = os.environ.get("EHZLAB_THREADS", "").strip()
    if not raw:
        return 1
    try:
        value = int(raw)
    except ValueError as exc:
        raise ParseError(f"bad EHZLAB_THREADS value {raw!r}") from exc
    if value < 1:
        raise ParseError("EHZLAB_THREADS must be at least 1")
    return value


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ehzlab",
        description=(
            "Exact capacity of convex polytopes, feedback arc sets of "
            "bipartite tournaments, and the reduction connecting them."
        ),
    )
    sub = ap.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add_json(p):
        p.add_argument("--json", action="store_true", help="machine-readable output")

    cap = sub.add_parser("capacity", help="capacity of a polytope file")
    cap.add_argument("path", help="polytope file (facet rows + bound row)")
    cap.add_argument(
        "--mode",
        choices=("auto", "exact", "heuristic"),
        default="auto",
        help="exact simplex search, heuristic bound, or dispatch on shape",
    )
    cap.add_argument("--prune-cyclic", action="store_true")
    cap.add_argument("--limit-facets", type=_positive_arg, default=None)
    cap.add_argument("--seed", type=_seed_arg, default=0)
    add_json(cap)

    dec = sub.add_parser("decide", help="is the capacity at most gamma?")
    dec.add_argument("path", help="polytope file")
    dec.add_argument("--gamma", type=_rational_arg, required=True)
    dec.add_argument("--prune-cyclic", action="store_true")
    dec.add_argument("--limit-facets", type=_positive_arg, default=None)
    add_json(dec)

    red = sub.add_parser("reduce", help="tournament -> simplex + auxiliary graph")
    red.add_argument("path", help="tournament file")
    red.add_argument("--epsilon", type=_rational_arg, default=None)
    red.add_argument("--out-polytope", default=None, help="write the simplex here")
    red.add_argument("--out-graph", default=None, help="write the auxiliary graph here")
    add_json(red)

    fas = sub.add_parser("fas", help="minimum feedback arc set of a graph file")
    fas.add_argument("path", help="graph file (vertex count + arc-count matrix)")
    add_json(fas)

    ver = sub.add_parser("verify", help="random end-to-end agreement check")
    ver.add_argument("--n", type=_positive_arg, required=True)
    ver.add_argument("--m", type=_positive_arg, required=True)
    ver.add_argument("--trials", type=_positive_arg, default=100)
    ver.add_argument("--seed", type=_seed_arg, default=0)
    ver.add_argument("--threads", type=_positive_arg, default=None)
    ver.add_argument("--epsilon", type=_rational_arg, default=None)
    ver.add_argument("--prune-cyclic", action="store_true")
    add_json(ver)

    exa = sub.add_parser(
        "example", help="run the built-in worked example against golden data"
    )
    exa.add_argument("--epsilon", type=_rational_arg, default=None)
    add_json(exa)

    return ap


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    threads = getattr(args, "threads", None)
    return RunConfig(
        command=args.command,
        path=getattr(args, "path", None),
        gamma=getattr(args, "gamma", None),
        seed=getattr(args, "seed", 0),
        trials=getattr(args, "trials", 100),
        n=getattr(args, "n", 1),
        m=getattr(args, "m", 1),
        threads=_default_threads() if threads is None else threads,
        epsilon=getattr(args, "epsilon", None),
        mode=getattr(args, "mode", "auto"),
        limit_facets=getattr(args, "limit_facets", None),
        prune_cyclic=getattr(args, "prune_cyclic", False),
        json_output=getattr(args, "json", False),
        out_polytope=getattr(args, "out_polytope", None),
        out_graph=getattr(args, "out_graph", None),
    )


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def _warn(message: str) -> None:
    print(f"warning: {message}", file=sys.stderr)


def _perm_1based(sigma) -> str:
    return " ".join(str(i + 1) for i in sigma)


def _rat_list(values) -> str:
    return " ".join(format_rational(x) for x in values)


def _emit(data: dict, lines: list[str], json_output: bool) -> None:
    if json_output:
        print(json.dumps(data, sort_keys=True))
    else:
        for line in lines:
            print(line)


def _capacity_payload(kind: str, result: CapacityResult) -> tuple[dict, list[str]]:
    data = {
        "kind": kind,
        "inner_max": format_rational(result.inner_max),
        "capacity": format_rational(result.value),
        "witness": [i + 1 for i in result.witness],
        "beta": [format_rational(b) for b in result.witness_beta],
        "exact": result.exact,
    }
    lines = [
        f"kind = {kind}",
        f"inner_max = {format_rational(result.inner_max)}",
        f"capacity = {format_rational(result.value)}",
        f"witness = {_perm_1based(result.witness)}",
        f"beta = {_rat_list(result.witness_beta)}",
        f"exact = {'true' if result.exact else 'false'}",
    ]
    return data, lines


def cmd_capacity(cfg: RunConfig) -> int:
    p = parse_polytope(_read(cfg.path))
    limit_kwargs = {}
    if cfg.limit_facets is not None:
        limit_kwargs["facet_limit"] = cfg.limit_facets
    if cfg.mode == "exact":
        result = capacity_simplex(p, prune_cyclic=cfg.prune_cyclic, **limit_kwargs)
        kind = "simplex"
    elif cfg.mode == "heuristic":
        result = _heuristic(p, cfg)
        kind = "heuristic"
    elif p.k == 2 * p.n + 1:
        try:
            result = capacity_simplex(
                p, prune_cyclic=cfg.prune_cyclic, **limit_kwargs
            )
            kind = "simplex"
        except NotSimplex:
            _warn(
                "frame is rank-deficient; reporting the uniform-multiplier "
                "value, an upper bound on the capacity"
            )
            result = capacity_at_uniform_multiplier(
                p, prune_cyclic=cfg.prune_cyclic, **limit_kwargs
            )
            kind = "uniform"
    else:
        _warn("not a simplex; reporting a heuristic upper bound")
        result = _heuristic(p, cfg)
        kind = "heuristic"
    data, lines = _capacity_payload(kind, result)
    _emit(data, lines, cfg.json_output)
    return EXIT_OK


def _heuristic(p, cfg: RunConfig) -> CapacityResult:
    kwargs = {}
    if cfg.limit_facets is not None:
        kwargs["vertex_limit"] = cfg.limit_facets
    return capacity_upper_bound(p, seed=cfg.seed, **kwargs)


def cmd_decide(cfg: RunConfig) -> int:
    p = parse_polytope(_read(cfg.path))
    kwargs = {"prune_cyclic": cfg.prune_cyclic}
    if cfg.limit_facets is not None:
        kwargs["facet_limit"] = cfg.limit_facets
    answer = decide_capacity_leq(p, cfg.gamma, **kwargs)
    _emit(
        {"answer": "YES" if answer else "NO"},
        ["YES" if answer else "NO"],
        cfg.json_output,
    )
    return EXIT_OK if answer else EXIT_NO


def cmd_reduce(cfg: RunConfig) -> int:
    t = parse_tournament(_read(cfg.path))
    bundle = build_bundle(t, cfg.epsilon)
    polytope_text = format_polytope(bundle.polytope())
    graph_text = format_graph(bundle.M)
    constants = [
        f"total_arcs = {bundle.total_arcs}",
        f"delta = {bundle.delta_const}",
        f"extra_outdeg = {bundle.extra_outdeg}",
        f"epsilon = {format_rational(bundle.epsilon)}",
    ]
    lines: list[str] = []
    if cfg.out_polytope is not None:
        Path(cfg.out_polytope).write_text(polytope_text, encoding="utf-8")
    else:
        lines.append("# simplex")
        lines.extend(polytope_text.splitlines())
    if cfg.out_graph is not None:
        Path(cfg.out_graph).write_text(graph_text, encoding="utf-8")
    else:
        lines.append("# auxiliary graph")
        lines.extend(graph_text.splitlines())
    lines.extend(constants)
    data = {
        "total_arcs": bundle.total_arcs,
        "delta": bundle.delta_const,
        "extra_outdeg": bundle.extra_outdeg,
        "epsilon": format_rational(bundle.epsilon),
        "polytope": polytope_text,
        "graph": graph_text,
    }
    _emit(data, lines, cfg.json_output)
    return EXIT_OK


def cmd_fas(cfg: RunConfig) -> int:
    g = parse_graph(_read(cfg.path))
    count, certificate = min_fas(g)
    cert_text = format_graph(digraph(certificate.counts))
    lines = [f"count = {count}", "certificate:"]
    lines.extend(cert_text.splitlines())
    data = {"count": count, "certificate": [list(r) for r in certificate.counts]}
    _emit(data, lines, cfg.json_output)
    return EXIT_OK


def _verify_one(task: tuple[int, int, int, Fraction | None, bool]):
    n, m, seed, epsilon, prune = task
    t = random_tournament(n, m, seed)
    got = solve_fas_via_capacity(t, epsilon=epsilon, prune_cyclic=prune)
    want, _ = min_fas(tournament_digraph(t))
    return t, seed, got.count, want


def cmd_verify(cfg: RunConfig) -> int:
    if cfg.m > cfg.n:
        raise ParseError("need n >= m")
    if cfg.n > 5:
        raise ParseError("verify supports n <= 5")
    stream = SplitMix64(cfg.seed)
    tasks = [
        (cfg.n, cfg.m, stream.next_u64(), cfg.epsilon, cfg.prune_cyclic)
        for _ in range(cfg.trials)
    ]
    if cfg.threads > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            results = list(pool.map(_verify_one, tasks))
    else:
        results = [_verify_one(task) for task in tasks]
    lines = [f"seed = {cfg.seed}", f"n = {cfg.n}, m = {cfg.m}"]
    disagreements = []
    for index, (t, seed, got, want) in enumerate(results):
        if got != want:
            disagreements.append(
                {"trial": index, "seed": seed, "pipeline": got, "oracle": want,
                 "tournament": format_tournament(t)}
            )
            lines.append(f"disagree at trial {index} (seed {seed}):")
            lines.extend(format_tournament(t).splitlines())
            lines.append(f"pipeline = {got}, oracle = {want}")
    agree = cfg.trials - len(disagreements)
    lines.append(f"{agree}/{cfg.trials} agree")
    data = {
        "seed": cfg.seed,
        "n": cfg.n,
        "m": cfg.m,
        "trials": cfg.trials,
        "agree": agree,
        "disagreements": disagreements,
    }
    _emit(data, lines, cfg.json_output)
    return EXIT_OK if agree == cfg.trials else EXIT_MISMATCH


# golden data for the built-in worked example: a 3x2 tournament whose
# pipeline constants, auxiliary graph, and optimum are all known
_EXAMPLE_ORIENT = ((1, -1), (-1, 1), (1, 1))
_EXAMPLE_S = ((1, -1, 0), (-1, 1, 0), (1, 1, 0))
_EXAMPLE_M = (
    (0, 0, 0, 1, 0, 1, 0),
    (0, 0, 0, 0, 1, 1, 0),
    (0, 0, 0, 0, 0, 0, 0),
    (0, 1, 0, 0, 0, 0, 0),
    (1, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 2),
    (1, 1, 0, 0, 0, 0, 0),
)
_EXAMPLE_FAMILY = (
    (0, 0, 0, 0, 0, 1, 0),
    (0, 0, 0, 0, 1, 1, 0),
    (0, 0, 0, 0, 0, 0, 0),
    (0, 1, 0, 0, 0, 0, 0),
    (1, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 2),
    (0, 0, 0, 0, 0, 0, 0),
)
_EXAMPLE_GOLDEN = {
    "total_arcs": 10,
    "delta": 10,
    "extra_outdeg": 2,
    "max_acyclic": 7,
    "region": (6,),
    "removed": (((5, 6), 2),),
    "added": (((6, 0), 1), ((6, 1), 1)),
    "rounded_max": 4,
    "fas_count": 1,
}


def _arc_diff(before, after) -> tuple[tuple[tuple[int, int], int], ...]:
    out = []
    for u, row in enumerate(before):
        for w, x in enumerate(row):
            if x > after[u][w]:
                out.append(((u, w), x - after[u][w]))
    return tuple(out)


def _format_arcs(arcs) -> str:
    return " ".join(f"{u + 1}->{w + 1} x{mult}" for (u, w), mult in arcs)


def cmd_example(cfg: RunConfig) -> int:
    t = BipartiteTournament(n=3, m=2, orient=_EXAMPLE_ORIENT)
    bundle = build_bundle(t, cfg.epsilon)
    checks: list[tuple[str, object, object]] = []

    s_int = tuple(tuple(int(x) for x in row) for row in bundle.S)
    checks.append(("S", s_int, _EXAMPLE_S))
    checks.append(("M", bundle.M.adj, _EXAMPLE_M))
    checks.append(("total_arcs", bundle.total_arcs, _EXAMPLE_GOLDEN["total_arcs"]))
    checks.append(("delta", bundle.delta_const, _EXAMPLE_GOLDEN["delta"]))
    checks.append(
        ("extra_outdeg", bundle.extra_outdeg, _EXAMPLE_GOLDEN["extra_outdeg"])
    )

    identity_ok = verify_rounding_identity(bundle)
    checks.append(("rounding_identity", identity_ok, True))

    maxacyc, _ = max_acyclic_value(bundle.M)
    checks.append(("max_acyclic", maxacyc, _EXAMPLE_GOLDEN["max_acyclic"]))

    fam = arc_family(_EXAMPLE_FAMILY)
    region = reachable_set(bundle.M, fam, 6)
    shifted = eliminate_extra_vertex(bundle.M, fam, 6)
    removed = _arc_diff(fam.counts, shifted.counts)
    added = _arc_diff(shifted.counts, fam.counts)
    checks.append(("region", tuple(sorted(region)), _EXAMPLE_GOLDEN["region"]))
    checks.append(("removed", removed, _EXAMPLE_GOLDEN["removed"]))
    checks.append(("added", added, _EXAMPLE_GOLDEN["added"]))

    rounded = None
    count = None
    if identity_ok:
        result = solve_fas_via_capacity(t, epsilon=cfg.epsilon)
        rounded = result.rounded_max
        count = result.count
        checks.append(("rounded_max", rounded, _EXAMPLE_GOLDEN["rounded_max"]))
        checks.append(("fas_count", count, _EXAMPLE_GOLDEN["fas_count"]))

    failures = [name for name, got, want in checks if got != want]
    lines = ["S:"]
    lines.extend(" ".join(str(x) for x in row) for row in s_int)
    lines.append("M:")
    lines.extend(" ".join(str(x) for x in row) for row in bundle.M.adj)
    lines.append(f"max_acyclic = {maxacyc}")
    lines.append(f"region = {' '.join(str(v + 1) for v in sorted(region))}")
    lines.append(f"removed = {_format_arcs(removed)}")
    lines.append(f"added = {_format_arcs(added)}")
    lines.append(f"total_arcs = {bundle.total_arcs}")
    lines.append(f"delta = {bundle.delta_const}")
    lines.append(f"extra_outdeg = {bundle.extra_outdeg}")
    lines.append(f"rounding_identity = {'true' if identity_ok else 'false'}")
    if rounded is not None:
        lines.append(f"rounded_max = {rounded}")
        lines.append(f"fas_count = {count}")
    lines.append(f"golden = {'PASS' if not failures else 'FAIL'}")
    data = {
        "S": [list(r) for r in s_int],
        "M": [list(r) for r in bundle.M.adj],
        "max_acyclic": maxacyc,
        "region": [v + 1 for v in sorted(region)],
        "removed": [[u + 1, w + 1, mult] for (u, w), mult in removed],
        "added": [[u + 1, w + 1, mult] for (u, w), mult in added],
        "total_arcs": bundle.total_arcs,
        "delta": bundle.delta_const,
        "extra_outdeg": bundle.extra_outdeg,
        "rounding_identity": identity_ok,
        "rounded_max": rounded,
        "fas_count": count,
        "golden": "PASS" if not failures else "FAIL",
        "failures": failures,
    }
    _emit(data, lines, cfg.json_output)
    if failures:
        raise GoldenMismatch(f"example deviates from golden data: {failures}")
    return EXIT_OK


_HANDLERS = {
    "capacity": cmd_capacity,
    "decide": cmd_decide,
    "reduce": cmd_reduce,
    "fas": cmd_fas,
    "verify": cmd_verify,
    "example": cmd_example,
}


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = _config_from_args(args)
        return _HANDLERS[cfg.command](cfg)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except GoldenMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except (EhzlabError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
