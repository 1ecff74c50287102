"""Directed multigraphs, bipartite tournaments, and exact arc-set oracles.

Graphs are adjacency matrices of nonnegative arc multiplicities (diagonal
zero).  The exact maximum-acyclic-subgraph oracle runs the shared subset
dynamic program; minimum feedback arc sets come out by complementation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import HasCycle, ParseError, PreconditionViolated, TooManyVertices
from .ordering import best_ordering, check_permutation

# Hard cap for the exact subset oracle; 2^v states get expensive fast.
VERTEX_CAP = 24


def _check_counts(counts: tuple[tuple[int, ...], ...]) -> None:
    v = len(counts)
    for i, row in enumerate(counts):
        if len(row) != v:
            raise ValueError("adjacency matrix must be square")
        for j, x in enumerate(row):
            if not isinstance(x, int) or x < 0:
                raise ValueError("arc multiplicities must be nonnegative ints")
            if i == j and x:
                raise ValueError("self-loops are not allowed")


@dataclass(frozen=True)
class DirectedMultigraph:
    """Vertex set {0..v-1} with adj[u][w] parallel arcs u -> w."""

    v: int
    adj: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.v != len(self.adj):
            raise ValueError("vertex count disagrees with adjacency size")
        _check_counts(self.adj)

    def total(self) -> int:
        return sum(sum(row) for row in self.adj)


def digraph(adj: Iterable[Iterable[int]]) -> DirectedMultigraph:
    rows = tuple(tuple(int(x) for x in r) for r in adj)
    return DirectedMultigraph(len(rows), rows)


@dataclass(frozen=True)
class ArcFamily:
    """A sub-multiset of some host graph's arcs, same matrix layout."""

    counts: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        _check_counts(self.counts)

    def total(self) -> int:
        return sum(sum(row) for row in self.counts)


def arc_family(counts: Iterable[Iterable[int]]) -> ArcFamily:
    return ArcFamily(tuple(tuple(int(x) for x in r) for r in counts))


def family_within(host: DirectedMultigraph, fam: ArcFamily) -> bool:
    if len(fam.counts) != host.v:
        return False
    return all(
        fam.counts[i][j] <= host.adj[i][j]
        for i in range(host.v)
        for j in range(host.v)
    )


@dataclass(frozen=True)
class BipartiteTournament:
    """Complete bipartite orientation: every (u_i, v_j) pair carries one arc.

    orient[i][j] = +1 means u_i -> v_j, -1 means v_j -> u_i.  Sides satisfy
    n >= m >= 1.
    """

    n: int
    m: int
    orient: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if not (self.n >= self.m >= 1):
            raise ValueError("tournament sides must satisfy n >= m >= 1")
        if len(self.orient) != self.n:
            raise ValueError("orientation row count differs from n")
        for row in self.orient:
            if len(row) != self.m:
                raise ValueError("orientation column count differs from m")
            if any(x not in (1, -1) for x in row):
                raise ValueError("orientation entries must be +1 or -1")


def tournament_digraph(t: BipartiteTournament) -> DirectedMultigraph:
    """As a multigraph: vertices 0..n-1 are the u side, n..n+m-1 the v side."""
    v = t.n + t.m
    adj = [[0] * v for _ in range(v)]
    for i in range(t.n):
        for j in range(t.m):
            if t.orient[i][j] == 1:
                adj[i][t.n + j] = 1
            else:
                adj[t.n + j][i] = 1
    return digraph(adj)


def reverse(g: DirectedMultigraph) -> DirectedMultigraph:
    return digraph(tuple(zip(*g.adj)))


# ---------------------------------------------------------------------------
# file formats


def _content_rows(text: str) -> list[list[str]]:
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            rows.append(line.split())
    return rows


def _int_token(tok: str, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"bad {what} token {tok!r}") from None


def parse_graph(text: str) -> DirectedMultigraph:
    """Header line ``v``, then v rows of v nonnegative multiplicities."""
    rows = _content_rows(text)
    if not rows or len(rows[0]) != 1:
        raise ParseError("graph header must be a single vertex count")
    v = _int_token(rows[0][0], "vertex count")
    if v < 0:
        raise ParseError("vertex count must be nonnegative")
    if len(rows) != 1 + v:
        raise ParseError(f"expected {v} adjacency rows, found {len(rows) - 1}")
    adj = []
    for r, row in enumerate(rows[1:]):
        if len(row) != v:
            raise ParseError(f"adjacency row {r + 1} has {len(row)} entries, want {v}")
        entries = [_int_token(x, "multiplicity") for x in row]
        if any(x < 0 for x in entries):
            raise ParseError(f"negative multiplicity in row {r + 1}")
        adj.append(entries)
    for i in range(v):
        if adj[i][i]:
            raise ParseError(f"self-loop at vertex {i + 1}")
    return digraph(adj)


def format_graph(g: DirectedMultigraph) -> str:
    lines = [str(g.v)]
    lines += [" ".join(str(x) for x in row) for row in g.adj]
    return "\n".join(lines) + "\n"


def parse_tournament(text: str) -> BipartiteTournament:
    """Header line ``n m``, then n rows of m orientation tokens (+1/-1)."""
    rows = _content_rows(text)
    if not rows or len(rows[0]) != 2:
        raise ParseError("tournament header must be 'n m'")
    n = _int_token(rows[0][0], "side size")
    m = _int_token(rows[0][1], "side size")
    if not (n >= m >= 1):
        raise ParseError("tournament sides must satisfy n >= m >= 1")
    if len(rows) != 1 + n:
        raise ParseError(f"expected {n} orientation rows, found {len(rows) - 1}")
    orient = []
    for r, row in enumerate(rows[1:]):
        if len(row) != m:
            raise ParseError(f"orientation row {r + 1} has {len(row)} entries, want {m}")
        vals = []
        for tok in row:
            x = _int_token(tok, "orientation")
            if x not in (1, -1):
                raise ParseError(f"orientation entries must be 1 or -1, got {tok!r}")
            vals.append(x)
        orient.append(tuple(vals))
    return BipartiteTournament(n, m, tuple(orient))


def format_tournament(t: BipartiteTournament) -> str:
    lines = [f"{t.n} {t.m}"]
    lines += [" ".join(str(x) for x in row) for row in t.orient]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# basic structure


def _counts_of(g) -> tuple[tuple[int, ...], ...]:
    if isinstance(g, DirectedMultigraph):
        return g.adj
    if isinstance(g, ArcFamily):
        return g.counts
    raise TypeError(f"expected a graph or arc family, got {type(g).__name__}")


def is_acyclic(g) -> bool:
    """Kahn peeling on the support of the multiplicity matrix."""
    adj = _counts_of(g)
    v = len(adj)
    indeg = [sum(adj[u][w] > 0 for u in range(v)) for w in range(v)]
    ready = [w for w in range(v) if indeg[w] == 0]
    seen = 0
    while ready:
        u = ready.pop()
        seen += 1
        for w in range(v):
            if adj[u][w]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    ready.append(w)
    return seen == v


def topological_order(g: DirectedMultigraph) -> tuple[int, ...]:
    """Deterministic topological order: smallest available vertex first."""
    v = g.v
    indeg = [sum(g.adj[u][w] > 0 for u in range(v)) for w in range(v)]
    placed = [False] * v
    order: list[int] = []
    for _ in range(v):
        u = next(
            (w for w in range(v) if not placed[w] and indeg[w] == 0), None
        )
        if u is None:
            raise HasCycle("graph has a directed cycle")
        placed[u] = True
        order.append(u)
        for w in range(v):
            if g.adj[u][w]:
                indeg[w] -= 1
    return tuple(order)


def degree_profile(g: DirectedMultigraph) -> tuple[tuple[int, int], ...]:
    """(indegree, outdegree) with multiplicity, per vertex."""
    cols = list(zip(*g.adj)) if g.v else []
    return tuple((sum(cols[w]), sum(g.adj[w])) for w in range(g.v))


def is_eulerian(g: DirectedMultigraph) -> bool:
    """Balanced degrees everywhere and strongly connected off isolated vertices."""
    deg = degree_profile(g)
    if any(i != o for i, o in deg):
        return False
    live = [w for w in range(g.v) if deg[w][0] + deg[w][1] > 0]
    if not live:
        return True

    def covers(adj) -> bool:
        seen = {live[0]}
        stack = [live[0]]
        while stack:
            u = stack.pop()
            for w in range(g.v):
                if adj[u][w] and w not in seen:
                    seen.add(w)
                    stack.append(w)
        return all(w in seen for w in live)

    return covers(g.adj) and covers(tuple(zip(*g.adj)))


# ---------------------------------------------------------------------------
# exact oracles


def max_acyclic_value(g: DirectedMultigraph) -> tuple[int, tuple[int, ...]]:
    """Maximum number of arcs (with multiplicity) in an acyclic sub-family.

    Returns the count and the lexicographically smallest ordering realizing
    it.  Convention: the ordering counts arcs running from later-ranked to
    earlier-ranked vertices, i.e. the triangular sum of the adjacency matrix
    under the ordering equals the count.
    """
    if g.v > VERTEX_CAP:
        raise TooManyVertices(f"{g.v} vertices exceeds the exact cap {VERTEX_CAP}")
    value, sigma = best_ordering(g.adj)
    return value, sigma


def induced_family(
    g: DirectedMultigraph, sigma: Sequence[int]
) -> ArcFamily:
    """Arcs kept by an ordering: u -> w survives iff u is ranked later than w."""
    check_permutation(sigma, g.v)
    pos = {u: p for p, u in enumerate(sigma)}
    counts = [
        [g.adj[u][w] if pos[u] > pos[w] else 0 for w in range(g.v)]
        for u in range(g.v)
    ]
    return arc_family(counts)


def min_fas(g: DirectedMultigraph) -> tuple[int, ArcFamily]:
    """Minimum feedback arc set by complementing a maximum acyclic family."""
    value, sigma = max_acyclic_value(g)
    kept = induced_family(g, sigma)
    assert kept.total() == value
    fas = arc_family(
        [
            [g.adj[u][w] - kept.counts[u][w] for w in range(g.v)]
            for u in range(g.v)
        ]
    )
    assert fas.total() == g.total() - value
    assert is_acyclic(kept)  # removing the returned set leaves kept arcs only
    return g.total() - value, fas


def reachable_set(
    host: DirectedMultigraph, fam: ArcFamily, start: int
) -> frozenset[int]:
    """Vertices reachable from start using only the family's arcs."""
    if not family_within(host, fam):
        raise PreconditionViolated("arc family is not within the host graph")
    if not 0 <= start < host.v:
        raise ValueError("start vertex out of range")
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in range(host.v):
            if fam.counts[u][w] and w not in seen:
                seen.add(w)
                stack.append(w)
    return frozenset(seen)


def eliminate_extra_vertex(
    host: DirectedMultigraph, fam: ArcFamily, extra: int
) -> ArcFamily:
    """Rewire a maximum acyclic family so the extra vertex has no in-arcs.

    Preconditions (checked): the family lies within the Eulerian host, is
    acyclic, and is maximum.  Writing R for the set of vertices reachable
    from ``extra`` inside the family, the rewiring drops the host arcs that
    enter R and adds every host arc that leaves R.  Degree balance makes the
    exchange size-neutral, so the result is again maximum, now with all of
    the extra vertex's out-arcs present and none of its in-arcs.
    """
    if not 0 <= extra < host.v:
        raise ValueError("extra vertex out of range")
    if not family_within(host, fam):
        raise PreconditionViolated("arc family is not within the host graph")
    if not is_acyclic(fam):
        raise PreconditionViolated("arc family must be acyclic")
    best, _ = max_acyclic_value(host)
    if fam.total() != best:
        raise PreconditionViolated(
            f"family has {fam.total()} arcs but the maximum is {best}"
        )
    if not is_eulerian(host):
        raise PreconditionViolated("host graph must be Eulerian off isolated vertices")

    region = reachable_set(host, fam, extra)
    counts = []
    for u in range(host.v):
        row = []
        for w in range(host.v):
            if u not in region and w in region:
                row.append(0)  # host arcs entering the region are dropped
            elif u in region and w not in region:
                row.append(host.adj[u][w])  # host arcs leaving it are added
            else:
                row.append(fam.counts[u][w])
        counts.append(row)
    out = arc_family(counts)

    assert out.total() == fam.total()
    assert is_acyclic(out)
    assert all(out.counts[u][extra] == 0 for u in range(host.v))
    assert all(out.counts[extra][w] == host.adj[extra][w] for w in range(host.v))
    return out
