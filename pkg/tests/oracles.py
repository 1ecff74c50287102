"""Brute-force oracles that pin the fast implementations.

Everything here is deliberately naive: full permutation enumeration, full
subset enumeration, and textbook matrix products.  Slow but independent.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from ehzlab.capacity import symplectic_matrix
from ehzlab.ratlinalg import mat, matmul, transpose


def brute_max_triangular(weights):
    """Maximum triangular sum over every ordering, lex-smallest witness."""
    k = len(weights)
    best = None
    best_sigma = None
    for sigma in itertools.permutations(range(k)):
        total = 0
        for i in range(k):
            wrow = weights[sigma[i]]
            for j in range(i):
                total += wrow[sigma[j]]
        if best is None or total > best:
            best, best_sigma = total, sigma
    return best, best_sigma


def _support_pairs(counts):
    return [
        (u, w)
        for u, row in enumerate(counts)
        for w, x in enumerate(row)
        if x
    ]


def _subset_acyclic(v: int, arcs) -> bool:
    # Kahn peeling on the chosen support
    indeg = [0] * v
    out = [[] for _ in range(v)]
    for u, w in arcs:
        out[u].append(w)
        indeg[w] += 1
    queue = [u for u in range(v) if indeg[u] == 0]
    seen = 0
    while queue:
        u = queue.pop()
        seen += 1
        for w in out[u]:
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    return seen == v


def brute_min_fas_by_subsets(counts) -> int:
    """Minimum feedback arc set size by keeping every acyclic support subset.

    Copies of a parallel arc lie on exactly the same circuits, so an optimal
    solution keeps either all or none of them; enumerating supports is
    enough.  Exponential in the number of distinct arcs.
    """
    v = len(counts)
    pairs = _support_pairs(counts)
    assert len(pairs) <= 20, "oracle limited to 2^20 subsets"
    total = sum(counts[u][w] for u, w in pairs)
    best_kept = 0
    for mask in range(1 << len(pairs)):
        chosen = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
        if not _subset_acyclic(v, chosen):
            continue
        kept = sum(counts[u][w] for u, w in chosen)
        best_kept = max(best_kept, kept)
    return total - best_kept


def brute_min_fas_by_orderings(counts) -> int:
    """Minimum feedback arc set size via the best-ordering formulation."""
    total = sum(map(sum, counts))
    kept, _ = brute_max_triangular(counts)
    return total - kept


def brute_weight_matrix(b_rows):
    """Pairwise symplectic products as an explicit triple matrix product."""
    b = mat(b_rows)
    n = len(b[0]) // 2
    return matmul(b, matmul(symplectic_matrix(n), transpose(b)))


def all_order_sums(weights):
    """(sigma, triangular sum) for every ordering; k! entries."""
    k = len(weights)
    out = []
    for sigma in itertools.permutations(range(k)):
        total = Fraction(0)
        for i in range(k):
            wrow = weights[sigma[i]]
            for j in range(i):
                total += wrow[sigma[j]]
        out.append((sigma, total))
    return out
