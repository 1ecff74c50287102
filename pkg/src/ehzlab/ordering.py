"""Exact optimizer for linear-ordering objectives.

Two problems in this package are the same optimization in disguise: the
maximum acyclic arc family of a multigraph and the inner maximum of the
simplex capacity formula.  Both maximize, over orderings ``sigma`` of
``{0..k-1}``, the triangular sum

    sum_{j < i} weights[sigma[i]][sigma[j]]

where each pair contributes the entry indexed (later element, earlier
element).  ``best_ordering`` solves this by dynamic programming over vertex
subsets in O(2^k * k) time instead of enumerating all k! orderings, and
reconstructs the lexicographically smallest maximizer.  Entries may be ints
or Fractions; callers that care about speed clear denominators first.
"""

from __future__ import annotations

from typing import Sequence

# Full per-row subset-sum tables cost O(2^k * k) memory; above this size we
# fall back to on-demand sums, trading time for bounded memory.
_TABLE_LIMIT = 16


def check_permutation(sigma: Sequence[int], k: int) -> None:
    if len(sigma) != k or sorted(sigma) != list(range(k)):
        raise ValueError(f"not a permutation of range({k}): {tuple(sigma)!r}")


def triangular_sum(weights: Sequence[Sequence], sigma: Sequence[int]):
    """Direct evaluation of the ordering objective (definition, O(k^2))."""
    check_permutation(sigma, len(weights))
    total = 0
    for i in range(len(sigma)):
        wi = weights[sigma[i]]
        for j in range(i):
            total += wi[sigma[j]]
    return total


def best_ordering(
    weights: Sequence[Sequence], fix_last: int | None = None
) -> tuple:
    """Maximize the triangular sum over orderings of {0..k-1}.

    Returns ``(value, sigma)`` where ``sigma`` is the lexicographically
    smallest maximizing ordering.  With ``fix_last`` the search is restricted
    to orderings that place that element last; callers must establish that
    the restriction loses nothing (e.g. cyclic invariance).
    """
    k = len(weights)
    for row in weights:
        if len(row) != k:
            raise ValueError("weight matrix must be square")
    if fix_last is not None and not 0 <= fix_last < k:
        raise ValueError("fix_last out of range")
    if k == 0:
        return 0, ()

    full = (1 << k) - 1
    if k <= _TABLE_LIMIT:
        tables = []
        for u in range(k):
            wu = weights[u]
            t = [0] * (full + 1)
            for m in range(1, full + 1):
                low = m & -m
                t[m] = t[m ^ low] + wu[low.bit_length() - 1]
            tables.append(t)

        def over(u: int, mask: int):
            return tables[u][mask]

    else:

        def over(u: int, mask: int):
            wu = weights[u]
            total = 0
            while mask:
                low = mask & -mask
                mask ^= low
                total += wu[low.bit_length() - 1]
            return total

    # f[T] = best triangular sum attainable arranging exactly the set T
    f = [0] * (full + 1)
    for m in range(1, full + 1):
        best = None
        mm = m
        while mm:
            low = mm & -mm
            mm ^= low
            u = low.bit_length() - 1
            rest = m ^ low
            cand = f[rest] + over(u, rest)  # u placed after all of rest
            if best is None or cand > best:
                best = cand
        f[m] = best

    def internal(mask: int):
        # best arrangement of `mask`, honoring the fix_last restriction
        if fix_last is not None and mask & (1 << fix_last):
            rest = mask ^ (1 << fix_last)
            return f[rest] + over(fix_last, rest)
        return f[mask]

    target = internal(full)

    # lexicographically smallest maximizer: choose the smallest next element
    # that still allows reaching the optimum
    sigma: list[int] = []
    placed = 0
    prefix = 0
    for pos in range(k):
        remaining = full ^ placed
        chosen = None
        rr = remaining
        while rr:
            low = rr & -rr
            rr ^= low
            u = low.bit_length() - 1
            if fix_last is not None and u == fix_last and pos != k - 1:
                continue
            nm = placed | (1 << u)
            rest = full ^ nm
            cross = 0
            cc = rest
            while cc:
                cl = cc & -cc
                cc ^= cl
                cross += over(cl.bit_length() - 1, nm)
            if prefix + over(u, placed) + cross + internal(rest) == target:
                chosen = u
                break
        assert chosen is not None  # the optimum is always completable
        prefix += over(chosen, placed)
        placed |= 1 << chosen
        sigma.append(chosen)
    return target, tuple(sigma)


def cyclic_class(sigma: Sequence[int]) -> tuple[int, ...]:
    """Canonical representative of the cyclic-shift class of an ordering."""
    k = len(sigma)
    if k == 0:
        return ()
    best = None
    for s in range(k):
        rot = tuple(sigma[(s + i) % k] for i in range(k))
        if best is None or rot < best:
            best = rot
    return best
