"""Capacity of convex polytopes via the permutation-multiplier formula.

For P(B, c) with facet normals b_1..b_k, weights W_ij = omega(b_i, b_j)
under the standard symplectic form, and a multiplier beta in Q, the value

    max over orderings sigma of  sum_{j<i} beta_sigma(i) beta_sigma(j) W_sigma(i)sigma(j)

determines the capacity as 1 / (2 * max).  For simplices the multiplier is
unique, the ordering search is exact, and the result is an exact rational.
For general polytopes the search over Q is heuristic and yields an upper
bound on the capacity (a lower bound on the inner maximum is inverted).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (
    InnerMaxNonpositive,
    LimitExceeded,
    NoFeasibleMultiplier,
    NoPositiveValueFound,
)
from .ordering import best_ordering, check_permutation, triangular_sum
from .polytope import (
    HPolytope,
    certify_simplex,
    multiplier_vertices,
)
from .ratlinalg import Mat, Vec, zeros
from .rng import SplitMix64

DEFAULT_FACET_LIMIT = 12  # exact-search cap, overridable per call
DEFAULT_HEURISTIC_BUDGET = 5040  # ordering probes per multiplier candidate


@dataclass(frozen=True)
class WeightMatrix:
    """Pairwise symplectic products of facet normals.

    Skew-symmetric with zero diagonal by construction; ``zero_row_sums``
    records whether the facet normals sum to the zero vector, which makes
    the ordering objective invariant under cyclic shifts.
    """

    entries: Mat
    zero_row_sums: bool

    @property
    def k(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class CapacityResult:
    """Capacity value with the witnessing ordering and multiplier.

    ``value`` is 1/(2 * inner_max); ``exact`` distinguishes the certified
    simplex path from the heuristic upper bound.
    """

    value: Fraction
    inner_max: Fraction
    witness: tuple[int, ...]
    witness_beta: Vec
    exact: bool


def symplectic_form(x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
    """omega(x, y) = sum_i x_i y_{n+i} - x_{n+i} y_i on R^(2n)."""
    if len(x) != len(y):
        raise ValueError("symplectic form needs equal dimensions")
    if len(x) % 2:
        raise ValueError("symplectic form needs even dimension")
    n = len(x) // 2
    return sum(
        (x[i] * y[n + i] - x[n + i] * y[i] for i in range(n)), Fraction(0)
    )


def symplectic_matrix(n: int) -> Mat:
    """The block matrix [[0, I], [-I, 0]] representing the form."""
    rows = []
    for i in range(n):
        rows.append(zeros(n + i) + (Fraction(1),) + zeros(n - i - 1))
    for i in range(n):
        rows.append(
            zeros(i) + (Fraction(-1),) + zeros(n - i - 1) + zeros(n)
        )
    return tuple(rows)


def weight_matrix(p: HPolytope) -> WeightMatrix:
    entries = tuple(
        tuple(symplectic_form(bi, bj) for bj in p.B) for bi in p.B
    )
    col_sums = [sum(row[j] for row in p.B) for j in range(2 * p.n)]
    return WeightMatrix(entries=entries, zero_row_sums=not any(col_sums))


def order_sum(w: WeightMatrix, sigma: Sequence[int]) -> Fraction:
    """Triangular sum of W under sigma: entry (later, earlier) per pair."""
    return Fraction(triangular_sum(w.entries, sigma))


def weighted_order_sum(
    w: WeightMatrix, sigma: Sequence[int], beta: Sequence[Fraction]
) -> Fraction:
    """Order sum with each entry scaled by the multiplier pair product."""
    check_permutation(sigma, w.k)
    if len(beta) != w.k:
        raise ValueError("multiplier length differs from weight size")
    total = Fraction(0)
    for i in range(w.k):
        si = sigma[i]
        row = w.entries[si]
        bi = beta[si]
        for j in range(i):
            total += bi * beta[sigma[j]] * row[sigma[j]]
    return total


def _scaled_int_matrix(entries: Sequence[Sequence[Fraction]]) -> tuple[list[list[int]], int]:
    # clear denominators: the optimizer runs noticeably faster on ints
    scale = 1
    for row in entries:
        for x in row:
            scale = scale * x.denominator // math.gcd(scale, x.denominator)
    ints = [[int(x * scale) for x in row] for row in entries]
    return ints, scale


def max_order_sum(
    w: WeightMatrix, prune_cyclic: bool = False
) -> tuple[Fraction, tuple[int, ...]]:
    """Exact maximum of the order sum over all orderings.

    With ``prune_cyclic`` the search fixes the last element, which is lossless
    exactly when the weight rows sum to zero (cyclic-shift invariance), and
    is rejected otherwise.  Ties break to the lexicographically smallest
    ordering within the searched space.
    """
    if prune_cyclic and not w.zero_row_sums:
        raise ValueError("cyclic pruning requires zero row sums")
    ints, scale = _scaled_int_matrix(w.entries)
    fix_last = w.k - 1 if prune_cyclic and w.k else None
    value, sigma = best_ordering(ints, fix_last=fix_last)
    return Fraction(value, scale), sigma


def capacity_simplex(
    p: HPolytope,
    prune_cyclic: bool = False,
    facet_limit: int = DEFAULT_FACET_LIMIT,
) -> CapacityResult:
    """Exact capacity of a certified simplex.

    The unique multiplier turns the problem into a pure ordering search over
    the weighted matrix, solved exactly.  Raises InnerMaxNonpositive for
    degenerate inputs where no ordering attains a positive objective.
    """
    cert = certify_simplex(p)
    if p.k > facet_limit:
        raise LimitExceeded(f"{p.k} facets exceeds exact-search limit {facet_limit}")
    w = weight_matrix(p)
    if prune_cyclic:
        if not w.zero_row_sums:
            raise ValueError("cyclic pruning requires zero row sums")
        assert len(set(cert.beta)) == 1  # kernel = span(ones) in this case
    beta = cert.beta
    weighted = tuple(
        tuple(beta[i] * beta[j] * w.entries[i][j] for j in range(p.k))
        for i in range(p.k)
    )
    ints, scale = _scaled_int_matrix(weighted)
    fix_last = p.k - 1 if prune_cyclic else None
    value, sigma = best_ordering(ints, fix_last=fix_last)
    inner = Fraction(value, scale)
    if inner <= 0:
        raise InnerMaxNonpositive(
            "no ordering attains a positive objective; capacity undefined here"
        )
    return CapacityResult(
        value=1 / (2 * inner),
        inner_max=inner,
        witness=sigma,
        witness_beta=beta,
        exact=True,
    )


def capacity_at_uniform_multiplier(
    p: HPolytope,
    prune_cyclic: bool = False,
    facet_limit: int = DEFAULT_FACET_LIMIT,
) -> CapacityResult:
    """Capacity formula evaluated at the uniform multiplier 1/k.

    Fallback for frames whose facet normals sum to zero but are rank
    deficient, so the multiplier is feasible without being unique; the
    returned value is an upper bound on the capacity, hence exact=False.
    """
    w = weight_matrix(p)
    if not w.zero_row_sums:
        raise NoFeasibleMultiplier(
            "uniform multiplier needs facet normals summing to zero"
        )
    if sum(p.c) != p.k:
        raise NoFeasibleMultiplier(
            "uniform multiplier needs facet bounds summing to the facet count"
        )
    if p.k > facet_limit:
        raise LimitExceeded(f"{p.k} facets exceeds exact-search limit {facet_limit}")
    max_sum, sigma = max_order_sum(w, prune_cyclic=prune_cyclic)
    inner = max_sum / (p.k * p.k)
    if inner <= 0:
        raise InnerMaxNonpositive(
            "no ordering attains a positive objective; capacity undefined here"
        )
    return CapacityResult(
        value=1 / (2 * inner),
        inner_max=inner,
        witness=sigma,
        witness_beta=tuple(Fraction(1, p.k) for _ in range(p.k)),
        exact=False,
    )


def decide_capacity_leq(p: HPolytope, gamma: Fraction, **kwargs) -> bool:
    """Exact decision: capacity(P) <= gamma."""
    return capacity_simplex(p, **kwargs).value <= gamma


# ---------------------------------------------------------------------------
# heuristic path for general polytopes


def _hill_climb(ints: list[list[int]], sigma: list[int]) -> tuple[int, list[int]]:
    # steepest-ascent over all position swaps, O(k) delta per candidate swap
    k = len(ints)
    value = triangular_sum(ints, sigma)
    while True:
        best_delta = 0
        best_swap = None
        for i in range(k):
            a = sigma[i]
            for j in range(i + 1, k):
                b = sigma[j]
                delta = ints[a][b] - ints[b][a]
                for pmid in range(i + 1, j):
                    w_mid = sigma[pmid]
                    delta += (
                        ints[w_mid][b]
                        + ints[a][w_mid]
                        - ints[w_mid][a]
                        - ints[b][w_mid]
                    )
                if delta > best_delta:
                    best_delta = delta
                    best_swap = (i, j)
        if best_swap is None:
            return value, sigma
        i, j = best_swap
        sigma[i], sigma[j] = sigma[j], sigma[i]
        value += best_delta


def capacity_upper_bound(
    p: HPolytope,
    budget: int = DEFAULT_HEURISTIC_BUDGET,
    seed: int = 0,
    vertex_limit: int | None = None,
) -> CapacityResult:
    """Heuristic upper bound on the capacity of a general polytope.

    Multiplier candidates are the vertices of Q plus all pairwise midpoints;
    for each candidate the ordering is searched exactly when the budget
    covers k!, otherwise by seeded hill climbing over position swaps with
    ``budget`` restarts.  Any candidate value lower-bounds the true inner
    maximum, so the inverted result can only overestimate the capacity.
    """
    from .polytope import DEFAULT_ENUM_LIMIT

    limit = DEFAULT_ENUM_LIMIT if vertex_limit is None else vertex_limit
    verts = multiplier_vertices(p, limit)
    candidates = list(verts)
    for i in range(len(verts)):
        for j in range(i + 1, len(verts)):
            candidates.append(
                tuple((a + b) / 2 for a, b in zip(verts[i], verts[j]))
            )
    k = p.k
    w = weight_matrix(p)
    gen = SplitMix64(seed)
    exhaustive = budget >= math.factorial(k)
    best: tuple[Fraction, tuple[int, ...], Vec] | None = None
    for beta in candidates:
        weighted = tuple(
            tuple(beta[i] * beta[j] * x for j, x in enumerate(row))
            for i, row in enumerate(w.entries)
        )
        ints, scale = _scaled_int_matrix(weighted)
        if exhaustive:
            value, sigma = best_ordering(ints)
        else:
            value, sigma = None, None
            for restart in range(budget):
                start = (
                    list(range(k)) if restart == 0 else gen.shuffled(range(k))
                )
                v, s = _hill_climb(ints, start)
                if value is None or v > value or (v == value and tuple(s) < sigma):
                    value, sigma = v, tuple(s)
        inner = Fraction(value, scale)
        if inner > 0 and (best is None or inner > best[0]):
            best = (inner, tuple(sigma), beta)
    if best is None:
        raise NoPositiveValueFound(
            "no multiplier candidate produced a positive objective"
        )
    inner, sigma, beta = best
    return CapacityResult(
        value=1 / (2 * inner),
        inner_max=inner,
        witness=sigma,
        witness_beta=beta,
        exact=False,
    )
