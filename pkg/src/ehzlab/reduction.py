"""Reduction from feedback arc sets in bipartite tournaments to capacity.

Pipeline: tournament -> sign matrix S -> rank-restoring perturbation S~ ->
facet frame B~ -> simplex P(B~, 1).  The unperturbed weight matrix W is
integer-valued and its nonnegative part M is the adjacency matrix of an
auxiliary Eulerian multigraph; a floor(x + 1/2) bridge recovers the integer
optimum of W from the perturbed capacity, and a closed-form count plus a
witness-ordering walk recover the minimum feedback arc set of the original
tournament together with an explicit certificate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .capacity import (
    CapacityResult,
    WeightMatrix,
    capacity_simplex,
    weight_matrix,
)
from .digraph import (
    ArcFamily,
    BipartiteTournament,
    DirectedMultigraph,
    arc_family,
    digraph,
    eliminate_extra_vertex,
    induced_family,
    is_acyclic,
    tournament_digraph,
)
from .errors import (
    CertificateMismatch,
    LimitExceeded,
    NonIntegerWeight,
    ParityViolation,
    RankNotRestored,
    RoundingIdentityViolated,
)
from .ordering import best_ordering
from .polytope import HPolytope, certify_simplex, hpolytope
from .ratlinalg import (
    Mat,
    Vec,
    ones,
    orth_complement_basis,
    rank,
    select_row_basis,
    zeros,
)

DEFAULT_N_LIMIT = 5  # tournament side cap for the end-to-end solve


@dataclass(frozen=True)
class ReductionBundle:
    """Everything the pipeline derives from one tournament.

    ``W`` comes from the unperturbed frame and is integer-valued; only the
    capacity computation uses the perturbed ``W_tilde``.  ``M`` is the
    auxiliary multigraph on 2n+1 vertices: indices 0..m-1 are the right
    side of the tournament, n..2n-1 the left side (arc directions reversed
    relative to the tournament), m..n-1 padding, 2n the extra vertex.
    """

    tournament: BipartiteTournament
    S: Mat
    epsilon: Fraction
    S_tilde: Mat
    B_tilde: Mat
    W: WeightMatrix
    W_tilde: WeightMatrix
    M: DirectedMultigraph
    total_arcs: int
    delta_const: int
    extra_outdeg: int

    def polytope(self) -> HPolytope:
        return hpolytope(self.B_tilde, ones(len(self.B_tilde)))


@dataclass(frozen=True)
class FasResult:
    """Minimum feedback arc set of a tournament, solved through capacity."""

    count: int
    certificate: ArcFamily
    rounded_max: int
    capacity: CapacityResult
    bundle: ReductionBundle


def build_S(t: BipartiteTournament) -> Mat:
    """Square sign matrix of the tournament: +1/-1 per arc direction in the
    first m columns, zero padding in the remaining columns."""
    return tuple(
        tuple(
            Fraction(t.orient[i][j]) if j < t.m else Fraction(0)
            for j in range(t.n)
        )
        for i in range(t.n)
    )


def default_epsilon(n: int) -> Fraction:
    """Perturbation size 1/n^4, small enough for the rounding bridge."""
    if n < 1:
        raise ValueError("need n >= 1")
    return Fraction(1, n**4)


def perturb(s: Mat, epsilon: Fraction) -> Mat:
    """Restore full rank by shifting each non-basis row into the orthogonal
    complement of the row space.

    Basis rows (lexicographically smallest independent set) stay untouched;
    the i-th non-basis row gains epsilon times the i-th complement direction
    (index order on both sides).  Full rank of the result is guaranteed for
    any epsilon > 0 and asserted.
    """
    if epsilon <= 0:
        raise ValueError("need epsilon > 0")
    n = len(s)
    basis = select_row_basis(s)
    non_basis = [i for i in range(n) if i not in set(basis)]
    if not non_basis:
        return tuple(tuple(row) for row in s)
    directions = orth_complement_basis(tuple(s[i] for i in basis), n)
    assert len(directions) >= len(non_basis)
    rows = [list(row) for row in s]
    for row_idx, direction in zip(non_basis, directions):
        rows[row_idx] = [
            x + epsilon * d for x, d in zip(rows[row_idx], direction)
        ]
    result = tuple(tuple(row) for row in rows)
    if rank(result) != n:
        raise RankNotRestored("perturbed sign matrix is still rank-deficient")
    return result


def build_frame(s: Mat) -> Mat:
    """Facet frame of the simplex: identity block, the given square block,
    and one closing row making all rows sum to zero."""
    n = len(s)
    rows: list[Vec] = []
    for i in range(n):
        rows.append(
            zeros(i) + (Fraction(1),) + zeros(n - i - 1) + zeros(n)
        )
    for i in range(n):
        rows.append(zeros(n) + tuple(s[i]))
    col_sums = tuple(sum(row[j] for row in rows) for j in range(2 * n))
    rows.append(tuple(-x for x in col_sums))
    return tuple(rows)


def build_simplex(s_tilde: Mat) -> HPolytope:
    """Simplex P(B~, 1) over a full-rank square block; certified on exit."""
    p = hpolytope(build_frame(s_tilde), ones(2 * len(s_tilde) + 1))
    certify_simplex(p)  # must succeed by construction
    return p


def build_auxiliary(
    w: WeightMatrix,
) -> tuple[DirectedMultigraph, int, int, int]:
    """Auxiliary multigraph from an integer weight matrix.

    Arc multiplicities are the positive entries of W.  Returns
    (M, delta_const, total_arcs, extra_outdeg) where delta_const equals the
    total arc count (the ordering-independent part of the triangular sum of
    M + M^T) and extra_outdeg counts arcs leaving the last vertex.
    """
    k = w.k
    counts = []
    for i in range(k):
        row = []
        for j in range(k):
            x = w.entries[i][j]
            if x.denominator != 1:
                raise NonIntegerWeight(
                    f"weight entry ({i}, {j}) = {x} is not an integer"
                )
            row.append(max(0, int(x)))
        counts.append(row)
    m = digraph(counts)
    total = m.total()
    extra_outdeg = sum(counts[k - 1]) if k else 0
    return m, total, total, extra_outdeg


def build_bundle(
    t: BipartiteTournament, epsilon: Fraction | None = None
) -> ReductionBundle:
    """Run the construction stages and package the results.

    The capacity-facing simplex uses the perturbed block; the auxiliary
    multigraph uses the unperturbed integer weights.
    """
    s = build_S(t)
    eps = default_epsilon(t.n) if epsilon is None else Fraction(epsilon)
    s_tilde = perturb(s, eps)
    for i in select_row_basis(s):
        assert s_tilde[i] == s[i]
    p = build_simplex(s_tilde)
    w_tilde = weight_matrix(p)
    w = weight_matrix(hpolytope(build_frame(s), ones(2 * t.n + 1)))
    assert w.zero_row_sums and w_tilde.zero_row_sums
    m, delta, total, extra_outdeg = build_auxiliary(w)
    for i in range(w.k):
        for j in range(w.k):
            assert w.entries[i][j] == m.adj[i][j] - m.adj[j][i]
    return ReductionBundle(
        tournament=t,
        S=s,
        epsilon=eps,
        S_tilde=s_tilde,
        B_tilde=p.B,
        W=w,
        W_tilde=w_tilde,
        M=m,
        total_arcs=total,
        delta_const=delta,
        extra_outdeg=extra_outdeg,
    )


def rounding_bridge(x: Fraction) -> int:
    """Nearest integer with ties rounded up: floor(x + 1/2) exactly."""
    return math.floor(Fraction(x) + Fraction(1, 2))


def master_formula(
    total_arcs: int, rounded_max: int, delta_const: int, extra_outdeg: int
) -> int:
    """Feedback arc set count from the four pipeline constants.

    rounded_max + delta_const is twice a maximum acyclic sub-family size,
    hence even; a parity failure means some upstream value is wrong.
    """
    if (rounded_max + delta_const) % 2:
        raise ParityViolation(
            f"rounded max {rounded_max} and constant {delta_const} "
            "have different parity"
        )
    return total_arcs - (rounded_max + delta_const) // 2 - extra_outdeg


def _max_drift(w_tilde: WeightMatrix, w: WeightMatrix) -> Fraction:
    # skewness of the difference makes the max drift also bound the min
    diff = tuple(
        tuple(a - b for a, b in zip(ra, rb))
        for ra, rb in zip(w_tilde.entries, w.entries)
    )
    scale = 1
    for row in diff:
        for x in row:
            scale = scale * x.denominator // math.gcd(scale, x.denominator)
    ints = [[int(x * scale) for x in row] for row in diff]
    value, _ = best_ordering(ints)
    return Fraction(value, scale)


def verify_rounding_identity(bundle: ReductionBundle) -> bool:
    """Whether floor(perturbed order sum + 1/2) recovers the unperturbed
    order sum for every ordering.

    Equivalent to the maximum triangular sum of W~ - W staying below 1/2,
    which the ordering optimizer checks exactly; no sampling is involved.
    """
    return _max_drift(bundle.W_tilde, bundle.W) < Fraction(1, 2)


def _aux_to_tournament_vertex(x: int, n: int, m: int) -> int | None:
    # inverse of the vertex identification; None for padding and extra
    if x < m:
        return n + x
    if n <= x < 2 * n:
        return x - n
    return None


def solve_fas_via_capacity(
    t: BipartiteTournament,
    epsilon: Fraction | None = None,
    prune_cyclic: bool = True,
    n_limit: int = DEFAULT_N_LIMIT,
) -> FasResult:
    """Minimum feedback arc set of a bipartite tournament via capacity.

    Runs the full pipeline, checks the rounding identity, converts the
    capacity back to the integer optimum, applies the closed-form count,
    and walks the capacity witness back through the auxiliary multigraph
    to an explicit arc certificate on the tournament, verified acyclic
    after removal.
    """
    if t.n > n_limit:
        raise LimitExceeded(f"n = {t.n} exceeds solve limit {n_limit}")
    bundle = build_bundle(t, epsilon)
    if not verify_rounding_identity(bundle):
        raise RoundingIdentityViolated(
            f"epsilon = {bundle.epsilon} is too large: some ordering drifts "
            "by 1/2 or more"
        )
    k = 2 * t.n + 1
    cap = capacity_simplex(bundle.polytope(), prune_cyclic=prune_cyclic)
    rounded = rounding_bridge(Fraction(k * k) / (2 * cap.value))
    count = master_formula(
        bundle.total_arcs, rounded, bundle.delta_const, bundle.extra_outdeg
    )

    # the witness maximizes the unperturbed order sum as well (the identity
    # pins every integer sum within 1/2 of its perturbed value), so the
    # family it induces on M is a maximum acyclic one
    fam = induced_family(bundle.M, cap.witness)
    assert 2 * fam.total() == rounded + bundle.delta_const
    if bundle.extra_outdeg == 0:
        shifted = fam  # extra vertex is isolated; nothing to rewire
    else:
        shifted = eliminate_extra_vertex(bundle.M, fam, 2 * t.n)

    d = tournament_digraph(t)
    kept = [[0] * d.v for _ in range(d.v)]
    for x in range(k):
        for y in range(k):
            mult = shifted.counts[x][y]
            if not mult:
                continue
            if x == 2 * t.n:
                continue  # arcs at the extra vertex have no counterpart
            dx = _aux_to_tournament_vertex(x, t.n, t.m)
            dy = _aux_to_tournament_vertex(y, t.n, t.m)
            assert dx is not None and dy is not None
            kept[dy][dx] += mult  # arc directions are reversed in M
    removed = [
        [d.adj[i][j] - kept[i][j] for j in range(d.v)] for i in range(d.v)
    ]
    assert all(x >= 0 for row in removed for x in row)
    certificate = arc_family(removed)
    assert is_acyclic(arc_family(kept))
    if certificate.total() != count:
        raise CertificateMismatch(
            f"certificate size {certificate.total()} differs from "
            f"formula count {count}"
        )
    return FasResult(
        count=count,
        certificate=certificate,
        rounded_max=rounded,
        capacity=cap,
        bundle=bundle,
    )
