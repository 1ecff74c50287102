"""H-polytopes {x : Bx <= c} in even dimension and their multiplier polytopes.

The multiplier polytope of P(B, c) is

    Q = { beta >= 0 : beta^T B = 0, beta^T c = 1 }

whose points weight the facet normals in the capacity objective.  A simplex
(2n+1 facets, rank 2n) has a unique multiplier; general polytopes get their
multiplier vertices enumerated exactly over small supports.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .errors import (
    EmptyFeasibleSet,
    LimitExceeded,
    NoFeasibleMultiplier,
    NotSimplex,
    ParseError,
)
from .ratlinalg import (
    Mat,
    Vec,
    dot,
    format_rational,
    kernel_basis,
    mat,
    parse_rational,
    rank,
    solve_unique,
    transpose,
    vec,
)

DEFAULT_ENUM_LIMIT = 16  # facet cap for exact multiplier-vertex enumeration


@dataclass(frozen=True)
class HPolytope:
    """Facet description Bx <= c with 2n columns and k >= 2n+1 rows."""

    B: Mat
    c: Vec
    n: int
    k: int

    def __post_init__(self) -> None:
        if not self.B:
            raise ValueError("polytope needs at least one facet")
        cols = len(self.B[0])
        if cols == 0 or cols % 2:
            raise ValueError("ambient dimension must be even and positive")
        if self.n != cols // 2 or self.k != len(self.B):
            raise ValueError("inconsistent polytope dimensions")
        if len(self.c) != self.k:
            raise ValueError("right-hand side length differs from facet count")
        if self.k < 2 * self.n + 1:
            raise ValueError("too few facets to bound an even-dimensional body")


def hpolytope(b_rows: Iterable[Iterable], c: Iterable) -> HPolytope:
    b = mat(b_rows)
    cv = vec(c)
    cols = len(b[0]) if b else 0
    return HPolytope(b, cv, cols // 2, len(b))


@dataclass(frozen=True)
class SimplexCertificate:
    """Witness that P(B, c) has simplex combinatorics.

    ``kernel_generator`` spans the left kernel of B; ``beta`` is the unique
    nonnegative scaling with beta^T c = 1.
    """

    kernel_generator: Vec
    beta: Vec


# ---------------------------------------------------------------------------
# file format


def parse_polytope(text: str) -> HPolytope:
    """Header ``k 2n``, k facet rows of 2n rationals, final row of k rationals."""
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            rows.append(line.split())
    if not rows or len(rows[0]) != 2:
        raise ParseError("polytope header must be 'k 2n'")
    try:
        k, d = int(rows[0][0]), int(rows[0][1])
    except ValueError:
        raise ParseError(f"bad polytope header {' '.join(rows[0])!r}") from None
    if d <= 0 or d % 2:
        raise ParseError(f"ambient dimension {d} must be even and positive")
    if k < d + 1:
        raise ParseError(f"{k} facets cannot bound a body in dimension {d}")
    if len(rows) != 1 + k + 1:
        raise ParseError(f"expected {k} facet rows plus one bound row")
    b_rows = []
    for r, row in enumerate(rows[1 : 1 + k]):
        if len(row) != d:
            raise ParseError(f"facet row {r + 1} has {len(row)} entries, want {d}")
        b_rows.append([parse_rational(tok) for tok in row])
    if len(rows[1 + k]) != k:
        raise ParseError(f"bound row has {len(rows[1 + k])} entries, want {k}")
    c = [parse_rational(tok) for tok in rows[1 + k]]
    return hpolytope(b_rows, c)


def format_polytope(p: HPolytope) -> str:
    lines = [f"{p.k} {2 * p.n}"]
    lines += [" ".join(format_rational(x) for x in row) for row in p.B]
    lines.append(" ".join(format_rational(x) for x in p.c))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# simplex certification


def certify_simplex(p: HPolytope) -> SimplexCertificate:
    """Certify k = 2n+1 facets with rank-2n frame and a nonnegative multiplier.

    The left kernel of B is then one-dimensional; the certificate scales its
    generator to the unique beta >= 0 with beta^T c = 1.
    """
    if p.k != 2 * p.n + 1:
        raise NotSimplex(f"simplex needs {2 * p.n + 1} facets, got {p.k}")
    if rank(p.B) != 2 * p.n:
        raise NotSimplex(f"facet matrix rank {rank(p.B)} != {2 * p.n}")
    kernel = kernel_basis(transpose(p.B))
    assert len(kernel) == 1  # k - rank = 1
    gen = kernel[0]
    if any(x > 0 for x in gen) and any(x < 0 for x in gen):
        raise NoFeasibleMultiplier("kernel direction has mixed signs")
    if all(x <= 0 for x in gen):
        gen = tuple(-x for x in gen)
    scale = dot(gen, p.c)
    if scale <= 0:
        raise NoFeasibleMultiplier("kernel direction has nonpositive pairing with c")
    beta = tuple(x / scale for x in gen)
    return SimplexCertificate(kernel_generator=gen, beta=beta)


# ---------------------------------------------------------------------------
# multiplier polytope vertices


def _equality_system(p: HPolytope) -> tuple[Mat, Vec]:
    # rows: B^T beta = 0 (2n equations) and c^T beta = 1
    a = transpose(p.B) + (p.c,)
    rhs = tuple([Fraction(0)] * (2 * p.n) + [Fraction(1)])
    return a, rhs


def multiplier_vertices(
    p: HPolytope, limit: int = DEFAULT_ENUM_LIMIT
) -> tuple[Vec, ...]:
    """All vertices of the multiplier polytope Q, exactly.

    Vertices are basic feasible solutions, so their supports have at most
    2n+1 elements; enumerating supports of that size finds every vertex.
    Results are deduplicated and ordered lexicographically by support.
    """
    if p.k > limit:
        raise LimitExceeded(f"{p.k} facets exceeds enumeration limit {limit}")
    a, rhs = _equality_system(p)
    found: dict[Vec, tuple[int, ...]] = {}
    for size in range(1, min(p.k, 2 * p.n + 1) + 1):
        for support in combinations(range(p.k), size):
            sub = tuple(tuple(row[i] for i in support) for row in a)
            x = solve_unique(sub, rhs)
            if x is None or any(v < 0 for v in x):
                continue
            beta = [Fraction(0)] * p.k
            for i, v in zip(support, x):
                beta[i] = v
            bt = tuple(beta)
            if bt not in found:
                found[bt] = tuple(i for i in range(p.k) if bt[i] > 0)
    if not found:
        raise EmptyFeasibleSet("multiplier polytope is empty")
    return tuple(sorted(found, key=found.__getitem__))


def is_bounded_certified(p: HPolytope, limit: int = DEFAULT_ENUM_LIMIT) -> bool:
    """True iff every facet index appears in some multiplier vertex support.

    The facet normals then positively span the ambient space, which certifies
    boundedness of P(B, c).
    """
    try:
        verts = multiplier_vertices(p, limit)
    except EmptyFeasibleSet:
        return False
    covered = set()
    for beta in verts:
        covered.update(i for i, x in enumerate(beta) if x > 0)
    return covered == set(range(p.k))


def check_multiplier(p: HPolytope, beta: Sequence[Fraction]) -> None:
    """Assert the defining equations of a multiplier vector, exactly."""
    if len(beta) != p.k:
        raise ValueError("multiplier length differs from facet count")
    if any(x < 0 for x in beta):
        raise ValueError("multiplier must be nonnegative")
    if dot(beta, p.c) != 1:
        raise ValueError("multiplier fails beta^T c = 1")
    for col in transpose(p.B):
        if dot(beta, col) != 0:
            raise ValueError("multiplier fails beta^T B = 0")
