"""Exact rational linear algebra.

The math core works exclusively with ``fractions.Fraction``: every result is
exact and every comparison is decidable, so downstream decision procedures
(capacity thresholds, feedback arc counts) never depend on floating point.
Vectors and matrices are immutable tuples and can be shared freely.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ParseError

Vec = tuple[Fraction, ...]
Mat = tuple[Vec, ...]

_RATIONAL = re.compile(r"[+-]?[0-9]+(?:/[0-9]+)?\Z")


def parse_rational(token: str) -> Fraction:
    """Parse ``p`` or ``p/q`` (integer p, positive integer q)."""
    if not _RATIONAL.match(token):
        raise ParseError(f"bad rational token {token!r}")
    num, _, den = token.partition("/")
    if den:
        if int(den) == 0:
            raise ParseError(f"zero denominator in rational {token!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(num))


def format_rational(value: Fraction | int) -> str:
    """Canonical text form: fully reduced, ``/q`` omitted when q = 1."""
    return str(Fraction(value))


def vec(values: Iterable) -> Vec:
    return tuple(Fraction(v) for v in values)


def mat(rows: Iterable[Iterable]) -> Mat:
    out = tuple(vec(r) for r in rows)
    if len({len(r) for r in out}) > 1:
        raise ValueError("ragged matrix")
    return out


def zeros(n: int) -> Vec:
    return (Fraction(0),) * n


def ones(n: int) -> Vec:
    return (Fraction(1),) * n


def basis_vec(i: int, n: int) -> Vec:
    return tuple(Fraction(1) if j == i else Fraction(0) for j in range(n))


def identity(n: int) -> Mat:
    return tuple(basis_vec(i, n) for i in range(n))


def dot(x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
    if len(x) != len(y):
        raise ValueError("dimension mismatch in dot product")
    return sum((a * b for a, b in zip(x, y)), Fraction(0))


def transpose(a: Mat) -> Mat:
    if not a:
        return ()
    return tuple(tuple(row[j] for row in a) for j in range(len(a[0])))


def matmul(a: Mat, b: Mat) -> Mat:
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def _reduce_row(
    row: list[Fraction], echelon: list[tuple[int, list[Fraction]]]
) -> list[Fraction]:
    # echelon rows are sorted by pivot column and zero left of their pivot,
    # so one ascending pass clears every pivot column of the incoming row.
    for p, er in echelon:
        if row[p]:
            factor = row[p] / er[p]
            for j in range(p, len(row)):
                row[j] -= factor * er[j]
    return row


def _leading(row: Sequence[Fraction]) -> int | None:
    for j, x in enumerate(row):
        if x:
            return j
    return None


def select_row_basis(a: Mat) -> tuple[int, ...]:
    """Greedy leftmost row basis.

    Returns the lexicographically smallest index set whose rows are linearly
    independent with cardinality rank(a).
    """
    echelon: list[tuple[int, list[Fraction]]] = []
    picked: list[int] = []
    for idx, row in enumerate(a):
        reduced = _reduce_row(list(row), echelon)
        lead = _leading(reduced)
        if lead is not None:
            picked.append(idx)
            echelon.append((lead, reduced))
            echelon.sort(key=lambda item: item[0])
    return tuple(picked)


def rank(a: Mat) -> int:
    """Rank over the rationals, by exact Gaussian elimination."""
    return len(select_row_basis(a))


def rref(a: Mat) -> tuple[Mat, tuple[int, ...]]:
    """Reduced row echelon form and the pivot columns (exact)."""
    rows = [list(r) for r in a]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot_row = next((i for i in range(r, nrows) if rows[i][col]), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        pv = rows[r][col]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    return tuple(tuple(row) for row in rows), tuple(pivots)


def kernel_basis(a: Mat, ncols: int | None = None) -> list[Vec]:
    """Deterministic basis of the right kernel {x : a @ x = 0}.

    Free coordinates are seeded with 1 in index order, so the result is a
    function of the matrix alone.
    """
    if ncols is None:
        ncols = len(a[0]) if a else 0
    if not a:
        return [basis_vec(i, ncols) for i in range(ncols)]
    reduced, pivots = rref(a)
    out: list[Vec] = []
    for f in (j for j in range(ncols) if j not in pivots):
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for r_idx, p in enumerate(pivots):
            x[p] = -reduced[r_idx][f]
        out.append(tuple(x))
    return out


def solve_unique(a: Mat, b: Sequence[Fraction]) -> Vec | None:
    """Solve a @ x = b; return None unless the solution exists and is unique."""
    if len(a) != len(b):
        raise ValueError("dimension mismatch in linear solve")
    if not a:
        return None
    ncols = len(a[0])
    aug = mat(tuple(row) + (rhs,) for row, rhs in zip(a, b))
    reduced, pivots = rref(aug)
    if ncols in pivots:  # pivot in the right-hand column: inconsistent
        return None
    if len(pivots) < ncols:  # free variables: solution not unique
        return None
    return tuple(reduced[i][ncols] for i in range(ncols))


def _project_out(
    v: Sequence[Fraction], ortho: Sequence[Sequence[Fraction]]
) -> list[Fraction]:
    # the accumulated vectors are mutually orthogonal, so one pass is exact
    out = list(v)
    for u in ortho:
        f = dot(out, u) / dot(u, u)
        if f:
            out = [x - f * y for x, y in zip(out, u)]
    return out


def linf_scale(v: Sequence[Fraction]) -> Vec:
    """Scale so the largest absolute entry is exactly 1."""
    m = max(abs(x) for x in v)
    if m == 0:
        raise ValueError("cannot scale the zero vector")
    return tuple(x / m for x in v)


def orth_complement_basis(
    rows: Sequence[Sequence[Fraction]], ambient_dim: int
) -> list[Vec]:
    """Orthogonal basis of the orthogonal complement of span(rows).

    Deterministic: Gram-Schmidt over the given rows followed by the standard
    basis vectors in index order; every kept direction is rescaled to have
    max-norm exactly 1.  Raises ValueError if the input rows are dependent.
    """
    ortho: list[list[Fraction]] = []
    for r in rows:
        if len(r) != ambient_dim:
            raise ValueError("row length differs from ambient dimension")
        g = _project_out(r, ortho)
        if not any(g):
            raise ValueError("input rows are linearly dependent")
        ortho.append(g)
    out: list[Vec] = []
    for i in range(ambient_dim):
        g = _project_out(basis_vec(i, ambient_dim), ortho)
        if any(g):
            ortho.append(g)
            out.append(linf_scale(g))
    return out
