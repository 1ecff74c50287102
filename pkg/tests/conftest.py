import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # makes oracles importable

from ehzlab.digraph import BipartiteTournament
from ehzlab.polytope import hpolytope
from ehzlab.reduction import build_bundle

# the running example: a 3x2 tournament with one 4-cycle through the
# top-left 2x2 block and a dominating third row
EXAMPLE_ORIENT = ((1, -1), (-1, 1), (1, 1))

EXAMPLE_W = (
    (0, 0, 0, 1, -1, 1, -1),
    (0, 0, 0, -1, 1, 1, -1),
    (0, 0, 0, 0, 0, 0, 0),
    (-1, 1, 0, 0, 0, 0, 0),
    (1, -1, 0, 0, 0, 0, 0),
    (-1, -1, 0, 0, 0, 0, 2),
    (1, 1, 0, 0, 0, -2, 0),
)

EXAMPLE_M = (
    (0, 0, 0, 1, 0, 1, 0),
    (0, 0, 0, 0, 1, 1, 0),
    (0, 0, 0, 0, 0, 0, 0),
    (0, 1, 0, 0, 0, 0, 0),
    (1, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 2),
    (1, 1, 0, 0, 0, 0, 0),
)

# a known maximum acyclic arc family of the auxiliary graph, used to
# exercise the extra-vertex elimination on a family with in-arcs there
EXAMPLE_FAMILY = (
    (0, 0, 0, 0, 0, 1, 0),
    (0, 0, 0, 0, 1, 1, 0),
    (0, 0, 0, 0, 0, 0, 0),
    (0, 1, 0, 0, 0, 0, 0),
    (1, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 2),
    (0, 0, 0, 0, 0, 0, 0),
)


@pytest.fixture(scope="session")
def example_tournament():
    return BipartiteTournament(n=3, m=2, orient=EXAMPLE_ORIENT)


@pytest.fixture(scope="session")
def example_bundle(example_tournament):
    return build_bundle(example_tournament)


@pytest.fixture(scope="session")
def triangle():
    return hpolytope(((1, 0), (0, 1), (-1, -1)), (1, 1, 1))


@pytest.fixture()
def write_file(tmp_path):
    def _write(name: str, text: str) -> str:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    return _write


def frac_rows(rows):
    return tuple(tuple(Fraction(x) for x in row) for row in rows)
