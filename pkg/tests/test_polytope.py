from fractions import Fraction

import pytest

from ehzlab.errors import (
    EmptyFeasibleSet,
    LimitExceeded,
    NoFeasibleMultiplier,
    NotSimplex,
    ParseError,
)
from ehzlab.polytope import (
    HPolytope,
    certify_simplex,
    check_multiplier,
    format_polytope,
    hpolytope,
    is_bounded_certified,
    multiplier_vertices,
    parse_polytope,
)
from ehzlab.ratlinalg import vec
from ehzlab.reduction import build_S, build_frame

from conftest import frac_rows

TRIANGLE_TEXT = "3 2\n1 0\n0 1\n-1 -1\n1 1 1\n"

BOX = (((1, 0), (-1, 0), (0, 1), (0, -1)), (1, 1, 1, 1))
# only three of the four axis directions are blocked: unbounded strip
SLAB = (((1, 0), (-1, 0), (0, 1)), (1, 1, 1))
# normals do not positively span, so no multiplier exists at all
EMPTY_Q = (((1, 0), (0, 1), (1, 1)), (1, 1, 1))


class TestParse:
    def test_triangle(self):
        p = parse_polytope(TRIANGLE_TEXT)
        assert (p.k, p.n) == (3, 1)
        assert p.B == frac_rows(((1, 0), (0, 1), (-1, -1)))
        assert p.c == vec((1, 1, 1))

    def test_comments_and_blank_lines(self):
        text = "# facets\n\n3 2\n1 0  # x\n0 1\n-1 -1\n\n1 1 1\n"
        assert parse_polytope(text) == parse_polytope(TRIANGLE_TEXT)

    def test_rational_entries(self):
        text = "3 2\n1/2 0\n0 2/3\n-1/2 -2/3\n1 1 1/4\n"
        p = parse_polytope(text)
        assert p.B[0][0] == Fraction(1, 2)
        assert p.c[2] == Fraction(1, 4)

    @pytest.mark.parametrize(
        "text",
        [
            "",
            "3\n",
            "a 2\n1 0\n0 1\n-1 -1\n1 1 1\n",
            "4 3\n1 0 0\n0 1 0\n0 0 1\n-1 -1 -1\n1 1 1 1\n",  # odd dimension
            "2 2\n1 0\n0 1\n1 1\n",  # too few facets for the dimension
            "3 2\n1 0\n0 1\n-1 -1\n",  # bound row missing
            "3 2\n1 0\n0 1 5\n-1 -1\n1 1 1\n",  # facet row length
            "3 2\n1 0\n0 1\n-1 -1\n1 1\n",  # bound row length
            "3 2\n1 0\n0 1.5\n-1 -1\n1 1 1\n",  # bad rational
        ],
    )
    def test_malformed(self, text):
        with pytest.raises(ParseError):
            parse_polytope(text)

    def test_round_trip(self, triangle):
        assert parse_polytope(format_polytope(triangle)) == triangle
        p = hpolytope(((Fraction(1, 2), 0), (0, 1), (-1, Fraction(-3, 7))), (1, 2, Fraction(5, 3)))
        assert parse_polytope(format_polytope(p)) == p


class TestConstructor:
    def test_dimension_checks(self):
        with pytest.raises(ValueError):
            hpolytope(((1,), (-1,), (1,)), (1, 1, 1))  # odd ambient dimension
        with pytest.raises(ValueError):
            hpolytope(((1, 0), (0, 1)), (1, 1))  # k < 2n+1
        with pytest.raises(ValueError):
            hpolytope(((1, 0), (0, 1), (-1, -1)), (1, 1))  # c length
        with pytest.raises(ValueError):
            HPolytope(frac_rows(((1, 0), (0, 1), (-1, -1))), vec((1, 1, 1)), 2, 3)


class TestCertifySimplex:
    def test_triangle(self, triangle):
        cert = certify_simplex(triangle)
        assert cert.beta == vec((Fraction(1, 3),) * 3)
        assert cert.kernel_generator == vec((1, 1, 1))

    def test_reduction_frame_gets_uniform_multiplier(self, example_bundle):
        cert = certify_simplex(example_bundle.polytope())
        assert cert.beta == vec((Fraction(1, 7),) * 7)

    def test_wrong_facet_count(self):
        with pytest.raises(NotSimplex):
            certify_simplex(hpolytope(*BOX))

    def test_rank_deficient_frame(self, example_tournament):
        # the raw sign matrix has dependent rows, so the unperturbed frame
        # drops rank and cannot be certified
        frame = build_frame(build_S(example_tournament))
        p = hpolytope(frame, (1,) * 7)
        with pytest.raises(NotSimplex):
            certify_simplex(p)

    def test_mixed_sign_kernel(self):
        with pytest.raises(NoFeasibleMultiplier):
            certify_simplex(hpolytope(*EMPTY_Q))

    def test_beta_satisfies_defining_equations(self, triangle, example_bundle):
        for p in (triangle, example_bundle.polytope()):
            check_multiplier(p, certify_simplex(p).beta)


class TestMultiplierVertices:
    def test_simplex_has_unique_vertex(self, triangle):
        assert multiplier_vertices(triangle) == (vec((Fraction(1, 3),) * 3),)

    def test_vertex_agrees_with_certificate(self, example_bundle):
        p = example_bundle.polytope()
        assert multiplier_vertices(p) == (certify_simplex(p).beta,)

    def test_box_has_two_vertices_in_support_order(self):
        p = hpolytope(*BOX)
        half = Fraction(1, 2)
        assert multiplier_vertices(p) == (
            vec((half, half, 0, 0)),
            vec((0, 0, half, half)),
        )

    def test_vertices_are_multipliers(self):
        p = hpolytope(*BOX)
        for beta in multiplier_vertices(p):
            check_multiplier(p, beta)

    def test_limit(self):
        with pytest.raises(LimitExceeded):
            multiplier_vertices(hpolytope(*BOX), limit=3)

    def test_empty_feasible_set(self):
        with pytest.raises(EmptyFeasibleSet):
            multiplier_vertices(hpolytope(*EMPTY_Q))


class TestBoundedness:
    def test_triangle_bounded(self, triangle):
        assert is_bounded_certified(triangle)

    def test_box_bounded(self):
        assert is_bounded_certified(hpolytope(*BOX))

    def test_slab_not_certified(self):
        assert not is_bounded_certified(hpolytope(*SLAB))

    def test_empty_multiplier_polytope_not_certified(self):
        assert not is_bounded_certified(hpolytope(*EMPTY_Q))


class TestCheckMultiplier:
    def test_accepts_exact_multiplier(self, triangle):
        check_multiplier(triangle, vec((Fraction(1, 3),) * 3))

    @pytest.mark.parametrize(
        "beta",
        [
            (Fraction(1, 3), Fraction(1, 3)),  # wrong length
            (Fraction(1, 2), Fraction(1, 2), Fraction(-1, 2)),  # negative entry
            (Fraction(1, 2), Fraction(1, 4), Fraction(1, 4)),  # not in left kernel
            (Fraction(1, 6), Fraction(1, 6), Fraction(1, 6)),  # wrong scale
        ],
    )
    def test_rejects(self, triangle, beta):
        with pytest.raises(ValueError):
            check_multiplier(triangle, vec(beta))
