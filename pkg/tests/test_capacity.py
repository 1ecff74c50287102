from fractions import Fraction

import pytest

from ehzlab.capacity import (
    WeightMatrix,
    capacity_at_uniform_multiplier,
    capacity_simplex,
    capacity_upper_bound,
    decide_capacity_leq,
    max_order_sum,
    order_sum,
    symplectic_form,
    symplectic_matrix,
    weight_matrix,
    weighted_order_sum,
)
from ehzlab.errors import (
    InnerMaxNonpositive,
    LimitExceeded,
    NoFeasibleMultiplier,
    NoPositiveValueFound,
)
from ehzlab.polytope import certify_simplex, hpolytope
from ehzlab.ratlinalg import matmul, transpose, vec
from ehzlab.reduction import build_S, build_frame
from ehzlab.rng import SplitMix64
from oracles import all_order_sums, brute_weight_matrix

from conftest import EXAMPLE_W, frac_rows

BOX = (((1, 0), (-1, 0), (0, 1), (0, -1)), (1, 1, 1, 1))
SLAB = (((1, 0), (-1, 0), (0, 1)), (1, 1, 1))
EMPTY_Q = (((1, 0), (0, 1), (1, 1)), (1, 1, 1))

TRIANGLE_W = frac_rows(((0, 1, -1), (-1, 0, 1), (1, -1, 0)))


@pytest.fixture(scope="module")
def flat_frame(example_tournament):
    # unperturbed frame: normals sum to zero but the matrix is rank deficient
    frame = build_frame(build_S(example_tournament))
    return hpolytope(frame, (1,) * 7)


class TestSymplecticForm:
    def test_standard_pair(self):
        assert symplectic_form(vec((1, 0)), vec((0, 1))) == 1
        assert symplectic_form(vec((0, 1)), vec((1, 0))) == -1

    def test_four_dimensional(self):
        x, y = vec((1, 2, 3, 4)), vec((5, 6, 7, 8))
        assert symplectic_form(x, y) == 1 * 7 - 3 * 5 + 2 * 8 - 4 * 6

    def test_antisymmetry_and_bilinearity(self):
        gen = SplitMix64(3)
        for _ in range(20):
            dim = 2 * (1 + gen.next_below(3))
            x = vec([gen.next_below(9) - 4 for _ in range(dim)])
            y = vec([gen.next_below(9) - 4 for _ in range(dim)])
            z = vec([gen.next_below(9) - 4 for _ in range(dim)])
            assert symplectic_form(x, y) == -symplectic_form(y, x)
            assert symplectic_form(x, x) == 0
            xz = vec(a + 3 * b for a, b in zip(x, z))
            assert symplectic_form(xz, y) == symplectic_form(
                x, y
            ) + 3 * symplectic_form(z, y)

    def test_dimension_errors(self):
        with pytest.raises(ValueError):
            symplectic_form(vec((1, 0)), vec((1, 0, 0)))
        with pytest.raises(ValueError):
            symplectic_form(vec((1, 0, 0)), vec((0, 1, 0)))

    def test_matrix_representation(self):
        assert symplectic_matrix(1) == frac_rows(((0, 1), (-1, 0)))
        assert symplectic_matrix(2) == frac_rows(
            ((0, 0, 1, 0), (0, 0, 0, 1), (-1, 0, 0, 0), (0, -1, 0, 0))
        )

    def test_form_agrees_with_matrix(self):
        gen = SplitMix64(13)
        for n in (1, 2, 3):
            j = symplectic_matrix(n)
            x = vec([gen.next_below(7) - 3 for _ in range(2 * n)])
            y = vec([gen.next_below(7) - 3 for _ in range(2 * n)])
            assert symplectic_form(x, y) == sum(
                xi * sum(j[i][l] * y[l] for l in range(2 * n))
                for i, xi in enumerate(x)
            )


class TestWeightMatrix:
    def test_flat_frame_weights(self, flat_frame):
        w = weight_matrix(flat_frame)
        assert w.entries == frac_rows(EXAMPLE_W)
        assert w.zero_row_sums
        assert w.k == 7

    def test_triangle(self, triangle):
        w = weight_matrix(triangle)
        assert w.entries == TRIANGLE_W
        assert w.zero_row_sums

    def test_normals_not_summing_to_zero(self):
        assert not weight_matrix(hpolytope(*EMPTY_Q)).zero_row_sums

    def test_repeated_normal_gives_zero_entry(self):
        p = hpolytope(((1, 0), (1, 0), (-1, -1), (0, 1)), (1, 2, 1, 1))
        w = weight_matrix(p)
        assert w.entries[0][1] == 0 and w.entries[1][0] == 0

    def test_skew_symmetry_random(self):
        gen = SplitMix64(23)
        for _ in range(10):
            n = 1 + gen.next_below(2)
            k = 2 * n + 1 + gen.next_below(3)
            rows = [
                [gen.next_below(7) - 3 for _ in range(2 * n)] for _ in range(k)
            ]
            p = hpolytope(rows, [1] * k)
            w = weight_matrix(p)
            assert w.entries == brute_weight_matrix(rows)
            for i in range(k):
                assert w.entries[i][i] == 0
                for j in range(k):
                    assert w.entries[i][j] == -w.entries[j][i]

    def test_matches_matrix_product(self, flat_frame):
        b = flat_frame.B
        prod = matmul(b, matmul(symplectic_matrix(flat_frame.n), transpose(b)))
        assert weight_matrix(flat_frame).entries == prod


class TestOrderSums:
    def test_identity_ordering(self):
        w = WeightMatrix(frac_rows(EXAMPLE_W), zero_row_sums=True)
        assert order_sum(w, tuple(range(7))) == -2

    def test_known_maximizing_ordering(self):
        w = WeightMatrix(frac_rows(EXAMPLE_W), zero_row_sums=True)
        assert order_sum(w, (2, 6, 5, 0, 4, 1, 3)) == 4

    def test_single_facet(self):
        w = WeightMatrix(frac_rows(((0,),)), zero_row_sums=True)
        assert order_sum(w, (0,)) == 0

    def test_weighted_uniform_multiplier(self):
        w = WeightMatrix(frac_rows(EXAMPLE_W), zero_row_sums=True)
        beta = vec((Fraction(1, 7),) * 7)
        sigma = (0, 2, 4, 1, 3, 6, 5)
        assert weighted_order_sum(w, sigma, beta) == Fraction(4, 49)
        assert weighted_order_sum(w, sigma, beta) == order_sum(w, sigma) / 49

    def test_weighted_single_support(self):
        w = WeightMatrix(frac_rows(EXAMPLE_W), zero_row_sums=True)
        beta = vec((1, 0, 0, 0, 0, 0, 0))
        assert weighted_order_sum(w, (2, 6, 5, 0, 4, 1, 3), beta) == 0

    def test_weighted_triangle(self, triangle):
        w = weight_matrix(triangle)
        beta = vec((Fraction(1, 3),) * 3)
        assert weighted_order_sum(w, (0, 2, 1), beta) == Fraction(1, 9)

    def test_weighted_validation(self, triangle):
        w = weight_matrix(triangle)
        with pytest.raises(ValueError):
            weighted_order_sum(w, (0, 1), vec((1, 1, 1)))
        with pytest.raises(ValueError):
            weighted_order_sum(w, (0, 1, 2), vec((1, 1)))


class TestMaxOrderSum:
    def test_flat_frame_maximum(self, flat_frame):
        w = weight_matrix(flat_frame)
        value, sigma = max_order_sum(w)
        assert value == 4
        assert sigma == (0, 2, 4, 1, 3, 6, 5)
        assert order_sum(w, sigma) == value

    def test_against_exhaustive_enumeration(self, triangle):
        w = weight_matrix(triangle)
        sums = all_order_sums(w.entries)
        assert max(s for _, s in sums) == max_order_sum(w)[0] == 1

    def test_prune_requires_zero_row_sums(self):
        w = weight_matrix(hpolytope(*EMPTY_Q))
        with pytest.raises(ValueError):
            max_order_sum(w, prune_cyclic=True)

    def test_prune_preserves_value(self, flat_frame):
        w = weight_matrix(flat_frame)
        free_value, _ = max_order_sum(w)
        pruned_value, pruned_sigma = max_order_sum(w, prune_cyclic=True)
        assert pruned_value == free_value
        assert pruned_sigma[-1] == w.k - 1

    def test_fractional_entries_scaled_exactly(self):
        entries = frac_rows(
            ((0, Fraction(1, 3)), (Fraction(-1, 3), 0))
        )
        w = WeightMatrix(entries, zero_row_sums=False)
        assert max_order_sum(w) == (Fraction(1, 3), (1, 0))


class TestCapacitySimplex:
    def test_triangle_exact(self, triangle):
        r = capacity_simplex(triangle)
        assert r.value == Fraction(9, 2)
        assert r.inner_max == Fraction(1, 9)
        assert r.witness == (0, 2, 1)
        assert r.witness_beta == vec((Fraction(1, 3),) * 3)
        assert r.exact

    def test_triangle_pruned_same_value(self, triangle):
        r = capacity_simplex(triangle, prune_cyclic=True)
        assert r.value == Fraction(9, 2)
        assert r.witness[-1] == 2

    def test_perturbed_frame(self, example_bundle):
        r = capacity_simplex(example_bundle.polytope())
        assert r.value == Fraction(3969, 650)
        assert r.witness == (0, 2, 6, 4, 5, 1, 3)
        assert r.value == 1 / (2 * r.inner_max)
        assert r.exact

    def test_perturbed_frame_pruned(self, example_bundle):
        free = capacity_simplex(example_bundle.polytope())
        pruned = capacity_simplex(example_bundle.polytope(), prune_cyclic=True)
        assert pruned.value == free.value
        assert pruned.witness == (3, 5, 0, 4, 1, 2, 6)

    def test_witness_attains_inner_max(self, triangle, example_bundle):
        for p in (triangle, example_bundle.polytope()):
            r = capacity_simplex(p)
            w = weight_matrix(p)
            assert weighted_order_sum(w, r.witness, r.witness_beta) == r.inner_max

    def test_facet_limit(self, example_bundle):
        with pytest.raises(LimitExceeded):
            capacity_simplex(example_bundle.polytope(), facet_limit=5)

    def test_degenerate_simplex_has_no_positive_objective(self):
        with pytest.raises(InnerMaxNonpositive):
            capacity_simplex(hpolytope(*SLAB))

    def test_scaling_the_body_scales_quadratically(self, triangle):
        doubled = hpolytope(triangle.B, (2, 2, 2))
        r = capacity_simplex(doubled)
        assert r.value == Fraction(18)
        assert r.inner_max == Fraction(1, 36)
        assert r.witness_beta == vec((Fraction(1, 6),) * 3)


class TestDecide:
    def test_threshold_decisions(self, triangle):
        assert decide_capacity_leq(triangle, Fraction(9, 2))
        assert decide_capacity_leq(triangle, Fraction(5))
        assert not decide_capacity_leq(triangle, Fraction(22, 5))
        assert not decide_capacity_leq(triangle, Fraction(-1))


class TestUniformMultiplier:
    def test_flat_frame_value(self, flat_frame):
        r = capacity_at_uniform_multiplier(flat_frame)
        assert r.inner_max == Fraction(4, 49)
        assert r.value == Fraction(49, 8)
        assert r.witness == (0, 2, 4, 1, 3, 6, 5)
        assert r.witness_beta == vec((Fraction(1, 7),) * 7)
        assert not r.exact

    def test_prune_agrees(self, flat_frame):
        assert (
            capacity_at_uniform_multiplier(flat_frame, prune_cyclic=True).value
            == Fraction(49, 8)
        )

    def test_requires_zero_sum_normals(self):
        with pytest.raises(NoFeasibleMultiplier):
            capacity_at_uniform_multiplier(hpolytope(*EMPTY_Q))

    def test_requires_matching_bounds(self, flat_frame):
        p = hpolytope(flat_frame.B, (1, 1, 1, 1, 1, 1, 2))
        with pytest.raises(NoFeasibleMultiplier):
            capacity_at_uniform_multiplier(p)

    def test_facet_limit(self, flat_frame):
        with pytest.raises(LimitExceeded):
            capacity_at_uniform_multiplier(flat_frame, facet_limit=5)

    def test_collinear_normals_give_nonpositive_inner(self):
        p = hpolytope(((1, 0), (-1, 0), (2, 0), (-2, 0)), (1, 1, 1, 1))
        with pytest.raises(InnerMaxNonpositive):
            capacity_at_uniform_multiplier(p)

    def test_upper_bounds_exact_value_on_simplex(self, example_bundle):
        # the perturbed frame is a genuine simplex whose multiplier is uniform,
        # so the fallback value coincides with the exact one
        p = example_bundle.polytope()
        assert capacity_at_uniform_multiplier(p).value == capacity_simplex(p).value


class TestHeuristicUpperBound:
    def test_triangle_exhaustive(self, triangle):
        r = capacity_upper_bound(triangle)
        assert r.value == Fraction(9, 2)
        assert r.inner_max == Fraction(1, 9)
        assert not r.exact

    def test_triangle_single_restart(self, triangle):
        r = capacity_upper_bound(triangle, budget=1)
        assert r.value == Fraction(9, 2)
        w = weight_matrix(triangle)
        assert weighted_order_sum(w, r.witness, r.witness_beta) == r.inner_max

    def test_box(self):
        r = capacity_upper_bound(hpolytope(*BOX))
        assert r.value == Fraction(4)
        assert r.inner_max == Fraction(1, 8)
        assert r.witness == (0, 3, 1, 2)
        assert r.witness_beta == vec((Fraction(1, 4),) * 4)

    def test_never_below_exact_on_simplices(self, triangle, example_bundle):
        for p in (triangle, example_bundle.polytope()):
            exact = capacity_simplex(p).value
            assert capacity_upper_bound(p).value == exact
            assert capacity_upper_bound(p, budget=10, seed=3).value >= exact

    def test_slab_has_no_positive_candidate(self):
        with pytest.raises(NoPositiveValueFound):
            capacity_upper_bound(hpolytope(*SLAB))

    def test_vertex_limit(self):
        with pytest.raises(LimitExceeded):
            capacity_upper_bound(hpolytope(*BOX), vertex_limit=3)

    def test_deterministic_for_fixed_seed(self):
        a = capacity_upper_bound(hpolytope(*BOX), budget=3, seed=7)
        b = capacity_upper_bound(hpolytope(*BOX), budget=3, seed=7)
        assert a == b
