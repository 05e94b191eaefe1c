"""Step functions, concave envelopes, contact sets.

Derived expectations are frozen from the brute-force split oracle below: the
envelope value at x is the best two-point convex combination of candidate
graph points averaging to x, which is independent of the hull construction.
"""

from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from disclosuregame import ConcavePL, DomainError, StepFunction, cav, contact_set, pl_eval, step_eval
from disclosuregame.piecewise import constant, hull_candidates, step_max

from genutil import rand_payoff
import random


def brute_split_value(points, x):
    """Best two-point Bayes split over a candidate point set: independent oracle."""
    best = None
    for ax, ay in points:
        for bx, by in points:
            if not ax <= x <= bx:
                continue
            val = ay if ax == bx else ay + (by - ay) * (x - ax) / (bx - ax)
            if best is None or val > best:
                best = val
    return best


V1 = StepFunction((F(0), F(2, 5), F(4, 5)), (F(0), F(1), F(3)))
VM31 = StepFunction((F(0), F(1, 2)), (F(0), F(1)))


class TestStepEval:
    def test_three_action_below_first_jump(self):
        assert step_eval(V1, F(1, 3)) == 0

    def test_three_action_left_closed_at_jump(self):
        assert step_eval(V1, F(2, 5)) == 1

    def test_constant(self):
        assert step_eval(constant(0), F(7, 13)) == 0

    def test_last_piece_closed_at_one(self):
        assert step_eval(V1, F(1)) == 3

    @pytest.mark.parametrize("x", [F(-1, 10), F(11, 10)])
    def test_domain_error(self, x):
        with pytest.raises(DomainError):
            step_eval(V1, x)

    def test_merges_equal_adjacent_pieces(self):
        f = StepFunction((F(0), F(1, 4), F(1, 2)), (F(1), F(1), F(2)))
        assert f.breakpoints == (F(0), F(1, 2))


class TestCav:
    def test_three_action_vertices(self):
        assert cav(V1).vertices == ((F(0), F(0)), (F(4, 5), F(3)), (F(1), F(3)))

    def test_three_action_value(self):
        g = cav(V1)
        assert pl_eval(g, F(1, 3)) == F(5, 4)
        assert brute_split_value(hull_candidates(V1), F(1, 3)) == F(5, 4)

    def test_skeptical_three_action(self):
        g = cav(VM31)
        assert g.vertices == ((F(0), F(0)), (F(1, 2), F(1)), (F(1), F(1)))
        assert pl_eval(g, F(1, 3)) == F(2, 3)
        assert brute_split_value(hull_candidates(VM31), F(1, 3)) == F(2, 3)

    def test_constant_is_its_own_envelope(self):
        g = cav(constant(F(5, 7)))
        assert pl_eval(g, F(0)) == pl_eval(g, F(1)) == F(5, 7)

    def test_non_monotone_input(self):
        f = StepFunction((F(0), F(1, 4), F(1, 2)), (F(0), F(2), F(1)))
        g = cav(f)
        for x in (F(0), F(1, 8), F(1, 4), F(3, 8), F(1, 2), F(3, 4), F(1)):
            assert pl_eval(g, x) == brute_split_value(hull_candidates(f), x)


class TestContactSet:
    def test_skeptical_three_action(self):
        assert contact_set(VM31, cav(VM31)) == [(F(0), F(0), True), (F(1, 2), F(1), True)]

    def test_concave_function_touches_everywhere(self):
        f = StepFunction((F(0),), (F(2),))
        assert contact_set(f, cav(f)) == [(F(0), F(1), True)]

    def test_three_action(self):
        assert contact_set(V1, cav(V1)) == [(F(0), F(0), True), (F(4, 5), F(1), True)]

    def test_never_empty_and_contains_hull_vertices_on_graph(self):
        rng = random.Random(7)
        for _ in range(100):
            f = rand_payoff(rng)
            g = cav(f)
            comps = contact_set(f, g)
            assert comps
            pts = {x for lo, hi, _ in comps for x in (lo, hi)}
            for x, y in g.vertices:
                if step_eval(f, x) == y:
                    assert any(lo <= x <= hi for lo, hi, _ in comps)


class TestPlEval:
    def test_known_chord_value(self):
        g = ConcavePL(((F(0), F(0)), (F(9, 10), F(3)), (F(1), F(3))))
        assert pl_eval(g, F(1, 2)) == F(5, 3)

    def test_vertex_evaluation(self):
        g = ConcavePL(((F(0), F(0)), (F(9, 10), F(3)), (F(1), F(3))))
        assert pl_eval(g, F(9, 10)) == F(3)

    def test_cav_three_action_at_prior(self):
        assert pl_eval(cav(V1), F(1, 3)) == F(5, 4)

    def test_domain_error(self):
        g = ConcavePL(((F(0), F(0)), (F(1), F(1))))
        with pytest.raises(DomainError):
            pl_eval(g, F(3, 2))

    def test_rejects_non_concave_chain(self):
        with pytest.raises(ValueError):
            ConcavePL(((F(0), F(0)), (F(1, 2), F(0)), (F(1), F(1))))


def grid_of(f: StepFunction):
    pts = []
    for lo, hi, _ in f.pieces():
        pts.extend([lo, (lo + hi) / 2])
    pts.append(F(1))
    return sorted(set(pts))


class TestEnvelopeProperties:
    def test_majorizes_and_slopes_decrease(self):
        rng = random.Random(11)
        for _ in range(200):
            f = rand_payoff(rng)
            g = cav(f)
            for x in grid_of(f):
                assert pl_eval(g, x) >= step_eval(f, x)
            slopes = [
                (y1 - y0) / (x1 - x0)
                for (x0, y0), (x1, y1) in zip(g.vertices, g.vertices[1:])
            ]
            assert all(a > b for a, b in zip(slopes, slopes[1:]))

    def test_idempotent_on_non_decreasing(self):
        rng = random.Random(13)
        for _ in range(100):
            g = cav(rand_payoff(rng))
            xs = [x for x, _ in g.vertices]
            ys = [y for _, y in g.vertices]
            resampled = StepFunction(tuple(xs), tuple(ys))
            assert cav(resampled).vertices == g.vertices

    def test_minimality_against_graph_hull(self):
        # for non-decreasing f the hull of the sampled graph equals the envelope
        rng = random.Random(17)
        for _ in range(100):
            f = rand_payoff(rng)
            g = cav(f)
            graph = [(x, step_eval(f, x)) for x in grid_of(f)]
            for x in grid_of(f):
                assert pl_eval(g, x) == brute_split_value(graph, x)

    @settings(max_examples=60, deadline=None)
    @given(st.data())
    def test_brute_split_agreement_on_arbitrary_steps(self, data):
        n = data.draw(st.integers(1, 5))
        denom = 24
        cuts = data.draw(
            st.lists(st.integers(1, denom - 1), min_size=n - 1, max_size=n - 1, unique=True)
        )
        bps = tuple([F(0)] + sorted(F(c, denom) for c in cuts))
        vals = tuple(
            F(data.draw(st.integers(-4, 8)), 2) for _ in range(n)
        )
        try:
            f = StepFunction(bps, vals)
        except ValueError:
            return
        g = cav(f)
        pts = hull_candidates(f)
        for x in grid_of(f):
            assert pl_eval(g, x) == brute_split_value(pts, x)


class TestStepMax:
    def test_pointwise_max(self):
        f = StepFunction((F(0), F(1, 2)), (F(0), F(3)))
        g = StepFunction((F(0), F(1, 4)), (F(1), F(2)))
        h = step_max(f, g)
        for x in (F(0), F(1, 8), F(1, 4), F(1, 2), F(3, 4), F(1)):
            assert step_eval(h, x) == max(step_eval(f, x), step_eval(g, x))
