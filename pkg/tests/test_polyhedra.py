"""Hull and LP solver against brute-force facet enumeration and vertex search."""

import itertools
import random
from fractions import Fraction

import pytest

import oracles
from resurgence import (
    CapabilityError,
    HalfSpace,
    LinearProgram,
    hull_with_recession,
    lp_minimize,
)
from resurgence.polyhedra import halfspace_redundant


def unit_rays(n):
    return [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]


def hs_set(poly):
    return {(h.normal, h.offset) for h in poly.halfspaces}


class TestHull:
    def test_two_var_staircase(self):
        poly = hull_with_recession([(2, 0), (0, 3)], unit_rays(2))
        assert hs_set(poly) == {((1, 0), 0), ((0, 1), 0), ((3, 2), 6)}
        assert hs_set(poly) == oracles.brute_facets([(2, 0), (0, 3)], unit_rays(2))

    def test_translate_of_orthant(self):
        poly = hull_with_recession([(1, 0)], unit_rays(2))
        assert hs_set(poly) == {((1, 0), 1), ((0, 1), 0)}

    def test_triangle_3d(self):
        pts = [(1, 1, 0), (1, 0, 1), (0, 1, 1)]
        poly = hull_with_recession(pts, unit_rays(3))
        expected = {
            ((1, 1, 1), 2), ((1, 1, 0), 1), ((1, 0, 1), 1), ((0, 1, 1), 1),
            ((1, 0, 0), 0), ((0, 1, 0), 0), ((0, 0, 1), 0),
        }
        assert hs_set(poly) == expected
        assert hs_set(poly) == oracles.brute_facets(pts, unit_rays(3))
        # membership by convex-combination feasibility on sampled points
        for q in itertools.product(range(3), repeat=3):
            lp = _membership_lp(q, pts, unit_rays(3))
            assert poly.contains(q) == (lp_minimize(lp).status == "optimal")

    def test_staircase_matches_double_description(self):
        # a third ray inside the orthant forces the generic path; same cone
        rng = random.Random(11)
        for _ in range(30):
            pts = [(rng.randint(0, 5), rng.randint(0, 5)) for _ in range(rng.randint(1, 5))]
            fast = hull_with_recession(pts, unit_rays(2))
            slow = hull_with_recession(pts, unit_rays(2) + [(1, 1)])
            assert hs_set(fast) == hs_set(slow)

    def test_brute_facets_random_3d(self):
        rng = random.Random(12)
        for _ in range(15):
            pts = sorted({tuple(rng.randint(0, 4) for _ in range(3)) for _ in range(4)})
            poly = hull_with_recession(pts, unit_rays(3))
            assert hs_set(poly) == oracles.brute_facets(pts, unit_rays(3))

    def test_defining_points_are_members(self):
        rng = random.Random(13)
        for _ in range(20):
            pts = [tuple(rng.randint(0, 4) for _ in range(3)) for _ in range(4)]
            poly = hull_with_recession(pts, unit_rays(3))
            for p in pts:
                assert poly.contains(p)
                shifted = tuple(x + 2 * r for x, r in zip(p, (1, 0, 1)))
                assert poly.contains(shifted)

    def test_irredundant_by_lp(self):
        pts = [(1, 1, 0), (1, 0, 1), (0, 1, 1), (3, 0, 0)]
        poly = hull_with_recession(pts, unit_rays(3))
        for i in range(len(poly.halfspaces)):
            assert not halfspace_redundant(poly, i)

    def test_degenerate_inputs(self):
        # all points equal: a translated orthant
        poly = hull_with_recession([(2, 2), (2, 2)], unit_rays(2))
        assert hs_set(poly) == {((1, 0), 2), ((0, 1), 2)}
        # points on a line with no rays: affine-hull equations appear
        segment = hull_with_recession([(0, 0), (2, 2)], [])
        assert segment.contains((1, 1))
        assert not segment.contains((1, 0))
        assert not segment.contains((3, 3))

    def test_scaling_membership(self):
        poly = hull_with_recession([(2, 0), (0, 3)], unit_rays(2))
        rng = random.Random(14)
        for _ in range(40):
            n = rng.randint(1, 6)
            y = (rng.randint(0, 8), rng.randint(0, 8))
            scaled = tuple(n * c for c in y)
            assert poly.contains(scaled, scale=n) == poly.contains(y)

    def test_dimension_cap(self):
        with pytest.raises(CapabilityError):
            hull_with_recession([tuple(range(9))], unit_rays(9))

    def test_empty_points(self):
        with pytest.raises(Exception):
            hull_with_recession([], unit_rays(2))


def _membership_lp(q, pts, rays):
    """Feasibility of q = sum l_i p_i + sum m_j r_j, sum l_i = 1, l, m >= 0,
    written as a >=-system in the multipliers."""
    k, r = len(pts), len(rays)
    dim = len(q)
    constraints = []
    for coord in range(dim):
        row = tuple([p[coord] for p in pts] + [ray[coord] for ray in rays])
        constraints.append(HalfSpace.normalized(row, q[coord]))
        constraints.append(HalfSpace.normalized(tuple(-x for x in row), -q[coord]))
    ones = tuple([1] * k + [0] * r)
    constraints.append(HalfSpace.normalized(ones, 1))
    constraints.append(HalfSpace.normalized(tuple(-x for x in ones), -1))
    return LinearProgram(tuple(Fraction(0) for _ in range(k + r)), tuple(constraints))


class TestLP:
    def test_fractional_cover_lp(self):
        pairs = [(1, 1, 0), (1, 0, 1), (0, 1, 1)]
        lp = LinearProgram(
            (Fraction(1), Fraction(1), Fraction(1)),
            tuple(HalfSpace(p, 1) for p in pairs),
        )
        res = lp_minimize(lp)
        assert res.optimum == Fraction(3, 2)
        assert res.argmin == (Fraction(1, 2), Fraction(1, 2), Fraction(1, 2))
        status, brute = oracles.brute_lp_minimum(lp.objective, [(p, 1) for p in pairs])
        assert (status, brute) == ("optimal", Fraction(3, 2))

    def test_trivial(self):
        lp = LinearProgram((Fraction(1),), (HalfSpace((1,), 0),))
        assert lp_minimize(lp).optimum == 0

    def test_unbounded(self):
        lp = LinearProgram((Fraction(-1),), (HalfSpace((1,), 0),))
        assert lp_minimize(lp).status == "unbounded"

    def test_infeasible(self):
        lp = LinearProgram(
            (Fraction(1),),
            (HalfSpace((1,), 3), HalfSpace((-1,), -1)),
        )
        assert lp_minimize(lp).status == "infeasible"

    def test_free_variables(self):
        lp = LinearProgram(
            (Fraction(1), Fraction(1)),
            (HalfSpace((1, 0), -2), HalfSpace((0, 1), -3), HalfSpace((1, 1), -4)),
            nonneg=False,
        )
        res = lp_minimize(lp)
        assert res.optimum == Fraction(-4)

    def test_duality_random(self):
        rng = random.Random(15)
        checked = 0
        for _ in range(120):
            n = rng.randint(1, 3)
            m = rng.randint(1, 4)
            objective = tuple(Fraction(rng.randint(0, 4)) for _ in range(n))
            constraints = []
            for _ in range(m):
                normal = tuple(rng.randint(-2, 3) for _ in range(n))
                if all(v == 0 for v in normal):
                    normal = tuple(1 for _ in range(n))
                constraints.append(HalfSpace.normalized(normal, rng.randint(-2, 3)))
            lp = LinearProgram(objective, tuple(constraints))
            res = lp_minimize(lp)
            if res.status != "optimal":
                continue
            checked += 1
            # re-verify the certificate here, independent of the solver's own check
            assert all(u >= 0 for u in res.dual)
            for j in range(n):
                col = sum(u * c.normal[j] for u, c in zip(res.dual, lp.constraints))
                assert col <= objective[j]
            assert sum(u * c.offset for u, c in zip(res.dual, lp.constraints)) == res.optimum
            status, brute = oracles.brute_lp_minimum(objective, [(c.normal, c.offset) for c in constraints])
            if status == "optimal":
                assert brute == res.optimum
        assert checked >= 30

    def test_determinism(self):
        pairs = [(1, 1, 0), (1, 0, 1), (0, 1, 1)]
        lp = LinearProgram((Fraction(2), Fraction(1), Fraction(1)),
                           tuple(HalfSpace(p, 1) for p in pairs))
        first = lp_minimize(lp)
        for _ in range(3):
            again = lp_minimize(lp)
            assert (again.optimum, again.argmin, again.dual) == (first.optimum, first.argmin, first.dual)
