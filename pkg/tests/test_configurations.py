"""
Tests for the configuration generators and family descriptors.
"""

from unittest import TestCase

import numpy as np

from terracini import configurations
from terracini.conditions import SchemeSpec, forms_through
from terracini.configurations import (
    FamilyDescriptor,
    NotGeneralPosition,
    UnsupportedFamily,
    complete_intersection,
    nodal_stratum,
    ninth_base_point,
    on_rational_curve,
    parse_family,
    random_general,
    stratum_dimension,
    with_constrained_subset,
)
from terracini.linalg import Mat, rank


class TestRandomGeneral(TestCase):
    def test_reproducible(self):
        self.assertEqual(random_general(2, 6, 4), random_general(2, 6, 4))
        self.assertNotEqual(random_general(2, 6, 4), random_general(2, 6, 5))

    def test_distinct(self):
        points = random_general(3, 30, 1, bound=2)
        self.assertEqual(len(set(points)), 30)
        self.assertTrue(all(p.n == 3 for p in points))

    def test_bound(self):
        with self.assertRaises(configurations.Error):
            random_general(2, 3, 0, bound=1)

    def test_accept(self):
        points = random_general(2, 3, 0, accept=lambda ps: ps[0].coords[0] == 1)
        self.assertEqual(points[0].coords[0], 1)


class TestRationalCurves(TestCase):
    def test_line(self):
        sample = on_rational_curve(1, 5, 3)
        self.assertEqual(len(sample.points), 5)
        self.assertEqual(rank(Mat([p.coords for p in sample.points])), 2)
        self.assertIsNone(sample.caveat)

    def test_conic(self):
        sample = on_rational_curve(2, 7, 3)
        self.assertEqual(sample.equation.degree, 2)
        for p in sample.points:
            self.assertEqual(sample.equation(p), 0)
        self.assertEqual(len(forms_through(SchemeSpec.reduced(sample.points), 2)), 1)

    def test_cubic(self):
        sample = on_rational_curve(3, 10, 8)
        for p in sample.points:
            self.assertEqual(sample.equation(p), 0)
        self.assertIsNotNone(sample.caveat)

    def test_plane_only(self):
        with self.assertRaises(configurations.Error):
            on_rational_curve(2, 4, 0, n=3)


class TestCompleteIntersection(TestCase):
    def test_ninth_point(self):
        for seed in range(5):
            points = complete_intersection(seed)
            self.assertEqual(len(set(points)), 9)
            for f in forms_through(SchemeSpec.reduced(points[:8]), 3):
                self.assertEqual(f(points[8]), 0)
            self.assertEqual(ninth_base_point(points[:8], seed=seed + 1), points[8])

    def test_order_of_the_eight(self):
        for seed in range(5):
            points = complete_intersection(seed)
            order = np.random.default_rng(seed).permutation(8)
            shuffled = [points[int(i)] for i in order]
            self.assertEqual(ninth_base_point(shuffled, seed=seed + 1), points[8])

    def test_four_aligned(self):
        eight = [(1, 0, 1), (1, 1, 1), (1, 2, 1), (1, 3, 1)] + [
            (1, 5, 11),
            (3, -2, 7),
            (-4, 9, 1),
            (6, 1, -5),
        ]
        with self.assertRaises(NotGeneralPosition):
            ninth_base_point(eight)

    def test_needs_eight(self):
        with self.assertRaises(configurations.Error):
            ninth_base_point(random_general(2, 7, 0))


class TestFamilies(TestCase):
    def test_parse(self):
        self.assertEqual(parse_family("general", 5), FamilyDescriptor(n=2, r=5))
        self.assertEqual(parse_family("4-aligned", 5).constraints, ((4, "line"),))
        self.assertEqual(parse_family("ci-cubics", 9).constraints, ((9, "ci"),))
        desc = parse_family("6@conic + 1@line", 8)
        self.assertEqual(desc.constraints, ((6, "conic"), (1, "line")))
        self.assertEqual(desc.general, 1)
        self.assertEqual(str(desc), "6@conic+1@line")
        self.assertEqual(parse_family("3@deg5", 3).constraints, ((3, "deg5"),))

    def test_parse_errors(self):
        for text, r in (("4@ellipse", 5), ("10@ci", 10), ("6@conic", 5), ("conic", 5)):
            with self.assertRaises(configurations.Error):
                parse_family(text, r)

    def test_samples(self):
        desc = parse_family("4@line+3@conic", 9)
        points = with_constrained_subset(desc, 12, bound=50)
        self.assertEqual(len(points), 9)
        self.assertEqual(len(set(points)), 9)
        self.assertEqual(rank(Mat([p.coords for p in points[:4]])), 2)
        self.assertEqual(points, with_constrained_subset(desc, 12, bound=50))

    def test_curves_in_higher_dimension(self):
        desc = parse_family("3@line", 4, n=3)
        with self.assertRaises(UnsupportedFamily):
            with_constrained_subset(desc, 0)
        with self.assertRaises(UnsupportedFamily):
            stratum_dimension(desc)
        self.assertEqual(stratum_dimension(parse_family("general", 4, n=3)), 12)


class TestStrata(TestCase):
    def test_quintic_table(self):
        for family, r, codimension in (
            ("4@line", 4, 2),
            ("4@line", 5, 2),
            ("6@conic", 6, 1),
            ("6@conic", 7, 1),
        ):
            self.assertEqual(2 * r - stratum_dimension(parse_family(family, r)), codimension)

    def test_complete_intersection(self):
        self.assertEqual(stratum_dimension(parse_family("9@ci", 9)), 16)

    def test_cap(self):
        self.assertEqual(stratum_dimension(parse_family("3@line", 3)), 5)
        self.assertEqual(stratum_dimension(parse_family("2@conic", 2)), 4)

    def test_nodal(self):
        sextic = nodal_stratum(6)
        self.assertEqual((sextic.r, sextic.dimension, sextic.codimension), (9, 17, 1))
        self.assertFalse(sextic.verified)
        self.assertEqual((nodal_stratum(7).r, nodal_stratum(7).dimension), (12, 23))
        self.assertEqual((nodal_stratum(8).r, nodal_stratum(8).dimension), (15, 29))
        tenth = nodal_stratum(10)
        self.assertEqual((tenth.r, tenth.dimension), (22, 43))
        self.assertIsNone(nodal_stratum(9))
        self.assertIsNone(nodal_stratum(5))
