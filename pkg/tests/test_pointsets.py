"""
Tests for the point set and point tuple files.
"""

import os
import tempfile
from fractions import Fraction
from unittest import TestCase

from terracini.conditions import DOUBLE, REDUCED, SchemeSpec
from terracini.configurations import random_general
from terracini.pointsets import (
    ParseError,
    format_pointset,
    format_segre,
    parse_pointset,
    parse_segre,
    read_pointset,
    read_segre,
    write_pointset,
)
from terracini.segre import SegrePoint, random_segre_points

aligned = """\
# three aligned points
n 2
point 1 0 0
point 1 1 0   # second
point 1 2/3 0 double
"""


class TestPointSet(TestCase):
    def test_parse(self):
        spec = parse_pointset(aligned)
        self.assertEqual(spec.n, 2)
        self.assertEqual(len(spec), 3)
        self.assertEqual(spec.points[2].coords, (1, Fraction(2, 3), 0))
        self.assertEqual([k for _, k in spec.items], [REDUCED, REDUCED, DOUBLE])

    def test_format(self):
        spec = SchemeSpec(2, [((2, 1, 0), REDUCED), ((0, 3, 6), DOUBLE)])
        self.assertEqual(
            format_pointset(spec, comment="two points"),
            "# two points\nn 2\npoint 1 1/2 0\npoint 0 1 2 double\n",
        )

    def test_round_trip(self):
        spec = parse_pointset(aligned)
        self.assertEqual(parse_pointset(format_pointset(spec)), spec)
        general = SchemeSpec.reduced(random_general(3, 12, 5))
        self.assertEqual(parse_pointset(format_pointset(general)), general)

    def test_file(self):
        spec = parse_pointset(aligned)
        with tempfile.TemporaryDirectory() as tmp:
            fname = os.path.join(tmp, "aligned.pts")
            write_pointset(spec, fname, comment="first line\nsecond line")
            self.assertEqual(read_pointset(fname), spec)

    def test_duplicate_names_line(self):
        text = "n 2\npoint 1 2 3\n\npoint 2 4 6\n"
        with self.assertRaises(ParseError) as cm:
            parse_pointset(text, source="dup.pts")
        self.assertEqual(cm.exception.lineno, 4)
        self.assertIn("line 2", str(cm.exception))
        self.assertTrue(str(cm.exception).startswith("dup.pts, line 4:"))

    def test_errors(self):
        for text, lineno in (
            ("point 1 0 0\nn 2\n", 1),
            ("n 2\nn 2\n", 2),
            ("n 2\npoint 1 0\n", 2),
            ("n 2\npoint 1 0.5 0\n", 2),
            ("n 2\npoint 0 0 0\n", 2),
            ("n 2\npoint 1 0 0 triple\n", 2),
            ("n 2\nline 1 0 0\n", 2),
            ("n two\n", 1),
            ("n 0\n", 1),
            ("n 2\n", 0),
            ("# nothing\n", 0),
        ):
            with self.assertRaises(ParseError) as cm:
                parse_pointset(text)
            self.assertEqual(cm.exception.lineno, lineno, text)

    def test_unclosed_quote(self):
        with self.assertRaises(ParseError) as cm:
            parse_pointset('n 2\npoint 1 "2 3\n', source="f.pts")
        self.assertEqual(cm.exception.lineno, 2)
        self.assertTrue(str(cm.exception).startswith("f.pts, line 2:"))

    def test_binary_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            fname = os.path.join(tmp, "binary.pts")
            with open(fname, "wb") as f:
                f.write(b"n 2\npoint \xff 0 0\n")
            with self.assertRaises(ParseError) as cm:
                read_pointset(fname)
        self.assertEqual(cm.exception.source, fname)
        self.assertEqual(cm.exception.lineno, 0)


class TestSegreFile(TestCase):
    def test_parse(self):
        dims, points = parse_segre("dims 1 2\npoint 1 0 | 2 0 4\npoint 0 1|1 1 1\n")
        self.assertEqual(dims, (1, 2))
        self.assertEqual(points[0], SegrePoint([(1, 0), (1, 0, 2)]))
        self.assertEqual(points[1].factors[1].coords, (1, 1, 1))

    def test_round_trip(self):
        points = random_segre_points(6, (3, 3, 3), 4)
        dims, back = parse_segre(format_segre(points, comment="six points"))
        self.assertEqual(dims, (3, 3, 3))
        self.assertEqual(back, points)

    def test_errors(self):
        for text, lineno in (
            ("dims 1 1\npoint 1 0\n", 2),
            ("dims 1 1\npoint 1 0 | 1 0 0\n", 2),
            ("dims 1 1\npoint 1 0 | 0 0\n", 2),
            ("dims 1 0\n", 1),
            ("point 1 0 | 1 0\n", 1),
            ("dims 1 1\npoint 1 0 | 1 1\npoint 2 0 | 3 3\n", 3),
            ("dims 1 1\n", 0),
        ):
            with self.assertRaises(ParseError) as cm:
                parse_segre(text)
            self.assertEqual(cm.exception.lineno, lineno, text)

    def test_unclosed_quote(self):
        with self.assertRaises(ParseError) as cm:
            parse_segre("dims 1 1\npoint 1 0 | ' 1 1\n", source="t.pts")
        self.assertEqual(cm.exception.lineno, 2)

    def test_binary_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            fname = os.path.join(tmp, "binary.pts")
            with open(fname, "wb") as f:
                f.write(b"dims 1 1\npoint 1 0 | \xfe\xff 1\n")
            with self.assertRaises(ParseError):
                read_segre(fname)
