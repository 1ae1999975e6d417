"""
Tests for the command line tools.
"""

import io
import json
import os
import sys
import tempfile
from contextlib import redirect_stdout
from unittest import TestCase, mock

import cltoolbox

from terracini import globals as globls
from terracini import terracini
from terracini.conditions import SchemeSpec
from terracini.pointsets import read_pointset, write_pointset
from terracini.reports import parse
from terracini.segre import equiv_factor_config, random_segre_points
from terracini.terracini import (
    UnsupportedCell,
    UsageError,
    load_input,
    run_check,
    run_dagger,
    run_scan,
    run_segre,
    run_strata,
)

aligned3 = [(1, 0, 1), (1, 1, 1), (1, 2, 1)]
saved = ("mode", "primes", "bound", "jobs", "log_level")


class CliTestCase(TestCase):
    def setUp(self):
        self.saved = {name: getattr(globls, name) for name in saved}
        self.tmp = tempfile.TemporaryDirectory()

    def tearDown(self):
        for name, value in self.saved.items():
            setattr(globls, name, value)
        self.tmp.cleanup()


class TestCheck(CliTestCase):
    def test_three_aligned(self):
        report, code = run_check(SchemeSpec.reduced(aligned3), 3, "aligned")
        self.assertEqual(code, 10)
        self.assertEqual(report.verdict.defect, 2)
        self.assertEqual(report.system.h0, 3)
        self.assertTrue(report.verified)

    def test_six_general_quintics(self):
        spec, source, seed = load_input(family="general", npoints=6, seed=3, bound=1000)
        self.assertEqual(seed, 3)
        report, code = run_check(spec, 5, source, seed=seed)
        self.assertEqual(code, 0)
        self.assertEqual(report.verdict.evidence, "meta(q=2)")
        # the rank is computed anyway for the report
        self.assertEqual(report.system.defect, 0)
        self.assertEqual(report.verdict.defect, 0)

    def test_complete_intersection(self):
        spec, source, _ = load_input(family="9@ci", npoints=9, seed=1)
        report, code = run_check(spec, 6, source, seed=1)
        self.assertEqual(code, 10)
        self.assertEqual(report.system.h0, 3)
        self.assertEqual(report.verdict.defect, 2)
        self.assertEqual(len(spec), 9)

    def test_single_point(self):
        report, code = run_check(SchemeSpec.reduced([(1, 2, 3)]), 2, "one")
        self.assertEqual(code, 0)
        self.assertEqual(report.verdict.evidence, "direct")

    def test_augment(self):
        spec = SchemeSpec.reduced([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)])
        report, code = run_check(spec, 5, "frame", augment="0")
        self.assertEqual(code, 0)
        with self.assertRaises(terracini.locus.Error):
            run_check(spec, 4, "frame", augment="9")

    def test_input_errors(self):
        with self.assertRaises(UsageError):
            load_input()
        with self.assertRaises(UsageError):
            load_input(points="a.pts", family="general")
        with self.assertRaises(UsageError):
            load_input(family="general", npoints=4)

    def test_command(self):
        fname = os.path.join(self.tmp.name, "aligned.pts")
        out = os.path.join(self.tmp.name, "report.json")
        write_pointset(SchemeSpec.reduced(aligned3), fname)
        buffer = io.StringIO()
        with redirect_stdout(buffer), self.assertRaises(SystemExit) as cm:
            terracini.check(degree=3, points=fname, out=out)
        self.assertEqual(cm.exception.code, 10)
        with open(out) as f:
            written = f.read()
        self.assertEqual(buffer.getvalue(), written)
        self.assertEqual(json.loads(written)["verdict"]["defect"], 2)
        report = parse(written)
        self.assertTrue(report.member)
        self.assertEqual(report.source, fname)

    def test_csv_format(self):
        fname = os.path.join(self.tmp.name, "aligned.pts")
        write_pointset(SchemeSpec.reduced(aligned3), fname)
        buffer = io.StringIO()
        with redirect_stdout(buffer), self.assertRaises(SystemExit):
            terracini.check(degree=3, points=fname, format="csv")
        header = buffer.getvalue().splitlines()[0].split(",")
        self.assertIn("defect", header)
        with self.assertRaises(UsageError):
            terracini.check(degree=3, points=fname, format="xml")

    def test_bad_mode(self):
        with self.assertRaises(UsageError):
            terracini.check(degree=3, family="general", npoints=3, seed=0, mode="float")


class TestDagger(CliTestCase):
    def test_table(self):
        spec = SchemeSpec.reduced([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)])
        table = run_dagger(spec, 3)
        self.assertEqual(list(table.columns), ["point", "h1", "pass"])
        self.assertTrue(table["pass"].all())
        self.assertEqual(table.loc[3, "point"], "(1:1:1)")


class TestScan(CliTestCase):
    def test_quartic_five_points(self):
        text = run_scan(2, 4, 5, "general", 6, 11, bound=100)
        rows, _, summary = text.partition("\n\n")
        self.assertEqual(len(rows.splitlines()), 7)
        self.assertIn(",6,6,6/6,", summary)

    def test_quintic_seven_points(self):
        text = run_scan(2, 5, 7, "general", 4, 2, bound=100)
        summary = text.partition("\n\n")[2].splitlines()[1]
        self.assertIn(",4,0,0/4,0:4", summary)

    def test_jobs(self):
        self.assertEqual(
            run_scan(2, 4, 4, "3@line", 4, 5, jobs=1, bound=50),
            run_scan(2, 4, 4, "3@line", 4, 5, jobs=2, bound=50),
        )

    def test_count(self):
        with self.assertRaises(UsageError):
            run_scan(2, 4, 5, "general", 0, 1)


class TestStrata(CliTestCase):
    def test_quintics(self):
        table = run_strata(2, 5).set_index(["r", "family"])
        for key, codimension, member in (
            ((3, "general"), 0, "no"),
            ((3, "3@line"), 1, "no"),
            ((4, "4@line"), 2, "yes"),
            ((5, "4@line"), 2, "yes"),
            ((6, "6@conic"), 1, "yes"),
            ((7, "6@conic"), 1, "yes"),
        ):
            self.assertEqual(table.loc[key, "codimension"], codimension, key)
            self.assertEqual(table.loc[key, "member"], member, key)
        self.assertEqual(table.loc[(4, "4@line"), "status"], "stratum")
        self.assertEqual(table.loc[(3, "general"), "status"], "empty")

    def test_dimension_bound(self):
        for d in (3, 4, 5):
            table = run_strata(2, d)
            members = table[(table["member"] == "yes") & table["bound_applies"]]
            for _, row in members.iterrows():
                self.assertLessEqual(row["dimension"], row["bound_max_dim"])

    def test_sextics(self):
        table = run_strata(2, 6)
        ci = table[table["family"] == "9@ci"].iloc[0]
        self.assertEqual(ci["codimension"], 2)
        self.assertEqual(ci["member"], "yes")
        nodal = table[table["family"] == "nodal"].iloc[0]
        self.assertEqual((nodal["r"], nodal["codimension"]), (9, 1))
        self.assertEqual(nodal["status"], "unverified")
        self.assertFalse(nodal["verified"])

    def test_cubics(self):
        table = run_strata(2, 3)
        self.assertEqual(list(table["member"]), ["no", "no", "yes"])

    def test_nodal_only(self):
        table = run_strata(2, 10)
        self.assertEqual(len(table), 1)
        self.assertEqual(table.iloc[0]["r"], 22)

    def test_unsupported(self):
        with self.assertRaises(UnsupportedCell):
            run_strata(2, 9)
        with self.assertRaises(UnsupportedCell):
            run_strata(3, 4)


class TestSegre(CliTestCase):
    def test_random(self):
        points = random_segre_points(6, (3, 3, 3), 1)
        report, code = run_segre(points, "random", seed=1)
        self.assertEqual(code, 0)
        self.assertEqual(report.segre.rank, 60)
        self.assertEqual(report.n, 9)
        self.assertEqual(len(report.points[0]), 12)

    def test_equivalent(self):
        report, code = run_segre(equiv_factor_config(6, 1), "equivalent", seed=1)
        self.assertEqual(code, 10)
        self.assertTrue(report.member)

    def test_command_writes_points(self):
        fname = os.path.join(self.tmp.name, "tuple.pts")
        buffer = io.StringIO()
        with redirect_stdout(buffer), self.assertRaises(SystemExit) as cm:
            terracini.segre(config="identity", seed=2, write_points=fname)
        self.assertEqual(cm.exception.code, 10)
        data = json.loads(buffer.getvalue())
        self.assertEqual(data["dims"], [3, 3, 3])
        with redirect_stdout(io.StringIO()), self.assertRaises(SystemExit) as cm:
            terracini.segre(points=fname)
        self.assertEqual(cm.exception.code, 10)


class TestMain(TestCase):
    def setUp(self):
        self.limit = getattr(sys, "tracebacklimit", None)

    def tearDown(self):
        if self.limit is None:
            if hasattr(sys, "tracebacklimit"):
                del sys.tracebacklimit
        else:
            sys.tracebacklimit = self.limit

    def exit_code(self, error):
        with mock.patch.object(cltoolbox, "main", side_effect=error), mock.patch(
            "sys.stderr", new_callable=io.StringIO
        ):
            with self.assertRaises(SystemExit) as cm:
                terracini.main()
        return cm.exception.code

    def test_exit_codes(self):
        self.assertEqual(self.exit_code(UsageError("no degree")), 64)
        self.assertEqual(self.exit_code(UnsupportedCell("n=2, d=9")), 64)
        self.assertEqual(self.exit_code(FileNotFoundError("a.pts")), 65)
        self.assertEqual(self.exit_code(terracini.pointsets.ParseError("a", 1, "bad")), 65)
        self.assertEqual(self.exit_code(ZeroDivisionError("oops")), 70)


class TestGenerate(CliTestCase):
    def test_point_file(self):
        fname = os.path.join(self.tmp.name, "conic.pts")
        with redirect_stdout(io.StringIO()) as buffer:
            terracini.generate("6@conic", 7, 3, out=fname)
        with open(fname) as f:
            text = f.read()
        self.assertEqual(buffer.getvalue(), text)
        self.assertTrue(text.startswith("# family 6@conic seed 3\nn 2\n"))
        self.assertEqual(len(read_pointset(fname)), 7)

    def test_version(self):
        with redirect_stdout(io.StringIO()) as buffer:
            terracini.version()
        self.assertTrue(buffer.getvalue().strip())
