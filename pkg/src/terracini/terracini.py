"""Command line interface of terracini.

Exit codes: 0 non-member or success, 10 member, 64 usage error, 65 data
error, 70 internal error.
"""

import logging
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from importlib import metadata

import cltoolbox
import pandas as pd
from cltoolbox.rst_text_formatter import RSTHelpFormatter

from . import conditions, configurations, coordinates
from . import globals as globls
from . import linalg, locus, pointsets, polyspace, reports, segre as segre_module, util
from .conditions import SchemeSpec, cohomology
from .configurations import (
    nodal_stratum,
    parse_family,
    stratum_dimension,
    subseeds,
    with_constrained_subset,
)
from .constants import (
    exit_data,
    exit_internal,
    exit_member,
    exit_non_member,
    exit_usage,
)
from .locus import cc3_bound, classify, is_member
from .locus import dagger as dagger_report
from .pointsets import format_pointset, format_segre, read_pointset, read_segre
from .reports import (
    RunReport,
    VerdictRecord,
    report_frame,
    scan_csv,
    scan_summary,
    serialize,
)
from .segre import equiv_factor_config, random_segre_points, segre_terracini
from .util import configure_logging, load_params

logger = logging.getLogger(__name__)

# parse errors, geometry failures and missing files
data_errors = (
    OSError,
    conditions.Error,
    configurations.Error,
    coordinates.Error,
    linalg.Error,
    locus.Error,
    pointsets.Error,
    polyspace.Error,
    reports.Error,
    segre_module.Error,
    util.Error,
)


class UsageError(Exception):
    """Bad combination of command line options."""

    pass


class UnsupportedCell(UsageError):
    """No strata table for this (n, d)."""

    pass


def _setup(mode=None, primes=None, bound=None, jobs=None, log_level=None):
    """Read the params file, then let command line flags override it."""
    load_params()
    if mode is not None:
        if mode not in ("exact", "modular"):
            raise UsageError(f'--mode must be "exact" or "modular", got "{mode}"')
        globls.mode = mode
    for name, value, least in (("primes", primes, 1), ("bound", bound, 2), ("jobs", jobs, 1)):
        if value is None:
            continue
        value = int(value)
        if value < least:
            raise UsageError(f"--{name} must be at least {least}, got {value}")
        setattr(globls, name, value)
    if log_level is not None:
        globls.log_level = log_level.upper()
    configure_logging(globls.log_level)


def _need(value, flag):
    if value is None:
        raise UsageError(f"{flag} is required")
    return int(value)


def _emit(text, out=None):
    print(text, end="")
    if out is not None:
        with open(out, "w") as f:
            f.write(text)


def load_input(points=None, family=None, npoints=None, dimension=2, seed=None, bound=None):
    """Point set from a file or from a family descriptor.

    Returns:
      - (SchemeSpec, source text, seed or None)
    """
    if (points is None) == (family is None):
        raise UsageError("give exactly one of --points and --family")
    if points is not None:
        return read_pointset(points), str(points), None
    seed = _need(seed, "--seed")
    desc = parse_family(family, _need(npoints, "--npoints"), n=int(dimension))
    sample = with_constrained_subset(desc, seed, bound=bound)
    return SchemeSpec.reduced(sample, n=desc.n), f"family {desc}", seed


def run_check(spec, d, source, seed=None, augment=None, verify=False):
    """Classify the points of spec at degree d.

    Returns:
      - (RunReport, exit code)
    """
    start = time.perf_counter()
    points = spec.points
    if len(points) >= 2:
        verdict = classify(points, spec.n, d, augment=augment, verify=verify)
    else:
        verdict = is_member(points, spec.n, d)
    system = verdict.report
    if system is None:
        # a criterion decided; the report still carries the rank
        system = cohomology(SchemeSpec.doubled(points, n=spec.n), d)
        verdict = replace(verdict, defect=system.defect, report=system)
    report = RunReport(
        command="check",
        source=source,
        n=spec.n,
        d=d,
        r=len(points),
        points=tuple(p.coords for p in points),
        seed=seed,
        mode=system.mode,
        primes=system.primes,
        system=system,
        verdict=VerdictRecord.from_verdict(verdict),
        timing=time.perf_counter() - start,
    )
    if not system.verified:
        logger.warning("modular rank not confirmed by a second prime")
    return report, exit_member if verdict.member else exit_non_member


def _format_report(report, fmt):
    if fmt == "json":
        return serialize(report)
    if fmt == "csv":
        return report_frame(report).to_csv(index=False)
    raise UsageError(f'--format must be "json" or "csv", got "{fmt}"')


@cltoolbox.command(formatter_class=RSTHelpFormatter)
def check(
    degree=None,
    points=None,
    family=None,
    npoints=None,
    dimension=2,
    seed=None,
    bound=None,
    mode=None,
    primes=None,
    augment=None,
    verify=False,
    out=None,
    format="json",
    log_level=None,
):
    """Decide whether a point set lies in the Terracini locus of O(degree).

    The exit code is 10 for a member and 0 for a non-member.

    :param degree <int>: Degree of the forms.
    :param points <str>: Point set file.
    :param family <str>: Family descriptor used instead of --points, for
        example "general", "4@line", "6@conic+1@line" or "9@ci".
    :param npoints <int>: Total number of points drawn with --family.
    :param dimension <int>: Ambient dimension for --family.
    :param seed <int>: Seed of the draw, required with --family.
    :param bound <int>: Coordinate bound of general points.
    :param mode <str>: "exact" or "modular" arithmetic.
    :param primes <int>: Number of primes in modular mode.
    :param augment <str>: Index of the added point for the augmentation
        criterion, or "search" to try every point.
    :param verify <bool>: Also compute the full rank and check agreement.
    :param out <str>: Also write the report to this file.
    :param format <str>: "json" or "csv".
    :param log_level <str>: Logging level.
    """
    _setup(mode=mode, primes=primes, bound=bound, log_level=log_level)
    d = _need(degree, "--degree")
    spec, source, seed = load_input(points, family, npoints, dimension, seed, globls.bound)
    report, code = run_check(spec, d, source, seed=seed, augment=augment, verify=verify)
    _emit(_format_report(report, format), out)
    sys.exit(code)


def run_dagger(spec, d):
    """Condition dagger point by point as a DataFrame."""
    result = dagger_report(spec.points, spec.n, d)
    return pd.DataFrame(
        [{"point": str(e.point), "h1": e.h1, "pass": e.passes} for e in result.entries]
    )


@cltoolbox.command(formatter_class=RSTHelpFormatter)
def dagger(points, degree, out=None, log_level=None):
    """Print h1(I_{S u 2p}(degree)) for every point p of a point set.

    :param points <str>: Point set file.
    :param degree <int>: Degree of the forms.
    :param out <str>: Also write the table to this file.
    :param log_level <str>: Logging level.
    """
    _setup(log_level=log_level)
    table = run_dagger(read_pointset(points), int(degree))
    _emit(table.to_csv(index=False), out)


def _scan_one(task):
    index, seed, n, d, r, family, bound, settings = task
    for name, value in settings.items():
        setattr(globls, name, value)
    desc = parse_family(family, r, n=n)
    points = with_constrained_subset(desc, seed, bound=bound)
    verdict = classify(points, n, d, verify=True)
    return {
        "sample": index,
        "seed": seed,
        "member": verdict.member,
        "defect": verdict.defect,
        "evidence": str(verdict.evidence),
    }


def run_scan(n, d, r, family, count, seed, jobs=1, bound=None):
    """Classify count samples of a family.

    Every sample gets its own seed derived from seed, and the rows keep the
    sample order, so the output does not depend on jobs.

    Returns:
      - CSV text
    """
    if count < 1:
        raise UsageError(f"--count must be at least 1, got {count}")
    parse_family(family, r, n=n)
    settings = {
        "mode": globls.mode,
        "primes": globls.primes,
        "prime_bits": globls.prime_bits,
        "subset_cap": globls.subset_cap,
        "draw_retries": globls.draw_retries,
        "chart_retries": globls.chart_retries,
    }
    tasks = [
        (i, s, n, d, r, family, bound, settings)
        for i, s in enumerate(subseeds(seed, count))
    ]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_scan_one, tasks))
    else:
        rows = [_scan_one(t) for t in tasks]
    frame = pd.DataFrame(rows)
    members = int(frame["member"].sum())
    logger.info("scan (%s,%s,%s) %s: %s/%s members", n, d, r, family, members, count)
    return scan_csv(frame, scan_summary(frame, n, d, r, family, seed))


@cltoolbox.command(formatter_class=RSTHelpFormatter)
def scan(
    degree,
    npoints,
    seed,
    family="general",
    count=100,
    dimension=2,
    bound=None,
    mode=None,
    primes=None,
    jobs=None,
    out=None,
    log_level=None,
):
    """Classify many samples of a family and summarize.

    Prints one CSV row per sample, a blank line, then a summary row with the
    member frequency and the defect histogram.

    :param degree <int>: Degree of the forms.
    :param npoints <int>: Number of points per sample.
    :param seed <int>: Seed of the scan.
    :param family <str>: Family descriptor.
    :param count <int>: Number of samples.
    :param dimension <int>: Ambient dimension.
    :param bound <int>: Coordinate bound of general points.
    :param mode <str>: "exact" or "modular" arithmetic.
    :param primes <int>: Number of primes in modular mode.
    :param jobs <int>: Worker processes.
    :param out <str>: Also write the CSV to this file.
    :param log_level <str>: Logging level.
    """
    _setup(mode=mode, primes=primes, bound=bound, jobs=jobs, log_level=log_level)
    text = run_scan(
        int(dimension),
        int(degree),
        int(npoints),
        family,
        int(count),
        int(seed),
        jobs=globls.jobs,
        bound=globls.bound,
    )
    _emit(text, out)


# Named families per (n, d); "general" rows report where the locus is empty.
strata_tables = {
    (2, 3): [(2, "general"), (3, "general"), (3, "3@line")],
    (2, 4): [
        (2, "general"),
        (3, "general"),
        (3, "3@line"),
        (4, "general"),
        (4, "3@line"),
        (5, "general"),
    ],
    (2, 5): [
        (3, "general"),
        (3, "3@line"),
        (4, "4@line"),
        (5, "4@line"),
        (6, "6@conic"),
        (7, "6@conic"),
    ],
    (2, 6): [(9, "general"), (9, "9@ci")],
    (2, 7): [],
    (2, 8): [],
}


def supported_cell(n, d):
    return (n, d) in strata_tables or (n == 2 and d >= 10 and d % 3 != 0)


def _bound_columns(n, d, r):
    record = cc3_bound(n, d, r)
    return {"bound_applies": record.applies, "bound_max_dim": record.max_dim}


def run_strata(n, d, seed=0, samples=1):
    """Table of named families for (n, d).

    Each family row carries its dimension in the symmetric product, its
    codimension, and a spot check of membership on seeded samples. The
    status is "dense" for a member of codimension 0, "stratum" for any other
    member and "empty" when the samples are not members. Nodal curve rows
    come from a moduli count and are marked unverified.

    Returns:
      - DataFrame
    """
    if not supported_cell(n, d):
        raise UnsupportedCell(f"no strata table for n={n}, d={d}")
    rows = []
    for r, family in strata_tables.get((n, d), []):
        desc = parse_family(family, r, n=n)
        dimension = stratum_dimension(desc)
        verdicts = [
            classify(with_constrained_subset(desc, s), n, d, verify=True).member
            for s in subseeds(seed, samples)
        ]
        if all(verdicts):
            member = "yes"
            status = "dense" if 2 * r == dimension else "stratum"
        elif not any(verdicts):
            member = "no"
            status = "empty"
        else:
            member = "mixed"
            status = "mixed"
        rows.append(
            {
                "r": r,
                "family": str(desc),
                "dimension": dimension,
                "codimension": 2 * r - dimension,
                "member": member,
                "status": status,
                "verified": True,
                **_bound_columns(n, d, r),
            }
        )
    nodal = nodal_stratum(d) if n == 2 else None
    if nodal is not None:
        rows.append(
            {
                "r": nodal.r,
                "family": "nodal",
                "dimension": nodal.dimension,
                "codimension": nodal.codimension,
                "member": "",
                "status": "unverified",
                "verified": False,
                **_bound_columns(n, d, nodal.r),
            }
        )
    return pd.DataFrame(rows)


@cltoolbox.command(formatter_class=RSTHelpFormatter)
def strata(degree, dimension=2, seed=0, samples=1, out=None, log_level=None):
    """Print the known strata of the Terracini locus for (dimension, degree).

    :param degree <int>: Degree of the forms.
    :param dimension <int>: Ambient dimension.
    :param seed <int>: Seed of the spot checks.
    :param samples <int>: Spot check samples per family.
    :param out <str>: Also write the table to this file.
    :param log_level <str>: Logging level.
    """
    _setup(log_level=log_level)
    table = run_strata(int(dimension), int(degree), seed=int(seed), samples=int(samples))
    _emit(table.to_csv(index=False), out)


@cltoolbox.command(formatter_class=RSTHelpFormatter)
def generate(family, npoints, seed, dimension=2, bound=None, out=None, log_level=None):
    """Write a point set file for one sample of a family.

    :param family <str>: Family descriptor.
    :param npoints <int>: Total number of points.
    :param seed <int>: Seed of the draw.
    :param dimension <int>: Ambient dimension.
    :param bound <int>: Coordinate bound of general points.
    :param out <str>: Write the point set to this file.
    :param log_level <str>: Logging level.
    """
    _setup(bound=bound, log_level=log_level)
    spec, source, seed = load_input(
        family=family, npoints=npoints, dimension=dimension, seed=seed, bound=globls.bound
    )
    _emit(format_pointset(spec, comment=f"{source} seed {seed}"), out)


def run_segre(points, source, seed=None):
    start = time.perf_counter()
    verdict = segre_terracini(points)
    report = RunReport(
        command="segre",
        source=source,
        n=sum(points[0].dims),
        d=None,
        r=len(points),
        points=tuple(sum((f.coords for f in p.factors), ()) for p in points),
        seed=seed,
        dims=points[0].dims,
        segre=verdict,
        timing=time.perf_counter() - start,
    )
    return report, exit_member if verdict.member else exit_non_member


@cltoolbox.command(formatter_class=RSTHelpFormatter)
def segre(
    points=None,
    config="random",
    npoints=6,
    factor_dimension=3,
    factors=3,
    seed=None,
    out=None,
    write_points=None,
    format="json",
    log_level=None,
):
    """Terracini test for points of a product of projective spaces.

    The exit code is 10 for a member and 0 for a non-member.

    :param points <str>: Point tuple file.
    :param config <str>: Generator used without --points: "random",
        "equivalent" (projectively equivalent factors) or "identity" (equal
        factors).
    :param npoints <int>: Number of generated points.
    :param factor_dimension <int>: Dimension of every generated factor.
    :param factors <int>: Number of generated factors.
    :param seed <int>: Seed of the generator.
    :param out <str>: Also write the report to this file.
    :param write_points <str>: Write the generated points to this file.
    :param format <str>: "json" or "csv".
    :param log_level <str>: Logging level.
    """
    _setup(log_level=log_level)
    if points is not None:
        _, pts = read_segre(points)
        source = str(points)
    else:
        seed = _need(seed, "--seed")
        r, m, k = int(npoints), int(factor_dimension), int(factors)
        if config == "random":
            pts = random_segre_points(r, (m,) * k, seed)
        elif config in ("equivalent", "identity"):
            pts = equiv_factor_config(
                r, seed, m=m, factors=k, identity=config == "identity"
            )
        else:
            raise UsageError(f'unknown --config "{config}"')
        source = f"{config} {r} points of (P^{m})^{k}"
        if write_points is not None:
            with open(write_points, "w") as f:
                f.write(format_segre(pts, comment=f"{source} seed {seed}"))
    report, code = run_segre(pts, source, seed=seed)
    _emit(_format_report(report, format), out)
    sys.exit(code)


@cltoolbox.command(formatter_class=RSTHelpFormatter)
def version():
    """Print the installed version of terracini."""
    try:
        print(metadata.version("terracini"))
    except metadata.PackageNotFoundError:
        print("unknown")


def main():
    if not os.path.exists("debug_terracini"):
        sys.tracebacklimit = 0
    try:
        cltoolbox.main()
    except UsageError as err:
        print(f"terracini: {err}", file=sys.stderr)
        sys.exit(exit_usage)
    except data_errors as err:
        print(f"terracini: {err}", file=sys.stderr)
        sys.exit(exit_data)
    except Exception as err:
        print(f"terracini: internal error: {err!r}", file=sys.stderr)
        sys.exit(exit_internal)


if __name__ == "__main__":
    main()
