"""Machine readable reports of the command line tools.

A RunReport is written as JSON with a schema_version field. Exact scalars
are written as "p/q" strings so that reading a report back gives an equal
RunReport. Scan results are CSV tables built with pandas.
"""

import json
from dataclasses import asdict, dataclass, field

import pandas as pd

from .conditions import LinearSystemReport
from .constants import schema_version
from .segre import SegreVerdict
from .util import format_scalar, parse_scalar


class Error(Exception):
    """Local exception class."""

    pass


@dataclass(frozen=True)
class VerdictRecord:
    """Flat form of a TerraciniVerdict."""

    member: bool
    defect: object
    evidence: str
    trail: tuple = ()

    @classmethod
    def from_verdict(cls, verdict):
        return cls(
            member=verdict.member,
            defect=verdict.defect,
            evidence=str(verdict.evidence),
            trail=tuple(verdict.trail),
        )


@dataclass(frozen=True)
class RunReport:
    """Everything a command computed, with its inputs.

    points holds one tuple of exact coordinates per point; for Segre runs
    the factors are concatenated and dims gives the split.
    """

    command: str
    source: str
    n: int
    d: object
    r: int
    points: tuple
    seed: object = None
    mode: str = "exact"
    primes: tuple = ()
    dims: tuple = ()
    system: object = None
    verdict: object = None
    segre: object = None
    timing: float = 0.0
    schema_version: int = field(default=schema_version)

    @property
    def member(self):
        if self.verdict is not None:
            return self.verdict.member
        if self.segre is not None:
            return self.segre.member
        return None

    @property
    def verified(self):
        return self.system is None or self.system.verified


def to_dict(report):
    """JSON ready dictionary of a RunReport."""
    out = {
        "schema_version": report.schema_version,
        "command": report.command,
        "source": report.source,
        "n": report.n,
        "d": report.d,
        "r": report.r,
        "points": [[format_scalar(c) for c in p] for p in report.points],
        "seed": report.seed,
        "mode": report.mode,
        "primes": list(report.primes),
        "dims": list(report.dims),
        "system": None,
        "verdict": None,
        "segre": None,
        "timing": report.timing,
    }
    if report.system is not None:
        system = asdict(report.system)
        system["primes"] = list(system["primes"])
        # modular ranks without a second prime are not trusted
        system["status"] = "verified" if report.system.verified else "unverified"
        out["system"] = system
    if report.verdict is not None:
        verdict = asdict(report.verdict)
        verdict["trail"] = list(verdict["trail"])
        out["verdict"] = verdict
    if report.segre is not None:
        out["segre"] = asdict(report.segre)
    return out


def from_dict(data):
    """Inverse of to_dict."""
    version = data.get("schema_version")
    if version != schema_version:
        raise Error(f"report schema version {version}, expected {schema_version}")
    system = None
    if data["system"] is not None:
        fields = dict(data["system"])
        fields.pop("status", None)
        fields["primes"] = tuple(fields["primes"])
        system = LinearSystemReport(**fields)
    verdict = None
    if data["verdict"] is not None:
        fields = dict(data["verdict"])
        fields["trail"] = tuple(fields["trail"])
        verdict = VerdictRecord(**fields)
    segre = None
    if data["segre"] is not None:
        segre = SegreVerdict(**data["segre"])
    return RunReport(
        command=data["command"],
        source=data["source"],
        n=data["n"],
        d=data["d"],
        r=data["r"],
        points=tuple(tuple(parse_scalar(c) for c in p) for p in data["points"]),
        seed=data["seed"],
        mode=data["mode"],
        primes=tuple(data["primes"]),
        dims=tuple(data["dims"]),
        system=system,
        verdict=verdict,
        segre=segre,
        timing=data["timing"],
        schema_version=version,
    )


def serialize(report):
    """JSON text of a RunReport; timing is written with full precision."""
    return json.dumps(to_dict(report), indent=2) + "\n"


def parse(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise Error(f"not a report: {err}") from err
    return from_dict(data)


def report_frame(report):
    """One-row DataFrame of the headline numbers of a report."""
    row = {
        "command": report.command,
        "source": report.source,
        "n": report.n,
        "d": report.d,
        "r": report.r,
        "seed": report.seed,
        "mode": report.mode,
        "member": report.member,
    }
    if report.system is not None:
        row.update(
            h0=report.system.h0,
            h1=report.system.h1,
            expected_h0=report.system.expected_h0,
            verified=report.system.verified,
        )
    if report.verdict is not None:
        row.update(defect=report.verdict.defect, evidence=report.verdict.evidence)
    if report.segre is not None:
        row.update(
            rank=report.segre.rank,
            expected=report.segre.expected,
            drop=report.segre.drop,
        )
    return pd.DataFrame([row])


def scan_summary(rows, n, d, r, family, seed):
    """Summary row of a scan: member frequency and defect histogram.

    Arguments:
      - `rows` : DataFrame of per-sample rows with member and defect columns

    Returns:
      - one-row DataFrame
    """
    count = len(rows)
    members = int(rows["member"].sum())
    histogram = rows["defect"].value_counts().sort_index()
    return pd.DataFrame(
        [
            {
                "n": n,
                "d": d,
                "r": r,
                "family": family,
                "seed": seed,
                "count": count,
                "members": members,
                "member_frequency": f"{members}/{count}",
                "defect_histogram": ";".join(
                    f"{defect}:{times}" for defect, times in histogram.items()
                ),
            }
        ]
    )


def scan_csv(rows, summary):
    """CSV text of a scan: the sample rows, a blank line, the summary."""
    return rows.to_csv(index=False) + "\n" + summary.to_csv(index=False)
