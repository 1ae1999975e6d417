"""Terracini locus membership for Veronese embeddings.

A reduced set S of r points of P^n belongs to the r-th Terracini locus of
(P^n, O(d)) when the double points 2S fail to impose independent conditions
on forms of degree d, that is when

    h0(I_2S(d)) > dim_forms(n, d) - (n+1) r.

is_member() decides this with one exact rank. The criteria below decide it
for special shapes of S without the full rank, or explain a verdict:

  - criterion_i1: condition dagger at degree a plus independence of S at
    degree b excludes S at degree a+b.
  - criterion_meta: h1(I_S(q)) = 0 for some q < d/2 excludes S.
  - criterion_45: u points of S on a hypersurface of degree d-q with
    C(q+n, n) + n u > C(d+n, n) puts S in the locus.
  - criterion_a2: S_base outside the locus at degree d-2 keeps S_base u {p}
    outside at degree d, for every p.

A criterion that does not apply is silent; silence never means non-member.
"""

import logging
from dataclasses import dataclass, field
from itertools import combinations
from math import ceil, comb

from . import globals as globls
from .conditions import DuplicatePoint, SchemeSpec, cohomology, h1_points
from .constants import ah_exceptions
from .coordinates import as_point
from .linalg import Mat, rank
from .polyspace import basis, dim_forms, eval_row

logger = logging.getLogger(__name__)


class Error(Exception):
    """Local exception class."""

    pass


class SubsetSearchTooLarge(Error):
    """The subset enumeration of criterion_45 exceeds the cap."""

    pass


class DegreeTooSmall(Error):
    """criterion_a2 needs d >= 3."""

    pass


@dataclass(frozen=True)
class Evidence:
    """How a verdict was reached.

    kind is one of "direct", "saturated", "ah-table", "split", "meta",
    "augment" or "i1"; params holds the criterion parameters.
    """

    kind: str
    params: dict = field(default_factory=dict)

    def __str__(self):
        if not self.params:
            return self.kind
        inner = ",".join(f"{k}={_text(v)}" for k, v in self.params.items())
        return f"{self.kind}({inner})"


def _text(value):
    if isinstance(value, (tuple, list)):
        return "[" + " ".join(str(v) for v in value) + "]"
    return str(value)


@dataclass(frozen=True)
class Certificate:
    """One-sided conclusion of a criterion for degree d."""

    member: bool
    d: int
    evidence: Evidence


@dataclass(frozen=True)
class TerraciniVerdict:
    """Membership decision for a point set.

    defect is (n+1) r - rank when a rank was computed, else None. trail lists
    what classify() tried, in order.
    """

    member: bool
    defect: object
    evidence: Evidence
    report: object = None
    trail: tuple = ()


@dataclass(frozen=True)
class DaggerEntry:
    point: object
    h1: int
    passes: bool


@dataclass(frozen=True)
class DaggerReport:
    """Condition dagger of S at degree d, point by point."""

    d: int
    entries: tuple

    @property
    def overall(self):
        return all(e.passes for e in self.entries)


@dataclass(frozen=True)
class BoundRecord:
    applies: bool
    max_dim: object = None


def _points(S, n):
    points = [as_point(p) for p in S]
    for p in points:
        if p.n != n:
            raise Error(f"point {p} does not lie in P^{n}")
    return points


def is_member(S, n, d, mode=None):
    """Decide membership with one rank computation.

    Arguments:
      - `S` : sequence of ProjPoint (or coordinate sequences), distinct
      - `n` : (int) ambient dimension
      - `d` : (int) degree, d >= 1
      - `mode` : "exact" or "modular", defaults to globals.mode

    Returns:
      - TerraciniVerdict with direct evidence
    """
    points = _points(S, n)
    if not points:
        raise Error("empty point set")
    report = cohomology(SchemeSpec.doubled(points, n=n), d, mode=mode)
    member = report.defect > 0
    logger.debug("r=%s d=%s defect=%s", len(points), d, report.defect)
    return TerraciniVerdict(
        member=member,
        defect=report.defect,
        evidence=Evidence("direct"),
        report=report,
    )


def dagger(S, n, d):
    """Check condition dagger: S u 2p imposes independent conditions for all p.

    Returns:
      - DaggerReport
    """
    points = _points(S, n)
    if not points:
        raise Error("empty point set")
    entries = []
    for i, p in enumerate(points):
        h1 = cohomology(SchemeSpec.union_with_double(points, i, n=n), d).h1
        entries.append(DaggerEntry(point=p, h1=h1, passes=h1 == 0))
    return DaggerReport(d=d, entries=tuple(entries))


def criterion_i1(S, n, a, b):
    """Non-membership at degree a+b from dagger at a and independence at b.

    Returns:
      - Certificate or None
    """
    if a < 1 or b < 1:
        raise Error(f"degrees must be positive, got a={a}, b={b}")
    points = _points(S, n)
    if not dagger(points, n, a).overall:
        return None
    if h1_points(points, b, n=n) != 0:
        return None
    logger.info("i1 excludes S at degree %s (a=%s, b=%s)", a + b, a, b)
    return Certificate(member=False, d=a + b, evidence=Evidence("i1", {"a": a, "b": b}))


def criterion_meta(S, n, q, d):
    """Non-membership at degree d from h1(I_S(q)) = 0 with 2q < d.

    Returns:
      - Certificate or None
    """
    if q < 1 or 2 * q >= d:
        raise Error(f"need 1 <= q and 2q < d, got q={q}, d={d}")
    points = _points(S, n)
    if h1_points(points, q, n=n) != 0:
        return None
    logger.info("meta excludes S at degree %s (q=%s)", d, q)
    return Certificate(member=False, d=d, evidence=Evidence("meta", {"q": q}))


def split_threshold(n, d, q):
    """Smallest u with C(q+n, n) + n u > C(d+n, n)."""
    return (dim_forms(n, d) - dim_forms(n, q)) // n + 1


def _on_hypersurface(points, n, e):
    b = basis(n, e)
    m = Mat([eval_row(b, p.integral()) for p in points], cols=len(b))
    return rank(m) < len(b)


def criterion_45(S, n, d, cap=None):
    """Membership from u points of S on a hypersurface of degree d-q.

    For each q from d-1 down to 1 only the smallest admissible u is tried,
    since every subset of a witness is again a witness. When u points impose
    fewer conditions than there are forms of degree d-q the hypersurface
    always exists and no search is needed.

    Arguments:
      - `S` : sequence of points
      - `n` : (int) ambient dimension
      - `d` : (int) degree, d >= 2
      - `cap` : (int) largest subset count to enumerate, defaults to
        globals.subset_cap

    Returns:
      - Certificate with parameters q, u and the witness subset (indices
        into S), or None
    """
    if d < 2:
        raise Error(f"degree must be at least 2, got {d}")
    cap = globls.subset_cap if cap is None else cap
    points = _points(S, n)
    r = len(points)
    for q in range(d - 1, 0, -1):
        u = split_threshold(n, d, q)
        if u > r:
            continue
        e = d - q
        if u < dim_forms(n, e):
            witness = tuple(range(u))
        else:
            count = comb(r, u)
            if count > cap:
                raise SubsetSearchTooLarge(
                    f"{count} subsets of size {u} exceed the cap of {cap}"
                )
            witness = next(
                (
                    subset
                    for subset in combinations(range(r), u)
                    if _on_hypersurface([points[i] for i in subset], n, e)
                ),
                None,
            )
            if witness is None:
                continue
        logger.info("split puts S in the locus at degree %s (q=%s, u=%s)", d, q, u)
        return Certificate(
            member=True,
            d=d,
            evidence=Evidence("split", {"q": q, "u": u, "subset": witness}),
        )
    return None


def criterion_a2(S_base, p_new, n, d):
    """Non-membership of S_base u {p_new} at d from S_base outside at d-2.

    Returns:
      - Certificate or None
    """
    if d < 3:
        raise DegreeTooSmall(f"degree must be at least 3, got {d}")
    base = _points(S_base, n)
    p_new = as_point(p_new)
    if p_new in base:
        raise DuplicatePoint(p_new)
    if is_member(base, n, d - 2).member:
        return None
    logger.info("augment excludes S at degree %s", d)
    return Certificate(
        member=False, d=d, evidence=Evidence("augment", {"base_size": len(base)})
    )


def criterion_a2_all(S, n, d):
    """Try criterion_a2 for every decomposition S = S_base u {p}.

    Returns:
      - (index of p, Certificate) for the first decomposition that works, or
        None
    """
    points = _points(S, n)
    for i, p in enumerate(points):
        cert = criterion_a2(points[:i] + points[i + 1 :], p, n, d)
        if cert is not None:
            return i, cert
    return None


def cc3_bound(n, d, r):
    """Upper bound rn - n on the dimension of the Terracini locus.

    Applies when r <= C(n + ceil(d/2) - 1, n) - 1.

    Returns:
      - BoundRecord
    """
    if n < 2 or d < 3 or r < 1:
        raise Error(f"bound needs n >= 2, d >= 3, r >= 1, got n={n}, d={d}, r={r}")
    if r <= comb(n + ceil(d / 2) - 1, n) - 1:
        return BoundRecord(applies=True, max_dim=r * n - n)
    return BoundRecord(applies=False)


def ah_defective(n, d, r):
    """True when r general double points are defective for degree d forms.

    This is the Alexander-Hirschowitz list: quadrics for n > 1, r > 1, and
    the cells (4,3,7), (2,4,5), (3,4,9), (4,4,14) as (n, d, r).
    """
    if n < 1 or d < 2 or r < 2:
        raise Error(f"need n >= 1, d >= 2, r >= 2, got n={n}, d={d}, r={r}")
    if d == 2:
        return n > 1
    return (n, d, r) in ah_exceptions


def classify(S, n, d, augment=None, verify=False, cap=None, mode=None):
    """Membership verdict, using the cheap criteria before the full rank.

    Order: Alexander-Hirschowitz table, saturation, criterion_45,
    criterion_meta for q = 1, 2, ..., criterion_a2, direct rank. The table is
    used for every S: a rank deficient for general points is deficient for
    all points.

    Arguments:
      - `S` : sequence of points, |S| >= 2
      - `n` : (int) ambient dimension
      - `d` : (int) degree
      - `augment` : None, the index in S of the added point for
        criterion_a2, or "search" to try every point
      - `verify` : (bool) also run is_member and check agreement
      - `cap` : subset cap for criterion_45
      - `mode` : arithmetic of the final rank

    Returns:
      - TerraciniVerdict
    """
    points = _points(S, n)
    SchemeSpec.reduced(points, n=n)
    r = len(points)
    if r < 2:
        raise Error(f"classify needs at least 2 points, got {r}")
    trail = []
    verdict = None

    if d >= 2 and ah_defective(n, d, r):
        verdict = (True, Evidence("ah-table", {"n": n, "d": d, "r": r}))
    trail.append("ah-table")

    if verdict is None:
        trail.append("saturated")
        if (n + 1) * r > dim_forms(n, d):
            verdict = (True, Evidence("saturated"))

    if verdict is None and d >= 2:
        trail.append("split")
        try:
            cert = criterion_45(points, n, d, cap=cap)
        except SubsetSearchTooLarge as err:
            logger.warning("split criterion skipped: %s", err)
            trail[-1] = "split:skipped"
            cert = None
        if cert is not None:
            verdict = (True, cert.evidence)

    q = 1
    while verdict is None and 2 * q < d:
        trail.append(f"meta({q})")
        cert = criterion_meta(points, n, q, d)
        if cert is not None:
            verdict = (False, cert.evidence)
        q += 1

    if verdict is None and augment is not None and d >= 3:
        trail.append("augment")
        if augment == "search":
            found = criterion_a2_all(points, n, d)
            if found is not None:
                index, cert = found
                verdict = (False, Evidence("augment", {"point": index}))
        else:
            try:
                index = int(augment)
            except ValueError as err:
                raise Error(f'augment must be a point index or "search", got "{augment}"') from err
            if not 0 <= index < r:
                raise Error(f"augment index {index} outside 0..{r - 1}")
            cert = criterion_a2(points[:index] + points[index + 1 :], points[index], n, d)
            if cert is not None:
                verdict = (False, Evidence("augment", {"point": index}))

    if verdict is None:
        trail.append("direct")
        direct = is_member(points, n, d, mode=mode)
        return TerraciniVerdict(
            member=direct.member,
            defect=direct.defect,
            evidence=direct.evidence,
            report=direct.report,
            trail=tuple(trail),
        )

    member, evidence = verdict
    defect = None
    report = None
    if verify:
        direct = is_member(points, n, d)
        if direct.member != member:
            raise Error(
                f"{evidence} says member={member} but the rank says {direct.member}"
            )
        defect = direct.defect
        report = direct.report
    return TerraciniVerdict(
        member=member, defect=defect, evidence=evidence, report=report, trail=tuple(trail)
    )
