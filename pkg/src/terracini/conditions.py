"""Linear conditions imposed by reduced and double points.

A zero-dimensional scheme Z = S' u 2S'' is described by a SchemeSpec. Its
conditions matrix has one evaluation row per reduced point and the n+1 first
partial rows per double point; the rank of that matrix gives every number in
the cohomology bookkeeping

    h0(I_Z(d)) = dim_forms(n, d) - rank
    h1(I_Z(d)) = length(Z) - rank

since h1(O(d)) vanishes for d >= 0.
"""

import logging
from dataclasses import dataclass, field

from . import globals as globls
from .coordinates import as_point
from .linalg import Mat, kernel_basis, rank, rank_modular
from .polyspace import DegreeZero, Form, basis, dim_forms, eval_row, partial_rows

logger = logging.getLogger(__name__)

REDUCED = "reduced"
DOUBLE = "double"
KINDS = (REDUCED, DOUBLE)


class Error(Exception):
    """Local exception class."""

    pass


class DuplicatePoint(Error):
    """The same projective point appears twice."""

    def __init__(self, point):
        super().__init__(f"point {point} appears more than once")
        self.point = point


class SchemeSpec:
    """Reduced and double points of P^n, pairwise distinct.

    Arguments:
      - `n` : (int) ambient dimension
      - `items` : sequence of (point, kind) with kind "reduced" or "double"
    """

    def __init__(self, n, items):
        if n < 1:
            raise Error(f"projective dimension must be at least 1, got {n}")
        checked = []
        seen = set()
        for point, kind in items:
            point = as_point(point)
            if point.n != n:
                raise Error(f"point {point} does not lie in P^{n}")
            if kind not in KINDS:
                raise Error(f'unknown point kind "{kind}"')
            if point in seen:
                raise DuplicatePoint(point)
            seen.add(point)
            checked.append((point, kind))
        self.n = n
        self.items = tuple(checked)

    @classmethod
    def reduced(cls, points, n=None):
        points = [as_point(p) for p in points]
        return cls(_dimension(points, n), [(p, REDUCED) for p in points])

    @classmethod
    def doubled(cls, points, n=None):
        """The scheme 2S."""
        points = [as_point(p) for p in points]
        return cls(_dimension(points, n), [(p, DOUBLE) for p in points])

    @classmethod
    def union_with_double(cls, points, index, n=None):
        """The scheme S u 2p for p = points[index]."""
        points = [as_point(p) for p in points]
        return cls(
            _dimension(points, n),
            [(p, DOUBLE if i == index else REDUCED) for i, p in enumerate(points)],
        )

    @property
    def points(self):
        return [p for p, _ in self.items]

    @property
    def length(self):
        return sum(self.n + 1 if kind == DOUBLE else 1 for _, kind in self.items)

    def __len__(self):
        return len(self.items)

    def __eq__(self, other):
        if not isinstance(other, SchemeSpec):
            return NotImplemented
        return self.n == other.n and self.items == other.items

    def __repr__(self):
        return f"SchemeSpec(n={self.n}, items={list(self.items)!r})"

    def transform(self, g):
        """Image under a projective change of coordinates."""
        return SchemeSpec(self.n, [(p.transform(g), kind) for p, kind in self.items])


def _dimension(points, n):
    if n is not None:
        return n
    if not points:
        raise Error("cannot infer the dimension of an empty point set")
    return points[0].n


@dataclass(frozen=True)
class LinearSystemReport:
    """Cohomology of I_Z(d) for one scheme and degree."""

    n: int
    d: int
    length: int
    rank: int
    h0: int
    h1: int
    expected_h0: int
    defect: int
    mode: str = "exact"
    verified: bool = True
    primes: tuple = field(default=())

    @property
    def independent(self):
        return self.defect == 0


def conditions_matrix(z, d):
    """Conditions imposed by z on forms of degree d.

    Rows are built from the primitive integer representative of each point,
    which leaves every rank unchanged.

    Arguments:
      - `z` : SchemeSpec
      - `d` : (int) degree, d >= 1

    Returns:
      - Mat with length(z) rows and dim_forms(n, d) columns
    """
    if d < 1:
        raise DegreeZero(f"degree must be at least 1, got {d}")
    b = basis(z.n, d)
    rows = []
    for point, kind in z.items:
        coords = point.integral()
        if kind == DOUBLE:
            rows.extend(partial_rows(b, coords))
        else:
            rows.append(eval_row(b, coords))
    return Mat(rows, cols=len(b))


def cohomology(z, d, mode=None, seed=0):
    """Fill a LinearSystemReport for z at degree d.

    Arguments:
      - `z` : SchemeSpec
      - `d` : (int) degree, d >= 1
      - `mode` : "exact" or "modular", defaults to globals.mode
      - `seed` : seed of the prime draws in modular mode

    Returns:
      - LinearSystemReport
    """
    mode = mode or globls.mode
    m = conditions_matrix(z, d)
    total = dim_forms(z.n, d)
    if mode == "exact":
        r = rank(m)
        verified = True
        primes = ()
    elif mode == "modular":
        result = rank_modular(m, k=globls.primes, seed=seed, bits=globls.prime_bits)
        r = result.rank
        verified = result.confirmed
        primes = result.primes
    else:
        raise Error(f'unknown arithmetic mode "{mode}"')
    length = z.length
    logger.debug(
        "n=%s d=%s length=%s rank=%s (%s)", z.n, d, length, r, mode
    )
    return LinearSystemReport(
        n=z.n,
        d=d,
        length=length,
        rank=r,
        h0=total - r,
        h1=length - r,
        expected_h0=max(0, total - length),
        defect=length - r,
        mode=mode,
        verified=verified,
        primes=primes,
    )


def imposes_independent(z, d, mode=None):
    """True when z imposes independent conditions on degree d forms."""
    return cohomology(z, d, mode=mode).defect == 0


def forms_through(z, d):
    """Basis of the forms of degree d containing z.

    Returns:
      - list of Form, one per dimension of H0(I_Z(d))
    """
    m = conditions_matrix(z, d)
    return [Form(z.n, d, v) for v in kernel_basis(m)]


def h1_points(points, q, n=None):
    """h1(I_S(q)) for a reduced point set S."""
    return cohomology(SchemeSpec.reduced(points, n=n), q).h1
