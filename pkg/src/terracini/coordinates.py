"""Points of projective space with exact rational coordinates."""

from fractions import Fraction
from math import gcd, lcm

from .linalg import Mat, rank
from .util import format_scalar, to_scalar


class Error(Exception):
    """Local exception class."""

    pass


class ZeroPoint(Error):
    """All homogeneous coordinates are zero."""

    pass


class ProjPoint:
    """A point of P^n.

    Stored as the canonical representative whose first nonzero coordinate is
    1, so two ProjPoints are equal exactly when they are the same projective
    point.
    """

    __slots__ = ("_coords",)

    def __init__(self, coords):
        coords = [Fraction(to_scalar(x)) for x in coords]
        if len(coords) < 2:
            raise Error(f"need at least 2 homogeneous coordinates, got {len(coords)}")
        lead = next((x for x in coords if x != 0), None)
        if lead is None:
            raise ZeroPoint("all coordinates are zero")
        object.__setattr__(
            self, "_coords", tuple(to_scalar(x / lead) for x in coords)
        )

    def __setattr__(self, name, value):
        raise AttributeError("ProjPoint is immutable")

    @property
    def n(self):
        """Dimension of the ambient projective space."""
        return len(self._coords) - 1

    @property
    def coords(self):
        return self._coords

    def __len__(self):
        return len(self._coords)

    def __iter__(self):
        return iter(self._coords)

    def __getitem__(self, i):
        return self._coords[i]

    def __eq__(self, other):
        if not isinstance(other, ProjPoint):
            return NotImplemented
        return self._coords == other._coords

    def __hash__(self):
        return hash(self._coords)

    def __lt__(self, other):
        return self._coords < other._coords

    def __repr__(self):
        return f"ProjPoint(({', '.join(format_scalar(x) for x in self._coords)}))"

    def __str__(self):
        return f"({':'.join(format_scalar(x) for x in self._coords)})"

    def integral(self):
        """Primitive integer representative.

        Returns:
          - tuple of ints with gcd 1 and first nonzero entry positive
        """
        scale = lcm(*(Fraction(x).denominator for x in self._coords))
        ints = [int(x * scale) for x in self._coords]
        g = gcd(*ints)
        return tuple(x // g for x in ints)

    def transform(self, g):
        """Image under the linear map g.

        Arguments:
          - `g` : Mat or nested sequence, (n+1)x(n+1)

        Returns:
          - ProjPoint
        """
        if not isinstance(g, Mat):
            g = Mat(g)
        if g.shape != (len(self), len(self)):
            raise Error(f"cannot apply a {g.shape} matrix to a point of P^{self.n}")
        return ProjPoint(g.dot(self._coords))


def as_point(p):
    """Coerce a coordinate sequence to a ProjPoint."""
    return p if isinstance(p, ProjPoint) else ProjPoint(p)


def random_invertible(size, rng, bound=5):
    """Random invertible integer matrix.

    Arguments:
      - `size` : (int) number of rows and columns
      - `rng` : numpy Generator
      - `bound` : (int) entries are drawn in [-bound, bound]

    Returns:
      - Mat
    """
    while True:
        entries = rng.integers(-bound, bound + 1, size=(size, size))
        g = Mat(entries.tolist())
        if rank(g) == size:
            return g
