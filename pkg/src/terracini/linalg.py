"""Exact rank and kernel computation over the rationals.

Ranks are computed by fraction-free (Bareiss) elimination on rows cleared of
denominators. A rank modulo a fixed large prime is tried first: it can only
be lower than the rational rank, so when it already reaches min(rows, cols)
the answer is certified without any big integer work.

The modular routines give a fast, unverified alternative when the caller asks
for it.
"""

import logging
from collections import namedtuple
from fractions import Fraction
from math import gcd, lcm

import numpy as np
import sympy

from .constants import certification_prime
from .util import to_scalar

logger = logging.getLogger(__name__)


class Error(Exception):
    """Local exception class."""

    pass


class BadPrime(Error):
    """A denominator is divisible by the modulus."""

    pass


ModularRank = namedtuple("ModularRank", ["rank", "primes", "confirmed"])


class Mat:
    """Immutable matrix of exact rationals.

    Entries are stored in canonical form: int when integral, otherwise a
    reduced Fraction.
    """

    __slots__ = ("_entries", "_cols")

    def __init__(self, rows, cols=None):
        entries = tuple(tuple(to_scalar(x) for x in row) for row in rows)
        if cols is None:
            if not entries:
                raise Error("an empty matrix needs an explicit column count")
            cols = len(entries[0])
        for i, row in enumerate(entries):
            if len(row) != cols:
                raise Error(f"row {i} has {len(row)} entries, expected {cols}")
        object.__setattr__(self, "_entries", entries)
        object.__setattr__(self, "_cols", cols)

    def __setattr__(self, name, value):
        raise AttributeError("Mat is immutable")

    @property
    def rows(self):
        return len(self._entries)

    @property
    def cols(self):
        return self._cols

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def entries(self):
        return self._entries

    def __getitem__(self, index):
        i, j = index
        return self._entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return self._cols == other._cols and self._entries == other._entries

    def __hash__(self):
        return hash((self._cols, self._entries))

    def __repr__(self):
        return f"Mat({[list(r) for r in self._entries]!r}, cols={self._cols})"

    def transpose(self):
        return Mat(
            [[row[j] for row in self._entries] for j in range(self.cols)],
            cols=self.rows,
        )

    def stack(self, other):
        """Rows of self followed by rows of other."""
        if other.cols != self.cols:
            raise Error(f"cannot stack {self.cols} and {other.cols} columns")
        return Mat(self._entries + other._entries, cols=self.cols)

    def dot(self, vector):
        """Matrix times column vector, exact."""
        vector = [to_scalar(v) for v in vector]
        if len(vector) != self.cols:
            raise Error(f"vector of length {len(vector)} for {self.cols} columns")
        return tuple(
            to_scalar(sum((a * b for a, b in zip(row, vector)), Fraction(0)))
            for row in self._entries
        )

    def integer_rows(self):
        """Rows scaled by the lcm of their denominators.

        Row scaling by a nonzero number does not change any rank.
        """
        result = []
        for row in self._entries:
            scale = lcm(*(Fraction(x).denominator for x in row)) if row else 1
            result.append([int(x * scale) for x in row])
        return result

    def to_numpy(self):
        """Object array view, used for comparisons in tests."""
        array = np.empty(self.shape, dtype=object)
        for i, row in enumerate(self._entries):
            for j, x in enumerate(row):
                array[i, j] = x
        return array


def _bareiss_rank(rows, ncols):
    """Rank of an integer matrix by fraction-free elimination.

    Every intermediate entry is a minor of the input, so the division by the
    previous pivot is exact.
    """
    rows = [list(r) for r in rows if any(r)]
    rank = 0
    prev = 1
    for col in range(ncols):
        if rank == len(rows):
            break
        candidates = [i for i in range(rank, len(rows)) if rows[i][col]]
        if not candidates:
            continue
        # smallest pivot keeps the minors small
        piv = min(candidates, key=lambda i: (abs(rows[i][col]).bit_length(), i))
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pivot_row = rows[rank]
        p = pivot_row[col]
        for i in range(rank + 1, len(rows)):
            row = rows[i]
            a = row[col]
            if a:
                rows[i] = [0] * (col + 1) + [
                    (p * row[j] - a * pivot_row[j]) // prev
                    for j in range(col + 1, ncols)
                ]
            else:
                rows[i] = [0] * (col + 1) + [
                    (p * row[j]) // prev for j in range(col + 1, ncols)
                ]
        prev = p
        rank += 1
    return rank


def _residue_rows(m, p):
    result = []
    for row in m.entries:
        out = []
        for x in row:
            x = Fraction(x)
            if x.denominator % p == 0:
                raise BadPrime(f"denominator {x.denominator} is divisible by {p}")
            out.append(x.numerator * pow(x.denominator, -1, p) % p)
        result.append(out)
    return result


def _rank_residues(rows, ncols, p):
    """Gaussian elimination mod p on an array of residues."""
    if not rows or not ncols:
        return 0
    a = np.array(rows, dtype=np.int64) % p
    nrows = a.shape[0]
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        nonzero = np.nonzero(a[rank:, col])[0]
        if not nonzero.size:
            continue
        piv = rank + nonzero[0]
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        inv = pow(int(a[rank, col]), -1, p)
        a[rank] = (a[rank] * inv) % p
        below = a[rank + 1 :, col].copy()
        if below.any():
            a[rank + 1 :] = (a[rank + 1 :] - np.outer(below, a[rank]) % p) % p
        rank += 1
    return rank


def rank_mod_p(m, p):
    """Rank of m reduced modulo the prime p.

    Arguments:
      - `m` : Mat
      - `p` : prime below 2**31

    Returns:
      - rank mod p, never above rank(m) : (int)
    """
    if not sympy.isprime(p):
        raise Error(f"modulus {p} is not prime")
    if p >= 2**31:
        raise Error(f"modulus {p} does not fit the 64 bit residue arithmetic")
    return _rank_residues(_residue_rows(m, p), m.cols, p)


def rank(m):
    """Exact rank of m over the rationals.

    Arguments:
      - `m` : Mat

    Returns:
      - rank : (int)
    """
    if m.rows == 0 or m.cols == 0:
        return 0
    rows = m.integer_rows()
    full = min(m.rows, m.cols)
    p = certification_prime
    modular = _rank_residues([[x % p for x in row] for row in rows], m.cols, p)
    if modular == full:
        logger.debug("rank of %sx%s certified mod %s", m.rows, m.cols, p)
        return full
    result = _bareiss_rank(rows, m.cols)
    logger.debug("rank of %sx%s is %s", m.rows, m.cols, result)
    return result


def bareiss_rank(m):
    """Exact rank without the modular shortcut."""
    if m.rows == 0 or m.cols == 0:
        return 0
    return _bareiss_rank(m.integer_rows(), m.cols)


def rref(m):
    """Reduced row echelon form over the rationals.

    Arguments:
      - `m` : Mat

    Returns:
      - rows of the reduced form (nonzero rows only), pivot columns
    """
    a = [[Fraction(x) for x in row] for row in m.entries]
    pivots = []
    r = 0
    for col in range(m.cols):
        piv = next((i for i in range(r, len(a)) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][col]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(col)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def kernel_basis(m):
    """Basis of the right kernel of m.

    Each vector is a primitive integer vector (entries with gcd 1 and the
    last nonzero entry positive) with m.dot(v) == 0 exactly.

    Arguments:
      - `m` : Mat

    Returns:
      - list of cols - rank(m) tuples
    """
    reduced, pivots = rref(m)
    free = [j for j in range(m.cols) if j not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for row, pc in zip(reduced, pivots):
            v[pc] = -row[f]
        basis.append(_primitive(v))
    return basis


def _primitive(v):
    scale = lcm(*(x.denominator for x in v))
    ints = [int(x * scale) for x in v]
    g = gcd(*ints) or 1
    ints = [x // g for x in ints]
    last = next(x for x in reversed(ints) if x)
    if last < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def random_primes(k, bits, rng):
    """Draw k distinct primes of about the given bit size.

    Arguments:
      - `k` : (int) number of primes
      - `bits` : (int) bit size, at most 31
      - `rng` : numpy Generator

    Returns:
      - list of primes
    """
    result = []
    while len(result) < k:
        start = int(rng.integers(2 ** (bits - 1), 2**bits - 2**(bits - 2)))
        p = int(sympy.nextprime(start))
        if p not in result:
            result.append(p)
    return result


def rank_modular(m, k=2, seed=0, bits=30):
    """Rank of m modulo k random primes.

    Bad primes are replaced by fresh draws. The result is the largest rank
    observed; it is confirmed when at least two primes reach it.

    Arguments:
      - `m` : Mat
      - `k` : (int) number of primes
      - `seed` : seed of the prime draws
      - `bits` : (int) prime size

    Returns:
      - ModularRank(rank, primes, confirmed)
    """
    if k < 1:
        raise Error(f"need at least one prime, got {k}")
    rng = np.random.default_rng(seed)
    ranks = []
    used = []
    while len(used) < k:
        (p,) = random_primes(1, bits, rng)
        if p in used:
            continue
        try:
            ranks.append(rank_mod_p(m, p))
        except BadPrime:
            logger.debug("prime %s divides a denominator, redrawing", p)
            continue
        used.append(p)
    best = max(ranks)
    confirmed = ranks.count(best) >= 2
    if not confirmed:
        logger.warning("modular rank %s seen for only one prime of %s", best, used)
    return ModularRank(best, tuple(used), confirmed)


def inverse(m):
    """Inverse of a square matrix by Gauss-Jordan elimination on [m | I].

    Arguments:
      - `m` : square Mat

    Returns:
      - Mat
    """
    size = m.rows
    if m.cols != size:
        raise Error(f"cannot invert a {m.rows}x{m.cols} matrix")
    augmented = Mat(
        [list(row) + [int(i == j) for j in range(size)] for i, row in enumerate(m.entries)],
        cols=2 * size,
    )
    reduced, pivots = rref(augmented)
    if pivots[:size] != list(range(size)) or len(reduced) < size:
        raise Error("matrix is not invertible")
    return Mat([row[size:] for row in reduced[:size]], cols=size)
