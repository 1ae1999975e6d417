"""Terracini test on Segre embeddings of products of projective spaces.

The affine tangent space of the Segre variety at a1 x ... x ak is spanned by
the tensor a1 (x) ... (x) ak and the tensors with one factor replaced by a
coordinate vector. A set S of r points sits in the Terracini locus when the
tangent spaces at its points span less than r (sum(n_i) + 1) dimensions.
"""

import logging
from dataclasses import dataclass
from functools import reduce
from itertools import combinations, permutations
from math import prod

import numpy as np
import pandas as pd

from .conditions import DuplicatePoint
from .coordinates import ProjPoint, ZeroPoint, as_point, random_invertible
from .linalg import Error as LinalgError
from .linalg import Mat, inverse, rank

logger = logging.getLogger(__name__)


class Error(Exception):
    """Local exception class."""

    pass


class ZeroFactor(Error):
    """A factor of a Segre point is the zero vector."""

    pass


class SegrePoint:
    """A point of P^n1 x ... x P^nk, one ProjPoint per factor."""

    __slots__ = ("_factors",)

    def __init__(self, factors):
        checked = []
        for i, f in enumerate(factors):
            try:
                checked.append(as_point(f))
            except ZeroPoint as err:
                raise ZeroFactor(f"factor {i} is zero") from err
        if not checked:
            raise Error("a Segre point needs at least one factor")
        object.__setattr__(self, "_factors", tuple(checked))

    def __setattr__(self, name, value):
        raise AttributeError("SegrePoint is immutable")

    @property
    def factors(self):
        return self._factors

    @property
    def dims(self):
        return tuple(f.n for f in self._factors)

    def __eq__(self, other):
        if not isinstance(other, SegrePoint):
            return NotImplemented
        return self._factors == other._factors

    def __hash__(self):
        return hash(self._factors)

    def __repr__(self):
        return f"SegrePoint({list(self._factors)!r})"

    def __str__(self):
        return " x ".join(str(f) for f in self._factors)

    def transform(self, gs):
        """Apply one linear map per factor."""
        return SegrePoint([f.transform(g) for f, g in zip(self._factors, gs)])


def _vector(values):
    array = np.empty(len(values), dtype=object)
    array[:] = list(values)
    return array


def _tensor(vectors):
    return reduce(lambda a, b: np.multiply.outer(a, b).ravel(), vectors)


def segre_tangent_rows(p):
    """Independent rows spanning the affine tangent space at p.

    The point tensor comes first; then, factor by factor, the tensors with
    that factor replaced by each coordinate vector except the one at the
    first nonzero coordinate of the factor.

    Arguments:
      - `p` : SegrePoint

    Returns:
      - list of sum(n_i) + 1 tuples of length prod(n_i + 1)
    """
    if not isinstance(p, SegrePoint):
        p = SegrePoint(p)
    vectors = [_vector(f.integral()) for f in p.factors]
    rows = [tuple(_tensor(vectors).tolist())]
    for i, v in enumerate(vectors):
        lead = next(j for j, c in enumerate(v) if c)
        for u in range(len(v)):
            if u == lead:
                continue
            unit = _vector([int(j == u) for j in range(len(v))])
            replaced = vectors[:i] + [unit] + vectors[i + 1 :]
            rows.append(tuple(_tensor(replaced).tolist()))
    return rows


@dataclass(frozen=True)
class SegreVerdict:
    r: int
    ambient: int
    rank: int
    expected: int
    member: bool

    @property
    def drop(self):
        return self.expected - self.rank


def tangent_matrix(S):
    """Stacked tangent rows of all points of S."""
    points = [p if isinstance(p, SegrePoint) else SegrePoint(p) for p in S]
    if not points:
        raise Error("empty point set")
    dims = points[0].dims
    for p in points:
        if p.dims != dims:
            raise Error(f"point {p} has factor dimensions {p.dims}, expected {dims}")
    seen = set()
    for p in points:
        if p in seen:
            raise DuplicatePoint(p)
        seen.add(p)
    rows = []
    for p in points:
        rows.extend(segre_tangent_rows(p))
    return points, Mat(rows, cols=prod(n + 1 for n in dims))


def segre_terracini(S):
    """Rank of the span of the tangent spaces at the points of S.

    S is in the Terracini locus when the rank is below r (sum(n_i) + 1);
    this always holds when that number exceeds the ambient dimension.

    Arguments:
      - `S` : sequence of SegrePoint, distinct, same factor dimensions

    Returns:
      - SegreVerdict
    """
    points, m = tangent_matrix(S)
    dims = points[0].dims
    expected = len(points) * (sum(dims) + 1)
    r = rank(m)
    logger.debug("segre %s r=%s rank=%s expected=%s", dims, len(points), r, expected)
    return SegreVerdict(
        r=len(points),
        ambient=m.cols,
        rank=r,
        expected=expected,
        member=r < expected,
    )


def _random_vector(rng, size, bound):
    while True:
        v = rng.integers(-bound, bound + 1, size=size).tolist()
        if any(v):
            return ProjPoint(v)


def random_segre_points(r, dims, seed, bound=10):
    """r random points of P^n1 x ... x P^nk.

    No two points share a factor: points agreeing in one factor have
    meeting tangent spaces.
    """
    rng = np.random.default_rng(seed)
    points = []
    while len(points) < r:
        p = SegrePoint([_random_vector(rng, n + 1, bound) for n in dims])
        if all(
            a != b for q in points for a, b in zip(p.factors, q.factors)
        ):
            points.append(p)
    return points


def general_position(points):
    """True when every m+1 of the points of P^m are independent."""
    m = points[0].n
    if len(points) <= m:
        return rank(Mat([p.coords for p in points])) == len(points)
    return all(
        rank(Mat([p.coords for p in subset])) == m + 1
        for subset in combinations(points, m + 1)
    )


def equiv_factor_config(r, seed, m=3, factors=3, identity=False, bound=3):
    """Points whose factor projections are projectively equivalent.

    r points q_i of P^m in linearly general position and one random
    invertible matrix g_k per factor give the points (g_1 q_i, ..., g_k q_i).

    Arguments:
      - `r` : (int) number of points
      - `seed` : seed of the draw
      - `m` : (int) dimension of every factor
      - `factors` : (int) number of factors
      - `identity` : (bool) use the identity for every g_k
      - `bound` : (int) coordinate bound of the q_i

    Returns:
      - list of r SegrePoint
    """
    rng = np.random.default_rng(seed)
    while True:
        base = []
        while len(base) < r:
            q = _random_vector(rng, m + 1, bound)
            if q not in base:
                base.append(q)
        if general_position(base):
            break
    if identity:
        gs = [Mat([[int(i == j) for j in range(m + 1)] for i in range(m + 1)])] * factors
    else:
        gs = [random_invertible(m + 1, rng, bound=2) for _ in range(factors)]
    return [SegrePoint([q.transform(g) for g in gs]) for q in base]


def perturb_factor(S, index, factor, seed, bound=3):
    """Replace one factor of one point by a random point."""
    rng = np.random.default_rng(seed)
    points = list(S)
    old = points[index]
    while True:
        new = _random_vector(rng, old.dims[factor] + 1, bound)
        factors = list(old.factors)
        factors[factor] = new
        candidate = SegrePoint(factors)
        if candidate not in points:
            points[index] = candidate
            return points


def _frame_map(frame):
    """Linear map sending the m+2 frame points to the standard frame.

    Returns None when the frame is not in linearly general position.
    """
    m = frame[0].n
    columns = Mat([p.coords for p in frame[: m + 1]]).transpose()
    try:
        inv = inverse(columns)
    except LinalgError:
        return None
    lam = inv.dot(frame[m + 1].coords)
    if not all(lam):
        return None
    scaled = Mat(
        [[columns[i, j] * lam[j] for j in range(m + 1)] for i in range(m + 1)]
    )
    return inverse(scaled)


def projective_equivalence(P, Q):
    """Decide whether two point sets of P^m differ by a projective map.

    Some m+2 points of P are used as a projective frame; every ordered
    choice of m+2 points of Q is tried as its image.

    Arguments:
      - `P`, `Q` : sequences of points of P^m with at least m+2 points

    Returns:
      - "equivalent", "not-equivalent" or "indeterminate"
    """
    P = [as_point(p) for p in P]
    Q = [as_point(q) for q in Q]
    m = P[0].n
    if any(p.n != m for p in P + Q):
        raise Error("point sets live in different projective spaces")
    if len(P) != len(Q) or len(set(P)) != len(set(Q)):
        return "not-equivalent"
    if len(P) < m + 2:
        return "indeterminate"
    gp = None
    for frame in combinations(range(len(P)), m + 2):
        gp = _frame_map([P[i] for i in frame])
        if gp is not None:
            break
    if gp is None:
        return "indeterminate"
    rest = [P[i] for i in range(len(P)) if i not in frame]
    target = {p.transform(gp) for p in rest}
    for images in permutations(range(len(Q)), m + 2):
        gq = _frame_map([Q[i] for i in images])
        if gq is None:
            continue
        moved = {Q[i].transform(gq) for i in range(len(Q)) if i not in images}
        if moved == target:
            return "equivalent"
    return "not-equivalent"


def _projections(S):
    return [[p.factors[i] for p in S] for i in range(len(S[0].factors))]


def conjecture_evidence(count, seed, m=3, factors=3, r=6):
    """Sample configurations and tabulate Terracini membership.

    Four kinds of configurations are drawn: random points, points with two
    equivalent projections, points with all projections equivalent, and the
    latter with one factor of one point perturbed. For every member the
    projections are compared pairwise and all together.

    Arguments:
      - `count` : (int) samples per kind
      - `seed` : seed of the sweep

    Returns:
      - pandas DataFrame indexed by kind
    """
    rng = np.random.default_rng(seed)
    dims = (m,) * factors
    rows = []
    for kind in ("random", "pairwise", "triple", "perturbed"):
        members = with_pair = with_all = indeterminate = 0
        for s in rng.integers(0, 2**32, size=count):
            s = int(s)
            if kind == "random":
                S = random_segre_points(r, dims, s)
            elif kind == "pairwise":
                S = equiv_factor_config(r, s, m=m, factors=factors)
                other = random_segre_points(r, dims, s + 1)
                S = [
                    SegrePoint(p.factors[:-1] + (o.factors[-1],))
                    for p, o in zip(S, other)
                ]
            elif kind == "triple":
                S = equiv_factor_config(r, s, m=m, factors=factors)
            else:
                S = perturb_factor(
                    equiv_factor_config(r, s, m=m, factors=factors), 0, 0, s
                )
            if len(set(S)) != len(S):
                continue
            if not segre_terracini(S).member:
                continue
            members += 1
            proj = _projections(S)
            pair_results = [
                projective_equivalence(proj[i], proj[j])
                for i, j in combinations(range(factors), 2)
            ]
            if "indeterminate" in pair_results:
                indeterminate += 1
            if "equivalent" in pair_results:
                with_pair += 1
            if all(result == "equivalent" for result in pair_results):
                with_all += 1
        rows.append(
            {
                "kind": kind,
                "samples": count,
                "members": members,
                "members_pair_equivalent": with_pair,
                "members_all_equivalent": with_all,
                "indeterminate": indeterminate,
            }
        )
        logger.info("%s: %s members of %s", kind, members, count)
    return pd.DataFrame(rows).set_index("kind")
