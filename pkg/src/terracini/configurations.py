"""Generators for the special point configurations of the plane.

Every generator is a pure function of its arguments and a seed, with all
coordinates exact. Genericity is never assumed: draws that collide or
degenerate are rejected and redrawn, and callers that need a Zariski open
property pass an ``accept`` predicate.

Family descriptors name a family of r points of P^2 as a sum of
constraints, each a count of points on a curve:

    family     = "general" | constraint , { "+" , constraint } ;
    constraint = count , "@" , curve ;
    curve      = "line" | "conic" | "cubic" | "quartic"
               | "deg" , count | "ci" ;

"ci" is the nine base points of a pencil of cubics. Points not covered by a
constraint are general. "<u>-aligned", "<u>-on-conic" and "ci-cubics" are
accepted as aliases.
"""

import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np
import sympy

from . import globals as globls
from .conditions import SchemeSpec, forms_through
from .constants import ci_cubics_dimension, curve_degrees, nodal_strata
from .coordinates import ProjPoint, as_point, random_invertible
from .linalg import Mat, inverse, kernel_basis, rank
from .polyspace import (
    BinaryForm,
    Form,
    NotARoot,
    basis,
    deflate_roots,
    eval_row,
    resultant,
)

logger = logging.getLogger(__name__)


class Error(Exception):
    """Local exception class."""

    pass


class Exhausted(Error):
    """Every redraw collided or degenerated."""

    pass


class DegenerateCurve(Error):
    """A random parametrization does not give a curve of the requested degree."""

    pass


class NotGeneralPosition(Error):
    """Eight points do not define a pencil of cubics with a ninth base point."""

    pass


class ChartFailure(Error):
    """No elimination chart worked, even after changes of coordinates."""

    pass


class UnsupportedFamily(Error):
    """No dimension count is known for the family."""

    pass


def _rng(seed):
    return np.random.default_rng(seed)


def subseeds(seed, count):
    return [int(s) for s in _rng(seed).integers(0, 2**32, size=count)]


def random_general(n, r, seed, bound=None, accept=None):
    """Random distinct points with integer coordinates and last coordinate 1.

    Arguments:
      - `n` : (int) ambient dimension
      - `r` : (int) number of points
      - `seed` : seed of the draw
      - `bound` : (int) coordinates uniform in [-bound, bound], defaults to
        globals.bound
      - `accept` : optional predicate on the list of points; sets failing it
        are redrawn

    Returns:
      - list of r ProjPoint
    """
    bound = globls.bound if bound is None else bound
    if r < 1:
        raise Error(f"need at least one point, got r={r}")
    if bound < 2:
        raise Error(f"coordinate bound must be at least 2, got {bound}")
    rng = _rng(seed)
    for _ in range(globls.draw_retries):
        points = []
        seen = set()
        tries = 0
        while len(points) < r and tries < globls.draw_retries:
            tries += 1
            coords = rng.integers(-bound, bound + 1, size=n).tolist() + [1]
            p = ProjPoint(coords)
            if p not in seen:
                seen.add(p)
                points.append(p)
        if len(points) < r:
            break
        if accept is None or accept(points):
            return points
        logger.debug("random draw of %s points rejected", r)
    raise Exhausted(f"could not draw {r} acceptable points in P^{n}")


@dataclass(frozen=True)
class CurveSample:
    """Points on a rational plane curve of degree e.

    equation is the implicit equation as a Form of degree e. A rational
    curve of degree three or more is singular; caveat says so.
    """

    points: tuple
    degree: int
    parametrization: tuple
    equation: Form
    caveat: object = None


def _binary_eval(coeffs, s, t):
    e = len(coeffs) - 1
    return sum(c * s ** (e - i) * t**i for i, c in enumerate(coeffs))


def _image(param, s, t):
    coords = [_binary_eval(c, s, t) for c in param]
    if not any(coords):
        return None
    return ProjPoint(coords)


def on_rational_curve(e, r, seed, n=2, bound=20, param_bound=50):
    """Sample r distinct points on a random rational plane curve of degree e.

    The curve is the image of (s:t) -> (P0(s,t):P1(s,t):P2(s,t)) for three
    random binary forms of degree e. Lines need two independent linear
    forms, conics an invertible coefficient matrix (a smooth conic), and
    higher degrees an image spanning the plane and a unique implicit
    equation of degree e.

    Arguments:
      - `e` : (int) curve degree, e >= 1
      - `r` : (int) number of points
      - `seed` : seed of the draw
      - `n` : must be 2
      - `bound` : (int) coefficients of the parametrization in [-bound, bound]
      - `param_bound` : (int) parameter values in [-param_bound, param_bound]

    Returns:
      - CurveSample
    """
    if n != 2:
        raise Error(f"curves are generated in the plane only, got n={n}")
    if e < 1 or r < 1:
        raise Error(f"need e >= 1 and r >= 1, got e={e}, r={r}")
    rng = _rng(seed)
    b = basis(2, e)
    for _ in range(globls.draw_retries):
        param = tuple(
            tuple(int(c) for c in rng.integers(-bound, bound + 1, size=e + 1))
            for _ in range(3)
        )
        coeff_rank = rank(Mat(param))
        if coeff_rank < min(3, e + 1):
            logger.debug("degenerate parametrization %s", param)
            continue
        # implicit equation from more points than monomials
        samples = []
        k = 0
        while len(samples) < len(b) + 2:
            p = _image(param, k, 1)
            if p is not None:
                samples.append(eval_row(b, p.integral()))
            k += 1
        kernel = kernel_basis(Mat(samples, cols=len(b)))
        if len(kernel) != 1:
            logger.debug("parametrization is not birational onto a degree %s curve", e)
            continue
        equation = Form(2, e, kernel[0])
        points = []
        seen = set()
        params = set()
        tries = 0
        while len(points) < r and tries < globls.draw_retries:
            tries += 1
            s, t = (int(x) for x in rng.integers(-param_bound, param_bound + 1, size=2))
            if s == 0 and t == 0:
                continue
            key = ProjPoint([s, t])
            if key in params:
                continue
            params.add(key)
            p = _image(param, s, t)
            if p is None or p in seen:
                continue
            seen.add(p)
            points.append(p)
        if len(points) < r:
            continue
        caveat = None
        if e >= 3:
            caveat = f"rational curve of degree {e} is singular"
        return CurveSample(
            points=tuple(points),
            degree=e,
            parametrization=param,
            equation=equation,
            caveat=caveat,
        )
    raise DegenerateCurve(f"no usable rational curve of degree {e} in {globls.draw_retries} draws")


_gens = sympy.symbols("x0:3")


def _pencil(points):
    pencil = forms_through(SchemeSpec.reduced(points, n=2), 3)
    if len(pencil) != 2:
        raise NotGeneralPosition(
            f"cubics through the eight points form a space of dimension {len(pencil)}"
        )
    return pencil


def _projection(p, k):
    coords = [c for i, c in enumerate(p.coords) if i != k]
    if not any(coords):
        return None
    return ProjPoint(coords)


def _lift(F, G, k, root, known):
    """Common zero of F and G on the line through e_k above root."""
    s, t = sympy.symbols("s t")
    a, b = (sympy.Rational(Fraction(c).numerator, Fraction(c).denominator) for c in root)
    base = [a, b]
    base.insert(k, sympy.Integer(0))
    line = [s * c for c in base]
    line[k] = line[k] + t
    subs = dict(zip(_gens, line))
    fe = sympy.expand(F.to_expr(_gens).subs(subs, simultaneous=True))
    ge = sympy.expand(G.to_expr(_gens).subs(subs, simultaneous=True))
    common = sympy.gcd(fe, ge)
    if common == 0:
        return None
    degree = sympy.Poly(common, s, t).total_degree()
    h = BinaryForm.from_expr(common, s, t, degree)
    # parameters of the known base points on this line
    on_line = []
    for q in known:
        lam = next(Fraction(c) for i, c in enumerate(q.coords) if i != k and c) / next(
            Fraction(c) for c in root if c
        )
        on_line.append((lam, q.coords[k]))
    try:
        h = deflate_roots(h, on_line)
    except NotARoot:
        return None
    if h.degree != 1 or h.is_zero():
        return None
    ps, pt = (Fraction(c) for c in h.root())
    coords = [ps * Fraction(c) for c in (root[0], root[1])]
    coords.insert(k, Fraction(0))
    coords[k] += pt
    return ProjPoint(coords)


def _try_charts(points):
    F, G = _pencil(points)
    for k in (2, 1, 0):
        center = [0, 0, 0]
        center[k] = 1
        if F(center) == 0 or G(center) == 0:
            continue
        projections = [_projection(p, k) for p in points]
        if any(pr is None for pr in projections) or len(set(projections)) != 8:
            continue
        res = resultant(F, G, eliminate=k)
        if res.is_zero():
            continue
        try:
            last = deflate_roots(res, [pr.coords for pr in projections])
        except NotARoot:
            continue
        if last.is_zero():
            continue
        root = ProjPoint(last.root()).coords
        known = [p for p, pr in zip(points, projections) if pr.coords == root]
        ninth = _lift(F, G, k, root, known)
        if ninth is None:
            continue
        if F(ninth) != 0 or G(ninth) != 0:
            continue
        logger.debug("ninth base point found eliminating x%s", k)
        return ninth
    return None


def ninth_base_point(eight, seed=0, retries=None):
    """Ninth base point of the pencil of cubics through eight points.

    The pencil is the kernel of the cubic evaluation matrix of the eight
    points. Its two generators are eliminated against each other in a chart
    where the eight projections are distinct; the degree 9 resultant loses
    the eight known roots and keeps the projection of the ninth point, which
    is then lifted on its line. Random changes of coordinates are tried when
    no chart is valid.

    Arguments:
      - `eight` : 8 distinct points of P^2
      - `seed` : seed of the coordinate changes
      - `retries` : (int) coordinate changes to try, defaults to
        globals.chart_retries

    Returns:
      - ProjPoint
    """
    points = [as_point(p) for p in eight]
    if len(points) != 8:
        raise Error(f"need exactly 8 points, got {len(points)}")
    SchemeSpec.reduced(points, n=2)
    F, G = _pencil(points)
    common = sympy.gcd(F.to_expr(_gens), G.to_expr(_gens))
    if sympy.Poly(common, *_gens).total_degree() > 0:
        raise NotGeneralPosition("the cubics through the eight points share a component")
    retries = globls.chart_retries if retries is None else retries
    ninth = _try_charts(points)
    rng = _rng(seed)
    attempt = 0
    while ninth is None and attempt < retries:
        attempt += 1
        g = random_invertible(3, rng)
        moved = _try_charts([p.transform(g) for p in points])
        if moved is not None:
            ninth = moved.transform(inverse(g))
            logger.debug("ninth base point after %s changes of coordinates", attempt)
    if ninth is None:
        raise ChartFailure(f"no valid elimination chart after {retries} changes of coordinates")
    if ninth in points:
        raise NotGeneralPosition("the ninth base point coincides with one of the eight")
    return ninth


def complete_intersection(seed, bound=20):
    """Nine base points of a pencil of plane cubics.

    Eight random points are redrawn until they have a ninth base point.

    Returns:
      - list of 9 ProjPoint, the ninth last
    """
    for s in subseeds(seed, globls.draw_retries):
        eight = random_general(2, 8, s, bound=bound)
        try:
            return eight + [ninth_base_point(eight, seed=s)]
        except (NotGeneralPosition, ChartFailure) as err:
            logger.debug("redrawing eight points: %s", err)
    raise Exhausted("no eight points with a ninth base point")


#
# Family descriptors
#
_aliases = {
    re.compile(r"^(\d+)-aligned$"): r"\1@line",
    re.compile(r"^(\d+)-on-conic$"): r"\1@conic",
    re.compile(r"^ci-cubics$"): "9@ci",
}

_constraint = re.compile(r"^(\d+)@(line|conic|cubic|quartic|deg(\d+)|ci)$")


@dataclass(frozen=True)
class FamilyDescriptor:
    """r points of P^n, some of them on curves.

    constraints is a tuple of (u, curve) with curve a name from the grammar;
    the remaining r - sum(u) points are general.
    """

    n: int
    r: int
    constraints: tuple = ()

    def __post_init__(self):
        if self.r < 1:
            raise Error(f"need at least one point, got r={self.r}")
        for u, curve in self.constraints:
            if u < 1:
                raise Error(f"constraint with {u} points")
            if curve == "ci" and u != 9:
                raise Error(f"the complete intersection family has 9 points, got {u}")
            curve_degree(curve)
        if self.constrained > self.r:
            raise Error(
                f"constraints cover {self.constrained} points but r={self.r}"
            )

    @property
    def constrained(self):
        return sum(u for u, _ in self.constraints)

    @property
    def general(self):
        return self.r - self.constrained

    def __str__(self):
        if not self.constraints:
            return "general"
        return "+".join(f"{u}@{curve}" for u, curve in self.constraints)


def curve_degree(curve):
    """Degree of a curve name, or "ci"."""
    if curve == "ci":
        return "ci"
    if curve in curve_degrees:
        return curve_degrees[curve]
    match = re.fullmatch(r"deg(\d+)", curve)
    if match and int(match.group(1)) >= 1:
        return int(match.group(1))
    raise Error(f'unknown curve "{curve}"')


def parse_family(text, r, n=2):
    """Parse a family descriptor string.

    Arguments:
      - `text` : (str) descriptor
      - `r` : (int) total number of points
      - `n` : (int) ambient dimension

    Returns:
      - FamilyDescriptor
    """
    text = text.strip().replace(" ", "")
    if text == "general":
        return FamilyDescriptor(n=n, r=r)
    constraints = []
    for part in text.split("+"):
        for pattern, replacement in _aliases.items():
            part = pattern.sub(replacement, part)
        match = _constraint.match(part)
        if match is None:
            raise Error(f'bad family constraint "{part}" in "{text}"')
        constraints.append((int(match.group(1)), match.group(2)))
    return FamilyDescriptor(n=n, r=r, constraints=tuple(constraints))


def with_constrained_subset(desc, seed, bound=None):
    """One sample of a family.

    Each constraint and the general remainder get their own seed derived from
    seed, so the sample is reproducible.

    Returns:
      - list of desc.r ProjPoint, constrained points first
    """
    if desc.constraints and desc.n != 2:
        raise UnsupportedFamily(f"curve constraints are generated in P^2 only, got n={desc.n}")
    for attempt_seed in subseeds(seed, globls.draw_retries):
        seeds = subseeds(attempt_seed, len(desc.constraints) + 1)
        points = []
        for (u, curve), s in zip(desc.constraints, seeds):
            if curve == "ci":
                points.extend(complete_intersection(s))
            else:
                points.extend(on_rational_curve(curve_degree(curve), u, s).points)
        if desc.general:
            points.extend(random_general(desc.n, desc.general, seeds[-1], bound=bound))
        if len(set(points)) == len(points):
            return points
        logger.debug("constraints of %s collided, redrawing", desc)
    raise Exhausted(f"could not realize family {desc}")


def stratum_dimension(desc):
    """Dimension of the family as a locus in the r-fold symmetric product.

    u points on a curve of degree e contribute min(2u, C(e+2, 2) - 1 + u),
    the complete intersection family contributes 16 and each general point
    contributes n.

    Returns:
      - (int)
    """
    if desc.n != 2:
        if desc.constraints:
            raise UnsupportedFamily(f"no dimension count for curves in P^{desc.n}")
        return desc.n * desc.r
    total = 2 * desc.general
    for u, curve in desc.constraints:
        e = curve_degree(curve)
        if e == "ci":
            total += ci_cubics_dimension
        else:
            total += min(2 * u, comb(e + 2, 2) - 1 + u)
    return total


@dataclass(frozen=True)
class NodalStratum:
    """Node sets of irreducible plane curves of degree d with r nodes.

    The dimension comes from a moduli count that is not checked here.
    """

    d: int
    r: int
    dimension: int
    verified: bool = False

    @property
    def codimension(self):
        return 2 * self.r - self.dimension


def nodal_stratum(d):
    """Known nodal-curve stratum of the Terracini locus of O(d) on P^2.

    Returns:
      - NodalStratum or None
    """
    for (degree, r), dimension in nodal_strata.items():
        if degree == d:
            return NodalStratum(d=d, r=r, dimension=dimension)
    if d > 8 and d % 3:
        r = (d * d + 3 * d + 2) // 6
        dimension = Fraction(d * d, 3) + d - Fraction(25, 3) + 8
        return NodalStratum(d=d, r=r, dimension=int(dimension))
    return None
