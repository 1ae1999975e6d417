"""Spaces of homogeneous forms.

Monomial bases of degree d forms in n+1 variables, the evaluation and first
derivative rows that turn points and double points into linear conditions,
and the binary form tools (resultant, root deflation) used to find the ninth
base point of a pencil of plane cubics.

Monomials are ordered deg-lex with x0 > x1 > ... > xn, so the first monomial
of every basis is x0**d.
"""

import logging
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb, prod

import sympy

from .coordinates import ZeroPoint
from .util import format_scalar, to_scalar

logger = logging.getLogger(__name__)


class Error(Exception):
    """Local exception class."""

    pass


class DegreeZero(Error):
    """Derivative rows of constants were requested."""

    pass


class ZeroForm(Error):
    """A form that must be nonzero is identically zero."""

    pass


class NotARoot(Error):
    """A point given as a root of a binary form is not a root."""

    def __init__(self, root):
        super().__init__(f"({format_scalar(root[0])}:{format_scalar(root[1])}) is not a root")
        self.root = root


def dim_forms(n, d):
    """Dimension of the space of degree d forms on P^n, C(n+d, n).

    Arguments:
      - `n` : (int) projective dimension, n >= 1
      - `d` : (int) degree, d >= 0

    Returns:
      - (int)
    """
    if n < 1:
        raise Error(f"projective dimension must be at least 1, got {n}")
    if d < 0:
        raise Error(f"degree must be non-negative, got {d}")
    return comb(n + d, n)


class MonomialBasis:
    """Exponent vectors of the degree d monomials in n+1 variables."""

    def __init__(self, n, d):
        if n < 1 or d < 0:
            raise Error(f"no monomial basis for n={n}, d={d}")
        self.n = n
        self.d = d
        exponents = []
        for combo in combinations_with_replacement(range(n + 1), d):
            e = [0] * (n + 1)
            for i in combo:
                e[i] += 1
            exponents.append(tuple(e))
        self.order = tuple(sorted(exponents, reverse=True))
        self.index = {e: i for i, e in enumerate(self.order)}

    def __len__(self):
        return len(self.order)

    def __iter__(self):
        return iter(self.order)

    def __repr__(self):
        return f"MonomialBasis(n={self.n}, d={self.d})"


@lru_cache(maxsize=None)
def basis(n, d):
    """Cached MonomialBasis for (n, d)."""
    return MonomialBasis(n, d)


def _coordinates(b, p):
    if hasattr(p, "coords"):
        coords = p.coords
    else:
        coords = tuple(to_scalar(x) for x in p)
        if not any(coords):
            raise ZeroPoint("all coordinates are zero")
    if len(coords) != b.n + 1:
        raise Error(f"point with {len(coords)} coordinates for a basis on P^{b.n}")
    return coords


def _powers(coords, d):
    return [[c**k for k in range(d + 1)] for c in coords]


def eval_row(b, p):
    """Monomials of b evaluated at p.

    Coordinates are used as given when p is a plain sequence, so scaling p by
    t scales the row by t**d.

    Arguments:
      - `b` : MonomialBasis
      - `p` : ProjPoint or sequence of n+1 exact scalars

    Returns:
      - tuple of len(b) exact scalars
    """
    coords = _coordinates(b, p)
    pw = _powers(coords, b.d)
    return tuple(
        to_scalar(prod(pw[i][e[i]] for i in range(b.n + 1))) for e in b.order
    )


def partial_rows(b, p):
    """First partial derivatives of the monomials of b at p.

    Row i holds d/dx_i of every monomial. Together the n+1 rows span the
    conditions imposed by the double point 2p.

    Arguments:
      - `b` : MonomialBasis with d >= 1
      - `p` : ProjPoint or sequence of n+1 exact scalars

    Returns:
      - list of n+1 tuples of len(b) exact scalars
    """
    if b.d == 0:
        raise DegreeZero("constants have no derivative conditions")
    coords = _coordinates(b, p)
    pw = _powers(coords, b.d)
    rows = []
    for i in range(b.n + 1):
        row = []
        for e in b.order:
            if e[i] == 0:
                row.append(0)
                continue
            value = e[i] * prod(
                pw[j][e[j] - (j == i)] for j in range(b.n + 1)
            )
            row.append(to_scalar(value))
        rows.append(tuple(row))
    return rows


class Form:
    """A degree d form on P^n given by coefficients over basis(n, d)."""

    def __init__(self, n, d, coeffs):
        self.basis = basis(n, d)
        coeffs = tuple(to_scalar(c) for c in coeffs)
        if len(coeffs) != len(self.basis):
            raise Error(
                f"{len(coeffs)} coefficients for {len(self.basis)} monomials"
            )
        self.coeffs = coeffs

    @property
    def n(self):
        return self.basis.n

    @property
    def degree(self):
        return self.basis.d

    def is_zero(self):
        return not any(self.coeffs)

    def __call__(self, p):
        row = eval_row(self.basis, p)
        return to_scalar(sum((a * b for a, b in zip(self.coeffs, row)), Fraction(0)))

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return (self.n, self.degree, self.coeffs) == (
            other.n,
            other.degree,
            other.coeffs,
        )

    def __repr__(self):
        return f"Form(n={self.n}, d={self.degree}, coeffs={self.coeffs!r})"

    def to_expr(self, gens):
        """sympy expression of the form in the given generators."""
        return sympy.Add(
            *[
                _rational(c) * sympy.Mul(*[g**k for g, k in zip(gens, e)])
                for c, e in zip(self.coeffs, self.basis.order)
                if c
            ]
        )


class BinaryForm:
    """Homogeneous form of a given degree in two variables x, y.

    coeffs[i] is the coefficient of x**(degree - i) * y**i.
    """

    def __init__(self, degree, coeffs):
        coeffs = tuple(to_scalar(c) for c in coeffs)
        if degree < 0 or len(coeffs) != degree + 1:
            raise Error(f"{len(coeffs)} coefficients for a binary form of degree {degree}")
        self.degree = degree
        self.coeffs = coeffs

    @classmethod
    def zero(cls, degree):
        return cls(degree, [0] * (degree + 1))

    @classmethod
    def from_expr(cls, expr, x, y, degree):
        """Binary form from a sympy expression homogeneous in x, y."""
        poly = sympy.Poly(expr, x, y, domain=sympy.QQ)
        if poly.is_zero:
            return cls.zero(degree)
        if not poly.is_homogeneous or poly.total_degree() != degree:
            raise Error(f"expression is not a binary form of degree {degree}")
        return cls(
            degree,
            [
                _fraction(poly.coeff_monomial(x ** (degree - i) * y**i))
                for i in range(degree + 1)
            ],
        )

    def is_zero(self):
        return not any(self.coeffs)

    def __call__(self, root):
        a, b = root
        return to_scalar(
            sum(
                (c * Fraction(a) ** (self.degree - i) * Fraction(b) ** i
                 for i, c in enumerate(self.coeffs)),
                Fraction(0),
            )
        )

    def __eq__(self, other):
        if not isinstance(other, BinaryForm):
            return NotImplemented
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __repr__(self):
        return f"BinaryForm({self.degree}, {self.coeffs!r})"

    def to_expr(self, x, y):
        return sympy.Add(
            *[
                _rational(c) * x ** (self.degree - i) * y**i
                for i, c in enumerate(self.coeffs)
            ]
        )

    def proportional(self, other):
        """True when both forms differ by a nonzero scalar."""
        if self.degree != other.degree or self.is_zero() or other.is_zero():
            return False
        i = next(k for k, c in enumerate(self.coeffs) if c)
        if not other.coeffs[i]:
            return False
        ratio = Fraction(other.coeffs[i]) / Fraction(self.coeffs[i])
        return all(ratio * a == b for a, b in zip(self.coeffs, other.coeffs))

    def root(self):
        """Root (a:b) of a nonzero linear form."""
        if self.degree != 1 or self.is_zero():
            raise Error(f"root() needs a nonzero linear form, got {self!r}")
        c0, c1 = self.coeffs
        return (to_scalar(-Fraction(c1)), c0) if c0 else (1, 0)


def _rational(c):
    c = Fraction(c)
    return sympy.Rational(c.numerator, c.denominator)


def _fraction(c):
    c = sympy.Rational(c)
    return to_scalar(Fraction(int(c.p), int(c.q)))


_gens = sympy.symbols("x0:3")


def _actual_resultant(fe, ge, m, k, var):
    # resultant with the true degrees in var
    if m == 0 and k == 0:
        return sympy.Integer(1)
    if m == 0:
        return fe**k
    if k == 0:
        return ge**m
    return sympy.resultant(fe, ge, var)


def _formal_resultant(fe, m, ge, k, var):
    mf = sympy.degree(fe, var)
    kg = sympy.degree(ge, var)
    if mf < m and kg < k:
        return sympy.Integer(0)
    if mf < m:
        return (-1) ** (m * k) * _formal_resultant(ge, k, fe, m, var)
    lc = sympy.Poly(fe, var).LC()
    drop = k - kg
    return lc**drop * _actual_resultant(fe, ge, m, kg, var)


def resultant(f, g, eliminate=2):
    """Sylvester resultant of two ternary forms.

    The forms are treated as polynomials of formal degree deg(f), deg(g) in
    the eliminated variable, so the result is a binary form of degree
    deg(f) * deg(g) in the two remaining variables (kept in their original
    order). It vanishes at (a:b) when f and g have a common zero above (a:b);
    it is identically zero when both forms vanish at the point where only
    the eliminated coordinate is nonzero.

    Arguments:
      - `f`, `g` : Form on P^2
      - `eliminate` : (int) index of the variable to eliminate

    Returns:
      - BinaryForm
    """
    if f.n != 2 or g.n != 2:
        raise Error(f"resultant needs ternary forms, got n={f.n} and n={g.n}")
    if eliminate not in (0, 1, 2):
        raise Error(f"no variable x{eliminate} to eliminate")
    for form in (f, g):
        if form.is_zero():
            raise ZeroForm("resultant of a zero form")
    var = _gens[eliminate]
    x, y = (v for k, v in enumerate(_gens) if k != eliminate)
    fe = f.to_expr(_gens)
    ge = g.to_expr(_gens)
    res = _formal_resultant(fe, f.degree, ge, g.degree, var)
    logger.debug("resultant of degrees %s, %s in x%s", f.degree, g.degree, eliminate)
    return BinaryForm.from_expr(sympy.expand(res), x, y, f.degree * g.degree)


def deflate_roots(f, known):
    """Divide the linear factors of known roots out of f, once each.

    Arguments:
      - `f` : BinaryForm
      - `known` : sequence of roots (a, b), or ProjPoints on P^1

    Returns:
      - BinaryForm of degree f.degree - len(known)
    """
    x, y = sympy.symbols("x y")
    expr = f.to_expr(x, y)
    degree = f.degree
    for root in known:
        if hasattr(root, "coords"):
            root = root.coords
        a, b = (Fraction(to_scalar(c)) for c in root)
        if a == 0 and b == 0:
            raise ZeroPoint("root (0:0)")
        if degree == 0:
            raise NotARoot((a, b))
        current = BinaryForm.from_expr(expr, x, y, degree)
        if current((a, b)) != 0:
            raise NotARoot((a, b))
        quotient, remainder = sympy.div(
            sympy.Poly(expr, x, y, domain=sympy.QQ),
            sympy.Poly(_rational(b) * x - _rational(a) * y, x, y, domain=sympy.QQ),
        )
        if not remainder.is_zero:
            raise NotARoot((a, b))
        expr = quotient.as_expr()
        degree -= 1
    return BinaryForm.from_expr(expr, x, y, degree)
