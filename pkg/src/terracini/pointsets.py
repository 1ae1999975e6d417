"""Text files of exact point sets.

A point set file gives the ambient dimension and one point per line::

    # three aligned points
    n 2
    point 1 0 0
    point 1 1 0
    point 1 2/3 0 double

Coordinates are integers or "p/q" rationals; the kind is "reduced" (the
default) or "double". A point tuple file for products of projective spaces
lists the factor dimensions and separates the factors with "|"::

    dims 1 1
    point 1 0 | 1 2

Writing then reading a set gives back the same points exactly.
"""

import shlex

from .conditions import DOUBLE, KINDS, REDUCED, SchemeSpec
from .coordinates import Error as CoordinateError
from .coordinates import ProjPoint
from .segre import SegrePoint
from .util import Error as ScalarError
from .util import format_scalar, parse_scalar


class Error(Exception):
    """Local exception class."""

    pass


class ParseError(Error):
    """Bad line in a point file."""

    def __init__(self, source, lineno, message):
        super().__init__(f"{source}, line {lineno}: {message}")
        self.source = source
        self.lineno = lineno


def _lines(text, source):
    for lineno, line in enumerate(text.splitlines(), start=1):
        try:
            tokens = shlex.split(line.replace("|", " | "), comments=True)
        except ValueError as err:
            raise ParseError(source, lineno, str(err)) from err
        if tokens:
            yield lineno, tokens


def _coords(tokens, source, lineno):
    try:
        return [parse_scalar(t) for t in tokens]
    except ScalarError as err:
        raise ParseError(source, lineno, str(err)) from err


def _point(coords, size, source, lineno):
    if len(coords) != size:
        raise ParseError(source, lineno, f"expected {size} coordinates, got {len(coords)}")
    try:
        return ProjPoint(coords)
    except CoordinateError as err:
        raise ParseError(source, lineno, str(err)) from err


def parse_pointset(text, source="<string>"):
    """Read a point set.

    Arguments:
      - `text` : (str) file contents
      - `source` : (str) name used in error messages

    Returns:
      - SchemeSpec
    """
    n = None
    items = []
    seen = {}
    for lineno, tokens in _lines(text, source):
        key = tokens[0]
        if key == "n":
            if n is not None:
                raise ParseError(source, lineno, "dimension given twice")
            if len(tokens) != 2:
                raise ParseError(source, lineno, "expected: n <dimension>")
            try:
                n = int(tokens[1])
            except ValueError as err:
                raise ParseError(source, lineno, f"bad dimension {tokens[1]}") from err
            if n < 1:
                raise ParseError(source, lineno, f"dimension must be at least 1, got {n}")
        elif key == "point":
            if n is None:
                raise ParseError(source, lineno, "point before the dimension line")
            values = tokens[1:]
            kind = REDUCED
            if values and values[-1] in KINDS:
                kind = values.pop()
            p = _point(_coords(values, source, lineno), n + 1, source, lineno)
            if p in seen:
                raise ParseError(
                    source, lineno, f"point {p} already given on line {seen[p]}"
                )
            seen[p] = lineno
            items.append((p, kind))
        else:
            raise ParseError(source, lineno, f'unknown directive "{key}"')
    if n is None:
        raise ParseError(source, 0, "no dimension line")
    if not items:
        raise ParseError(source, 0, "no points")
    return SchemeSpec(n, items)


def _read(path):
    try:
        with open(path, encoding="utf-8") as f:
            return f.read()
    except UnicodeDecodeError as err:
        raise ParseError(str(path), 0, f"not a UTF-8 text file: {err.reason}") from err


def read_pointset(path):
    return parse_pointset(_read(path), source=str(path))


def format_pointset(spec, comment=None):
    """Text of a point set; the inverse of parse_pointset."""
    lines = []
    if comment:
        lines.extend(f"# {line}" for line in comment.splitlines())
    lines.append(f"n {spec.n}")
    for p, kind in spec.items:
        coords = " ".join(format_scalar(c) for c in p.coords)
        lines.append(f"point {coords} double" if kind == DOUBLE else f"point {coords}")
    return "\n".join(lines) + "\n"


def write_pointset(spec, path, comment=None):
    with open(path, "w") as f:
        f.write(format_pointset(spec, comment=comment))


def parse_segre(text, source="<string>"):
    """Read a point tuple file.

    Returns:
      - (dims, list of SegrePoint)
    """
    dims = None
    points = []
    seen = {}
    for lineno, tokens in _lines(text, source):
        key = tokens[0]
        if key == "dims":
            if dims is not None:
                raise ParseError(source, lineno, "dimensions given twice")
            try:
                dims = tuple(int(t) for t in tokens[1:])
            except ValueError as err:
                raise ParseError(source, lineno, "bad factor dimension") from err
            if not dims or min(dims) < 1:
                raise ParseError(source, lineno, "factor dimensions must be at least 1")
        elif key == "point":
            if dims is None:
                raise ParseError(source, lineno, "point before the dims line")
            groups = [[]]
            for t in tokens[1:]:
                if t == "|":
                    groups.append([])
                else:
                    groups[-1].append(t)
            if len(groups) != len(dims):
                raise ParseError(
                    source, lineno, f"expected {len(dims)} factors, got {len(groups)}"
                )
            factors = [
                _point(_coords(g, source, lineno), m + 1, source, lineno)
                for g, m in zip(groups, dims)
            ]
            p = SegrePoint(factors)
            if p in seen:
                raise ParseError(
                    source, lineno, f"point {p} already given on line {seen[p]}"
                )
            seen[p] = lineno
            points.append(p)
        else:
            raise ParseError(source, lineno, f'unknown directive "{key}"')
    if dims is None:
        raise ParseError(source, 0, "no dims line")
    if not points:
        raise ParseError(source, 0, "no points")
    return dims, points


def read_segre(path):
    return parse_segre(_read(path), source=str(path))


def format_segre(points, comment=None):
    lines = []
    if comment:
        lines.extend(f"# {line}" for line in comment.splitlines())
    lines.append("dims " + " ".join(str(m) for m in points[0].dims))
    for p in points:
        factors = " | ".join(
            " ".join(format_scalar(c) for c in f.coords) for f in p.factors
        )
        lines.append(f"point {factors}")
    return "\n".join(lines) + "\n"
