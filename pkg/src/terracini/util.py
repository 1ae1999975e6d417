"""Collection of miscellaneous functions.

Parameter file handling, logging setup and the text form of exact scalars.
"""

import logging
import os
import shlex
from fractions import Fraction

from . import globals as globls

logger = logging.getLogger(__name__)


class Error(Exception):
    """Local exception class."""

    pass


_int_params = {
    "primes": 1,
    "prime_bits": 8,
    "bound": 2,
    "subset_cap": 1,
    "jobs": 1,
    "chart_retries": 1,
    "draw_retries": 1,
}

_choice_params = {
    "mode": ("exact", "modular"),
    "log_level": ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"),
}


def params_path():
    """Locate the parameter file.

    Search order is the TERRACINI_PARAMS environment variable, then
    "terracini_params.txt" in the current directory, then the copy installed
    with the package.

    Returns:
      - path to the parameter file : (str)
    """
    fname = os.environ.get("TERRACINI_PARAMS")
    if fname is not None:
        if not os.path.exists(fname):
            raise Error(f'TERRACINI_PARAMS points to a missing file "{fname}"')
        return fname

    fname = "terracini_params.txt"
    if os.path.exists(fname):
        return fname

    # last resort
    fname = os.path.join(os.path.dirname(__file__), "terracini_params.txt")
    logger.warning(
        'Using the settings file installed with the package at "%s". You may '
        "want to set the TERRACINI_PARAMS environment variable to point to the "
        'file you want, or create a "terracini_params.txt" file in the current '
        "directory.",
        fname,
    )
    return fname


def load_params(fname=None):
    """Read a parameter file and assign global values.

    Each entry is a key followed by its value; "#" starts a comment.

    Arguments:
      - `fname` : (str) parameter file, located with params_path() when None

    Returns:
        nothing
    """
    if fname is None:
        fname = params_path()

    try:
        f = open(fname)
    except OSError as value:
        raise Error(
            f"""
Unable to open param file "{fname}". Either set TERRACINI_PARAMS correctly or
create terracini_params.txt in the current directory"""
        ) from value

    with f:
        lex = shlex.shlex(f)
        # tokens and values can have dots, dashes, slashes, colons
        lex.wordchars = f"{lex.wordchars}.-/\\:"
        while token := lex.get_token():
            value = lex.get_token()
            if not value:
                raise Error(f"missing value for {token} at line {lex.lineno}")
            if token in _int_params:
                try:
                    number = int(value)
                except ValueError as err:
                    raise Error(
                        f"bad value {value} for {token} at line {lex.lineno}"
                    ) from err
                if number < _int_params[token]:
                    raise Error(
                        f"{token} must be at least {_int_params[token]}, "
                        f"got {number} at line {lex.lineno}"
                    )
                setattr(globls, token, number)
            elif token in _choice_params:
                if token == "log_level":
                    value = value.upper()
                if value not in _choice_params[token]:
                    raise Error(
                        f"{token} must be one of {_choice_params[token]}, "
                        f"got {value} at line {lex.lineno}"
                    )
                setattr(globls, token, value)
            else:
                raise Error(f"unknown token {token} at line {lex.lineno} in param file")
    if globls.prime_bits > 31:
        raise Error(f"prime_bits must be at most 31, got {globls.prime_bits}")


def configure_logging(level=None):
    """Send log records of the terracini package to stderr.

    Arguments:
      - `level` : (str) level name, defaults to globals.log_level
    """
    level = (level or globls.log_level).upper()
    root = logging.getLogger("terracini")
    if not any(getattr(h, "_terracini", False) for h in root.handlers):
        handler = logging.StreamHandler()
        handler.setFormatter(
            logging.Formatter("%(levelname)s %(name)s: %(message)s")
        )
        handler._terracini = True
        root.addHandler(handler)
    root.setLevel(level)


def to_scalar(x):
    """Canonical exact scalar.

    Integral values come back as int, other rationals as a reduced Fraction
    with positive denominator. Floats are refused.

    Arguments:
      - `x` : int, Fraction, numpy integer or "p/q" string

    Returns:
      - int or Fraction
    """
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, str):
        return parse_scalar(x)
    if isinstance(x, float):
        raise Error(f"inexact scalar {x!r}")
    try:
        # numpy integers and friends
        return int(x.__index__())
    except AttributeError as err:
        raise Error(f"not an exact scalar: {x!r}") from err


def format_scalar(x):
    """Text form of an exact scalar, "p/q" or "p".

    Arguments:
      - `x` : exact scalar

    Returns:
      - (str)
    """
    x = Fraction(to_scalar(x))
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_scalar(text):
    """Inverse of format_scalar.

    Arguments:
      - `text` : (str) "p/q" or "p", integers only

    Returns:
      - int or Fraction
    """
    text = text.strip()
    num, sep, den = text.partition("/")
    try:
        if sep:
            value = Fraction(int(num), int(den))
        else:
            value = Fraction(int(num))
    except (ValueError, ZeroDivisionError) as err:
        raise Error(f'not a rational number: "{text}"') from err
    return value.numerator if value.denominator == 1 else value
