"""Terracini loci of Veronese and Segre varieties in exact arithmetic.

__init__.py for terracini
"""

__all__ = [
    "conditions",
    "configurations",
    "constants",
    "coordinates",
    "globals",
    "linalg",
    "locus",
    "pointsets",
    "polyspace",
    "reports",
    "segre",
    "util",
]
