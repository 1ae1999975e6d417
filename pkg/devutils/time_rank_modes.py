#! /usr/bin/env python
"""Compare exact and modular ranks of double point condition matrices.

Usage:

    ./time_rank_modes.py

Full rank matrices take the certified shortcut in exact mode, so the
interesting rows are the deficient ones (the complete intersection family).
"""

import time

from terracini.conditions import SchemeSpec, conditions_matrix
from terracini.configurations import parse_family, with_constrained_subset
from terracini.linalg import bareiss_rank, rank, rank_modular
from terracini.util import load_params

load_params()

cells = [(2, 5, 7, "general"), (2, 5, 7, "6@conic"), (2, 6, 9, "9@ci"), (2, 8, 14, "general")]

for n, d, r, family in cells:
    points = with_constrained_subset(parse_family(family, r, n=n), 1)
    m = conditions_matrix(SchemeSpec.doubled(points, n=n), d)
    print(f"n={n} d={d} r={r} {family} {m.rows}x{m.cols}")
    for label, func in (
        ("certified", rank),
        ("bareiss", bareiss_rank),
        ("modular", lambda m: rank_modular(m).rank),
    ):
        t0 = time.time()
        value = func(m)
        print(f"    {label:10s} rank {value:4d}  {time.time() - t0:.4f} seconds")
