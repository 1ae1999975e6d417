#! /usr/bin/env python
"""Evidence for projectively equivalent factors on Segre varieties.

Samples 6-point configurations on (P^3)^3 of four kinds and counts how many
lie in the Terracini locus, and for those how many have pairwise or all
factor projections projectively equivalent.

Usage:

    conjecture_evidence --count 20 --seed 0

"""

import cltoolbox
from cltoolbox.rst_text_formatter import RSTHelpFormatter

from terracini.segre import conjecture_evidence as evidence_table
from terracini.util import configure_logging, load_params


@cltoolbox.command(formatter_class=RSTHelpFormatter)
def conjecture_evidence(count=20, seed=0, points=6, factor_dimension=3, factors=3):
    """Tabulate Terracini membership of sampled Segre configurations.

    Parameters
    ----------
    count : int
        Samples per kind of configuration.
    seed : int
        Seed of the sweep.
    points : int
        Points per configuration.
    factor_dimension : int
        Dimension of every factor.
    factors : int
        Number of factors.
    """
    load_params()
    configure_logging()
    table = evidence_table(
        int(count),
        int(seed),
        m=int(factor_dimension),
        factors=int(factors),
        r=int(points),
    )
    print(table.to_string())


def main():
    cltoolbox.main()


if __name__ == "__main__":
    main()
