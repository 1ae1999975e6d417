"""Fixed values used throughout terracini.

Nothing here is meant to be changed at run time; the adjustable settings are
in terracini.globals.
"""

#
# Version of the JSON report and CSV layouts. Bump whenever a field is added,
# removed or renamed.
#
schema_version = 1

#
# Process exit codes of the command line interface.
#
exit_non_member = 0
exit_member = 10
exit_usage = 64
exit_data = 65
exit_internal = 70

#
# Prime used for the certified rank shortcut. A rank mod p can only be lower
# than the rational rank, so reaching min(rows, cols) mod p settles it.
#
certification_prime = 2**31 - 1

#
# Alexander-Hirschowitz exceptional cells (n, d, r) other than quadrics.
# For d = 2 every n > 1 and r > 1 is defective.
#
ah_exceptions = frozenset(
    [
        (4, 3, 7),
        (2, 4, 5),
        (3, 4, 9),
        (4, 4, 14),
    ]
)

#
# Plane curve degree names accepted by the family descriptor grammar.
#
curve_degrees = {
    "line": 1,
    "conic": 2,
    "cubic": 3,
    "quartic": 4,
}

#
# Dimension of the family of complete intersections of two plane cubics as a
# locus in the 9-fold symmetric product of the plane: 8 free points, the
# ninth is fixed.
#
ci_cubics_dimension = 16

#
# Node sets of irreducible nodal plane curves. Key is (d, r), value the
# dimension of the stratum in the r-fold symmetric product of the plane.
# These come from moduli-of-curves counts and are never sampled.
#
nodal_strata = {
    (6, 9): 17,
    (7, 12): 23,
    (8, 15): 29,
}
