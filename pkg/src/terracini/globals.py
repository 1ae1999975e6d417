"""Global values.

These can be set directly, or there is a routine terracini.util.load_params()
which will assign them based on values in a parameter text file. Command line
options override them for a single run.
"""

#
# Arithmetic used for ranks, either "exact" or "modular". Modular results are
# labelled unverified unless two primes agree.
#
mode = "exact"

#
# Number of random primes drawn in modular mode.
#
primes = 2

#
# Bit size of the random primes drawn in modular mode. Must stay below 31 so
# that products of residues fit a 64 bit integer.
#
prime_bits = 30

#
# Coordinates of random points are integers drawn uniformly in
# [-bound, bound].
#
bound = 1000

#
# Largest number of subsets the membership criterion based on hypersurfaces
# through subsets will enumerate before giving up.
#
subset_cap = 10**6

#
# Worker processes used by batch scans.
#
jobs = 1

#
# Random changes of coordinates tried when no elimination chart is valid for
# the ninth base point construction.
#
chart_retries = 20

#
# Redraws allowed when a random configuration collides or degenerates.
#
draw_retries = 1000

#
# Level given to the stderr handler installed by the command line interface.
#
log_level = "WARNING"
