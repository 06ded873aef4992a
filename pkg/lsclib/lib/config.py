import sys

"""Variables prefixed with `DEFAULT` should be able to be overridden by
command‐line arguments and the environment."""


# Versions
VERSION_MAJOR = 1
VERSION_MINOR = 2
VERSION_REVISION = 0
VERSION_STRING = str(VERSION_MAJOR) + '.' + str(VERSION_MINOR) + '.' + str(VERSION_REVISION)

APP_NAME = 'lsc'
APP_AUTHOR = 'lsc-lib'


# Runs
DEFAULT_SEED = 0
DEFAULT_FUEL = 200
DEFAULT_BUDGET = 20000
DEFAULT_MAX_SIZE = 25
DEFAULT_WORKERS = 4
DEFAULT_SUITE_CASES = 500
DEFAULT_BISIMULATION_CASES = 1000
DEFAULT_REFLECTION_CASES = 200
DEFAULT_REFLECTION_STEPS = 10

SEED_ENV_VAR = 'LSC_SEED'


# Term generation, weights of the three node kinds
GEN_WEIGHT_APP = 0.45
GEN_WEIGHT_ABS = 0.35
GEN_WEIGHT_VAR = 0.20
GEN_NAMES = 'xyzwuv'

# Exhaustive enumeration
ENUMERATION_MAX_SIZE = 9
DETERMINISM_MAX_SIZE = 7
DETERMINISM_STEPS = 15


# Structural equivalence search
DUP_SUBSET_LIMIT = 4        # all 2^n occurrence subsets up to this many occurrences
EQUIV_SIZE_SLACK = 6
NORMALIZE_SIZE_LIMIT = 4000
BISIMULATION_PATH_LENGTH = 3
BISIMULATION_MAX_SIZE = 20
POSTPONEMENT_STEPS = 3


# Complexity
BILINEAR_RATIO_BOUND = 4.0
REFLECTION_SAFETY_FACTOR = 4


# Live values, set by server.initialise_config
SEED = DEFAULT_SEED
FUEL = DEFAULT_FUEL
BUDGET = DEFAULT_BUDGET
MAX_SIZE = DEFAULT_MAX_SIZE
WORKERS = DEFAULT_WORKERS
SUITE_CASES = DEFAULT_SUITE_CASES
LOG = None
VERBOSE = False


# Python recursion over deep terms
RECURSION_LIMIT = 20000
if sys.getrecursionlimit() < RECURSION_LIMIT:
    sys.setrecursionlimit(RECURSION_LIMIT)

# vim: tabstop=8 expandtab shiftwidth=4 softtabstop=4
