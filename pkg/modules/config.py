import os
from fractions import Fraction

PRECISION_BITS = 192
DEFAULT_TOL = Fraction(1, 10 ** 20)
DEFAULT_MAX_DEPTH = 24
DEFAULT_LOOKAHEAD = 4
REPLICATION_LOOKAHEAD = 8
DEFAULT_ORDER = 12
DEFAULT_ALPHABET = (1, 2, 3)
SURD_REFINE_MAX_BITS = 4096

DEFAULT_RAM_LIMIT_PERCENT = 75
MEMORY_BUDGET_WINDOWS = 10 ** 7
ESTIMATED_BYTES_PER_WINDOW = 160

REPLICATION_RADIUS = 17
REPLICATION_LEFT_EXTENT = 16
REPLICATION_RIGHT_EXTENT = 12
REPLICATION_SHIFT = -7
REPLICATION_BOUND = '3.70969985975033'
REPLICATION_SEED = '2332221233*222123322'

INTERVAL_ARITH_PREC = 128
THRESHOLD_TOL = Fraction(1, 10 ** 9)
POWER_ITERATION_TOL = 1e-14
POWER_ITERATION_MAX_STEPS = 5000

DATA_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'data')
LEDGER_FILE = 'ledger.txt'
COVER_FILE = 'cover_systems.json'
REGIONS_FILE = 'regions.json'
SUBSHIFT_FILE = 'subshifts.json'
BLOCK_FILE = 'block_constants.json'
CITED_FILE = 'cited_constants.json'

PRINTED_CONSTANTS = {
    'j0': '3.70969985967967',
    'j1': '3.70969985975042',
    'upsilon': '3.7096998597503',
    'sqrt2_plus_sqrt3': '3.14626436994197',
}

TASK_TYPES = {
    'ledger': 'Independent claim proofs, one per worker',
    'survivors': 'Lookahead elimination over candidate windows',
    'dimension': 'Pressure evaluations at independent exponents',
}
