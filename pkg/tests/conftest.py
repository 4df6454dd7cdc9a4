import os
import random
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from modules import config
from modules.cover_bounds import load_cover_systems
from modules.intervals import get_precision, set_precision
from modules.ledger import load_ledger
from modules.spectra_sets import load_block_specs


@pytest.fixture(autouse=True)
def restore_precision():
    bits = get_precision()
    yield
    set_precision(bits)


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture(scope='session')
def ledger_claims():
    return load_ledger()


@pytest.fixture(scope='session')
def claims_by_name(ledger_claims):
    return {c.id: c for c in ledger_claims}


@pytest.fixture(scope='session')
def cover_systems():
    return load_cover_systems()


@pytest.fixture(scope='session')
def block_specs():
    return load_block_specs()


@pytest.fixture
def data_dir():
    return config.DATA_DIR


def random_word(rng, alphabet, lo, hi):
    return ''.join(str(rng.choice(alphabet)) for _ in range(rng.randint(lo, hi)))


def random_literal(rng, alphabet=(1, 2, 3)):
    """A sequence with periodic tails on both sides and a random finite part."""
    left_tail = random_word(rng, alphabet, 1, 3)
    right_tail = random_word(rng, alphabet, 1, 3)
    left = random_word(rng, alphabet, 0, 4)
    right = random_word(rng, alphabet, 0, 4)
    origin = rng.choice(alphabet)
    return f'({left_tail}){left}{origin}*{right}({right_tail})'
