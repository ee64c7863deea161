import random

import pytest

from quatseq.quat import UNITS
from quatseq.seqs import QuatSequence


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)


def random_unit_sequence(rng: random.Random, length: int) -> QuatSequence:
    return QuatSequence(rng.choice(UNITS) for _ in range(length))
