import os
import random

import pytest


@pytest.fixture(scope="session")
def seed():
    s = int(os.environ.get("SP4_SEED", "0")) or random.SystemRandom().randrange(2 ** 31)
    print("\nSP4_SEED=%d (set this env var to reproduce)" % s)
    return s


@pytest.fixture()
def rng(seed):
    return random.Random(seed)
