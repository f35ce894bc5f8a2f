import random

import pytest

from dfaorev.dfao import Dfao, random_dfao
from dfaorev.monoid import OutputMap
from dfaorev.transforms import Transformation

ACCEPTANCE_LINES: list[str] = []


def T(text):
    return Transformation.parse(text)


def tau(text, k=None):
    return OutputMap.parse(text, k)


@pytest.fixture
def rng():
    return random.Random(20161019)


@pytest.fixture
def suffix101():
    """Binary strings ending in 101; letter 0 is '0', letter 1 is '1'.

    State q = length of the longest suffix of the input that is a prefix of 101.
    """
    return Dfao(
        4,
        2,
        (T("[1,3,1,3]"), T("[2,2,4,2]")),
        0,
        tau("[1,1,1,2]"),
    )


def random_machines(rng, count, max_n=5, max_k=3, max_sigma=3):
    out = []
    while len(out) < count:
        n = rng.randint(1, max_n)
        d = random_dfao(rng, n, rng.randint(1, max_sigma), rng.randint(1, max_k))
        out.append(d)
    return out


def random_word(rng, sigma, max_len=12):
    return [rng.randrange(sigma) for _ in range(rng.randint(0, max_len))]


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
