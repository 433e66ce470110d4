import random

import pytest
from hypothesis import settings

from bei.field import CoefficientField
from bei.poly import Polynomial
from bei.ring import PolyRing

settings.register_profile("bei", max_examples=60, deadline=None, derandomize=True)
settings.load_profile("bei")

QQ = CoefficientField(0)
FP = CoefficientField(32003)


def random_poly(ring: PolyRing, rng: random.Random, terms: int = 4, max_deg: int = 3, homogeneous: int | None = None):
    acc = Polynomial(ring, {})
    for _ in range(terms):
        if homogeneous is not None:
            exps = [0] * ring.nvars
            for _ in range(homogeneous):
                exps[rng.randrange(ring.nvars)] += 1
        else:
            exps = [0] * ring.nvars
            for _ in range(rng.randint(0, max_deg)):
                exps[rng.randrange(ring.nvars)] += 1
        c = rng.randint(-5, 5) or 1
        acc = acc + Polynomial.from_exponents(ring, [(c, exps)])
    return acc


@pytest.fixture
def ring3():
    return PolyRing.for_graph(3, QQ)


@pytest.fixture
def rng():
    return random.Random(12345)


# one line per acceptance criterion, shown in the terminal summary
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
