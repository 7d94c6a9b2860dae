import random
import sys
from pathlib import Path

import pytest

HERE = Path(__file__).parent
sys.path.insert(0, str(HERE))

CORPUS = HERE / "corpus"
GOLDEN = HERE / "golden"


def random_matrix(rng, n, density=0.5):
    return [[1 if rng.random() < density else 0 for _ in range(n)] for _ in range(n)]


def random_essential(rng, n, density=0.5):
    while True:
        rows = random_matrix(rng, n, density)
        if all(any(r) for r in rows):
            return rows


def labels(n):
    return [f"s{i}" for i in range(n)]


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def corpus():
    return CORPUS


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is None or not acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(acceptance.RESULTS):
        terminalreporter.write_line(acceptance.RESULTS[number])
