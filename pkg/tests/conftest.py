import numpy as np
import pytest

from growthlab.tree import GrowingTree, path, star


@pytest.fixture
def path3():
    return path(3)


@pytest.fixture
def star4():
    return star(4)


def random_parents(rng, n):
    return np.array([int(rng.integers(0, i)) for i in range(1, n)], dtype=np.int64)


def random_tree(rng, n):
    return GrowingTree.from_parents(random_parents(rng, n))


ACCEPTANCE_REPORT = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_REPORT:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_REPORT:
        terminalreporter.write_line(line)
