import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ncring.families import census, matrix_ring, opposite, row_ring, upper_triangular_ring


@pytest.fixture(scope="session")
def row2():
    return row_ring(2)


@pytest.fixture(scope="session")
def row2op(row2):
    return opposite(row2)


@pytest.fixture(scope="session")
def ut2():
    return upper_triangular_ring(2, 2)


@pytest.fixture(scope="session")
def m2z2():
    return matrix_ring(2, 2)


@pytest.fixture(scope="session")
def m2z3():
    return matrix_ring(2, 3)


@pytest.fixture(scope="session")
def census8():
    """One representative per isomorphism class of non-commutative rings, order <= 8."""
    return census(8, noncommutative=True, dedupe=True)


@pytest.fixture(scope="session")
def labelled_census8():
    """Every non-commutative multiplication on every shape of order <= 8."""
    return census(8, noncommutative=True, dedupe=False)


def mat(R, *entries):
    """Rank of the matrix with the given row-major entries (matrix-ring fixtures)."""
    return R.rank(entries)


def pytest_terminal_summary(terminalreporter):
    acc = sys.modules.get("test_acceptance")
    if acc is None or not acc.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(acc.RESULTS):
        terminalreporter.write_line(acc.RESULTS[n])
