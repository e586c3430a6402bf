import pytest

from ringcert import ColumnPartition, IndexedMatrix, Ring, ZZ

_REPORT = []


@pytest.fixture(scope="session")
def acceptance_report():
    return _REPORT


def pytest_terminal_summary(terminalreporter):
    if _REPORT:
        terminalreporter.section("acceptance criteria")
        for line in _REPORT:
            terminalreporter.write_line(line)


GF2 = Ring.gf(2)
GF3 = Ring.gf(3)
Z4 = Ring.mod(4)
Z6 = Ring.mod(6)


def mat(ring, rows):
    return IndexedMatrix.from_rows(ring, rows)


@pytest.fixture
def all_ones_gf2():
    """2x4 over GF(2), every column (1,1), blocks {1,2},{3,4}."""
    return mat(GF2, [[1, 1, 1, 1], [1, 1, 1, 1]]), ColumnPartition([[1, 2], [3, 4]])


@pytest.fixture
def unit_zero_gf2():
    """Columns (1,0), (0,1), (0,0); blocks {1,2},{3}."""
    return mat(GF2, [[1, 0, 0], [0, 1, 0]]), ColumnPartition([[1, 2], [3]])


@pytest.fixture
def gap_example_z():
    """3x4 over Z: e1, e2 in B1, e3 in B2, (0,1,0) in B3."""
    M = mat(ZZ, [[1, 0, 0, 0], [0, 1, 0, 1], [0, 0, 1, 0]])
    return M, ColumnPartition([[1, 2], [3], [4]])
