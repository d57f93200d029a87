import pytest

from endotorsion.linear import psl_as_permutation
from endotorsion.permcore import alternating_group, group_from_generators, symmetric_group


@pytest.fixture(scope="session")
def psl34():
    return psl_as_permutation(3, 4)[0]


@pytest.fixture(scope="session")
def psl25():
    return psl_as_permutation(2, 5)[0]


@pytest.fixture(scope="session")
def a5():
    return alternating_group(5)


@pytest.fixture(scope="session")
def s4():
    return symmetric_group(4)


@pytest.fixture(scope="session")
def twisted24():
    """An order-24 group (Z/3 x Z/2 acted on by a dihedral group of order 8,
    realized on 7 points) whose Sylow 2-subgroup controls fusion but fails the
    Frattini condition."""
    r = (1, 0, 2, 4, 5, 6, 3)
    s = (0, 1, 2, 3, 6, 5, 4)
    c = (1, 2, 0, 3, 4, 5, 6)
    return group_from_generators([r, s, c], name="twisted24")


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import LINES

    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)
