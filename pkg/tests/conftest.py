import pytest

from pgcover.galois import field_new, field_of_order
from pgcover.projective import space


@pytest.fixture(scope="session")
def gf5():
    return field_new(5)


@pytest.fixture(scope="session")
def gf4():
    return field_new(2, 2, [1, 1, 1])


@pytest.fixture(scope="session")
def plane5(gf5):
    return space(2, gf5)


@pytest.fixture(scope="session")
def pg33():
    return space(3, field_new(3))


def pg(n, q):
    return space(n, field_of_order(q))


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(mod.RESULTS):
            terminalreporter.write_line(line)
