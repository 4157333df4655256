import pytest

from transitpoly.numfield import TimeParam
from transitpoly.verify import SystemCache


@pytest.fixture(scope="session")
def cache() -> SystemCache:
    """Shared enumeration cache: the expensive systems are built once."""
    return SystemCache()


@pytest.fixture(scope="session")
def t_half() -> TimeParam:
    return TimeParam.parse("1/2")


@pytest.fixture(scope="session")
def t_neg_half() -> TimeParam:
    return TimeParam.parse("-1/2")


@pytest.fixture(scope="session")
def t_zero() -> TimeParam:
    return TimeParam.parse("0")
