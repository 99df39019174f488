import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from orlicz_spectral import young


@pytest.fixture(scope="session")
def P2():
    return young.make_builtin("power", p=2)


@pytest.fixture(scope="session")
def P3():
    return young.make_builtin("power", p=3)


@pytest.fixture(scope="session")
def P4():
    return young.make_builtin("power", p=4)


@pytest.fixture(scope="session")
def PW24():
    return young.make_builtin("piecewise_power", p=2, q=4)


@pytest.fixture(scope="session")
def PL2():
    return young.make_builtin("power_log", p=2)


@pytest.fixture(scope="session")
def PL3():
    return young.make_builtin("power_log", p=3)
