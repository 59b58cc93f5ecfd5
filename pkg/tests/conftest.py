from __future__ import annotations

import pytest

from ellgw.genus0 import cp1_potential, cp2_potential, km_cp2
from ellgw.genus1 import cp1_elliptic_potential, cp2_elliptic_potential, getzler_cp2


@pytest.fixture(scope="session")
def cp1_pair():
    return cp1_potential(), cp1_elliptic_potential()


@pytest.fixture(scope="session")
def cp2_pair():
    N0 = km_cp2(5)
    return cp2_potential(N0), cp2_elliptic_potential(getzler_cp2(5, N0))
