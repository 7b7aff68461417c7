import math

import numpy as np
import pytest

from toruslab.sphere import Equator
from toruslab.surfaces import CliffordTorus, HomogeneousTorus


# Recorded equators of the fixture surfaces.
CLIFFORD_V0 = (0.0, 1.0, 0.0, 0.0)
CLIFFORD_TANGENT = (1.0, 0.0, 1.0, 0.0)


@pytest.fixture
def clifford() -> CliffordTorus:
    return CliffordTorus()


@pytest.fixture
def tube() -> HomogeneousTorus:
    return HomogeneousTorus(r=math.pi / 6)


@pytest.fixture
def v0() -> Equator:
    return Equator(v=np.array(CLIFFORD_V0))


@pytest.fixture
def tangent_equator_clifford() -> Equator:
    return Equator.from_pole(CLIFFORD_TANGENT)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(42)
