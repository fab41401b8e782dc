import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from helmlab.forward import WaveParams
from helmlab.geometry import Circle, Ellipse, Kite


@pytest.fixture
def unit_disk():
    return Circle(center=(0.0, 0.0), radius=1.0)


@pytest.fixture
def kite():
    return Kite(center=(0.0, 0.0), scale=1.0)


@pytest.fixture
def ellipse():
    return Ellipse(center=(0.0, 0.0), a=2.0, b=1.0)


@pytest.fixture
def wave_k1():
    return WaveParams.from_angle(1.0, 0.0)
