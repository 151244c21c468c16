import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

FIXTURE = Path(__file__).resolve().parents[1] / "src" / "swapopt" / "data" / "gestures_synthetic.csv"


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def hexagon_graph():
    from swapopt import build_permutohedron

    return build_permutohedron(3)


@pytest.fixture
def fixture_csv():
    return FIXTURE
