import os
import random
import sys

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from skeincross import catalog  # noqa: E402
from skeincross.homotopy import random_path, validate_path  # noqa: E402

settings.register_profile(
    "default", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

START_NAMES = ("unknot", "kink+", "kink-", "3_1", "4_1")


def random_diagram(seed: int, steps: int, max_crossings: int = 9):
    rng = random.Random(seed)
    start = catalog.get(rng.choice(START_NAMES)).diagram
    return validate_path(random_path(start, rng, steps, max_crossings=max_crossings)).final


@st.composite
def diagrams(draw, max_crossings=9):
    """Valid diagrams reached by random R2/R3/crossing-change walks."""
    seed = draw(st.integers(0, 2**32 - 1))
    steps = draw(st.integers(0, 12))
    return random_diagram(seed, steps, max_crossings)


@pytest.fixture(scope="session")
def trefoil():
    return catalog.get("3_1").diagram


@pytest.fixture(scope="session")
def fig8():
    return catalog.get("4_1").diagram
