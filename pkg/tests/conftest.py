"""Tests main conftest file."""

from pathlib import Path

import pytest

from singlepeaked import factories
from singlepeaked.core import Profile, parse_native

pytest_plugins = ["pytester", "singlepeaked.plugin"]

TEST_PROFILES_DIR = Path(__file__).parent / "test_profiles"
EXAMPLE_TWO_FILE = TEST_PROFILES_DIR / "ex2.prof"
OBSERVATION_FILE = TEST_PROFILES_DIR / "observation.prof"
TWO_PEAKS_FILE = TEST_PROFILES_DIR / "twopeaks.prof"
BROKEN_FILE = TEST_PROFILES_DIR / "broken.prof"
PREFLIB_FILE = TEST_PROFILES_DIR / "example.soi"

oracle_profiles = factories.random_profiles(seed=7, max_candidates=7, max_voters=6, tie_probability=0.3)
total_order_profiles = factories.random_profiles(seed=11, max_candidates=6, max_voters=5, tie_probability=0.0)


@pytest.fixture
def example_two() -> Profile:
    """Two voters over a..e, single-plateaued but not single-peaked."""
    return parse_native(EXAMPLE_TWO_FILE.read_text(encoding="utf-8"))


@pytest.fixture
def observation() -> Profile:
    """Five voters, existentially single-peaked on a < b < c, with a cyclic majority."""
    return parse_native(OBSERVATION_FILE.read_text(encoding="utf-8"))
