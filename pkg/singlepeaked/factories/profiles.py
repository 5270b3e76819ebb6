"""Fixture factory for seeded random profiles."""

from typing import Callable

import pytest
from pytest import FixtureRequest

from singlepeaked.config import get_fixture_config
from singlepeaked.generator import ProfileGenerator


def random_profiles(
    seed: int | None = None,
    max_candidates: int | None = None,
    max_voters: int | None = None,
    tie_probability: float | None = None,
) -> Callable[[FixtureRequest], ProfileGenerator]:
    """Random profiles factory.

    Arguments left as None fall back to the ``--singlepeaked-*`` command line
    options, then to the ``singlepeaked_*`` ini keys.

    :param seed: random seed
    :param max_candidates: largest number of candidates per profile
    :param max_voters: largest number of votes per profile
    :param tie_probability: chance of merging two adjacent candidates into one tier
    :returns: function which makes a profile generator
    """

    @pytest.fixture
    def random_profiles_fixture(request: FixtureRequest) -> ProfileGenerator:
        """Fixture returning a freshly seeded profile generator.

        Every test gets its own generator, so the profiles a test sees do not
        depend on which other tests ran before it.

        :param request: fixture request object
        :returns: seeded ProfileGenerator
        """
        config = get_fixture_config(request)
        return ProfileGenerator(
            seed=config.seed if seed is None else seed,
            max_candidates=max_candidates or config.max_candidates,
            max_voters=max_voters or config.max_voters,
            tie_probability=config.tie_probability if tie_probability is None else tie_probability,
        )

    return random_profiles_fixture
