"""Seeded random weak-order profiles.

A random vote is a uniformly random ranking in which every adjacent pair is
then merged into one tier with probability ``tie_probability``.
"""

import random
from string import ascii_lowercase

from singlepeaked.core import Profile, Vote, WeakOrder


def candidate_names(size: int) -> list[str]:
    """Return ``a, b, c, ...`` for up to 26 candidates, ``c0, c1, ...`` beyond."""
    if size <= len(ascii_lowercase):
        return list(ascii_lowercase[:size])
    return [f"c{index}" for index in range(size)]


class ProfileGenerator:
    """Reproducible source of random profiles."""

    def __init__(
        self,
        seed: int = 0,
        max_candidates: int = 7,
        max_voters: int = 6,
        tie_probability: float = 0.3,
        min_candidates: int = 2,
    ) -> None:
        """Initialize the generator.

        :param seed: random seed; equal seeds give equal profile sequences
        :param max_candidates: upper bound on candidates per profile
        :param max_voters: upper bound on vote entries per profile
        :param tie_probability: chance of merging each adjacent ranked pair
        :param min_candidates: lower bound on candidates per profile
        """
        if not 0.0 <= tie_probability <= 1.0:
            raise ValueError(f"tie_probability must lie in [0, 1], got {tie_probability}")
        self.seed = seed
        self.max_candidates = max_candidates
        self.min_candidates = min(min_candidates, max_candidates)
        self.max_voters = max_voters
        self.tie_probability = tie_probability
        self._random = random.Random(seed)

    def weak_order(self, size: int) -> WeakOrder:
        """Return a random weak order over ``size`` candidates."""
        ranking = list(range(size))
        self._random.shuffle(ranking)
        tiers: list[list[int]] = []
        for candidate in ranking:
            if tiers and self._random.random() < self.tie_probability:
                tiers[-1].append(candidate)
            else:
                tiers.append([candidate])
        return WeakOrder.from_tiers(tiers)

    def profile(self, size: int | None = None, voters: int | None = None) -> Profile:
        """Return a random profile; sizes are drawn when not given."""
        if size is None:
            size = self._random.randint(self.min_candidates, self.max_candidates)
        if voters is None:
            voters = self._random.randint(1, self.max_voters)
        orders = [Vote(1, self.weak_order(size)) for _ in range(voters)]
        return Profile.from_orders(candidate_names(size), orders)

    def profiles(self, count: int) -> list[Profile]:
        """Return ``count`` random profiles."""
        return [self.profile() for _ in range(count)]
