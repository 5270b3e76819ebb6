"""Fixture factories for random profile fixtures."""

from singlepeaked.factories.profiles import random_profiles

__all__ = ("random_profiles",)
