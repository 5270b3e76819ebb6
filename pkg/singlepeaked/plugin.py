"""Plugin module of singlepeaked."""

from _pytest.config.argparsing import Parser

from singlepeaked import factories

_help_seed = "Seed of the random_profiles fixture"
_help_max_candidates = "Largest number of candidates in a generated profile"
_help_max_voters = "Largest number of votes in a generated profile"
_help_tie_probability = "Chance of merging two adjacent candidates into one tier"


def pytest_addoption(parser: Parser) -> None:
    """Configure options for singlepeaked."""
    parser.addini(name="singlepeaked_seed", help=_help_seed, default="0")

    parser.addini(name="singlepeaked_max_candidates", help=_help_max_candidates, default="6")

    parser.addini(name="singlepeaked_max_voters", help=_help_max_voters, default="6")

    parser.addini(name="singlepeaked_tie_probability", help=_help_tie_probability, default="0.3")

    parser.addoption("--singlepeaked-seed", action="store", dest="singlepeaked_seed", help=_help_seed)

    parser.addoption(
        "--singlepeaked-max-candidates",
        action="store",
        dest="singlepeaked_max_candidates",
        help=_help_max_candidates,
    )

    parser.addoption(
        "--singlepeaked-max-voters",
        action="store",
        dest="singlepeaked_max_voters",
        help=_help_max_voters,
    )

    parser.addoption(
        "--singlepeaked-tie-probability",
        action="store",
        dest="singlepeaked_tie_probability",
        help=_help_tie_probability,
    )


random_profiles = factories.random_profiles()
