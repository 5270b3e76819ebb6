"""singlepeaked's configuration."""

from argparse import Namespace
from dataclasses import dataclass
from enum import Enum
from typing import Any

from pytest import FixtureRequest

from singlepeaked.substructure import Model

BRUTE_FORCE_LIMIT = 8
MAX_ORACLE_CANDIDATES = 8
DEFAULT_AXES_CAP = 1000


class InputFormat(str, Enum):
    """Supported profile encodings."""

    NATIVE = "native"
    PREFLIB = "preflib"


@dataclass(frozen=True)
class CheckConfig:
    """Options shared by the profile-reading subcommands."""

    path: str
    format: InputFormat
    model: Model
    complete_missing_last: bool
    json: bool
    cap: int = DEFAULT_AXES_CAP
    axis: str | None = None


@dataclass(frozen=True)
class OracleConfig:
    """Random cross-check of the PQ-tree pipeline against brute force."""

    trials: int = 1000
    max_candidates: int = 7
    max_voters: int = 6
    seed: int = 0
    tie_probability: float = 0.3
    json: bool = False


@dataclass(frozen=True)
class ProfileFixtureConfig:
    """Settings of the ``random_profiles`` pytest fixture."""

    seed: int
    max_candidates: int
    max_voters: int
    tie_probability: float


def get_config(namespace: Namespace) -> CheckConfig:
    """Return a CheckConfig instance built from parsed command line arguments."""
    return CheckConfig(
        path=namespace.path,
        format=InputFormat(namespace.format),
        model=Model(namespace.model),
        complete_missing_last=namespace.complete_missing_last,
        json=namespace.json,
        cap=getattr(namespace, "cap", DEFAULT_AXES_CAP),
        axis=getattr(namespace, "axis", None),
    )


def get_oracle_config(namespace: Namespace) -> OracleConfig:
    """Return an OracleConfig instance built from parsed command line arguments."""
    return OracleConfig(
        trials=namespace.trials,
        max_candidates=namespace.max_candidates,
        max_voters=namespace.max_voters,
        seed=namespace.seed,
        tie_probability=namespace.tie_probability,
        json=namespace.json,
    )


def get_fixture_config(request: FixtureRequest) -> ProfileFixtureConfig:
    """Return a ProfileFixtureConfig instance with configuration options."""

    def get_singlepeaked_option(option: str) -> Any:
        name = "singlepeaked_" + option
        return request.config.getoption(name) or request.config.getini(name)

    return ProfileFixtureConfig(
        # Values coming from an INI file are always strings
        seed=int(get_singlepeaked_option("seed")),
        max_candidates=int(get_singlepeaked_option("max_candidates")),
        max_voters=int(get_singlepeaked_option("max_voters")),
        tie_probability=float(get_singlepeaked_option("tie_probability")),
    )
