"""Loader helper functions."""

import logging
import sys
from pathlib import Path
from typing import Callable

from singlepeaked.config import InputFormat
from singlepeaked.core import Profile, parse_native, parse_preflib
from singlepeaked.exceptions import ProfileNotFound

logger = logging.getLogger(__name__)

STDIN = "-"


def read_source(source: Path | str) -> str:
    """Return the text behind a path, or standard input for ``-``."""
    if str(source) == STDIN:
        return sys.stdin.read()
    try:
        return Path(source).read_text(encoding="utf-8")
    except OSError as ex:
        raise ProfileNotFound(f"Could not read profile {source}: {ex.strerror or ex}") from ex


def build_parser(fmt: InputFormat, complete_missing_last: bool = False) -> Callable[[str], Profile]:
    """Build the text-to-profile callable for an input format."""
    if fmt is InputFormat.PREFLIB:
        return lambda text: parse_preflib(text, complete_missing_last=complete_missing_last)
    if complete_missing_last:
        logger.warning("--complete-missing-last only applies to PrefLib input; ignoring it")
    return parse_native


def load_profile(
    source: Path | str,
    fmt: InputFormat = InputFormat.NATIVE,
    *,
    complete_missing_last: bool = False,
) -> Profile:
    """Load a profile from a file path or ``-`` for standard input.

    :param source: file path, or ``-``
    :param fmt: input encoding
    :param complete_missing_last: PrefLib only, rank unlisted candidates last
    """
    profile = build_parser(fmt, complete_missing_last)(read_source(source))
    logger.info("Loaded %s votes over %s candidates from %s", len(profile.votes), profile.size, source)
    return profile
