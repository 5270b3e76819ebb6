"""Candidate and profile data model, native and PrefLib ingestion."""

import logging
import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, Sequence

from singlepeaked.exceptions import (
    DuplicateCandidateError,
    IncompleteVoteError,
    ProfileError,
    ProfileFormatError,
    RepeatedCandidateError,
    UnknownCandidateError,
)

logger = logging.getLogger(__name__)

FORBIDDEN_NAME_RE = re.compile(r"[\s>~,:]")
_NATIVE_HEADER_RE = re.compile(r"^candidates\s*:(?P<names>.*)$")
_VOTE_RE = re.compile(r"^(?P<count>\d+)\s*:(?P<body>.*)$")
_PREFLIB_NAME_RE = re.compile(r"^#\s*ALTERNATIVE NAME\s+(?P<id>\d+)\s*:\s*(?P<name>.*)$")
_PREFLIB_COUNT_RE = re.compile(r"^#\s*NUMBER ALTERNATIVES\s*:\s*(?P<count>\d+)\s*$")


@dataclass(frozen=True)
class Candidate:
    """A candidate: dense integer id and a display name."""

    id: int
    name: str


class OrderClass(str, Enum):
    """Strongest order class a weak order belongs to (total within top within weak)."""

    TOTAL = "total"
    TOP = "top"
    WEAK = "weak"


@dataclass(frozen=True)
class WeakOrder:
    """Ordered partition of the candidate ids into indifference tiers, best tier first."""

    tiers: tuple[frozenset[int], ...]
    tier_of: tuple[int, ...] = field(init=False, repr=False, compare=False)
    above: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        """Validate the partition and precompute tier indices and strictly-above counts."""
        seen: set[int] = set()
        for tier in self.tiers:
            if not tier:
                raise ProfileError("weak order contains an empty tier")
            if seen & tier:
                raise RepeatedCandidateError(f"candidate {min(seen & tier)} appears in more than one tier")
            seen |= tier
        if seen != set(range(len(seen))):
            raise ProfileError("weak order does not cover a dense candidate id range")
        tier_of = [0] * len(seen)
        above = [0] * len(seen)
        preceding = 0
        for index, tier in enumerate(self.tiers):
            for candidate in tier:
                tier_of[candidate] = index
                above[candidate] = preceding
            preceding += len(tier)
        object.__setattr__(self, "tier_of", tuple(tier_of))
        object.__setattr__(self, "above", tuple(above))

    @classmethod
    def from_tiers(cls, tiers: Iterable[Iterable[int]]) -> "WeakOrder":
        """Build a weak order from any iterable of candidate-id groups."""
        return cls(tuple(frozenset(tier) for tier in tiers))

    @classmethod
    def from_ranking(cls, ranking: Sequence[int]) -> "WeakOrder":
        """Build a total order from a ranking, most preferred first."""
        return cls(tuple(frozenset((candidate,)) for candidate in ranking))

    @property
    def size(self) -> int:
        """Return the number of ranked candidates."""
        return len(self.tier_of)

    def prefers(self, a: int, b: int) -> bool:
        """Return whether ``a`` is strictly preferred to ``b``."""
        return self.tier_of[a] < self.tier_of[b]

    def indifferent(self, a: int, b: int) -> bool:
        """Return whether ``a`` and ``b`` share a tier."""
        return self.tier_of[a] == self.tier_of[b]

    def restrict(self, keep: set[int] | frozenset[int]) -> list[frozenset[int]]:
        """Return the tiers restricted to ``keep``, empty tiers dropped."""
        restricted = [tier & keep for tier in self.tiers]
        return [tier for tier in restricted if tier]


@dataclass(frozen=True)
class Vote:
    """A weak order cast ``multiplicity`` times."""

    multiplicity: int
    order: WeakOrder


@dataclass(frozen=True)
class Axis:
    """A total order of candidate ids, leftmost first."""

    positions: tuple[int, ...]
    position_of: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        """Validate the permutation and index positions."""
        if sorted(self.positions) != list(range(len(self.positions))):
            raise ProfileError(f"axis {self.positions} is not a permutation of the candidate ids")
        position_of = [0] * len(self.positions)
        for index, candidate in enumerate(self.positions):
            position_of[candidate] = index
        object.__setattr__(self, "position_of", tuple(position_of))

    def __len__(self) -> int:
        """Return the number of candidates on the axis."""
        return len(self.positions)

    def __iter__(self) -> Iterator[int]:
        """Iterate over candidate ids from left to right."""
        return iter(self.positions)

    def reversed(self) -> "Axis":
        """Return the mirrored axis."""
        return Axis(tuple(reversed(self.positions)))


@dataclass(frozen=True)
class Profile:
    """Candidate set plus a multiset of weak orders."""

    candidates: tuple[Candidate, ...]
    votes: tuple[Vote, ...]

    def __post_init__(self) -> None:
        """Validate candidate ids, names and vote coverage."""
        names: set[str] = set()
        for index, candidate in enumerate(self.candidates):
            if candidate.id != index:
                raise ProfileError(f"candidate {candidate.name!r} has id {candidate.id}, expected {index}")
            _check_name(candidate.name)
            if candidate.name in names:
                raise DuplicateCandidateError(f"duplicate candidate name {candidate.name!r}")
            names.add(candidate.name)
        for voter, vote in enumerate(self.votes):
            if vote.multiplicity < 1:
                raise ProfileError(f"vote {voter} has multiplicity {vote.multiplicity}")
            if vote.order.size != len(self.candidates):
                raise IncompleteVoteError(f"vote {voter} does not rank exactly the profile's candidates")

    @classmethod
    def from_orders(cls, names: Sequence[str], orders: Iterable[WeakOrder | Vote]) -> "Profile":
        """Build a profile from names and orders (plain orders count once)."""
        votes = tuple(order if isinstance(order, Vote) else Vote(1, order) for order in orders)
        return cls(tuple(Candidate(index, name) for index, name in enumerate(names)), votes)

    @property
    def size(self) -> int:
        """Return the number of candidates."""
        return len(self.candidates)

    @property
    def total_weight(self) -> int:
        """Return the number of voters, multiplicities counted."""
        return sum(vote.multiplicity for vote in self.votes)

    @property
    def orders(self) -> list[WeakOrder]:
        """Return the order of every vote entry, in profile order."""
        return [vote.order for vote in self.votes]

    def name_of(self, candidate: int) -> str:
        """Return the display name of a candidate id."""
        return self.candidates[candidate].name

    def id_of(self, name: str) -> int:
        """Return the candidate id for a display name."""
        for candidate in self.candidates:
            if candidate.name == name:
                return candidate.id
        raise UnknownCandidateError(f"unknown candidate {name!r}")

    def with_vote(self, order: WeakOrder, multiplicity: int = 1) -> "Profile":
        """Return a copy of the profile with one more vote appended."""
        return Profile(self.candidates, self.votes + (Vote(multiplicity, order),))

    def format_order(self, order: WeakOrder) -> str:
        """Render a weak order in the native ``a ~ c > b`` notation."""
        return " > ".join(" ~ ".join(self.name_of(c) for c in sorted(tier)) for tier in order.tiers)

    def format_axis(self, axis: Axis) -> str:
        """Render an axis as ``a < b < c``."""
        return " < ".join(self.name_of(c) for c in axis)

    def parse_axis(self, text: str) -> Axis:
        """Parse ``a < b < c`` into an axis over this profile's candidates."""
        names = [part.strip() for part in text.split("<")]
        if len(names) != self.size:
            raise ProfileError(f"axis {text!r} lists {len(names)} candidates, profile has {self.size}")
        return Axis(tuple(self.id_of(name) for name in names))


def _check_name(name: str) -> None:
    if not name:
        raise ProfileFormatError("empty candidate name")
    if FORBIDDEN_NAME_RE.search(name):
        raise ProfileFormatError(f"candidate name {name!r} contains whitespace or one of '>~,:'")


def strictly_above_count(order: WeakOrder, candidate: int) -> int:
    """Return how many candidates ``order`` ranks strictly above ``candidate``."""
    return order.above[candidate]


def classify_order(order: WeakOrder) -> OrderClass:
    """Return the strongest class of ``order``: total, top or weak."""
    sizes = [len(tier) for tier in order.tiers]
    if all(size == 1 for size in sizes):
        return OrderClass.TOTAL
    if all(size == 1 for size in sizes[:-1]):
        return OrderClass.TOP
    return OrderClass.WEAK


def _content_lines(text: str) -> Iterator[tuple[int, str]]:
    for number, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.strip()
        if line and not line.startswith("#"):
            yield number, line


def _vote_line(line: str, number: int) -> tuple[int, str]:
    match = _VOTE_RE.match(line)
    if match is None:
        raise ProfileFormatError(f"expected '<multiplicity>: <vote>', got {line!r}", number)
    return int(match.group("count")), match.group("body")


def _complete_tiers(
    tiers: list[list[int]],
    size: int,
    number: int,
    complete_missing_last: bool = False,
) -> WeakOrder:
    """Validate coverage of a parsed vote and turn it into a weak order."""
    seen: set[int] = set()
    for tier in tiers:
        for candidate in tier:
            if candidate in seen:
                raise RepeatedCandidateError(f"candidate {candidate} ranked more than once", number)
            seen.add(candidate)
    missing = set(range(size)) - seen
    if missing:
        if not complete_missing_last:
            raise IncompleteVoteError(f"vote does not rank {len(missing)} candidate(s)", number)
        tiers = tiers + [sorted(missing)]
    return WeakOrder.from_tiers(tiers)


def parse_native(text: str) -> Profile:
    """Parse a profile in the native ``candidates:`` / ``k: a ~ b > c`` format.

    :param text: profile text
    :returns: validated profile, votes and multiplicities in input order
    :raises ProfileError: on invalid input; the message names the offending line
    """
    lines = _content_lines(text)
    header = next(lines, None)
    if header is None:
        raise ProfileFormatError("missing 'candidates:' header")
    number, line = header
    match = _NATIVE_HEADER_RE.match(line)
    if match is None:
        raise ProfileFormatError(f"expected 'candidates: n1,n2,...', got {line!r}", number)
    names = [name.strip() for name in match.group("names").split(",")]
    ids: dict[str, int] = {}
    for name in names:
        try:
            _check_name(name)
        except ProfileError as ex:
            raise ProfileFormatError(ex.message, number) from ex
        if name in ids:
            raise DuplicateCandidateError(f"duplicate candidate name {name!r}", number)
        ids[name] = len(ids)

    votes: list[Vote] = []
    for number, line in lines:
        count, body = _vote_line(line, number)
        if count == 0:
            raise ProfileError("zero multiplicity", number)
        tiers: list[list[int]] = []
        for tier_text in body.split(">"):
            tier: list[int] = []
            for name in (part.strip() for part in tier_text.split("~")):
                if not name:
                    raise ProfileFormatError(f"empty candidate in vote {body.strip()!r}", number)
                if name not in ids:
                    raise UnknownCandidateError(f"unknown candidate {name!r}", number)
                tier.append(ids[name])
            tiers.append(tier)
        votes.append(Vote(count, _complete_tiers(tiers, len(ids), number)))
    logger.debug("Parsed native profile with %s candidates and %s vote lines", len(ids), len(votes))
    return Profile.from_orders(names, votes)


def dump_native(profile: Profile) -> str:
    """Serialize a profile to the native format."""
    lines = ["candidates: " + ",".join(candidate.name for candidate in profile.candidates)]
    for vote in profile.votes:
        lines.append(f"{vote.multiplicity}: {profile.format_order(vote.order)}")
    return "\n".join(lines) + "\n"


def _split_preflib_body(body: str, number: int) -> list[str]:
    """Split a PrefLib vote body at top-level commas, keeping ``{...}`` groups whole."""
    parts: list[str] = []
    current: list[str] = []
    depth = 0
    for char in body:
        if char == "{":
            if depth:
                raise ProfileFormatError("nested '{' in vote", number)
            depth = 1
        elif char == "}":
            if not depth:
                raise ProfileFormatError("unbalanced '}' in vote", number)
            depth = 0
        elif char == "," and not depth:
            parts.append("".join(current).strip())
            current = []
            continue
        current.append(char)
    if depth:
        raise ProfileFormatError("unbalanced '{' in vote", number)
    parts.append("".join(current).strip())
    return parts


def parse_preflib(text: str, complete_missing_last: bool = False) -> Profile:
    """Parse PrefLib-style data (``count: i,{j,k},l`` vote lines).

    Candidate names come from ``# ALTERNATIVE NAME i: name`` header lines,
    falling back to the ids themselves when only ``# NUMBER ALTERNATIVES``
    is given. Characters not allowed in names are replaced by ``_``.

    :param text: PrefLib file contents
    :param complete_missing_last: append unranked candidates as a final tier
        instead of rejecting the vote
    :returns: validated profile
    """
    declared: dict[int, str] = {}
    declared_count: int | None = None
    vote_lines: list[tuple[int, str]] = []
    for number, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.strip()
        if not line:
            continue
        if line.startswith("#"):
            if name_match := _PREFLIB_NAME_RE.match(line):
                preflib_id = int(name_match.group("id"))
                if preflib_id in declared:
                    raise DuplicateCandidateError(f"alternative {preflib_id} declared twice", number)
                declared[preflib_id] = FORBIDDEN_NAME_RE.sub("_", name_match.group("name").strip())
            elif count_match := _PREFLIB_COUNT_RE.match(line):
                declared_count = int(count_match.group("count"))
            continue
        vote_lines.append((number, line))

    if not declared:
        if declared_count is None:
            raise ProfileFormatError("no '# ALTERNATIVE NAME' or '# NUMBER ALTERNATIVES' header")
        declared = {preflib_id: str(preflib_id) for preflib_id in range(1, declared_count + 1)}
    ids = {preflib_id: index for index, preflib_id in enumerate(sorted(declared))}
    names = [declared[preflib_id] for preflib_id in sorted(declared)]
    if len(set(names)) != len(names):
        raise DuplicateCandidateError("alternative names collide after sanitizing")

    votes: list[Vote] = []
    for number, line in vote_lines:
        count, body = _vote_line(line, number)
        if count == 0:
            logger.debug("Skipping zero-count vote on line %s", number)
            continue
        tiers: list[list[int]] = []
        for part in _split_preflib_body(body, number):
            if part.startswith("{") and part.endswith("}"):
                members = [member.strip() for member in part[1:-1].split(",")]
            elif "{" in part or "}" in part:
                raise ProfileFormatError(f"malformed braces in {part!r}", number)
            else:
                members = [part]
            tier: list[int] = []
            for member in members:
                if not member.isdigit():
                    raise ProfileFormatError(f"expected an alternative id, got {member!r}", number)
                if int(member) not in ids:
                    raise UnknownCandidateError(f"unknown alternative id {member}", number)
                tier.append(ids[int(member)])
            tiers.append(tier)
        votes.append(Vote(count, _complete_tiers(tiers, len(ids), number, complete_missing_last)))
    logger.debug("Parsed PrefLib profile with %s candidates and %s vote lines", len(ids), len(votes))
    return Profile.from_orders(names, votes)
