"""Consistency checks, axis enumeration and profile statistics.

``check`` runs the full pipeline: the constraint matrix of the requested
model is simplified, every row is reduced into a universal PQ-tree, and the
surviving tree yields both one consistent axis and the number of them.
``brute_force_axes`` tries every permutation and serves as the oracle.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from itertools import permutations
from math import factorial

import networkx as nx
import numpy as np
import numpy.typing as npt

from singlepeaked.config import BRUTE_FORCE_LIMIT, OracleConfig
from singlepeaked.construction import Rejection, RowProvenance, build_matrix, members, simplify_rows
from singlepeaked.core import Axis, Profile, WeakOrder
from singlepeaked.exceptions import CandidateBoundExceeded
from singlepeaked.generator import ProfileGenerator
from singlepeaked.pqtree import PQTree, universal_tree
from singlepeaked.substructure import Model, axis_consistent

logger = logging.getLogger(__name__)


class Verdict(str, Enum):
    """Outcome of a consistency check."""

    CONSISTENT = "consistent"
    INCONSISTENT = "inconsistent"


@dataclass(frozen=True)
class NoFeasiblePermutation:
    """The first simplified matrix row that made the PQ-tree infeasible."""

    row_index: int
    provenance: RowProvenance

    @property
    def voter_index(self) -> int:
        """Index of the vote the row was built from."""
        return self.provenance.voter_index


@dataclass(frozen=True)
class ConsistencyResult:
    """Verdict of ``check``: an axis with the axis count, or the reason there is none."""

    model: Model
    axis: Axis | None = None
    axis_count: int = 0
    rejection: Rejection | None = None
    infeasible: NoFeasiblePermutation | None = None

    @property
    def verdict(self) -> Verdict:
        """Consistent iff an axis was found."""
        return Verdict.CONSISTENT if self.axis is not None else Verdict.INCONSISTENT

    @property
    def consistent(self) -> bool:
        """Shortcut for ``verdict is Verdict.CONSISTENT``."""
        return self.axis is not None

    @property
    def voter_index(self) -> int | None:
        """Index of the vote blamed for an inconsistency, if any."""
        if self.rejection is not None:
            return self.rejection.voter_index
        if self.infeasible is not None:
            return self.infeasible.voter_index
        return None


def _solve(profile: Profile, model: Model) -> tuple[ConsistencyResult, PQTree | None]:
    outcome = build_matrix(profile, model)
    if outcome.rejection is not None:
        return ConsistencyResult(model, rejection=outcome.rejection), None
    assert outcome.matrix is not None
    matrix = simplify_rows(outcome.matrix)
    tree = universal_tree(matrix.columns)
    for row_index, row in enumerate(matrix.rows):
        if not tree.reduce(members(row), index=row_index):
            provenance = matrix.provenance[row_index]
            logger.info(
                "No axis under %s: row %s from vote %s is not consecutive",
                model.value,
                row_index,
                provenance.voter_index,
            )
            return ConsistencyResult(model, infeasible=NoFeasiblePermutation(row_index, provenance)), None
    axis = Axis(tree.frontier())
    count = tree.count_frontiers()
    logger.info("Consistent under %s with %s axes", model.value, count)
    return ConsistencyResult(model, axis=axis, axis_count=count), tree


def check(profile: Profile, model: Model) -> ConsistencyResult:
    """Decide whether ``profile`` is consistent under ``model``.

    On success the result carries one consistent axis and the total number
    of consistent axes; otherwise it names the rejected vote or the first
    row that admits no column order.
    """
    return _solve(profile, model)[0]


def all_axes(profile: Profile, model: Model, cap: int | None = None) -> list[Axis]:
    """Return up to ``cap`` consistent axes in the tree's enumeration order.

    ``cap`` defaults to ``m!``, which always yields the complete list.
    """
    if cap is None:
        cap = factorial(profile.size)
    if cap < 1:
        raise ValueError(f"cap must be positive, got {cap}")
    _, tree = _solve(profile, model)
    if tree is None:
        return []
    return [Axis(frontier) for frontier in tree.enumerate_frontiers(cap)]


def brute_force_axes(profile: Profile, model: Model, limit: int = BRUTE_FORCE_LIMIT) -> list[Axis]:
    """Try every permutation of the candidates; return the consistent ones in lexicographic id order."""
    if profile.size > limit:
        raise CandidateBoundExceeded(f"Brute force is limited to {limit} candidates, profile has {profile.size}")
    found = []
    for positions in permutations(range(profile.size)):
        axis = Axis(positions)
        if axis_consistent(profile, axis, model):
            found.append(axis)
    return found


def guiding_order(profile: Profile) -> tuple[int, ...] | None:
    """Build a guiding order by peeling off uniquely last-ranked candidates.

    At every step each vote is restricted to the remaining candidates; among
    the candidates that are alone in the last tier of some vote, the one with
    the smallest id is removed and put on top of the order built so far.
    Returns the order most preferred first, or None when some step finds no
    such candidate.
    """
    remaining = set(range(profile.size))
    guide: list[int] = []
    while remaining:
        unique_last: set[int] = set()
        for order in profile.orders:
            last = order.restrict(remaining)[-1]
            if len(last) == 1:
                unique_last |= last
        if not unique_last:
            logger.info("No guiding order: no vote has a unique last among %s candidates", len(remaining))
            return None
        chosen = min(unique_last)
        remaining.remove(chosen)
        guide.insert(0, chosen)
    return tuple(guide)


def guiding_weak_order(profile: Profile) -> WeakOrder | None:
    """Return the guiding order as a vote, ready to be added to the profile."""
    guide = guiding_order(profile)
    return WeakOrder.from_ranking(guide) if guide is not None else None


@dataclass(frozen=True, eq=False)
class MajorityRelation:
    """Pairwise strict-preference tallies and the strict majority digraph.

    ``tallies[a, b]`` is the total weight of votes ranking ``a`` strictly
    above ``b``; votes indifferent between them count for neither side.
    """

    tallies: npt.NDArray[np.int64]
    cycle: tuple[int, ...] | None = None

    @property
    def size(self) -> int:
        """Number of candidates."""
        return int(self.tallies.shape[0])

    @property
    def acyclic(self) -> bool:
        """True iff the strict majority digraph has no cycle."""
        return self.cycle is None

    def beats(self, a: int, b: int) -> bool:
        """True iff a strict majority of the decided votes prefers ``a`` to ``b``."""
        return bool(self.tallies[a, b] > self.tallies[b, a])

    def margin(self, a: int, b: int) -> int:
        """Tally of ``a`` over ``b`` minus tally of ``b`` over ``a``."""
        return int(self.tallies[a, b] - self.tallies[b, a])

    def condorcet_winner(self) -> int | None:
        """Return the candidate beating every other one, if there is one."""
        for candidate in range(self.size):
            if all(self.beats(candidate, other) for other in range(self.size) if other != candidate):
                return candidate
        return None

    def digraph(self) -> nx.DiGraph:
        """Return the strict majority digraph, edges added in id order."""
        return _strict_digraph(self.tallies)


def _strict_digraph(tallies: npt.NDArray[np.int64]) -> nx.DiGraph:
    graph = nx.DiGraph()
    graph.add_nodes_from(range(tallies.shape[0]))
    wins = np.argwhere(tallies > tallies.T)
    graph.add_edges_from((int(a), int(b)) for a, b in wins)
    return graph


def _shortest_cycle(graph: nx.DiGraph) -> tuple[int, ...] | None:
    best: tuple[int, ...] | None = None
    for start in sorted(graph.nodes):
        paths = nx.single_source_shortest_path(graph, start)
        for closing in sorted(graph.predecessors(start)):
            if closing not in paths:
                continue
            cycle = tuple(paths[closing])
            if best is None or (len(cycle), cycle) < (len(best), best):
                best = cycle
    return best


def majority_relation(profile: Profile) -> MajorityRelation:
    """Tally every ordered candidate pair and look for a shortest majority cycle.

    The reported cycle starts at its smallest candidate id; among cycles of
    equal length the lexicographically smallest one is reported.
    """
    size = profile.size
    tallies = np.zeros((size, size), dtype=np.int64)
    for vote in profile.votes:
        levels = np.array([vote.order.tier_of[candidate] for candidate in range(size)])
        tallies += vote.multiplicity * (levels[:, None] < levels[None, :])
    cycle = _shortest_cycle(_strict_digraph(tallies))
    if cycle is not None:
        logger.info("Majority relation is cyclic, shortest cycle has %s candidates", len(cycle))
    return MajorityRelation(tallies, cycle)


@dataclass(frozen=True)
class OracleMismatch:
    """A profile on which the PQ-tree pipeline and brute force disagree."""

    trial: int
    model: Model
    profile: Profile
    missing: tuple[Axis, ...]
    unexpected: tuple[Axis, ...]


@dataclass(frozen=True)
class OracleReport:
    """Summary of a seeded oracle run."""

    trials: int
    seed: int
    mismatches: tuple[OracleMismatch, ...]

    @property
    def passed(self) -> bool:
        """True iff every trial agreed under every model."""
        return not self.mismatches


def compare_with_brute_force(profile: Profile, model: Model, trial: int = 0) -> OracleMismatch | None:
    """Compare the complete axis set against brute force for one profile and model."""
    fast = set(all_axes(profile, model))
    slow = brute_force_axes(profile, model)
    expected = set(slow)
    if fast == expected:
        return None
    return OracleMismatch(
        trial=trial,
        model=model,
        profile=profile,
        missing=tuple(axis for axis in slow if axis not in fast),
        unexpected=tuple(sorted(fast - expected, key=lambda axis: axis.positions)),
    )


def run_oracle(config: OracleConfig) -> OracleReport:
    """Generate seeded random profiles and cross-check every model on each."""
    generator = ProfileGenerator(
        seed=config.seed,
        max_candidates=config.max_candidates,
        max_voters=config.max_voters,
        tie_probability=config.tie_probability,
    )
    mismatches = []
    for trial in range(config.trials):
        profile = generator.profile()
        for model in Model:
            mismatch = compare_with_brute_force(profile, model, trial)
            if mismatch is not None:
                logger.warning("Trial %s disagrees with brute force under %s", trial, model.value)
                mismatches.append(mismatch)
    return OracleReport(config.trials, config.seed, tuple(mismatches))
