"""Forbidden substructures and direct axis verification.

A profile is consistent with an axis under a model exactly when no vote
contains one of the model's forbidden substructures on that axis:

* existentially single-peaked: no v-valley,
* single-plateaued: no v-valley and no nonpeak plateau,
* single-peaked: no v-valley and no plateau.

Every scan below works on the preference levels (tier indices) read along
the axis and is linear in the number of candidates. When several witnesses
exist the one with the lexicographically smallest axis positions is
returned.
"""

from dataclasses import dataclass
from enum import Enum
from itertools import combinations

from singlepeaked.core import Axis, Profile, WeakOrder


class Model(str, Enum):
    """Domain restriction a profile is checked against."""

    EXIST_SP = "exist"
    SINGLE_PLATEAUED = "plateau"
    SINGLE_PEAKED = "sp"


class WitnessKind(str, Enum):
    """Kind of forbidden substructure."""

    V_VALLEY = "v-valley"
    NONPEAK_PLATEAU = "nonpeak-plateau"
    PLATEAU = "plateau"


@dataclass(frozen=True)
class Witness:
    """A forbidden substructure found in one vote, candidates listed in axis order."""

    kind: WitnessKind
    voter_index: int
    candidates: tuple[int, ...]


@dataclass(frozen=True)
class AxisVerdict:
    """Outcome of verifying a whole profile against one axis."""

    consistent: bool
    witness: Witness | None = None

    def __bool__(self) -> bool:
        """Truthy iff the profile is consistent with the axis."""
        return self.consistent


def _levels(order: WeakOrder, axis: Axis) -> list[int]:
    return [order.tier_of[candidate] for candidate in axis.positions]


def _suffix_minimum(levels: list[int]) -> list[float]:
    """Return, for every position, the best (smallest) level strictly to its right."""
    result: list[float] = [float("inf")] * len(levels)
    best: float = float("inf")
    for position in range(len(levels) - 1, -1, -1):
        result[position] = best
        best = min(best, levels[position])
    return result


def find_v_valley(order: WeakOrder, axis: Axis, voter_index: int = 0) -> Witness | None:
    """Return a triple ``a < b < c`` on the axis with ``a > b`` and ``c > b``, if any."""
    levels = _levels(order, axis)
    size = len(levels)
    after = _suffix_minimum(levels)
    # j can be the bottom of a valley when something to its right beats it
    bottom = [after[j] < levels[j] for j in range(size)]
    worst_bottom_after = [-1] * size
    worst = -1
    for position in range(size - 1, -1, -1):
        worst_bottom_after[position] = worst
        if bottom[position]:
            worst = max(worst, levels[position])

    left = next((i for i in range(size) if worst_bottom_after[i] > levels[i]), None)
    if left is None:
        return None
    middle = next(j for j in range(left + 1, size) if bottom[j] and levels[j] > levels[left])
    right = next(k for k in range(middle + 1, size) if levels[k] < levels[middle])
    return Witness(
        WitnessKind.V_VALLEY,
        voter_index,
        (axis.positions[left], axis.positions[middle], axis.positions[right]),
    )


def find_nonpeak_plateau(order: WeakOrder, axis: Axis, voter_index: int = 0) -> Witness | None:
    """Return a triple ``a < b < c`` with ``a > b ~ c`` or ``a ~ b < c``, if any."""
    levels = _levels(order, axis)
    size = len(levels)
    after = _suffix_minimum(levels)
    # a > b ~ c: b needs an indifferent partner to its right
    has_twin = [False] * size
    # a ~ b < c: b needs something better to its right
    beaten = [after[j] < levels[j] for j in range(size)]

    twin_max_after = [-1] * size
    beaten_twin_after = [False] * size
    seen_levels: set[int] = set()
    twin_max = -1
    beaten_levels: set[int] = set()
    for position in range(size - 1, -1, -1):
        level = levels[position]
        twin_max_after[position] = twin_max
        beaten_twin_after[position] = level in beaten_levels
        has_twin[position] = level in seen_levels
        seen_levels.add(level)
        if has_twin[position]:
            twin_max = max(twin_max, level)
        if beaten[position]:
            beaten_levels.add(level)

    def pairs(i: int, j: int) -> bool:
        return (has_twin[j] and levels[j] > levels[i]) or (beaten[j] and levels[j] == levels[i])

    left = next(
        (i for i in range(size) if twin_max_after[i] > levels[i] or beaten_twin_after[i]),
        None,
    )
    if left is None:
        return None
    middle = next(j for j in range(left + 1, size) if pairs(left, j))
    if levels[middle] > levels[left]:
        right = next(k for k in range(middle + 1, size) if levels[k] == levels[middle])
    else:
        right = next(k for k in range(middle + 1, size) if levels[k] < levels[middle])
    return Witness(
        WitnessKind.NONPEAK_PLATEAU,
        voter_index,
        (axis.positions[left], axis.positions[middle], axis.positions[right]),
    )


def find_plateau(order: WeakOrder, axis: Axis, voter_index: int = 0) -> Witness | None:
    """Return two axis-adjacent candidates the vote is indifferent between, if any."""
    positions = axis.positions
    for left, right in zip(positions, positions[1:]):
        if order.indifferent(left, right):
            return Witness(WitnessKind.PLATEAU, voter_index, (left, right))
    return None


def _multiple_peaks(order: WeakOrder, axis: Axis, voter_index: int) -> Witness | None:
    top = order.tiers[0]
    if len(top) < 2:
        return None
    pair = sorted(sorted(top)[:2], key=lambda candidate: axis.position_of[candidate])
    return Witness(WitnessKind.PLATEAU, voter_index, tuple(pair))


def find_witness(order: WeakOrder, axis: Axis, model: Model, voter_index: int = 0) -> Witness | None:
    """Return the first forbidden substructure of ``model`` in one vote.

    Checks run in a fixed order: a multi-candidate top tier (single-peaked
    only), then v-valleys, then nonpeak plateaus or plateaus.
    """
    if model is Model.SINGLE_PEAKED:
        if witness := _multiple_peaks(order, axis, voter_index):
            return witness
    if witness := find_v_valley(order, axis, voter_index):
        return witness
    if model is Model.SINGLE_PLATEAUED:
        return find_nonpeak_plateau(order, axis, voter_index)
    if model is Model.SINGLE_PEAKED:
        return find_plateau(order, axis, voter_index)
    return None


def axis_consistent(profile: Profile, axis: Axis, model: Model) -> AxisVerdict:
    """Verify ``profile`` against ``axis`` under ``model``, stopping at the first witness."""
    for voter_index, vote in enumerate(profile.votes):
        witness = find_witness(vote.order, axis, model, voter_index)
        if witness is not None:
            return AxisVerdict(False, witness)
    return AxisVerdict(True)


def literal_witnesses(order: WeakOrder, axis: Axis, kind: WitnessKind) -> list[tuple[int, ...]]:
    """Enumerate every instance of ``kind`` straight from its definition.

    Cubic in the number of candidates; meant as a reference for the linear
    scans, not for production use.
    """
    positions = axis.positions
    if kind is WitnessKind.PLATEAU:
        return [(a, b) for a, b in zip(positions, positions[1:]) if order.indifferent(a, b)]
    found = []
    for a, b, c in combinations(positions, 3):
        if kind is WitnessKind.V_VALLEY:
            hit = order.prefers(a, b) and order.prefers(c, b)
        else:
            hit = (order.prefers(a, b) and order.indifferent(b, c)) or (
                order.indifferent(a, b) and order.prefers(c, b)
            )
        if hit:
            found.append((a, b, c))
    return found
