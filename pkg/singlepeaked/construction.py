"""0-1 constraint matrices for the consecutive ones reduction.

Rows are stored as integer bitmasks over candidate ids (bit ``c`` set iff
column ``c`` holds a 1). Each voter contributes a block of base rows, the
upper contour sets ``U_t`` for thresholds ``t = 1 .. m-1`` emitted top to
bottom; under the single-plateaued and single-peaked models every nonpeak
tier of exactly two candidates adds three gadget rows below the block.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Iterator

import numpy as np
import numpy.typing as npt

from singlepeaked.core import Profile, WeakOrder
from singlepeaked.substructure import Model

logger = logging.getLogger(__name__)


class RowKind(str, Enum):
    """Where a matrix row comes from."""

    BASE = "base"
    GADGET_TOP = "gadget-top"
    GADGET_MID = "gadget-mid"
    GADGET_BOTTOM = "gadget-bottom"


class RejectionReason(str, Enum):
    """Why a vote makes the profile inconsistent on every axis."""

    TRIPLE_NONPEAK_INDIFFERENCE = "triple-nonpeak-indifference"
    MULTIPLE_PEAKS = "multiple-peaks"


@dataclass(frozen=True)
class RowProvenance:
    """Origin of one row: the voter and either a threshold or a gadget pair."""

    voter_index: int
    kind: RowKind
    threshold: int | None = None
    pair: tuple[int, int] | None = None


@dataclass(frozen=True)
class Rejection:
    """A vote that rules out every axis before any matrix is solved."""

    voter_index: int
    reason: RejectionReason


@dataclass(frozen=True)
class ConstraintMatrix:
    """A 0-1 matrix, one candidate bitmask per row."""

    columns: tuple[int, ...]
    rows: tuple[int, ...]
    provenance: tuple[RowProvenance, ...]

    def __len__(self) -> int:
        """Return the number of rows."""
        return len(self.rows)

    @property
    def full_mask(self) -> int:
        """Return the bitmask holding every column."""
        mask = 0
        for column in self.columns:
            mask |= 1 << column
        return mask

    def as_array(self) -> npt.NDArray[np.uint8]:
        """Return the dense grid, columns in ``self.columns`` order."""
        grid = np.zeros((len(self.rows), len(self.columns)), dtype=np.uint8)
        for index, row in enumerate(self.rows):
            for position, column in enumerate(self.columns):
                grid[index, position] = (row >> column) & 1
        return grid


@dataclass(frozen=True)
class BuildOutcome:
    """Either a constraint matrix or the rejection that made one pointless."""

    matrix: ConstraintMatrix | None = None
    rejection: Rejection | None = None

    @property
    def rejected(self) -> bool:
        """Return whether construction stopped on a rejected vote."""
        return self.rejection is not None


def members(row: int) -> Iterator[int]:
    """Yield the candidate ids set in a row bitmask, smallest first."""
    candidate = 0
    while row:
        if row & 1:
            yield candidate
        row >>= 1
        candidate += 1


def _mask(candidates: frozenset[int] | set[int]) -> int:
    mask = 0
    for candidate in candidates:
        mask |= 1 << candidate
    return mask


def reject_vote(order: WeakOrder, model: Model) -> RejectionReason | None:
    """Return why ``order`` alone rules out every axis under ``model``, if it does."""
    if model is Model.EXIST_SP:
        return None
    if model is Model.SINGLE_PEAKED and len(order.tiers[0]) >= 2:
        return RejectionReason.MULTIPLE_PEAKS
    if any(len(tier) >= 3 for tier in order.tiers[1:]):
        return RejectionReason.TRIPLE_NONPEAK_INDIFFERENCE
    return None


def _voter_rows(order: WeakOrder, voter_index: int, model: Model) -> Iterator[tuple[int, RowProvenance]]:
    size = order.size
    tier_masks = [_mask(tier) for tier in order.tiers]
    starts = [order.above[min(tier)] for tier in order.tiers]

    upper = 0
    included = 0
    for threshold in range(1, size):
        while included < len(tier_masks) and starts[included] < threshold:
            upper |= tier_masks[included]
            included += 1
        yield upper, RowProvenance(voter_index, RowKind.BASE, threshold=threshold)

    if model is Model.EXIST_SP:
        return
    better = tier_masks[0]
    for tier, tier_mask in zip(order.tiers[1:], tier_masks[1:]):
        if len(tier) == 2:
            # the smaller id takes the [0, 1, 1] column
            low, high = sorted(tier)
            pair = (low, high)
            yield better | (1 << high), RowProvenance(voter_index, RowKind.GADGET_TOP, pair=pair)
            yield better | tier_mask, RowProvenance(voter_index, RowKind.GADGET_MID, pair=pair)
            yield better | (1 << low), RowProvenance(voter_index, RowKind.GADGET_BOTTOM, pair=pair)
        better |= tier_mask


def build_matrix(profile: Profile, model: Model) -> BuildOutcome:
    """Build the constraint matrix of ``profile`` under ``model``.

    Every vote is screened for rejection first, so the reported rejection is
    always the first rejected vote in profile order.
    """
    for voter_index, order in enumerate(profile.orders):
        reason = reject_vote(order, model)
        if reason is not None:
            logger.info("Vote %s rejected under %s: %s", voter_index, model.value, reason.value)
            return BuildOutcome(rejection=Rejection(voter_index, reason))

    rows: list[int] = []
    provenance: list[RowProvenance] = []
    for voter_index, order in enumerate(profile.orders):
        for row, origin in _voter_rows(order, voter_index, model):
            rows.append(row)
            provenance.append(origin)
    logger.info("Built %s rows for %s votes under %s", len(rows), len(profile.votes), model.value)
    matrix = ConstraintMatrix(tuple(range(profile.size)), tuple(rows), tuple(provenance))
    return BuildOutcome(matrix=matrix)


def simplify_rows(matrix: ConstraintMatrix) -> ConstraintMatrix:
    """Drop rows that never constrain a column order and deduplicate the rest.

    Empty rows, singletons and the full column set are consecutive under
    every permutation. Duplicates keep their first provenance.
    """
    full = matrix.full_mask
    seen: set[int] = set()
    rows: list[int] = []
    provenance: list[RowProvenance] = []
    for row, origin in zip(matrix.rows, matrix.provenance):
        if row.bit_count() < 2 or row == full or row in seen:
            continue
        seen.add(row)
        rows.append(row)
        provenance.append(origin)
    logger.debug("Simplified %s rows down to %s", len(matrix.rows), len(rows))
    return ConstraintMatrix(matrix.columns, tuple(rows), tuple(provenance))


def dump_matrix(matrix: ConstraintMatrix, profile: Profile) -> str:
    """Render the canonical dump: a name header, then one line of 0/1 digits per row."""
    lines = [" ".join(profile.name_of(column) for column in matrix.columns)]
    for row in matrix.rows:
        lines.append(" ".join(str((row >> column) & 1) for column in matrix.columns))
    return "\n".join(lines) + "\n"
