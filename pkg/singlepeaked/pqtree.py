"""Booth-Lueker PQ-tree over integer column ids.

The tree keeps every column order in which all reduced rows are
consecutive: P-node children may be permuted freely, Q-node children may
only be reversed. Nodes live in an index-addressed arena; parent and child
links are arena indices.

A reduction labels the pertinent subtree (the smallest subtree holding
every column of the row) bottom-up and applies the templates P1-P6 and
Q1-Q3. Partial nodes below the pertinent root always come out as Q-nodes
whose full children sit at the right end.
"""

import logging
import sys
from dataclasses import dataclass, field
from enum import Enum
from itertools import islice, permutations
from math import factorial
from typing import Iterable, Iterator, Sequence

from singlepeaked.exceptions import EmptyTreeError, InfeasibleTreeError, UnknownColumnError

logger = logging.getLogger(__name__)

NO_PARENT = -1


class NodeKind(str, Enum):
    """Kind of PQ-tree node."""

    LEAF = "leaf"
    P = "P"
    Q = "Q"


class _Label(Enum):
    EMPTY = 0
    PARTIAL = 1
    FULL = 2


@dataclass
class _Node:
    kind: NodeKind
    children: list[int] = field(default_factory=list)
    parent: int = NO_PARENT
    column: int | None = None


@dataclass(frozen=True)
class ReduceResult:
    """Outcome of one reduction."""

    feasible: bool
    violating_row: int | None = None

    def __bool__(self) -> bool:
        """Truthy iff the tree is still feasible."""
        return self.feasible


class _Infeasible(Exception):
    """No template applies: the row can not be made consecutive."""


class PQTree:
    """PQ-tree whose frontiers are exactly the feasible column orders."""

    def __init__(self, columns: Iterable[int]) -> None:
        """Build the universal tree: one P-node over all columns, or a lone leaf.

        :param columns: column ids; their iteration order becomes the stored leaf order
        """
        ordered = list(dict.fromkeys(columns))
        if not ordered:
            raise EmptyTreeError("a PQ-tree needs at least one column")
        self._nodes: list[_Node] = []
        self._free: list[int] = []
        self._leaves: dict[int, int] = {}
        for column in ordered:
            self._leaves[column] = self._new(NodeKind.LEAF, [], column=column)
        if len(ordered) == 1:
            self._root = self._leaves[ordered[0]]
        else:
            self._root = self._new(NodeKind.P, [self._leaves[column] for column in ordered])
        self._reductions = 0
        self._infeasible_row: int | None = None
        # per-reduction scratch state
        self._pertinent: set[int] = set()
        self._labels: dict[int, _Label] = {}
        self._released: list[int] = []
        self._touched: set[int] = set()

    @property
    def columns(self) -> frozenset[int]:
        """Return the leaf set."""
        return frozenset(self._leaves)

    @property
    def feasible(self) -> bool:
        """Return whether some column order satisfies every reduced row."""
        return self._infeasible_row is None

    @property
    def infeasible_row(self) -> int | None:
        """Return the index of the first row that made the tree infeasible."""
        return self._infeasible_row

    # arena bookkeeping

    def _new(self, kind: NodeKind, children: Sequence[int], column: int | None = None) -> int:
        node = _Node(kind, [], NO_PARENT, column)
        if self._free:
            index = self._free.pop()
            self._nodes[index] = node
        else:
            index = len(self._nodes)
            self._nodes.append(node)
        self._set_children(index, children)
        return index

    def _set_children(self, index: int, children: Sequence[int]) -> None:
        node = self._nodes[index]
        node.children = list(children)
        for child in node.children:
            self._nodes[child].parent = index
        if node.kind is NodeKind.Q:
            self._touched.add(index)

    def _group(self, children: list[int]) -> int:
        """Return the single child, or a new P-node over several."""
        if len(children) == 1:
            return children[0]
        return self._new(NodeKind.P, children)

    def _replace(self, old: int, new: int) -> None:
        parent = self._nodes[old].parent
        self._nodes[new].parent = parent
        if parent == NO_PARENT:
            self._root = new
        else:
            siblings = self._nodes[parent].children
            siblings[siblings.index(old)] = new

    def _release(self, index: int) -> None:
        self._released.append(index)

    # reduction

    def reduce(self, row: Iterable[int], index: int | None = None) -> ReduceResult:
        """Restrict the tree to column orders in which ``row`` is consecutive.

        :param row: column ids holding a 1
        :param index: row index reported on infeasibility; defaults to the
            number of reductions performed so far
        :raises InfeasibleTreeError: when the tree is already infeasible
        :raises UnknownColumnError: when the row names a column the tree lacks
        """
        if self._infeasible_row is not None:
            raise InfeasibleTreeError(f"tree became infeasible at row {self._infeasible_row}")
        row_index = self._reductions if index is None else index
        self._reductions += 1
        targets = set(row)
        unknown = targets - self._leaves.keys()
        if unknown:
            raise UnknownColumnError(f"row {row_index} names unknown column(s) {sorted(unknown)}")
        if len(targets) <= 1 or len(targets) == len(self._leaves):
            return ReduceResult(True)

        # union of the leaf-to-root paths; each node is visited once
        pertinent: set[int] = set()
        below: dict[int, list[int]] = {}
        for column in targets:
            node = self._leaves[column]
            while node != NO_PARENT and node not in pertinent:
                pertinent.add(node)
                parent = self._nodes[node].parent
                if parent != NO_PARENT:
                    below.setdefault(parent, []).append(node)
                node = parent
        pertinent_root = self._root
        while len(below.get(pertinent_root, ())) == 1:
            pertinent_root = below[pertinent_root][0]

        self._pertinent = pertinent
        self._labels = {}
        self._released = []
        self._touched = set()
        try:
            self._process(pertinent_root)
        except _Infeasible:
            self._infeasible_row = row_index
            logger.info("Row %s can not be made consecutive; tree is infeasible", row_index)
            return ReduceResult(False, row_index)
        finally:
            self._pertinent = set()
            self._labels = {}

        released = set(self._released)
        for node in self._touched - released:
            if self._nodes[node].kind is NodeKind.Q and len(self._nodes[node].children) == 2:
                self._nodes[node].kind = NodeKind.P
        for node in released:
            self._nodes[node] = _Node(NodeKind.LEAF)
            self._free.append(node)
        self._released = []
        self._touched = set()
        logger.debug("Reduced row %s over %s columns", row_index, len(targets))
        return ReduceResult(True)

    def _process(self, pertinent_root: int) -> None:
        """Label the pertinent subtree bottom-up, children before their parent."""
        order: list[int] = []
        stack = [pertinent_root]
        while stack:
            index = stack.pop()
            order.append(index)
            stack.extend(child for child in self._nodes[index].children if child in self._pertinent)
        # ids of unprocessed nodes stay valid: templates only release processed nodes
        for index in reversed(order):
            self._label_node(index, is_root=index == pertinent_root)

    def _label_node(self, index: int, is_root: bool) -> _Label:
        node = self._nodes[index]
        if node.kind is NodeKind.LEAF:
            self._labels[index] = _Label.FULL
            return _Label.FULL
        # templates applied to children may have swapped child ids in place
        children = list(node.children)
        labels = [self._labels.get(child, _Label.EMPTY) for child in children]
        if all(label is _Label.FULL for label in labels):
            self._labels[index] = _Label.FULL
            return _Label.FULL

        if node.kind is NodeKind.P:
            full = [c for c, label in zip(children, labels) if label is _Label.FULL]
            empty = [c for c, label in zip(children, labels) if label is _Label.EMPTY]
            partial = [c for c, label in zip(children, labels) if label is _Label.PARTIAL]
            if is_root:
                if not partial:
                    self._template_p2(index, full, empty)
                elif len(partial) == 1:
                    self._template_p4(index, full, empty, partial[0])
                elif len(partial) == 2:
                    self._template_p6(index, full, empty, partial[0], partial[1])
                else:
                    raise _Infeasible
                return _Label.PARTIAL
            if not partial:
                result = self._template_p3(index, full, empty)
            elif len(partial) == 1:
                result = self._template_p5(index, full, empty, partial[0])
            else:
                raise _Infeasible
            self._labels[result] = _Label.PARTIAL
            return _Label.PARTIAL

        if is_root:
            self._template_q3(index, children, labels)
        else:
            self._template_q2(index, children, labels)
        self._labels[index] = _Label.PARTIAL
        return _Label.PARTIAL

    def _template_p2(self, index: int, full: list[int], empty: list[int]) -> None:
        if len(full) >= 2:
            self._set_children(index, empty + [self._new(NodeKind.P, full)])

    def _template_p3(self, index: int, full: list[int], empty: list[int]) -> int:
        partial = self._new(NodeKind.Q, [self._group(empty), self._group(full)])
        self._replace(index, partial)
        self._release(index)
        return partial

    def _template_p4(self, index: int, full: list[int], empty: list[int], partial: int) -> None:
        if full:
            self._set_children(partial, self._nodes[partial].children + [self._group(full)])
        if empty:
            self._set_children(index, empty + [partial])
        else:
            self._replace(index, partial)
            self._release(index)

    def _template_p5(self, index: int, full: list[int], empty: list[int], partial: int) -> int:
        sequence = list(self._nodes[partial].children)
        if empty:
            sequence.insert(0, self._group(empty))
        if full:
            sequence.append(self._group(full))
        self._set_children(partial, sequence)
        self._replace(index, partial)
        self._release(index)
        return partial

    def _template_p6(self, index: int, full: list[int], empty: list[int], left: int, right: int) -> None:
        sequence = list(self._nodes[left].children)
        if full:
            sequence.append(self._group(full))
        sequence.extend(reversed(self._nodes[right].children))
        self._set_children(left, sequence)
        self._release(right)
        if empty:
            self._set_children(index, empty + [left])
        else:
            self._replace(index, left)
            self._release(index)

    def _splice(self, index: int, children: list[int], labels: list[_Label], flipped: int | None = None) -> None:
        """Inline the partial children of Q-node ``index``.

        Partial children are stored empty-to-full; the one at position
        ``flipped`` goes in reversed so its full end faces left.
        """
        sequence: list[int] = []
        for position, child in enumerate(children):
            if labels[position] is not _Label.PARTIAL:
                sequence.append(child)
                continue
            grandchildren = self._nodes[child].children
            sequence.extend(reversed(grandchildren) if position == flipped else grandchildren)
            self._release(child)
        self._set_children(index, sequence)

    @staticmethod
    def _singly_partial(labels: list[_Label]) -> bool:
        """Return whether the non-empty children form a suffix, full except possibly its first."""
        start = next(i for i, label in enumerate(labels) if label is not _Label.EMPTY)
        return all(label is _Label.FULL for label in labels[start + 1 :])

    def _template_q2(self, index: int, children: list[int], labels: list[_Label]) -> None:
        if not self._singly_partial(labels):
            children.reverse()
            labels.reverse()
            if not self._singly_partial(labels):
                raise _Infeasible
        self._splice(index, children, labels)

    def _template_q3(self, index: int, children: list[int], labels: list[_Label]) -> None:
        pertinent = [i for i, label in enumerate(labels) if label is not _Label.EMPTY]
        start, end = pertinent[0], pertinent[-1]
        if any(label is not _Label.FULL for label in labels[start + 1 : end]):
            raise _Infeasible
        self._splice(index, children, labels, flipped=end if end != start else None)

    # queries

    def _require_feasible(self) -> None:
        if self._infeasible_row is not None:
            raise InfeasibleTreeError(f"tree became infeasible at row {self._infeasible_row}")

    def frontier(self) -> tuple[int, ...]:
        """Return the stored leaf order, a canonical feasible permutation."""
        self._require_feasible()
        return self._leaf_order({})

    def _leaf_order(self, arrangement: dict[int, Sequence[int]]) -> tuple[int, ...]:
        """Read the leaves left to right, taking internal nodes' child orders from ``arrangement``."""
        order: list[int] = []
        stack = [self._root]
        while stack:
            index = stack.pop()
            node = self._nodes[index]
            if node.kind is NodeKind.LEAF:
                assert node.column is not None
                order.append(node.column)
            else:
                stack.extend(reversed(arrangement.get(index, node.children)))
        return tuple(order)

    def count_frontiers(self) -> int:
        """Return the number of feasible permutations.

        Each P-node contributes the factorial of its child count, each Q-node a factor 2.
        """
        self._require_feasible()
        total = 1
        stack = [self._root]
        while stack:
            node = self._nodes[stack.pop()]
            if node.kind is NodeKind.P:
                total *= factorial(len(node.children))
            elif node.kind is NodeKind.Q:
                total *= 2
            stack.extend(node.children)
        return total

    def iter_frontiers(self) -> Iterator[tuple[int, ...]]:
        """Yield every feasible permutation exactly once, the stored frontier first.

        P-node children are permuted in the lexicographic order of their stored
        positions; Q-nodes yield their stored orientation before the reversed one.
        Internal nodes are advanced like an odometer, the last one in pre-order fastest.
        """
        self._require_feasible()
        return self._frontiers()

    def _frontiers(self) -> Iterator[tuple[int, ...]]:
        internal: list[int] = []
        stack = [self._root]
        while stack:
            index = stack.pop()
            if self._nodes[index].kind is not NodeKind.LEAF:
                internal.append(index)
                stack.extend(reversed(self._nodes[index].children))
        arrangements = [self._arrangements(index) for index in internal]
        current = [next(arrangement) for arrangement in arrangements]
        while True:
            yield self._leaf_order(dict(zip(internal, current)))
            position = len(internal) - 1
            while position >= 0:
                following = next(arrangements[position], None)
                if following is not None:
                    current[position] = following
                    break
                arrangements[position] = self._arrangements(internal[position])
                current[position] = next(arrangements[position])
                position -= 1
            if position < 0:
                return

    def _arrangements(self, index: int) -> Iterator[Sequence[int]]:
        children = self._nodes[index].children
        if self._nodes[index].kind is NodeKind.Q:
            return iter((children, children[::-1]))
        return permutations(children)

    def enumerate_frontiers(self, cap: int) -> list[tuple[int, ...]]:
        """Return the first ``cap`` frontiers of :meth:`iter_frontiers`."""
        if cap < 1:
            raise ValueError(f"cap must be positive, got {cap}")
        return list(islice(self.iter_frontiers(), min(cap, self.count_frontiers(), sys.maxsize)))

    def describe(self) -> str:
        """Return the tree in bracket notation, e.g. ``P(3 4 Q(2 0 1))``."""
        parts: list[str] = []
        stack: list[int | str] = [self._root]
        while stack:
            item = stack.pop()
            if isinstance(item, str):
                parts.append(item)
                continue
            node = self._nodes[item]
            if node.kind is NodeKind.LEAF:
                parts.append(str(node.column))
            else:
                parts.append(f"{node.kind.value}(")
                stack.append(")")
                stack.extend(reversed(node.children))
        pieces = parts[:1]
        for previous, part in zip(parts, parts[1:]):
            if not previous.endswith("(") and part != ")":
                pieces.append(" ")
            pieces.append(part)
        return "".join(pieces)


def universal_tree(columns: Iterable[int]) -> PQTree:
    """Return the tree admitting every permutation of ``columns``."""
    return PQTree(sorted(set(columns)))


def reduce(tree: PQTree, row: Iterable[int], index: int | None = None) -> ReduceResult:
    """Reduce ``tree`` by one row; see :meth:`PQTree.reduce`."""
    return tree.reduce(row, index)


def one_frontier(tree: PQTree) -> tuple[int, ...]:
    """Return the canonical feasible column order of ``tree``."""
    return tree.frontier()


def count_frontiers(tree: PQTree) -> int:
    """Return the number of feasible column orders of ``tree``."""
    return tree.count_frontiers()


def enumerate_frontiers(tree: PQTree, cap: int) -> list[tuple[int, ...]]:
    """Return up to ``cap`` distinct feasible column orders in enumeration order."""
    return tree.enumerate_frontiers(cap)
