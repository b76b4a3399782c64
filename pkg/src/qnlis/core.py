"""Quadruple neighbor list: horizontal lists of equal rising length, plus
up/down links to the nearest earlier item one level above/below.

Increasing means non-decreasing throughout: ``a`` is compatible with ``b``
when ``a`` comes first and ``a.value <= b.value``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, List, Optional, Sequence


class StructureError(ValueError):
    """Raised when an operation's precondition on the structure fails."""


@dataclass(eq=False, slots=True)
class Node:
    value: float
    position: int
    level: int = 0
    left: Optional["Node"] = None
    right: Optional["Node"] = None
    up: Optional["Node"] = None
    down: Optional["Node"] = None

    def __repr__(self) -> str:
        return f"Node({self.value!r}@{self.position}, L{self.level})"

    def compatible_with(self, other: "Node") -> bool:
        return self.position < other.position and self.value <= other.value


@dataclass(eq=False)
class HorizontalList:
    head: Optional[Node] = None
    tail: Optional[Node] = None
    level: int = 1

    def __iter__(self) -> Iterator[Node]:
        node = self.head
        while node is not None:
            yield node
            if node is self.tail:
                return
            node = node.right

    def __repr__(self) -> str:
        return f"L{self.level}{[n.value for n in self]}"


@dataclass
class OpCounters:
    """Deterministic operation counts used in place of wall-clock timing."""

    inserts: int = 0
    searched_inserts: int = 0  # inserts that found a non-empty structure
    probes: int = 0
    last_probes: int = 0
    probe_bound_violations: int = 0
    deletes: int = 0
    delete_touches: int = 0
    last_delete_touches: int = 0
    max_delete_touches: int = 0

    def mean_probes(self) -> float:
        return self.probes / self.searched_inserts if self.searched_inserts else 0.0

    def mean_delete_touches(self) -> float:
        return self.delete_touches / self.deletes if self.deletes else 0.0


def probe_bound(m: int) -> int:
    """Tail probes allowed for a binary search over ``m`` lists."""
    if m <= 0:
        return 0
    # ceil(log2 m) == (m - 1).bit_length() for m >= 1
    return (m - 1).bit_length() + 1


def check_value(value) -> float:
    try:
        v = float(value)
    except (TypeError, ValueError):
        raise ValueError(f"not a number: {value!r}") from None
    if not math.isfinite(v):
        raise ValueError(f"value must be finite, got {v!r}")
    return v


@dataclass(eq=False)
class QNList:
    lists: List[HorizontalList] = field(default_factory=list)
    node_count: int = 0
    generation: int = 0
    counters: OpCounters = field(default_factory=OpCounters)
    last_position: Optional[int] = None

    @property
    def m(self) -> int:
        return len(self.lists)

    def __len__(self) -> int:
        return self.node_count

    def level(self, t: int) -> HorizontalList:
        """The horizontal list at 1-based level ``t``."""
        return self.lists[t - 1]

    def nodes(self) -> Iterator[Node]:
        for lst in self.lists:
            yield from lst

    def insert(self, value, position: int) -> int:
        """Append an item with a position later than any already present.

        Returns the level the item lands on.
        """
        v = check_value(value)
        if self.last_position is not None and position <= self.last_position:
            raise StructureError(
                f"position {position} does not exceed last position {self.last_position}"
            )
        lists = self.lists
        m = len(lists)
        # smallest k with Tail(L^k) > v; ties fall through to deeper lists
        lo, hi, probes = 0, m, 0
        while lo < hi:
            mid = (lo + hi) // 2
            probes += 1
            if lists[mid].tail.value > v:
                hi = mid
            else:
                lo = mid + 1

        c = self.counters
        c.inserts += 1
        c.last_probes = probes
        if m:
            c.searched_inserts += 1
            c.probes += probes
            if probes > probe_bound(m):
                c.probe_bound_violations += 1

        node = Node(v, position, lo + 1)
        if lo < m:
            lst = lists[lo]
            prev = lst.tail
            prev.right = node
            node.left = prev
            lst.tail = node
            if lo + 1 < m:
                node.down = lists[lo + 1].tail
        else:
            lists.append(HorizontalList(node, node, m + 1))
        if lo > 0:
            node.up = lists[lo - 1].tail

        self.node_count += 1
        self.last_position = position
        self.generation += 1
        return lo + 1

    def link_count(self) -> int:
        total = 0
        for n in self.nodes():
            total += sum(x is not None for x in (n.left, n.right, n.up, n.down))
        return total

    def snapshot(self) -> tuple:
        """Hashable picture of membership, order and all four links per node."""
        out = []
        for lst in self.lists:
            rows = []
            for n in lst:
                l, r, u, d = n.left, n.right, n.up, n.down
                rows.append((
                    n.position, n.value, n.level,
                    l and l.position, r and r.position, u and u.position, d and d.position,
                ))
            out.append(tuple(rows))
        return tuple(out)

    def values_by_level(self) -> List[List[float]]:
        return [[n.value for n in lst] for lst in self.lists]

    def __repr__(self) -> str:
        return f"QNList(m={self.m}, n={self.node_count}, {self.values_by_level()})"


def build(values: Iterable, positions: Optional[Sequence[int]] = None) -> QNList:
    """Build by inserting left to right; positions default to 1, 2, ..."""
    qn = QNList()
    if positions is None:
        for i, v in enumerate(values, start=1):
            qn.insert(v, i)
    else:
        values = list(values)
        if len(values) != len(positions):
            raise ValueError("values and positions differ in length")
        for v, p in zip(values, positions):
            qn.insert(v, p)
    return qn


def predecessors(structure: QNList, node: Node) -> List[Node]:
    """Predecessors of ``node``, scanned from its up neighbor leftward."""
    out = []
    a = node.up
    while a is not None and a.compatible_with(node):
        out.append(a)
        a = a.left
    return out


def rising_length(structure: QNList, node: Node) -> int:
    return node.level


@dataclass
class InvariantReport:
    ok: bool
    rule: Optional[str] = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        return "ok" if self.ok else f"{self.rule}: {self.detail}"


def _rightmost_before(lst: Optional[HorizontalList], position: int) -> Optional[Node]:
    found = None
    if lst is None:
        return None
    for n in lst:
        if n.position < position:
            found = n
        else:
            break
    return found


def check_invariants(structure: QNList) -> InvariantReport:
    """Verify the structural properties of a QN-List.

    Rules reported on failure:

    - ``link-symmetry``: left/right links are not mutual inverses
    - ``horizontal-order``: a list is not strictly decreasing in value with
      increasing position
    - ``level-cache``: a node's cached level disagrees with its list
    - ``tail-order``: list tails are not non-decreasing across levels
    - ``up-neighbor`` / ``down-neighbor``: a vertical link is not the rightmost
      earlier item in the adjacent list, or the down neighbor is not larger
    - ``predecessor``: a node below level 1 has no compatible up neighbor
    - ``node-count``: bookkeeping disagrees with the linked nodes
    """
    lists = structure.lists
    seen = set()
    count = 0
    for t, lst in enumerate(lists, start=1):
        if lst.head is None or lst.tail is None:
            return InvariantReport(False, "node-count", f"L{t} is empty")
        if lst.head.left is not None or lst.tail.right is not None:
            return InvariantReport(False, "link-symmetry", f"L{t} has dangling end links")
        if lst.level != t:
            return InvariantReport(False, "level-cache", f"list at index {t} labelled L{lst.level}")
        prev = None
        node = lst.head
        steps = 0
        while node is not None:
            steps += 1
            if steps > structure.node_count + 1:
                return InvariantReport(False, "link-symmetry", f"L{t} does not terminate")
            if node.left is not prev:
                return InvariantReport(False, "link-symmetry", f"left({node!r}) != {prev!r}")
            if node.level != t:
                return InvariantReport(False, "level-cache", f"{node!r} found in L{t}")
            if prev is not None and not (
                prev.value > node.value and prev.position < node.position
            ):
                return InvariantReport(False, "horizontal-order", f"{prev!r} then {node!r} in L{t}")
            if node.position in seen:
                return InvariantReport(False, "node-count", f"position {node.position} repeated")
            seen.add(node.position)
            count += 1
            prev = node
            node = node.right
        if prev is not lst.tail:
            return InvariantReport(False, "link-symmetry", f"tail of L{t} not reachable from head")
        if t > 1 and lists[t - 2].tail.value > lst.tail.value:
            return InvariantReport(False, "tail-order", f"Tail(L{t - 1}) > Tail(L{t})")
    if count != structure.node_count:
        return InvariantReport(
            False, "node-count", f"{count} linked nodes, node_count={structure.node_count}"
        )

    for t, lst in enumerate(lists, start=1):
        above = lists[t - 2] if t > 1 else None
        below = lists[t] if t < len(lists) else None
        for node in lst:
            want_up = _rightmost_before(above, node.position)
            if node.up is not want_up:
                return InvariantReport(
                    False, "up-neighbor", f"up({node!r}) is {node.up!r}, expected {want_up!r}"
                )
            if t > 1 and (node.up is None or not node.up.compatible_with(node)):
                return InvariantReport(False, "predecessor", f"{node!r} has no predecessor")
            want_down = _rightmost_before(below, node.position)
            if node.down is not want_down:
                return InvariantReport(
                    False,
                    "down-neighbor",
                    f"down({node!r}) is {node.down!r}, expected {want_down!r}",
                )
            if node.down is not None and not node.down.value > node.value:
                return InvariantReport(False, "down-neighbor", f"down({node!r}) is not larger")
    return InvariantReport(True)
