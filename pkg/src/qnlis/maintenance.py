"""Head deletion and the sliding-window step.

Deleting the oldest item promotes, in every list, a prefix of items whose
(t-1)-hop up neighbor was the deleted item (``Left``); the remaining suffix
(``Right``) stays put.  New level t is ``Left(L^{t+1})`` followed by
``Right(L^t)``, after which only a few vertical links need repair.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Deque, List, Optional, Tuple

from .core import HorizontalList, Node, QNList, StructureError, check_value

ALL_LEFT = "left"
ALL_RIGHT = "right"


@dataclass(eq=False)
class Division:
    """Left/Right split of every list, computed before the deletion.

    ``spans`` are the pre-deletion lists (their head and tail never change
    during a delete).  ``boundaries[t-1]`` is the last node of Left(L^t) and
    ``right_heads[t-1]`` the first node of Right(L^t), for levels up to
    ``cascade_from - 1``.  From ``cascade_from`` on, every list is entirely
    Left or entirely Right as given by ``cascade``.
    """

    head: Node
    spans: List[HorizontalList]
    boundaries: List[Optional[Node]] = field(default_factory=list)
    right_heads: List[Optional[Node]] = field(default_factory=list)
    cascade: Optional[str] = None
    cascade_from: int = 0

    @property
    def m(self) -> int:
        return len(self.spans)

    def _cascaded(self, t: int) -> bool:
        return self.cascade is not None and t >= self.cascade_from

    def left_tail(self, t: int) -> Optional[Node]:
        if t < 1 or t > self.m:
            return None
        if self._cascaded(t):
            return self.spans[t - 1].tail if self.cascade == ALL_LEFT else None
        return self.boundaries[t - 1]

    def left_head(self, t: int) -> Optional[Node]:
        return None if self.left_tail(t) is None else self.spans[t - 1].head

    def right_head(self, t: int) -> Optional[Node]:
        if t < 1 or t > self.m:
            return None
        if self._cascaded(t):
            return self.spans[t - 1].head if self.cascade == ALL_RIGHT else None
        return self.right_heads[t - 1]

    def right_tail(self, t: int) -> Optional[Node]:
        return None if self.right_head(t) is None else self.spans[t - 1].tail

    @property
    def repair_levels(self) -> int:
        """Exclusive bound on the levels whose vertical links can change.

        Past the first cascaded level, whole lists shift together, so every
        up and down neighbor stays where it was.
        """
        return self.m if self.cascade is None else min(self.m, self.cascade_from + 1)

    def left_positions(self, t: int) -> List[int]:
        """Positions in Left(L^t); only meaningful before merging."""
        head, tail = self.left_head(t), self.left_tail(t)
        out = []
        node = head
        while node is not None:
            out.append(node.position)
            if node is tail:
                break
            node = node.right
        return out


def divide(structure: QNList, head: Node) -> Division:
    lists = structure.lists
    if not lists or lists[0].head is not head:
        raise StructureError(f"{head!r} is not the earliest item of the structure")
    div = Division(head, lists)
    div.boundaries.append(head)
    div.right_heads.append(head.right)
    touches = 1
    m = len(lists)
    for t in range(1, m):
        a_k = div.right_heads[t - 1]
        touches += 1
        if a_k is None:
            div.cascade, div.cascade_from = ALL_LEFT, t + 1
            break
        d = a_k.down
        if d is None:
            div.cascade, div.cascade_from = ALL_RIGHT, t + 1
            break
        div.boundaries.append(d)
        div.right_heads.append(d.right)
    structure.counters.last_delete_touches += touches
    return div


def merge_horizontal(structure: QNList, division: Division) -> QNList:
    """Splice Left(L^{t+1}) ahead of Right(L^t) for every level."""
    head = division.head
    m = division.m
    touches = 0
    new_lists: List[HorizontalList] = []
    spliced = m if division.cascade is None else min(m, division.cascade_from - 1)
    for t in range(1, spliced + 1):
        lh, lt = division.left_head(t + 1), division.left_tail(t + 1)
        rh, rt = division.right_head(t), division.right_tail(t)
        touches += 1
        node = lh
        while node is not None:
            node.level = t
            touches += 1
            if node is lt:
                break
            node = node.right
        if lt is not None and rh is not None:
            lt.right = rh
            rh.left = lt
            new_lists.append(HorizontalList(lh, rt, t))
        elif lt is not None:
            lt.right = None
            new_lists.append(HorizontalList(lh, lt, t))
        elif rh is not None:
            rh.left = None
            new_lists.append(HorizontalList(rh, rt, t))
        # only the deepest level can come out empty

    # inside a cascade whole lists move (all Left) or stay (all Right)
    if division.cascade == ALL_RIGHT:
        new_lists.extend(division.spans[spliced:])
    elif division.cascade == ALL_LEFT:
        for t in range(spliced + 1, m):
            lst = division.spans[t]
            lst.level = t
            node = lst.head
            while node is not None:
                node.level = t
                touches += 1
                node = node.right
            new_lists.append(lst)

    head.left = head.right = head.up = head.down = None
    structure.lists = new_lists
    structure.node_count -= 1
    structure.generation += 1
    structure.counters.last_delete_touches += touches
    return structure


def update_up_neighbors(structure: QNList, division: Division) -> None:
    """Repair up links of promoted blocks; call after merge_horizontal."""
    touches = 0
    for t in range(1, division.repair_levels):
        a_i = division.left_tail(t + 1)
        if a_i is None:
            continue
        block_head = division.left_head(t + 1)
        if t == 1:
            node = block_head
            while node is not None:
                node.up = None
                touches += 1
                if node is a_i:
                    break
                node = node.right
            continue
        x = division.left_tail(t)
        touches += 1
        if a_i.up is not x:
            continue
        start = a_i
        while start is not block_head and start.left.up is x:
            start = start.left
            touches += 1
        cursor = x
        node = start
        while True:
            while cursor.right is not None and cursor.right.position < node.position:
                cursor = cursor.right
                touches += 1
            node.up = cursor
            touches += 1
            if node is a_i:
                break
            node = node.right
    structure.counters.last_delete_touches += touches


def update_down_neighbors(structure: QNList, division: Division) -> None:
    """Repair down links of stationary blocks; call after merge_horizontal."""
    touches = 0
    for t in range(1, division.repair_levels):
        a_i = division.right_head(t)
        y = division.left_tail(t + 1)
        if a_i is None or y is None:
            continue
        block_tail = division.right_tail(t)
        end = a_i
        touches += 1
        while end is not block_tail and end.right.down is y:
            end = end.right
            touches += 1
        # new level t+1 starts with Left(L^{t+2}); Right(L^{t+1}) lies after the block
        cursor = division.left_tail(t + 2)
        node = end
        while True:
            while cursor is not None and cursor.position > node.position:
                cursor = cursor.left
                touches += 1
            node.down = cursor
            touches += 1
            if node is a_i:
                break
            node = node.left
    structure.counters.last_delete_touches += touches


def delete_head(structure: QNList) -> QNList:
    """Remove the earliest item, leaving the structure built over the rest."""
    if not structure.lists:
        raise StructureError("cannot delete from an empty structure")
    c = structure.counters
    c.last_delete_touches = 0
    division = divide(structure, structure.lists[0].head)
    merge_horizontal(structure, division)
    update_up_neighbors(structure, division)
    update_down_neighbors(structure, division)
    c.deletes += 1
    c.delete_touches += c.last_delete_touches
    c.max_delete_touches = max(c.max_delete_touches, c.last_delete_touches)
    return structure


@dataclass(eq=False)
class WindowState:
    """Tuple-based sliding window of fixed capacity over a QN-List."""

    capacity: int
    items: Deque[Tuple[float, int]] = field(default_factory=deque)
    structure: QNList = field(default_factory=QNList)
    next_position: int = 1

    def __post_init__(self):
        if not isinstance(self.capacity, int) or self.capacity < 1:
            raise ValueError(f"window capacity must be a positive integer, got {self.capacity!r}")

    @property
    def occupancy(self) -> int:
        return len(self.items)

    @property
    def full(self) -> bool:
        return len(self.items) == self.capacity

    def values(self) -> List[float]:
        return [v for v, _ in self.items]

    def positions(self) -> List[int]:
        return [p for _, p in self.items]

    def slide(self, value) -> None:
        slide(self, value)


def slide(window: WindowState, value) -> None:
    """Delete the oldest item when full, then append ``value``."""
    v = check_value(value)
    if len(window.items) == window.capacity:
        delete_head(window.structure)
        window.items.popleft()
    pos = window.next_position
    window.structure.insert(v, pos)
    window.items.append((v, pos))
    window.next_position += 1
