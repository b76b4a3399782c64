"""LIS queries over a QN-List.

Every query is a read: it walks predecessor blocks (from a node's up neighbor
leftward) instead of materializing the predecessor DAG, and keeps any per-query
state (sweep tables, black marks) outside the structure.
"""
from __future__ import annotations

import math
import weakref
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Set, Tuple

from .core import Node, QNList, StructureError


@dataclass(frozen=True)
class ResultSequence:
    """An increasing subsequence as ``(value, position)`` pairs in position order."""

    items: Tuple[Tuple[float, int], ...]

    @classmethod
    def from_nodes(cls, nodes: Sequence[Node]) -> "ResultSequence":
        return cls(tuple((n.value, n.position) for n in nodes))

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    @property
    def values(self) -> List[float]:
        return [v for v, _ in self.items]

    @property
    def positions(self) -> List[int]:
        return [p for _, p in self.items]

    @property
    def weight(self) -> float:
        return sum(v for v, _ in self.items)

    @property
    def gap(self) -> float:
        return self.items[-1][0] - self.items[0][0]

    @property
    def width(self) -> int:
        return self.items[-1][1] - self.items[0][1]

    def __str__(self) -> str:
        return "{" + ",".join(f"{v:g}@{p}" for v, p in self.items) + "}"


def _require_nonempty(structure: QNList) -> None:
    if not structure.lists:
        raise StructureError("query needs a non-empty structure")


def lis_length(structure: QNList) -> int:
    return len(structure.lists)


def _walk(seed: Node, first: Callable[[Node], Optional[Node]],
          sibling: Callable[[Node, Node], Optional[Node]],
          done: Callable[[Node], bool]) -> Iterator[List[Node]]:
    """Depth-first paths from ``seed`` to level 1.

    ``first(top)`` gives the first child to try below ``top``; ``sibling(node,
    parent)`` the next child of ``parent`` after ``node`` or None.  Yields the
    stack (tail first) whenever ``done(top)``.
    """
    stack = [seed]
    while stack:
        top = stack[-1]
        if done(top):
            yield stack
        else:
            child = first(top)
            if child is not None:
                stack.append(child)
                continue
        # backtrack to the deepest node with an untried sibling
        while stack:
            node = stack.pop()
            if not stack:
                break
            nxt = sibling(node, stack[-1])
            if nxt is not None:
                stack.append(nxt)
                break


def _to_result(stack: List[Node]) -> ResultSequence:
    return ResultSequence.from_nodes(stack[::-1])


def _up(node: Node) -> Optional[Node]:
    return node.up


def _next_left(node: Node, parent: Node) -> Optional[Node]:
    a = node.left
    return a if a is not None and a.compatible_with(parent) else None


def _is_top_level(node: Node) -> bool:
    return node.level == 1


def enumerate_lis(structure: QNList) -> List[ResultSequence]:
    """All LIS, seeded from Head(L^m) to Tail(L^m), predecessors right to left."""
    if not structure.lists:
        return []
    out = []
    for seed in structure.lists[-1]:
        for stack in _walk(seed, _up, _next_left, _is_top_level):
            out.append(_to_result(stack))
    return out


def _up_chain(node: Node) -> List[Node]:
    chain = [node]
    while chain[-1].up is not None:
        chain.append(chain[-1].up)
    return chain


def leftmost_child(node: Node) -> Optional[Node]:
    """Leftmost predecessor of ``node`` (None on level 1)."""
    a = node.up
    if a is None:
        return None
    while a.left is not None and a.left.compatible_with(node):
        a = a.left
    return a


def single_lis(structure: QNList) -> ResultSequence:
    _require_nonempty(structure)
    return _to_result(_up_chain(structure.lists[-1].tail))


def min_weight(structure: QNList) -> ResultSequence:
    _require_nonempty(structure)
    return _to_result(_up_chain(structure.lists[-1].tail))


def max_weight(structure: QNList) -> ResultSequence:
    _require_nonempty(structure)
    chain = [structure.lists[-1].head]
    while chain[-1].level > 1:
        chain.append(leftmost_child(chain[-1]))
    return _to_result(chain)


# sweeps -------------------------------------------------------------------

def sweep_khop_up(structure: QNList) -> Dict[int, Node]:
    """position -> un^{t-1}(node), the head of the node's rightmost chain."""
    table: Dict[int, Node] = {}
    for t, lst in enumerate(structure.lists, start=1):
        for node in lst:
            table[node.position] = node if t == 1 else table[node.up.position]
    return table


def sweep_leftmost(structure: QNList) -> Dict[int, Node]:
    """position -> lm^{t-1}(node), the head of the node's leftmost chain.

    One pair of cursors per adjacent level pair: the leftmost node above
    with value <= the current node only moves right as the node does.
    """
    table: Dict[int, Node] = {}
    lists = structure.lists
    if not lists:
        return table
    for node in lists[0]:
        table[node.position] = node
    for t in range(1, len(lists)):
        a_k = lists[t - 1].head
        for a_i in lists[t]:
            while a_k.value > a_i.value:
                a_k = a_k.right
            table[a_i.position] = table[a_k.position]
    return table


@dataclass
class SweepTable:
    head_right: Dict[int, Node]
    head_left: Dict[int, Node]
    valid_for: int


_sweep_cache: "weakref.WeakKeyDictionary[QNList, SweepTable]" = weakref.WeakKeyDictionary()


def sweep_table(structure: QNList) -> SweepTable:
    """Both sweeps, cached until the structure's next mutation."""
    cached = _sweep_cache.get(structure)
    if cached is not None and cached.valid_for == structure.generation:
        return cached
    table = SweepTable(sweep_khop_up(structure), sweep_leftmost(structure), structure.generation)
    _sweep_cache[structure] = table
    return table


# extreme gap / width ---------------------------------------------------------

def _rightmost_paths(structure: QNList, tail: Node, heads: Dict[int, Node]) -> Iterator[ResultSequence]:
    target = heads[tail.position]

    def sibling(node, parent):
        a = node.left
        if a is not None and a.compatible_with(parent) and heads[a.position] is target:
            return a
        return None

    for stack in _walk(tail, _up, sibling, lambda n: n is target):
        yield _to_result(stack)


def _leftmost_paths(structure: QNList, tail: Node, heads: Dict[int, Node]) -> Iterator[ResultSequence]:
    target = heads[tail.position]

    def sibling(node, parent):
        a = node.right
        if a is not None and a.compatible_with(parent) and heads[a.position] is target:
            return a
        return None

    for stack in _walk(tail, leftmost_child, sibling, lambda n: n is target):
        yield _to_result(stack)


def _extreme(structure: QNList, use_left: bool, key: Callable[[Node, Node], float],
             pick: Callable) -> Tuple[List[ResultSequence], float]:
    _require_nonempty(structure)
    table = sweep_table(structure)
    heads = table.head_left if use_left else table.head_right
    last = structure.lists[-1]
    scores = [(tail, key(tail, heads[tail.position])) for tail in last]
    best = pick(s for _, s in scores)
    paths = _leftmost_paths if use_left else _rightmost_paths
    out: List[ResultSequence] = []
    for tail, s in scores:
        if s == best:
            out.extend(paths(structure, tail, heads))
    return out, best


def _gap(tail: Node, head: Node) -> Fraction:
    # exact, so two tails never tie by rounding
    return Fraction(tail.value) - Fraction(head.value)


def _width(tail: Node, head: Node) -> int:
    return tail.position - head.position


def max_gap(structure: QNList) -> List[ResultSequence]:
    return _extreme(structure, False, _gap, max)[0]


def min_gap(structure: QNList) -> List[ResultSequence]:
    return _extreme(structure, True, _gap, min)[0]


def max_width(structure: QNList) -> List[ResultSequence]:
    return _extreme(structure, True, _width, max)[0]


def min_width(structure: QNList) -> List[ResultSequence]:
    return _extreme(structure, False, _width, min)[0]


# slope / range constrained ------------------------------------------------------

@dataclass
class ColorMarks:
    """Black nodes (by position) for one constrained query."""

    black: Set[int] = field(default_factory=set)

    def is_black(self, node: Node) -> bool:
        return node.position in self.black

    def paint(self, node: Node) -> None:
        self.black.add(node.position)


def _color_slope(structure: QNList, marks: ColorMarks,
                 proper: Callable[[Node, Node], bool]) -> ColorMarks:
    lists = structure.lists
    for t in range(1, len(lists)):
        a_k = lists[t - 1].head
        a_i = lists[t].head
        while a_i is not None:
            if a_k is not None and a_k.position < a_i.position and not proper(a_k, a_i):
                a_k = a_k.right
                continue
            if a_k is None or a_k.position > a_i.position:
                marks.paint(a_i)
            a_i = a_i.right
    return marks


def _color_range(structure: QNList, lo_pos, hi_pos, lo_val, hi_val) -> ColorMarks:
    marks = ColorMarks()
    lists = structure.lists
    for t in range(1, len(lists)):
        a_k = lists[t - 1].head
        a_i = lists[t].head
        while a_i is not None:
            if a_k is None:
                marks.paint(a_i)
                a_i = a_i.right
            elif (not marks.is_black(a_k) and lo_val <= a_i.value - a_k.value
                  and a_i.position - a_k.position <= hi_pos):
                # a_k is the leftmost partially-proper item of a_i
                d_val = a_i.value - a_k.value
                d_pos = a_i.position - a_k.position
                if d_val > hi_val or d_pos < lo_pos:
                    marks.paint(a_i)
                a_i = a_i.right
            else:
                a_k = a_k.right
    return marks


def _trace(structure: QNList, marks: ColorMarks,
           proper: Callable[[Node, Node], bool]) -> Optional[ResultSequence]:
    seed = None
    for node in structure.lists[-1]:
        if not marks.is_black(node):
            seed = node
            break
    if seed is None:
        return None
    stack = [seed]
    while stack[-1].level > 1:
        top = stack[-1]
        a = top.up
        while not proper(a, top):
            a = a.left
        stack.append(a)
    return _to_result(stack)


def slis(structure: QNList, slope: float) -> Optional[ResultSequence]:
    """One LIS whose consecutive slopes are all at least ``slope``, or None."""
    slope = float(slope)
    if not (math.isfinite(slope) and slope >= 0):
        raise ValueError(f"slope must be a finite non-negative number, got {slope!r}")
    _require_nonempty(structure)
    marks = ColorMarks()

    def proper(a: Node, b: Node) -> bool:
        # cross-multiplied slope test avoids a division
        return (not marks.is_black(a) and a.position < b.position
                and b.value - a.value >= slope * (b.position - a.position))

    _color_slope(structure, marks, proper)
    return _trace(structure, marks, proper)


def check_ranges(lo_pos, hi_pos, lo_val, hi_val) -> Tuple[float, float, float, float]:
    vals = tuple(float(x) for x in (lo_pos, hi_pos, lo_val, hi_val))
    if not all(math.isfinite(x) for x in vals):
        raise ValueError("range bounds must be finite")
    lo_pos, hi_pos, lo_val, hi_val = vals
    if not 0 < lo_pos <= hi_pos:
        raise ValueError(f"need 0 < L_I <= U_I, got {lo_pos:g}, {hi_pos:g}")
    if not 0 <= lo_val <= hi_val:
        raise ValueError(f"need 0 <= L_V <= U_V, got {lo_val:g}, {hi_val:g}")
    return vals


def rlis(structure: QNList, lo_pos, hi_pos, lo_val, hi_val) -> Optional[ResultSequence]:
    """One LIS whose consecutive position gaps lie in [lo_pos, hi_pos] and
    value gaps in [lo_val, hi_val], or None."""
    lo_pos, hi_pos, lo_val, hi_val = check_ranges(lo_pos, hi_pos, lo_val, hi_val)
    _require_nonempty(structure)
    marks = _color_range(structure, lo_pos, hi_pos, lo_val, hi_val)

    def proper(a: Node, b: Node) -> bool:
        dv = b.value - a.value
        dp = b.position - a.position
        return (not marks.is_black(a) and lo_val <= dv <= hi_val and lo_pos <= dp <= hi_pos)

    return _trace(structure, marks, proper)
