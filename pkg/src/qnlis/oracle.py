"""Quadratic-time reference answers.

Deliberately naive and self-contained: plain lists and indices, nothing from
the linked structure.  Sequences are returned as tuples of
``(value, position)`` pairs so they compare directly with query results.
"""
from fractions import Fraction
from typing import List, Optional, Sequence, Set, Tuple

Item = Tuple[float, int]
Seq = Tuple[Item, ...]

ENUMERATION_CAP = 256
FEASIBILITY_CAP = 20


def _positions(values, positions):
    if positions is None:
        return list(range(1, len(values) + 1))
    if len(positions) != len(values):
        raise ValueError("values and positions differ in length")
    return list(positions)


def dp_rising_lengths(values: Sequence[float]) -> List[int]:
    rl = []
    for i, v in enumerate(values):
        best = 0
        for j in range(i):
            if values[j] <= v and rl[j] > best:
                best = rl[j]
        rl.append(best + 1)
    return rl


def dp_predecessors(values: Sequence[float]) -> List[List[int]]:
    rl = dp_rising_lengths(values)
    return [
        [j for j in range(i) if values[j] <= values[i] and rl[j] == rl[i] - 1]
        for i in range(len(values))
    ]


def dp_enumerate(values: Sequence[float], positions: Optional[Sequence[int]] = None) -> Set[Seq]:
    """Every longest non-decreasing subsequence, by backtracking DP predecessors."""
    values = [float(v) for v in values]
    if len(values) > ENUMERATION_CAP:
        raise ValueError(f"oracle enumeration capped at {ENUMERATION_CAP} items")
    pos = _positions(values, positions)
    if not values:
        return set()
    rl = dp_rising_lengths(values)
    preds = dp_predecessors(values)
    top = max(rl)
    out: Set[Seq] = set()

    def back(i, suffix):
        path = [(values[i], pos[i])] + suffix
        if rl[i] == 1:
            out.add(tuple(path))
            return
        for j in preds[i]:
            back(j, path)

    for i in range(len(values)):
        if rl[i] == top:
            back(i, [])
    return out


# exact rationals so rounding never manufactures or hides a tie
def weight(seq: Seq) -> Fraction:
    return sum((Fraction(v) for v, _ in seq), Fraction(0))


def gap(seq: Seq) -> Fraction:
    return Fraction(seq[-1][0]) - Fraction(seq[0][0])


def width(seq: Seq) -> int:
    return seq[-1][1] - seq[0][1]


_MEASURES = {"weight": weight, "gap": gap, "width": width}


def post_filter(lis_set, criterion: str, mode: str) -> Set[Seq]:
    """Members of ``lis_set`` attaining the max or min of weight/gap/width."""
    measure = _MEASURES[criterion]
    if mode not in ("max", "min"):
        raise ValueError(f"mode must be 'max' or 'min', got {mode!r}")
    seqs = [tuple(s) for s in lis_set]
    if not seqs:
        return set()
    scores = [measure(s) for s in seqs]
    best = max(scores) if mode == "max" else min(scores)
    return {s for s, sc in zip(seqs, scores) if sc == best}


def slope_ok(a: Item, b: Item, slope: float) -> bool:
    (va, pa), (vb, pb) = a, b
    return vb - va >= slope * (pb - pa)


def range_ok(a: Item, b: Item, lo_pos, hi_pos, lo_val, hi_val) -> bool:
    (va, pa), (vb, pb) = a, b
    return lo_pos <= pb - pa <= hi_pos and lo_val <= vb - va <= hi_val


def brute_feasible(values: Sequence[float], slope: Optional[float] = None,
                   ranges: Optional[Tuple[float, float, float, float]] = None,
                   positions: Optional[Sequence[int]] = None,
                   cap: int = FEASIBILITY_CAP) -> Set[Seq]:
    """All LIS whose every consecutive pair meets the slope or range predicate."""
    if (slope is None) == (ranges is None):
        raise ValueError("give exactly one of slope or ranges")
    if len(values) > cap:
        raise ValueError(f"exhaustive feasibility capped at {cap} items")
    if slope is not None:
        def ok(a, b):
            return slope_ok(a, b, slope)
    else:
        def ok(a, b):
            return range_ok(a, b, *ranges)
    return {
        s for s in dp_enumerate(values, positions)
        if all(ok(s[k], s[k + 1]) for k in range(len(s) - 1))
    }
