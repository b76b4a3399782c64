"""Streaming longest-increasing-subsequence engine on a quadruple neighbor list."""
from .core import (
    HorizontalList, InvariantReport, Node, OpCounters, QNList, StructureError,
    build, check_invariants, predecessors, rising_length,
)
from .maintenance import (
    Division, WindowState, delete_head, divide, merge_horizontal, slide,
    update_down_neighbors, update_up_neighbors,
)
from .queries import (
    ColorMarks, ResultSequence, SweepTable, enumerate_lis, lis_length, max_gap,
    max_weight, max_width, min_gap, min_weight, min_width, rlis, single_lis, slis,
    sweep_khop_up, sweep_leftmost, sweep_table,
)

__version__ = "0.1.0"
