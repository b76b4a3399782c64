"""Windowed LIS over a numeric stream.

Reads one value per line (or one CSV column), slides a window of fixed size
over it and prints one JSON record per window to stdout.

Exit codes: 0 ok, 1 usage/config error, 2 input parse error, 3 oracle mismatch.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time
from dataclasses import dataclass, field
from typing import IO, Iterator, List, Optional, Tuple

from . import oracle, queries
from .core import probe_bound
from .maintenance import WindowState

QUERIES = (
    "length", "enumerate", "max-weight", "min-weight", "max-gap", "min-gap",
    "max-width", "min-width", "slis", "rlis",
)

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_MISMATCH = 0, 1, 2, 3


class ConfigError(ValueError):
    pass


class InputError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class OracleMismatch(RuntimeError):
    pass


@dataclass
class RunConfig:
    window: int
    query: str = "length"
    slope: Optional[float] = None
    ranges: Optional[Tuple[float, float, float, float]] = None
    input_format: str = "plain"
    column: int = 1
    emit_warmup: bool = False
    oracle_check: bool = False
    benchmark: bool = False

    def __post_init__(self):
        if not isinstance(self.window, int) or self.window < 1:
            raise ConfigError(f"--window must be a positive integer, got {self.window!r}")
        if self.query not in QUERIES:
            raise ConfigError(f"unknown query {self.query!r}; choose from {', '.join(QUERIES)}")
        if self.query == "slis":
            if self.slope is None:
                raise ConfigError("query slis requires --slope")
            if not (math.isfinite(self.slope) and self.slope >= 0):
                raise ConfigError("--slope must be a finite non-negative number")
        elif self.slope is not None:
            raise ConfigError(f"--slope does not apply to query {self.query}")
        if self.query == "rlis":
            if self.ranges is None:
                raise ConfigError("query rlis requires --range LI,UI,LV,UV")
            try:
                queries.check_ranges(*self.ranges)
            except ValueError as e:
                raise ConfigError(f"--range: {e}") from None
        elif self.ranges is not None:
            raise ConfigError(f"--range does not apply to query {self.query}")
        if self.input_format not in ("plain", "csv"):
            raise ConfigError(f"unknown format {self.input_format!r}")
        if self.column < 1:
            raise ConfigError("--column is 1-based")
        if self.oracle_check and self.window > oracle.ENUMERATION_CAP:
            raise ConfigError(f"--oracle-check supports windows up to {oracle.ENUMERATION_CAP}")


@dataclass
class WindowReport:
    window_index: int
    start_position: int
    end_position: int
    lis_length: int
    results: List[queries.ResultSequence] = field(default_factory=list)
    extremum_value: Optional[float] = None
    timing: Optional[dict] = None

    def to_record(self) -> dict:
        rec = {
            "window_index": self.window_index,
            "start_position": self.start_position,
            "end_position": self.end_position,
            "lis_length": self.lis_length,
            "results": [[[p, v] for v, p in r.items] for r in self.results],
            "extremum_value": self.extremum_value,
        }
        if self.timing is not None:
            rec["timing"] = self.timing
        return rec

    def to_json(self) -> str:
        # float repr round-trips exactly
        return json.dumps(self.to_record(), separators=(",", ":"))


def _parse_token(tok: str, line: int) -> float:
    tok = tok.strip()
    try:
        v = float(tok)
    except ValueError:
        raise InputError(line, f"cannot parse {tok!r} as a number") from None
    if not math.isfinite(v):
        raise InputError(line, f"non-finite value {tok!r}")
    return v


def parse_input(source: IO[str], fmt: str = "plain", column: int = 1) -> Iterator[float]:
    """Yield finite values, one per non-blank line or CSV row."""
    if fmt == "plain":
        for lineno, line in enumerate(source, start=1):
            if line.strip():
                yield _parse_token(line, lineno)
    elif fmt == "csv":
        reader = csv.reader(source)
        for row in reader:
            if not row or all(not c.strip() for c in row):
                continue
            if column > len(row):
                raise InputError(reader.line_num, f"row has no column {column}")
            yield _parse_token(row[column - 1], reader.line_num)
    else:
        raise ConfigError(f"unknown format {fmt!r}")


def answer(config: RunConfig, window: WindowState) -> Tuple[List[queries.ResultSequence], Optional[float]]:
    qn = window.structure
    q = config.query
    if q == "length":
        return [], None
    if q == "enumerate":
        return queries.enumerate_lis(qn), None
    if q == "max-weight":
        r = queries.max_weight(qn)
        return [r], r.weight
    if q == "min-weight":
        r = queries.min_weight(qn)
        return [r], r.weight
    if q in ("max-gap", "min-gap", "max-width", "min-width"):
        fn = getattr(queries, q.replace("-", "_"))
        rs = fn(qn)
        measure = "gap" if q.endswith("gap") else "width"
        return rs, getattr(rs[0], measure)
    if q == "slis":
        r = queries.slis(qn, config.slope)
    else:
        r = queries.rlis(qn, *config.ranges)
    return ([] if r is None else [r]), None


def verify(config: RunConfig, window: WindowState, report: WindowReport) -> None:
    """Recompute the window's answer by DP and raise OracleMismatch on disagreement."""
    values, positions = window.values(), window.positions()
    lis = oracle.dp_enumerate(values, positions)
    want_len = max(oracle.dp_rising_lengths(values), default=0)
    got = {r.items for r in report.results}
    q = config.query
    problem = None
    if report.lis_length != want_len:
        problem = f"length {report.lis_length} != {want_len}"
    elif q == "enumerate":
        if got != lis or len(report.results) != len(lis):
            problem = f"{len(got)} LIS reported, oracle has {len(lis)}"
    elif q in ("max-weight", "min-weight"):
        best = oracle.post_filter(lis, "weight", q[:3])
        if not got <= best:
            problem = "reported LIS is not a weight extremum"
    elif q in ("max-gap", "min-gap", "max-width", "min-width"):
        mode, measure = q.split("-")
        if got != oracle.post_filter(lis, measure, mode):
            problem = f"{q} set differs from post-filtered enumeration"
    elif q in ("slis", "rlis"):
        feasible = oracle.brute_feasible(
            values,
            slope=config.slope if q == "slis" else None,
            ranges=config.ranges if q == "rlis" else None,
            positions=positions,
            cap=len(values),
        )
        if bool(got) != bool(feasible) or not got <= feasible:
            problem = f"{q} result disagrees with exhaustive feasibility"
    if problem:
        raise OracleMismatch(
            f"window ending at position {report.end_position}: {problem}"
        )


def run_windowed(config: RunConfig, values) -> Iterator[WindowReport]:
    window = WindowState(config.window)
    for v in values:
        window.slide(v)
        if not window.full and not config.emit_warmup:
            continue
        results, extremum = answer(config, window)
        pos = window.positions()
        report = WindowReport(
            window_index=window.next_position - 1,
            start_position=pos[0],
            end_position=pos[-1],
            lis_length=queries.lis_length(window.structure),
            results=results,
            extremum_value=extremum,
        )
        if config.oracle_check:
            verify(config, window, report)
        yield report


def benchmark(config: RunConfig, values) -> dict:
    """Pure maintenance throughput plus deterministic operation counters."""
    window = WindowState(config.window)
    c = window.structure.counters
    max_m = 0
    n = 0
    start = time.perf_counter()
    for v in values:
        window.slide(v)
        n += 1
        if window.structure.m > max_m:
            max_m = window.structure.m
    elapsed = time.perf_counter() - start
    return {
        "items": n,
        "window": config.window,
        "seconds": elapsed,
        "items_per_second": n / elapsed if n and elapsed > 0 else 0.0,
        "max_lists": max_m,
        "mean_insert_probes": c.mean_probes(),
        "probe_bound_violations": c.probe_bound_violations,
        "probe_bound_at_window": probe_bound(config.window),
        "deletes": c.deletes,
        "mean_delete_touches": c.mean_delete_touches(),
        "max_delete_touches": c.max_delete_touches,
    }


def _range_arg(text: str) -> Tuple[float, float, float, float]:
    parts = text.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("expected LI,UI,LV,UV")
    try:
        return tuple(float(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad number in {text!r}") from None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def make_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qnlis", description=__doc__.splitlines()[0])
    p.add_argument("--window", type=int, required=True, metavar="N")
    p.add_argument("--query", default="length", choices=QUERIES, metavar="KIND",
                   help=f"one of: {', '.join(QUERIES)}")
    p.add_argument("--slope", type=float, metavar="X")
    p.add_argument("--range", dest="ranges", type=_range_arg, metavar="LI,UI,LV,UV")
    p.add_argument("--format", dest="input_format", default="plain", choices=("plain", "csv"))
    p.add_argument("--column", type=int, default=1, metavar="K", help="1-based CSV column")
    p.add_argument("--emit-warmup", action="store_true")
    p.add_argument("--oracle-check", action="store_true")
    p.add_argument("--benchmark", action="store_true")
    p.add_argument("--input", metavar="PATH", help="default: standard input")
    return p


def main(argv=None, stdout: IO[str] = None, stdin: IO[str] = None) -> int:
    stdout = stdout or sys.stdout
    args = make_parser().parse_args(argv)
    try:
        config = RunConfig(**{k: v for k, v in vars(args).items() if k != "input"})
    except ConfigError as e:
        print(f"qnlis: {e}", file=sys.stderr)
        return EXIT_USAGE

    try:
        source = open(args.input, encoding="utf-8") if args.input else (stdin or sys.stdin)
    except OSError as e:
        print(f"qnlis: {e}", file=sys.stderr)
        return EXIT_USAGE

    try:
        values = parse_input(source, config.input_format, config.column)
        if config.benchmark:
            print(json.dumps(benchmark(config, values)), file=stdout)
        else:
            for report in run_windowed(config, values):
                print(report.to_json(), file=stdout)
    except InputError as e:
        print(f"qnlis: input error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except OracleMismatch as e:
        print(f"qnlis: oracle mismatch: {e}", file=sys.stderr)
        return EXIT_MISMATCH
    finally:
        if args.input:
            source.close()
    return EXIT_OK


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
