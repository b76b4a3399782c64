import io
import json
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from qnlis import cli
from qnlis.cli import ConfigError, InputError, RunConfig, benchmark, parse_input, run_windowed
from conftest import RUNNING

RUNNING_TEXT = "".join(f"{v}\n" for v in RUNNING)


def run(argv, text):
    out = io.StringIO()
    code = cli.main(argv, stdout=out, stdin=io.StringIO(text))
    return code, [json.loads(line) for line in out.getvalue().splitlines()]


# parsing ---------------------------------------------------------------------

def test_parse_plain():
    assert list(parse_input(io.StringIO("3\n9\n\n6\n"))) == [3, 9, 6]


def test_parse_csv_column():
    assert list(parse_input(io.StringIO("d,3\nd,9\n"), "csv", 2)) == [3, 9]


@pytest.mark.parametrize("text, line", [("3\nx\n", 2), ("1\nnan\n", 2), ("inf\n", 1)])
def test_parse_errors_name_the_line(text, line):
    with pytest.raises(InputError) as exc:
        list(parse_input(io.StringIO(text)))
    assert exc.value.line == line


def test_parse_csv_missing_column():
    with pytest.raises(InputError):
        list(parse_input(io.StringIO("1,2\n3\n"), "csv", 2))


# config ----------------------------------------------------------------------

@pytest.mark.parametrize("kwargs", [
    dict(window=0),
    dict(window=3, query="bogus"),
    dict(window=3, query="slis"),
    dict(window=3, query="slis", slope=-1.0),
    dict(window=3, query="rlis"),
    dict(window=3, query="rlis", ranges=(2, 1, 0, 0)),
    dict(window=3, query="length", slope=1.0),
    dict(window=3, query="max-gap", ranges=(1, 2, 0, 1)),
    dict(window=3, column=0),
    dict(window=300, oracle_check=True),
])
def test_config_rejects(kwargs):
    with pytest.raises(ConfigError):
        RunConfig(**kwargs)


# windowed runs ---------------------------------------------------------------

def test_enumerate_running_example():
    reports = list(run_windowed(RunConfig(7, "enumerate", oracle_check=True), RUNNING))
    assert len(reports) == 1
    assert len(reports[0].results) == 4 and reports[0].lis_length == 3


def test_max_gap_running_example():
    (r,) = run_windowed(RunConfig(7, "max-gap", oracle_check=True), RUNNING)
    assert len(r.results) == 2 and r.extremum_value == 5


def test_window_three_lengths():
    reports = list(run_windowed(RunConfig(3, oracle_check=True), [1, 2, 3, 0]))
    assert [(r.start_position, r.end_position, r.lis_length) for r in reports] == [(1, 3, 3), (2, 4, 2)]


def test_warmup_records():
    reports = list(run_windowed(RunConfig(3, emit_warmup=True), [1, 2, 3, 0]))
    assert [r.lis_length for r in reports] == [1, 2, 3, 2]
    assert [r.window_index for r in reports] == [1, 2, 3, 4]


def test_record_format():
    (r,) = run_windowed(RunConfig(7, "max-weight"), RUNNING)
    rec = json.loads(r.to_json())
    assert rec == {
        "window_index": 7, "start_position": 1, "end_position": 7, "lis_length": 3,
        "results": [[[1, 3.0], [3, 6.0], [5, 8.0]]], "extremum_value": 17.0,
    }


def test_values_round_trip_exactly():
    v = 0.1 + 0.2
    (r,) = run_windowed(RunConfig(1, "enumerate"), [v])
    assert json.loads(r.to_json())["results"][0][0][1] == v


@given(st.lists(st.integers(0, 9), max_size=40), st.sampled_from([1, 2, 5]),
       st.sampled_from(["enumerate", "max-weight", "min-weight", "max-gap", "min-gap",
                        "max-width", "min-width"]))
def test_oracle_check_never_trips(stream, w, query):
    for r in run_windowed(RunConfig(w, query, oracle_check=True), stream):
        assert all(len(x) == r.lis_length for x in r.results)


@given(st.lists(st.integers(0, 9), max_size=30), st.sampled_from([0, 0.5, 1, 2]))
def test_oracle_check_slis(stream, slope):
    for _ in run_windowed(RunConfig(6, "slis", slope=slope, oracle_check=True), stream):
        pass


def test_verify_detects_a_wrong_answer(monkeypatch):
    from qnlis import queries
    monkeypatch.setattr(queries, "max_weight", queries.min_weight)
    with pytest.raises(cli.OracleMismatch):
        list(run_windowed(RunConfig(7, "max-weight", oracle_check=True), RUNNING))


# benchmark -------------------------------------------------------------------

def test_benchmark_descending():
    stats = benchmark(RunConfig(64), range(10_000, 0, -1))
    assert stats["max_lists"] == 1
    assert stats["mean_insert_probes"] == 1
    assert stats["probe_bound_violations"] == 0


def test_benchmark_ascending():
    stats = benchmark(RunConfig(1024), range(10_000))
    assert stats["mean_insert_probes"] <= 11
    assert stats["probe_bound_violations"] == 0
    assert stats["max_delete_touches"] <= 8 * 1024


def test_benchmark_empty():
    stats = benchmark(RunConfig(4), [])
    assert stats["items"] == 0 and stats["deletes"] == 0 and stats["items_per_second"] == 0.0


# main ------------------------------------------------------------------------

def test_main_enumerate():
    code, records = run(["--window", "7", "--query", "enumerate", "--oracle-check"], RUNNING_TEXT)
    assert code == 0 and len(records) == 1 and len(records[0]["results"]) == 4


def test_main_exit_codes(tmp_path):
    assert run(["--window", "3"], "3\nx\n")[0] == cli.EXIT_PARSE
    assert run(["--window", "3", "--query", "slis"], "1\n")[0] == cli.EXIT_USAGE
    assert run(["--window", "3", "--input", str(tmp_path / "missing")], "")[0] == cli.EXIT_USAGE
    with pytest.raises(SystemExit) as exc:
        run(["--window", "3", "--query", "nope"], "")
    assert exc.value.code == cli.EXIT_USAGE


def test_main_csv_file(tmp_path):
    f = tmp_path / "in.csv"
    f.write_text("t,v\n1,3\n2,9\n3,6\n".replace("t,v\n", ""))
    code, records = run(["--window", "3", "--format", "csv", "--column", "2", "--input", str(f)], "")
    assert code == 0 and records[0]["lis_length"] == 2


def test_main_benchmark():
    code, (stats,) = run(["--window", "4", "--benchmark"], "4\n3\n2\n1\n")
    assert code == 0 and stats["items"] == 4 and stats["max_lists"] == 1


def test_main_is_deterministic():
    argv = ["--window", "4", "--query", "min-gap", "--emit-warmup"]
    text = "5\n1\n4\n1\n5\n9\n2\n6\n"
    assert run(argv, text) == run(argv, text)


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "qnlis", "--window", "7", "--query", "enumerate", "--oracle-check"],
        input=RUNNING_TEXT, capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert len(json.loads(proc.stdout)["results"]) == 4
