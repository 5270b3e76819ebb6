"""Command line interface tests."""

import io
import json
from pathlib import Path
from unittest.mock import patch

import pytest

from singlepeaked.cli import EXIT_CONSISTENT, EXIT_INCONSISTENT, EXIT_INPUT_ERROR, main
from singlepeaked.core import Profile, WeakOrder, dump_native
from singlepeaked.generator import candidate_names
from tests.conftest import (
    BROKEN_FILE,
    EXAMPLE_TWO_FILE,
    OBSERVATION_FILE,
    PREFLIB_FILE,
    TEST_PROFILES_DIR,
)
from tests.test_construction import EXAMPLE_TWO_EXISTENTIAL


def _lines(capsys: pytest.CaptureFixture[str]) -> list[str]:
    return capsys.readouterr().out.splitlines()


def test_check_existential(capsys: pytest.CaptureFixture[str]) -> None:
    """The first frontier of the tree is printed with the axis count."""
    assert main(["check", str(EXAMPLE_TWO_FILE)]) == EXIT_CONSISTENT
    lines = _lines(capsys)
    assert lines[:4] == ["model: exist", "verdict: consistent", "axis: d < e < c < a < b", "axis_count: 12"]
    assert lines[4].startswith("time_ms: ")


def test_check_single_peaked(capsys: pytest.CaptureFixture[str]) -> None:
    """A rejected vote gives exit code 1 and names the vote."""
    assert main(["check", str(EXAMPLE_TWO_FILE), "--model", "sp"]) == EXIT_INCONSISTENT
    lines = _lines(capsys)
    assert "verdict: inconsistent" in lines
    assert "axis_count: 0" in lines
    assert "reason: vote 0 rejected (multiple-peaks)" in lines


def test_check_json(capsys: pytest.CaptureFixture[str]) -> None:
    """JSON output carries the same facts as the plain text."""
    assert main(["check", str(EXAMPLE_TWO_FILE), "--model", "plateau", "--json"]) == EXIT_CONSISTENT
    record = json.loads(capsys.readouterr().out)
    assert record["model"] == "plateau"
    assert record["verdict"] == "consistent"
    assert record["axis_count"] == 4
    assert len(record["axis"]) == 5
    assert record["reason"] is None


def test_check_infeasible_json(capsys: pytest.CaptureFixture[str]) -> None:
    """An infeasible row is reported with its vote."""
    assert main(["check", str(OBSERVATION_FILE), "--model", "plateau", "--json"]) == EXIT_INCONSISTENT
    record = json.loads(capsys.readouterr().out)
    assert record["axis"] is None
    assert record["reason"]["kind"] == "no-feasible-permutation"
    assert record["reason"]["voter_index"] in range(3)


def test_check_stdin(capsys: pytest.CaptureFixture[str]) -> None:
    """``-`` reads the profile from standard input."""
    with patch("sys.stdin", io.StringIO(EXAMPLE_TWO_FILE.read_text(encoding="utf-8"))):
        assert main(["check", "-"]) == EXIT_CONSISTENT
    assert "axis_count: 12" in _lines(capsys)


def test_check_preflib(capsys: pytest.CaptureFixture[str]) -> None:
    """PrefLib files need completion for their partial votes."""
    assert main(["check", str(PREFLIB_FILE), "--format", "preflib"]) == EXIT_INPUT_ERROR
    assert "line 8" in capsys.readouterr().err
    assert main(["check", str(PREFLIB_FILE), "--format", "preflib", "--complete-missing-last"]) == EXIT_CONSISTENT
    assert "verdict: consistent" in _lines(capsys)


@pytest.mark.parametrize(
    "path, message",
    (
        (TEST_PROFILES_DIR / "missing.prof", "Could not read profile"),
        (BROKEN_FILE, "line 3"),
    ),
)
def test_input_errors(capsys: pytest.CaptureFixture[str], path: str, message: str) -> None:
    """Unreadable or invalid input exits with code 2 and a message on stderr."""
    assert main(["check", str(path)]) == EXIT_INPUT_ERROR
    captured = capsys.readouterr()
    assert captured.out == ""
    assert captured.err.startswith("singlepeaked check: error: ")
    assert message in captured.err


def test_axes(capsys: pytest.CaptureFixture[str]) -> None:
    """Axes are listed up to the cap, followed by the full count."""
    assert main(["axes", str(EXAMPLE_TWO_FILE), "--cap", "3"]) == EXIT_CONSISTENT
    lines = _lines(capsys)
    assert len(lines) == 4
    assert lines[0] == "d < e < c < a < b"
    assert lines[-1] == "count: 12"


def test_axes_complete(capsys: pytest.CaptureFixture[str]) -> None:
    """Without a cap every axis is printed exactly once."""
    assert main(["axes", str(OBSERVATION_FILE)]) == EXIT_CONSISTENT
    lines = _lines(capsys)
    assert sorted(lines[:-1]) == ["a < b < c", "c < b < a"]
    assert lines[-1] == "count: 2"


def test_axes_bad_cap(capsys: pytest.CaptureFixture[str]) -> None:
    """A cap below one is an input error."""
    assert main(["axes", str(EXAMPLE_TWO_FILE), "--cap", "0"]) == EXIT_INPUT_ERROR
    assert "--cap" in capsys.readouterr().err


def test_matrix_dump(capsys: pytest.CaptureFixture[str]) -> None:
    """The plain matrix dump is the canonical one."""
    assert main(["matrix", str(EXAMPLE_TWO_FILE)]) == EXIT_CONSISTENT
    assert capsys.readouterr().out == EXAMPLE_TWO_EXISTENTIAL


def test_matrix_rejected(capsys: pytest.CaptureFixture[str]) -> None:
    """No matrix is built once a vote is rejected."""
    assert main(["matrix", str(EXAMPLE_TWO_FILE), "--model", "sp"]) == EXIT_INCONSISTENT
    assert _lines(capsys) == ["reason: vote 0 rejected (multiple-peaks)"]


def test_matrix_json(capsys: pytest.CaptureFixture[str]) -> None:
    """The JSON matrix is a list of 0-1 rows."""
    assert main(["matrix", str(EXAMPLE_TWO_FILE), "--json"]) == EXIT_CONSISTENT
    record = json.loads(capsys.readouterr().out)
    assert record["columns"] == ["a", "b", "c", "d", "e"]
    assert record["matrix"][0] == [1, 0, 1, 0, 0]
    assert len(record["matrix"]) == 8


def test_verify(capsys: pytest.CaptureFixture[str]) -> None:
    """A consistent axis prints no witness, an inconsistent one prints the first."""
    assert main(["verify", str(EXAMPLE_TWO_FILE), "--axis", "b < a < c < d < e"]) == EXIT_CONSISTENT
    assert _lines(capsys) == ["axis: b < a < c < d < e", "verdict: consistent"]
    args = ["verify", str(EXAMPLE_TWO_FILE), "--axis", "b < a < c < d < e", "--model", "plateau"]
    assert main(args) == EXIT_INCONSISTENT
    lines = _lines(capsys)
    assert lines[1] == "verdict: inconsistent"
    assert lines[2].startswith("witness: nonpeak-plateau in vote 0: ")


def test_verify_bad_axis(capsys: pytest.CaptureFixture[str]) -> None:
    """Axes naming unknown candidates are input errors."""
    assert main(["verify", str(EXAMPLE_TWO_FILE), "--axis", "b < a < z < d < e"]) == EXIT_INPUT_ERROR
    assert "'z'" in capsys.readouterr().err


def test_majority(capsys: pytest.CaptureFixture[str]) -> None:
    """The tally table is followed by the shortest cycle."""
    assert main(["majority", str(OBSERVATION_FILE)]) == EXIT_CONSISTENT
    lines = _lines(capsys)
    assert lines[:4] == ["  a b c", "a 0 2 3", "b 3 0 1", "c 2 2 0"]
    assert lines[4:] == ["cycle: a > c > b > a", "condorcet_winner: none"]


def test_guide(capsys: pytest.CaptureFixture[str]) -> None:
    """Guiding orders are printed most preferred first, or reported absent."""
    assert main(["guide", str(OBSERVATION_FILE)]) == EXIT_CONSISTENT
    assert _lines(capsys) == ["guiding order: c > b > a", "choice: smallest-id"]
    assert main(["guide", str(EXAMPLE_TWO_FILE), "--json"]) == EXIT_CONSISTENT
    assert json.loads(capsys.readouterr().out) == {"guiding_order": None, "choice": "smallest-id"}


def test_oracle(capsys: pytest.CaptureFixture[str]) -> None:
    """Seeded oracle runs agree with brute force and print identical reports."""
    args = ["oracle", "--trials", "100", "--seed", "3", "--max-candidates", "6"]
    assert main(args) == EXIT_CONSISTENT
    first = capsys.readouterr().out
    assert first.splitlines()[1] == "0 mismatches"
    assert main(args) == EXIT_CONSISTENT
    assert capsys.readouterr().out == first


@pytest.mark.parametrize(
    "option, value",
    (
        ("--max-candidates", "9"),
        ("--max-candidates", "0"),
        ("--max-voters", "0"),
        ("--trials", "0"),
        ("--trials", "-5"),
        ("--tie-probability", "1.5"),
    ),
)
def test_oracle_bounds(capsys: pytest.CaptureFixture[str], option: str, value: str) -> None:
    """Out of range oracle settings are input errors."""
    assert main(["oracle", "--trials", "1", option, value]) == EXIT_INPUT_ERROR
    assert option in capsys.readouterr().err


def test_missing_command() -> None:
    """A command is required."""
    with pytest.raises(SystemExit) as excinfo:
        main([])
    assert excinfo.value.code == 2


def test_axes_huge_cap(capsys: pytest.CaptureFixture[str]) -> None:
    """A cap beyond the platform word size lists every axis."""
    assert main(["axes", str(EXAMPLE_TWO_FILE), "--cap", "100000000000000000000"]) == EXIT_CONSISTENT
    lines = _lines(capsys)
    assert len(lines) == 13
    assert lines[-1] == "count: 12"


def test_check_deep_profile(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    """A total order over 1500 candidates is checked without exhausting the stack."""
    size = 1500
    profile = Profile.from_orders(candidate_names(size), [WeakOrder.from_ranking(range(size))])
    path = tmp_path / "deep.prof"
    path.write_text(dump_native(profile), encoding="utf-8")
    assert main(["check", str(path)]) == EXIT_CONSISTENT
    assert f"axis_count: {2 ** (size - 1)}" in _lines(capsys)
    assert main(["axes", str(path), "--cap", "2"]) == EXIT_CONSISTENT
    lines = _lines(capsys)
    assert len(lines) == 3
    assert lines[-1] == f"count: {2 ** (size - 1)}"
