"""Command line interface of singlepeaked.

Exit codes: 0 when the profile is consistent (or the command has no
verdict), 1 when it is not, 2 on unreadable or invalid input.
"""

import argparse
import json
import logging
import sys
import time
from typing import Any, Callable, Sequence

from singlepeaked import __version__
from singlepeaked.analysis import (
    ConsistencyResult,
    all_axes,
    check,
    guiding_order,
    majority_relation,
    run_oracle,
)
from singlepeaked.config import (
    DEFAULT_AXES_CAP,
    MAX_ORACLE_CANDIDATES,
    CheckConfig,
    InputFormat,
    OracleConfig,
    get_config,
    get_oracle_config,
)
from singlepeaked.construction import build_matrix, dump_matrix
from singlepeaked.core import Axis, Profile, dump_native
from singlepeaked.exceptions import CandidateBoundExceeded, SinglePeakedError
from singlepeaked.loader import load_profile
from singlepeaked.substructure import Model, Witness, axis_consistent

logger = logging.getLogger(__name__)

EXIT_CONSISTENT = 0
EXIT_INCONSISTENT = 1
EXIT_INPUT_ERROR = 2

AXIS_SEPARATOR = " < "

Record = dict[str, Any]


def _names(profile: Profile, candidates: Sequence[int]) -> list[str]:
    return [profile.name_of(candidate) for candidate in candidates]


def _emit(record: Record, as_json: bool, lines: list[str]) -> None:
    """Write ``record`` as JSON, or its plain text rendering ``lines``."""
    if as_json:
        sys.stdout.write(json.dumps(record, indent=2, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write("".join(line + "\n" for line in lines))


def _load(config: CheckConfig) -> Profile:
    return load_profile(config.path, config.format, complete_missing_last=config.complete_missing_last)


def _reason(result: ConsistencyResult) -> Record | None:
    if result.rejection is not None:
        return {
            "kind": "rejected",
            "voter_index": result.rejection.voter_index,
            "reason": result.rejection.reason.value,
        }
    if result.infeasible is not None:
        provenance = result.infeasible.provenance
        return {
            "kind": "no-feasible-permutation",
            "row_index": result.infeasible.row_index,
            "voter_index": provenance.voter_index,
            "row_kind": provenance.kind.value,
        }
    return None


def _reason_line(reason: Record) -> str:
    if reason["kind"] == "rejected":
        return f"reason: vote {reason['voter_index']} rejected ({reason['reason']})"
    return (
        f"reason: row {reason['row_index']} ({reason['row_kind']} row of vote {reason['voter_index']}) "
        "admits no consistent axis"
    )


def _witness(profile: Profile, witness: Witness | None) -> Record | None:
    if witness is None:
        return None
    return {
        "kind": witness.kind.value,
        "voter_index": witness.voter_index,
        "candidates": _names(profile, witness.candidates),
    }


def cmd_check(namespace: argparse.Namespace) -> int:
    """Decide consistency and print one axis with the axis count."""
    config = get_config(namespace)
    profile = _load(config)
    started = time.perf_counter()
    result = check(profile, config.model)
    elapsed = (time.perf_counter() - started) * 1000
    reason = _reason(result)
    record: Record = {
        "model": config.model.value,
        "verdict": result.verdict.value,
        "axis": _names(profile, result.axis.positions) if result.axis is not None else None,
        "axis_count": result.axis_count,
        "reason": reason,
        "time_ms": round(elapsed, 3),
    }
    lines = [f"model: {config.model.value}", f"verdict: {result.verdict.value}"]
    if result.axis is not None:
        lines.append(f"axis: {AXIS_SEPARATOR.join(record['axis'])}")
    lines.append(f"axis_count: {result.axis_count}")
    if reason is not None:
        lines.append(_reason_line(reason))
    lines.append(f"time_ms: {record['time_ms']}")
    _emit(record, config.json, lines)
    return EXIT_CONSISTENT if result.consistent else EXIT_INCONSISTENT


def cmd_axes(namespace: argparse.Namespace) -> int:
    """Print up to ``--cap`` consistent axes and the total count."""
    config = get_config(namespace)
    if config.cap < 1:
        raise SinglePeakedError(f"--cap must be positive, got {config.cap}")
    profile = _load(config)
    result = check(profile, config.model)
    axes = all_axes(profile, config.model, config.cap) if result.consistent else []
    rendered = [AXIS_SEPARATOR.join(_names(profile, axis.positions)) for axis in axes]
    record: Record = {
        "model": config.model.value,
        "verdict": result.verdict.value,
        "axes": rendered,
        "axis_count": result.axis_count,
        "reason": _reason(result),
    }
    lines = [*rendered, f"count: {result.axis_count}"]
    if record["reason"] is not None:
        lines.append(_reason_line(record["reason"]))
    _emit(record, config.json, lines)
    return EXIT_CONSISTENT if result.consistent else EXIT_INCONSISTENT


def cmd_matrix(namespace: argparse.Namespace) -> int:
    """Print the canonical dump of the constraint matrix, or the rejected vote."""
    config = get_config(namespace)
    profile = _load(config)
    outcome = build_matrix(profile, config.model)
    if outcome.rejection is not None:
        reason: Record = {
            "kind": "rejected",
            "voter_index": outcome.rejection.voter_index,
            "reason": outcome.rejection.reason.value,
        }
        _emit({"model": config.model.value, "matrix": None, "reason": reason}, config.json, [_reason_line(reason)])
        return EXIT_INCONSISTENT
    assert outcome.matrix is not None
    dump = dump_matrix(outcome.matrix, profile)
    record: Record = {
        "model": config.model.value,
        "columns": _names(profile, outcome.matrix.columns),
        "matrix": outcome.matrix.as_array().tolist(),
        "reason": None,
    }
    _emit(record, config.json, dump.splitlines())
    return EXIT_CONSISTENT


def cmd_verify(namespace: argparse.Namespace) -> int:
    """Check the profile against one given axis and print the first witness, if any."""
    config = get_config(namespace)
    profile = _load(config)
    assert config.axis is not None
    axis: Axis = profile.parse_axis(config.axis)
    verdict = axis_consistent(profile, axis, config.model)
    witness = _witness(profile, verdict.witness)
    record: Record = {
        "model": config.model.value,
        "axis": _names(profile, axis.positions),
        "verdict": "consistent" if verdict else "inconsistent",
        "witness": witness,
    }
    lines = [f"axis: {profile.format_axis(axis)}", f"verdict: {record['verdict']}"]
    if witness is not None:
        shown = AXIS_SEPARATOR.join(witness["candidates"])
        lines.append(f"witness: {witness['kind']} in vote {witness['voter_index']}: {shown}")
    _emit(record, config.json, lines)
    return EXIT_CONSISTENT if verdict else EXIT_INCONSISTENT


def cmd_majority(namespace: argparse.Namespace) -> int:
    """Print the pairwise tallies and the shortest majority cycle."""
    config = get_config(namespace)
    profile = _load(config)
    relation = majority_relation(profile)
    names = _names(profile, range(profile.size))
    winner = relation.condorcet_winner()
    record: Record = {
        "candidates": names,
        "tallies": relation.tallies.tolist(),
        "cycle": _names(profile, relation.cycle) if relation.cycle is not None else None,
        "condorcet_winner": profile.name_of(winner) if winner is not None else None,
    }
    width = max(len(name) for name in names)
    lines = [" " * width + " " + " ".join(name.rjust(width) for name in names)]
    for name, row in zip(names, record["tallies"]):
        lines.append(name.rjust(width) + " " + " ".join(str(value).rjust(width) for value in row))
    if record["cycle"] is not None:
        lines.append("cycle: " + " > ".join(record["cycle"] + record["cycle"][:1]))
    else:
        lines.append("cycle: none")
    lines.append(f"condorcet_winner: {record['condorcet_winner'] or 'none'}")
    _emit(record, config.json, lines)
    return EXIT_CONSISTENT


def cmd_guide(namespace: argparse.Namespace) -> int:
    """Print the guiding order built by the smallest-id choice rule, or ``absent``."""
    config = get_config(namespace)
    profile = _load(config)
    guide = guiding_order(profile)
    record: Record = {
        "guiding_order": _names(profile, guide) if guide is not None else None,
        "choice": "smallest-id",
    }
    shown = " > ".join(record["guiding_order"]) if guide is not None else "absent"
    _emit(record, config.json, [f"guiding order: {shown}", "choice: smallest-id"])
    return EXIT_CONSISTENT


def cmd_oracle(namespace: argparse.Namespace) -> int:
    """Cross-check the PQ-tree pipeline against brute force on seeded random profiles."""
    config: OracleConfig = get_oracle_config(namespace)
    for option, value in (
        ("--trials", config.trials),
        ("--max-candidates", config.max_candidates),
        ("--max-voters", config.max_voters),
    ):
        if value < 1:
            raise SinglePeakedError(f"{option} must be positive, got {value}")
    if config.max_candidates > MAX_ORACLE_CANDIDATES:
        raise CandidateBoundExceeded(
            f"--max-candidates is limited to {MAX_ORACLE_CANDIDATES}, got {config.max_candidates}"
        )
    if not 0.0 <= config.tie_probability <= 1.0:
        raise SinglePeakedError(f"--tie-probability must lie in [0, 1], got {config.tie_probability}")
    report = run_oracle(config)
    failures = [
        {
            "trial": mismatch.trial,
            "model": mismatch.model.value,
            "missing": len(mismatch.missing),
            "unexpected": len(mismatch.unexpected),
            "profile": dump_native(mismatch.profile),
        }
        for mismatch in report.mismatches
    ]
    record: Record = {
        "trials": config.trials,
        "seed": config.seed,
        "max_candidates": config.max_candidates,
        "max_voters": config.max_voters,
        "tie_probability": config.tie_probability,
        "mismatches": len(failures),
        "failures": failures,
    }
    lines = [
        f"trials: {config.trials} (seed {config.seed}, candidates <= {config.max_candidates}, "
        f"voters <= {config.max_voters}, ties {config.tie_probability})",
        f"{len(failures)} mismatches",
    ]
    for failure in failures:
        lines.append(
            f"trial {failure['trial']} under {failure['model']}: "
            f"{failure['missing']} missing, {failure['unexpected']} unexpected axes"
        )
        lines.extend("  " + line for line in failure["profile"].splitlines())
    _emit(record, config.json, lines)
    return EXIT_CONSISTENT if report.passed else EXIT_INCONSISTENT


def _input_arguments(parser: argparse.ArgumentParser, model: bool = True) -> None:
    parser.add_argument("path", help="profile file, or - for standard input")
    parser.add_argument(
        "--format",
        choices=[fmt.value for fmt in InputFormat],
        default=InputFormat.NATIVE.value,
        help="input encoding (default: native)",
    )
    if model:
        parser.add_argument(
            "--model",
            choices=[choice.value for choice in Model],
            default=Model.EXIST_SP.value,
            help="preference model (default: exist)",
        )
    else:
        parser.set_defaults(model=Model.EXIST_SP.value)
    parser.add_argument(
        "--complete-missing-last",
        action="store_true",
        help="PrefLib only: rank candidates a vote leaves out in one last tier",
    )


def _common_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--json", action="store_true", help="print a JSON document instead of plain text")
    parser.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="log progress on stderr; repeat for debug output",
    )


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser with one subparser per command."""
    parser = argparse.ArgumentParser(
        prog="singlepeaked",
        description="Decide single-peaked, single-plateaued and existential single-peaked consistency "
        "of weak-order profiles.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)

    commands: list[tuple[str, Callable[[argparse.Namespace], int], str, bool]] = [
        ("check", cmd_check, "decide consistency, print one axis and the axis count", True),
        ("axes", cmd_axes, "list consistent axes", True),
        ("matrix", cmd_matrix, "dump the 0-1 constraint matrix", True),
        ("verify", cmd_verify, "verify the profile against one axis", True),
        ("majority", cmd_majority, "pairwise majority tallies and cycle", False),
        ("guide", cmd_guide, "guiding order by unique last candidates", False),
    ]
    for name, handler, help_text, with_model in commands:
        command = subparsers.add_parser(name, help=help_text)
        _input_arguments(command, model=with_model)
        _common_arguments(command)
        command.set_defaults(handler=handler)
        if name == "axes":
            command.add_argument(
                "--cap",
                type=int,
                default=DEFAULT_AXES_CAP,
                help=f"print at most this many axes (default: {DEFAULT_AXES_CAP})",
            )
        if name == "verify":
            command.add_argument("--axis", required=True, help='axis to verify, e.g. "a < b < c"')

    defaults = OracleConfig()
    oracle = subparsers.add_parser("oracle", help="cross-check against brute force on random profiles")
    oracle.add_argument("--trials", type=int, default=defaults.trials, help="number of random profiles")
    oracle.add_argument(
        "--max-candidates",
        type=int,
        default=defaults.max_candidates,
        help=f"largest number of candidates, at most {MAX_ORACLE_CANDIDATES}",
    )
    oracle.add_argument("--max-voters", type=int, default=defaults.max_voters, help="largest number of votes")
    oracle.add_argument("--seed", type=int, default=defaults.seed, help="random seed")
    oracle.add_argument(
        "--tie-probability",
        type=float,
        default=defaults.tie_probability,
        help="chance of merging two adjacent candidates into one tier",
    )
    _common_arguments(oracle)
    oracle.set_defaults(handler=cmd_oracle)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    """Run the command line interface and return its exit code."""
    namespace = build_parser().parse_args(argv)
    level = [logging.WARNING, logging.INFO, logging.DEBUG][min(namespace.verbose, 2)]
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    logging.getLogger("singlepeaked").setLevel(level)
    try:
        exit_code: int = namespace.handler(namespace)
    except SinglePeakedError as ex:
        logger.debug("Command %s failed", namespace.command, exc_info=True)
        sys.stderr.write(f"singlepeaked {namespace.command}: error: {ex}\n")
        return EXIT_INPUT_ERROR
    return exit_code


if __name__ == "__main__":
    sys.exit(main())
