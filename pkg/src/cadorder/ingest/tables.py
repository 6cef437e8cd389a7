"""
CSV tables of recorded measurements.

Orderings are written as quoted comma separated variable names in projection
order. They are resolved against the declared variables of the problem when
those are known; otherwise the names seen for the problem are numbered in
natural order (x2 before x10).
"""

import csv
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Mapping, Optional, Sequence

from ..heuristics import HeuristicChoice
from ..metrics.records import ProjectionTimeRecord, TimingRecord
from ..result import DATA, Ok, Result
from ..stringcase import spinalcase
from ..types import Variable, VariableOrdering, make_variables, parse_ordering

TIMING_COLUMNS = ("problem_id", "ordering", "cad_time_seconds", "timed_out", "time_limit_seconds")
CELLCOUNT_COLUMNS = ("problem_id", "ordering", "cell_count")
PROJECTION_TIME_COLUMNS = ("problem_id", "ordering_prefix", "step_index", "seconds", "timed_out")
CHOICE_COLUMNS = ("problem_id", "heuristic", "ordering", "heuristic_cost")

_TRUE = {"true", "1", "yes"}
_FALSE = {"false", "0", "no"}

Declared = Optional[Mapping[str, Sequence[Variable]]]


@dataclass(frozen=True)
class TimingTable:
    variables: dict[str, tuple[Variable, ...]]
    records: dict[str, dict[VariableOrdering, TimingRecord]]


@dataclass(frozen=True)
class CellCountTable:
    variables: dict[str, tuple[Variable, ...]]
    counts: dict[str, dict[VariableOrdering, int]]


@dataclass(frozen=True)
class ProjectionTimeTable:
    records: dict[str, list[ProjectionTimeRecord]] = field(default_factory=dict)


def natural_key(name: str) -> list:
    return [int(part) if part.isdigit() else part for part in re.split(r"(\d+)", name)]


def _parse_bool(text: str) -> Optional[bool]:
    text = text.strip().lower()
    if text in _TRUE:
        return True
    if text in _FALSE:
        return False
    return None


def _read_rows(path: Path, columns: Sequence[str]) -> Result[list[tuple[int, dict]]]:
    """(line number, row) pairs of a CSV with a required header"""
    try:
        with open(path, "r", encoding="utf-8", newline="") as f:
            reader = csv.DictReader(f, skipinitialspace=True)
            header = [name.strip() for name in (reader.fieldnames or [])]
            missing = [c for c in columns if c not in header]
            if missing:
                return Result.error(f"{path}: header lacks columns {missing}", kind=DATA)
            reader.fieldnames = header
            rows = []
            for row in reader:
                if None in row or any(row.get(c) is None for c in columns):
                    return Result.error(f"{path}:{reader.line_num}: wrong number of fields", kind=DATA)
                rows.append((reader.line_num, {k: v.strip() for k, v in row.items()}))
            return Ok(rows)
    except (OSError, UnicodeDecodeError, csv.Error) as e:
        return Result.error(f"failed to read {path}", e, kind=DATA)


def _variables_for(rows: list[tuple[int, dict]], column: str, declared: Declared) -> dict[str, tuple[Variable, ...]]:
    """Declared variables per problem, or the names its rows use in natural order"""
    names: dict[str, set[str]] = {}
    for _, row in rows:
        names.setdefault(row["problem_id"], set()).update(
            part.strip() for part in row[column].split(",") if part.strip())
    out = {}
    for problem_id, seen in names.items():
        if declared is not None and problem_id in declared:
            out[problem_id] = tuple(declared[problem_id])
        else:
            out[problem_id] = make_variables(sorted(seen, key=natural_key))
    return out


def _ordering(path: Path, line: int, text: str, variables: Sequence[Variable]) -> Result[VariableOrdering]:
    res = parse_ordering(text, variables, kind=DATA)
    if not res:
        return Result.error(f"{path}:{line}: bad ordering", res)
    return res


def _number(path: Path, line: int, row: dict, column: str, cast: Callable = float) -> Result:
    try:
        value = cast(row[column])
    except ValueError:
        return Result.error(f"{path}:{line}: {column} '{row[column]}' is not a number", kind=DATA)
    if value < 0:
        return Result.error(f"{path}:{line}: {column} is negative", kind=DATA)
    return Ok(value)


def load_timings(path: Path, declared: Declared = None) -> Result[TimingTable]:
    path = Path(path)
    res = _read_rows(path, TIMING_COLUMNS)
    if not res:
        return Result.error("load_timings: failed", res)
    rows = res.unwrapped
    variables = _variables_for(rows, "ordering", declared)

    records: dict[str, dict[VariableOrdering, TimingRecord]] = {}
    for line, row in rows:
        problem_id = row["problem_id"]
        res = _ordering(path, line, row["ordering"], variables[problem_id])
        if not res:
            return res
        ordering = res.unwrapped
        res = _number(path, line, row, "cad_time_seconds")
        if not res:
            return res
        cad_time = res.unwrapped
        res = _number(path, line, row, "time_limit_seconds")
        if not res:
            return res
        time_limit = res.unwrapped
        timed_out = _parse_bool(row["timed_out"])
        if timed_out is None:
            return Result.error(f"{path}:{line}: timed_out '{row['timed_out']}' is not a boolean", kind=DATA)

        per_problem = records.setdefault(problem_id, {})
        if ordering in per_problem:
            return Result.error(f"{path}:{line}: duplicate timing for ({problem_id}, {ordering})", kind=DATA)
        per_problem[ordering] = TimingRecord(problem_id, ordering, cad_time, timed_out, time_limit)
    return Ok(TimingTable(variables, records))


def load_cellcounts(path: Path, declared: Declared = None) -> Result[CellCountTable]:
    path = Path(path)
    res = _read_rows(path, CELLCOUNT_COLUMNS)
    if not res:
        return Result.error("load_cellcounts: failed", res)
    rows = res.unwrapped
    variables = _variables_for(rows, "ordering", declared)

    counts: dict[str, dict[VariableOrdering, int]] = {}
    for line, row in rows:
        problem_id = row["problem_id"]
        res = _ordering(path, line, row["ordering"], variables[problem_id])
        if not res:
            return res
        ordering = res.unwrapped
        res = _number(path, line, row, "cell_count", int)
        if not res:
            return res
        per_problem = counts.setdefault(problem_id, {})
        if ordering in per_problem:
            return Result.error(f"{path}:{line}: duplicate cell count for ({problem_id}, {ordering})", kind=DATA)
        per_problem[ordering] = res.unwrapped
    return Ok(CellCountTable(variables, counts))


def load_projection_times(path: Path, declared: Declared = None) -> Result[ProjectionTimeTable]:
    """Rows name the ordering prefix whose last variable is projected at step_index"""
    path = Path(path)
    res = _read_rows(path, PROJECTION_TIME_COLUMNS)
    if not res:
        return Result.error("load_projection_times: failed", res)
    rows = res.unwrapped
    variables = _variables_for(rows, "ordering_prefix", declared)

    records: dict[str, list[ProjectionTimeRecord]] = {}
    seen = set()
    for line, row in rows:
        problem_id = row["problem_id"]
        by_name = {v.name: v for v in variables[problem_id]}
        names = [part.strip() for part in row["ordering_prefix"].split(",") if part.strip()]
        unknown = [name for name in names if name not in by_name]
        if unknown:
            return Result.error(f"{path}:{line}: unknown variable {unknown[0]} in prefix", kind=DATA)
        if not names or len(set(names)) != len(names):
            return Result.error(f"{path}:{line}: malformed ordering prefix '{row['ordering_prefix']}'", kind=DATA)
        prefix = tuple(by_name[name] for name in names)
        res = _number(path, line, row, "step_index", int)
        if not res:
            return res
        if res.unwrapped != len(prefix):
            return Result.error(f"{path}:{line}: step_index {res.unwrapped} does not match prefix length", kind=DATA)
        res = _number(path, line, row, "seconds")
        if not res:
            return res
        seconds = res.unwrapped
        timed_out = _parse_bool(row["timed_out"])
        if timed_out is None:
            return Result.error(f"{path}:{line}: timed_out '{row['timed_out']}' is not a boolean", kind=DATA)
        if (problem_id, prefix) in seen:
            return Result.error(f"{path}:{line}: duplicate step for ({problem_id}, {row['ordering_prefix']})", kind=DATA)
        seen.add((problem_id, prefix))
        records.setdefault(problem_id, []).append(
            ProjectionTimeRecord(problem_id, prefix, len(prefix), seconds, timed_out))
    return Ok(ProjectionTimeTable(records))


def load_choices(path: Path, declared: Declared = None) -> Result[dict[str, dict[str, HeuristicChoice]]]:
    """problem_id -> heuristic -> choice, heuristic names in spinal-case"""
    path = Path(path)
    res = _read_rows(path, CHOICE_COLUMNS)
    if not res:
        return Result.error("load_choices: failed", res)
    rows = res.unwrapped
    variables = _variables_for(rows, "ordering", declared)

    choices: dict[str, dict[str, HeuristicChoice]] = {}
    for line, row in rows:
        problem_id = row["problem_id"]
        name = spinalcase(row["heuristic"])
        res = _ordering(path, line, row["ordering"], variables[problem_id])
        if not res:
            return res
        ordering = res.unwrapped
        cost = 0.0
        if row["heuristic_cost"]:
            res = _number(path, line, row, "heuristic_cost")
            if not res:
                return res
            cost = res.unwrapped
        per_problem = choices.setdefault(problem_id, {})
        if name in per_problem:
            return Result.error(f"{path}:{line}: duplicate choice of {name} for {problem_id}", kind=DATA)
        per_problem[name] = HeuristicChoice(ordering=ordering, heuristic_name=name, heuristic_cost=cost)
    return Ok(choices)


PER_PROBLEM_COLUMNS = ("problem_id", "heuristic", "chosen_time", "timed_out")


def load_problem_times(path: Path) -> Result[dict[str, dict[str, tuple[float, bool]]]]:
    """heuristic -> problem_id -> (chosen time, timed out), read back from an evaluate per-problem CSV"""
    path = Path(path)
    res = _read_rows(path, PER_PROBLEM_COLUMNS)
    if not res:
        return Result.error("load_problem_times: failed", res)

    times: dict[str, dict[str, tuple[float, bool]]] = {}
    for line, row in res.unwrapped:
        res = _number(path, line, row, "chosen_time")
        if not res:
            return res
        timed_out = _parse_bool(row["timed_out"])
        if timed_out is None:
            return Result.error(f"{path}:{line}: timed_out '{row['timed_out']}' is not a boolean", kind=DATA)
        per_heuristic = times.setdefault(spinalcase(row["heuristic"]), {})
        if row["problem_id"] in per_heuristic:
            return Result.error(f"{path}:{line}: duplicate row for ({row['heuristic']}, {row['problem_id']})", kind=DATA)
        per_heuristic[row["problem_id"]] = (res.unwrapped, timed_out)
    return Ok(times)
