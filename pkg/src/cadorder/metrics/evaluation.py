"""
Evaluation of heuristic choices against recorded timings.

Every heuristic is summarized twice: charging its own cost on top of the CAD
time ("with-cost") and without it ("without-cost"). Sums run in problem_id
order so floating totals do not depend on input order.
"""

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from ..config import HEURISTIC_NAMES
from ..heuristics import HeuristicChoice
from ..result import DATA, Ok, Result, as_tree
from ..types import VariableOrdering
from .records import ProblemTimings, TimingRecord

WITH_COST = "with-cost"
WITHOUT_COST = "without-cost"


def markup(heuristic_time: float, optimal_time: float) -> float:
    """Relative excess over the optimal time, both shifted by one second"""
    return ((heuristic_time + 1) - (optimal_time + 1)) / (optimal_time + 1)


@dataclass(frozen=True)
class ProblemRow:
    problem_id: str
    heuristic: str
    ordering: VariableOrdering
    effective_time: float
    heuristic_cost: float
    optimal_time: float
    timed_out: bool
    time_limit: float

    def chosen_time(self, include_cost: bool) -> float:
        return self.effective_time + (self.heuristic_cost if include_cost else 0.0)

    def markup(self, include_cost: bool) -> float:
        return markup(self.chosen_time(include_cost), self.optimal_time)

    @property
    def accurate(self) -> bool:
        return self.effective_time == self.optimal_time

    def completed(self, include_cost: bool) -> bool:
        return self.chosen_time(include_cost) < self.time_limit

    def as_row(self, include_cost: bool) -> dict:
        return {
            "problem_id": self.problem_id,
            "heuristic": self.heuristic,
            "ordering": str(self.ordering),
            "chosen_time": self.chosen_time(include_cost),
            "optimal_time": self.optimal_time,
            "markup": self.markup(include_cost),
            "timed_out": self.timed_out,
            "heuristic_cost": self.heuristic_cost,
            "time_limit": self.time_limit,
        }


@dataclass(frozen=True)
class MetricSummary:
    heuristic: str
    variant: str
    problems: int
    accuracy: float
    total_time: float
    mean_markup: float
    completed: int
    near_optimal_rate: float
    heuristic_cost: float
    cost_share: float

    @property
    def as_tree(self) -> dict:
        return {name: as_tree(getattr(self, name)) for name in self.__dataclass_fields__}


@dataclass(frozen=True)
class EvaluationReport:
    include_cost: bool
    summaries: tuple[MetricSummary, ...]
    rows: tuple[ProblemRow, ...]

    @property
    def heuristics(self) -> list[str]:
        return list(dict.fromkeys(s.heuristic for s in self.summaries))

    def summary(self, heuristic: str, variant: Optional[str] = None) -> Optional[MetricSummary]:
        variant = variant or (WITH_COST if self.include_cost else WITHOUT_COST)
        for s in self.summaries:
            if s.heuristic == heuristic and s.variant == variant:
                return s
        return None

    def rows_of(self, heuristic: str) -> dict[str, ProblemRow]:
        return {row.problem_id: row for row in self.rows if row.heuristic == heuristic}

    def report_rows(self) -> list[dict]:
        """One row per (heuristic, variant); the without-cost variant only when cost is excluded"""
        variants = (WITH_COST, WITHOUT_COST) if self.include_cost else (WITHOUT_COST,)
        return [s.as_tree for s in self.summaries if s.variant in variants]

    def problem_rows(self) -> list[dict]:
        return [row.as_row(self.include_cost) for row in self.rows]

    @property
    def as_tree(self) -> dict:
        return {
            "include_cost": self.include_cost,
            "heuristics": self.heuristics,
            "summaries": self.report_rows(),
            "problems": self.problem_rows(),
        }


def heuristic_order(names: Iterable[str]) -> list[str]:
    names = set(names)
    builtin = [n for n in HEURISTIC_NAMES if n in names]
    return builtin + sorted(names - set(builtin))


def _summarize(heuristic: str, rows: Sequence[ProblemRow], include_cost: bool, near_optimal_threshold: float) -> MetricSummary:
    count = len(rows)
    total = 0.0
    markups = 0.0
    cost = 0.0
    completed = 0
    near = 0
    accurate = 0
    for row in rows:
        chosen = row.chosen_time(include_cost)
        total += chosen
        markups += row.markup(include_cost)
        cost += row.heuristic_cost
        completed += row.completed(include_cost)
        near += chosen <= (1 + near_optimal_threshold) * row.optimal_time
        accurate += row.accurate
    return MetricSummary(
        heuristic=heuristic,
        variant=WITH_COST if include_cost else WITHOUT_COST,
        problems=count,
        accuracy=accurate / count if count else 0.0,
        total_time=total,
        mean_markup=markups / count if count else 0.0,
        completed=completed,
        near_optimal_rate=near / count if count else 0.0,
        heuristic_cost=cost,
        cost_share=(cost / total if total else 0.0) if include_cost else 0.0,
    )


def evaluate(
    dataset: Sequence[ProblemTimings],
    choices: Mapping[str, Mapping[str, HeuristicChoice]],
    include_cost: bool = True,
    near_optimal_threshold: float = 0.2,
) -> Result[EvaluationReport]:
    """
    choices maps problem_id -> heuristic name -> choice. Every heuristic named
    for some problem must have a choice for every problem of the dataset.
    """
    problems = sorted(dataset, key=lambda p: p.problem_id)
    names = heuristic_order(name for per_problem in choices.values() for name in per_problem)

    rows: list[ProblemRow] = []
    for heuristic in names:
        for problem in problems:
            choice = choices.get(problem.problem_id, {}).get(heuristic)
            if choice is None:
                return Result.error(f"no choice of {heuristic} for problem {problem.problem_id}", kind=DATA)
            record: Optional[TimingRecord] = problem.record(choice.ordering)
            if record is None:
                return Result.error(
                    f"problem {problem.problem_id} has no timing for ordering {choice.ordering} chosen by {heuristic}",
                    kind=DATA)
            rows.append(ProblemRow(
                problem_id=problem.problem_id,
                heuristic=heuristic,
                ordering=choice.ordering,
                effective_time=record.effective_time,
                heuristic_cost=choice.heuristic_cost,
                optimal_time=problem.optimal_time,
                timed_out=record.timed_out,
                time_limit=record.time_limit,
            ))

    summaries = []
    for heuristic in names:
        own = [row for row in rows if row.heuristic == heuristic]
        summaries.append(_summarize(heuristic, own, True, near_optimal_threshold))
        summaries.append(_summarize(heuristic, own, False, near_optimal_threshold))
    return Ok(EvaluationReport(include_cost, tuple(summaries), tuple(rows)))


def near_optimal_rate(report: EvaluationReport, heuristic: str, variant: Optional[str] = None) -> float:
    """Fraction of problems solved within the near optimal threshold of the best time"""
    summary = report.summary(heuristic, variant)
    return summary.near_optimal_rate if summary else 0.0


def cost_share(report: EvaluationReport, heuristic: str) -> float:
    """Share of the total time with cost that was spent choosing the ordering"""
    summary = report.summary(heuristic, WITH_COST)
    return summary.cost_share if summary else 0.0


def filter_hard(dataset: Sequence[ProblemTimings], min_optimal_seconds: float) -> list[ProblemTimings]:
    """Problems whose optimal effective time exceeds the threshold; a zero threshold keeps all"""
    if min_optimal_seconds <= 0:
        return list(dataset)
    return [p for p in dataset if p.optimal_time > min_optimal_seconds]
