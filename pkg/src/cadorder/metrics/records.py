"""
Recorded CAD construction measurements of a benchmark, one problem at a time.
"""

from dataclasses import dataclass, field
from typing import Optional

from ..types import Variable, VariableOrdering


@dataclass(frozen=True)
class TimingRecord:
    """
    CAD construction time of one (problem, ordering). A timed out run is
    charged twice its limit whatever cad_time says.
    """
    problem_id: str
    ordering: VariableOrdering
    cad_time: float
    timed_out: bool
    time_limit: float

    def __post_init__(self):
        if self.cad_time < 0:
            raise ValueError(f"negative cad time {self.cad_time} for {self.problem_id}")

    @property
    def effective_time(self) -> float:
        return 2 * self.time_limit if self.timed_out else self.cad_time


def effective_time(record: TimingRecord) -> float:
    return record.effective_time


@dataclass(frozen=True)
class ProjectionTimeRecord:
    problem_id: str
    ordering_prefix: tuple[Variable, ...]
    step_index: int
    seconds: float
    timed_out: bool


@dataclass(frozen=True)
class ProblemTimings:
    problem_id: str
    variables: tuple[Variable, ...]
    records: dict[VariableOrdering, TimingRecord]
    cell_counts: Optional[dict[VariableOrdering, int]] = None
    projection_times: tuple[ProjectionTimeRecord, ...] = field(default=())

    def record(self, ordering: VariableOrdering) -> Optional[TimingRecord]:
        return self.records.get(ordering)

    def sorted_records(self) -> list[TimingRecord]:
        """Records in lexicographic index order of their orderings"""
        return [self.records[o] for o in sorted(self.records, key=lambda o: o.sort_key)]

    @property
    def optimal_time(self) -> float:
        return min(r.effective_time for r in self.records.values())

    @property
    def all_timed_out(self) -> bool:
        return bool(self.records) and all(r.timed_out for r in self.records.values())

    @property
    def time_limit(self) -> float:
        """The largest limit any ordering ran under"""
        return max(r.time_limit for r in self.records.values())

    def projection_seconds(self, prefix: tuple[Variable, ...]) -> Optional[float]:
        """Recorded duration of the step that projects the last variable of prefix"""
        for r in self.projection_times:
            if r.ordering_prefix == prefix:
                return r.seconds
        return None

    @property
    def total_projection_time(self) -> float:
        return sum(r.seconds for r in self.projection_times)
