from dataclasses import dataclass
from typing import Mapping, Optional

from ..logging import log, warn
from ..metrics.clustering import uniqueness_cluster
from ..metrics.records import ProblemTimings
from ..result import DATA, Ok, Result, as_tree
from ..types import ProblemInstance
from .tables import CellCountTable, ProjectionTimeTable, TimingTable


@dataclass(frozen=True)
class DatasetStats:
    total: int
    all_timed_out: int
    unique: int
    clustered: bool

    @property
    def as_tree(self) -> dict:
        return {name: as_tree(getattr(self, name)) for name in self.__dataclass_fields__}


def assemble_dataset(
    problems: Optional[Mapping[str, ProblemInstance]],
    timings: TimingTable,
    cellcounts: Optional[CellCountTable] = None,
    projection_times: Optional[ProjectionTimeTable] = None,
) -> Result[tuple[list[ProblemTimings], DatasetStats]]:
    """
    Join the tables per problem, drop problems that timed out in every
    ordering and keep one problem per cell count vector when counts exist.
    Without parsed problems the variables come from the timing table.
    """
    if problems is not None:
        orphans = sorted(set(timings.records) - set(problems))
        if orphans:
            return Result.error(f"timing rows reference unknown problems: {', '.join(orphans)}", kind=DATA)
        untimed = sorted(set(problems) - set(timings.records))
        if untimed:
            warn(f"{len(untimed)} problems have no timing rows and are left out")

    dataset = []
    for problem_id in sorted(timings.records):
        variables = problems[problem_id].variables if problems is not None else timings.variables[problem_id]
        counts = cellcounts.counts.get(problem_id) if cellcounts is not None else None
        steps = tuple(projection_times.records.get(problem_id, ())) if projection_times is not None else ()
        dataset.append(ProblemTimings(problem_id, tuple(variables), timings.records[problem_id], counts, steps))

    all_timed_out = sum(1 for p in dataset if p.all_timed_out)
    if cellcounts is not None:
        kept = uniqueness_cluster(dataset)
    else:
        warn("no cell counts given, clustering skipped")
        kept = [p for p in dataset if not p.all_timed_out]

    stats = DatasetStats(total=len(dataset), all_timed_out=all_timed_out, unique=len(kept), clustered=cellcounts is not None)
    log(f"dataset: {stats.total} problems, {stats.all_timed_out} timed out in every ordering, {stats.unique} kept")
    return Ok((kept, stats))
