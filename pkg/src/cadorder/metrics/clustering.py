from typing import Sequence

from ..logging import warn
from ..types import all_orderings
from .records import ProblemTimings


def cell_count_key(problem: ProblemTimings) -> tuple[int, ...] | None:
    """Cell counts of every ordering in lexicographic index order; None when any is missing"""
    if not problem.cell_counts:
        return None
    key = []
    for ordering in all_orderings(problem.variables):
        count = problem.cell_counts.get(ordering)
        if count is None:
            return None
        key.append(count)
    return tuple(key)


def uniqueness_cluster(dataset: Sequence[ProblemTimings]) -> list[ProblemTimings]:
    """
    Keep one problem per vector of cell counts, the one of smallest problem_id,
    after dropping problems whose every ordering timed out. Problems without a
    complete cell count vector are kept unclustered.
    """
    representatives: dict[tuple[int, ...], ProblemTimings] = {}
    kept = []
    unclustered = []
    for problem in sorted(dataset, key=lambda p: p.problem_id):
        if problem.all_timed_out:
            continue
        key = cell_count_key(problem)
        if key is None:
            unclustered.append(problem.problem_id)
            kept.append(problem)
            continue
        if key not in representatives:
            representatives[key] = problem
            kept.append(problem)
    if unclustered:
        warn(f"{len(unclustered)} problems lack cell counts and were not clustered: {', '.join(unclustered[:5])}"
             + (" ..." if len(unclustered) > 5 else ""))
    return kept
