"""
VirtualBest - the fastest recorded ordering of a problem
"""

from typing import Optional

from ...decorators import heuristic
from ...metrics.records import ProblemTimings
from ...result import DATA, USAGE, Ok, Result
from ...types import ProblemInstance
from ..base import Heuristic, HeuristicChoice, best_ordering


def virtual_best(timings: ProblemTimings) -> Result[HeuristicChoice]:
    if not timings.records:
        return Result.error(f"problem {timings.problem_id} has no timing data", kind=DATA)
    scores = {ordering: record.effective_time for ordering, record in timings.records.items()}
    best = best_ordering(scores)
    return Ok(HeuristicChoice(
        ordering=best,
        heuristic_name="virtual-best",
        diagnostics={str(o): scores[o] for o in sorted(scores, key=lambda o: o.sort_key)},
        chosen_candidates=(str(best),),
        score=scores[best],
    ))


@heuristic
class VirtualBest(Heuristic):

    needs_timings = True

    def choose(self, problem: ProblemInstance, timings: Optional[ProblemTimings] = None) -> Result[HeuristicChoice]:
        if timings is None:
            return Result.error(f"{self.name} needs the recorded timings of {problem.problem_id}", kind=USAGE)
        return virtual_best(timings)
