"""
GreedySotd - greedy choice by the sotd of a single trial projection
"""

import math
from typing import TYPE_CHECKING, Optional, Sequence

from ...decorators import heuristic
from ...logging import log
from ...polyarith import PolySet, sotd_value
from ...result import LIMIT, Ok, Result
from ...types import ProblemInstance, VariableOrdering
from ..base import Heuristic, HeuristicChoice, run_heuristic

if TYPE_CHECKING:
    from ...metrics.records import ProblemTimings


@heuristic
class GreedySotd(Heuristic):
    """
    At every step projects the current set w.r.t. each remaining variable and
    keeps the projection of lowest sotd. Trial steps off the chosen path are
    the cost; the chosen ones are reused by the CAD.
    """

    def choose(self, problem: ProblemInstance, timings: Optional["ProblemTimings"] = None) -> Result[HeuristicChoice]:
        res = self._new_forest()
        if not res:
            return res
        forest = res.unwrapped

        current = problem.polys
        remaining = list(problem.variables)
        picked = []
        diagnostics = {}
        chosen = []
        path_seconds = 0.0
        step = 1
        while len(remaining) > 1:
            outcomes = {v: forest.project(current, v) for v in remaining}
            scores = {v: math.inf if o.timed_out else sotd_value(o.polys) for v, o in outcomes.items()}
            for v in remaining:
                diagnostics[f"{step}:{v}"] = scores[v]
            candidates = [v for v in remaining if not outcomes[v].timed_out]
            if not candidates:
                forest.dispose()
                return Result.error(
                    f"{self.name}: every trial projection of step {step} of {problem.problem_id} timed out", kind=LIMIT)
            v = min(candidates, key=lambda u: (scores[u], u.index))
            chosen.append(f"{step}:{v}")
            path_seconds += outcomes[v].seconds
            current = outcomes[v].polys
            picked.append(v)
            remaining.remove(v)
            step += 1

        last = remaining[0]
        diagnostics[f"{step}:{last}"] = sotd_value(current)
        chosen.append(f"{step}:{last}")
        picked.append(last)

        cost = max(0.0, forest.total_cost() - path_seconds)
        forest.dispose()
        ordering = VariableOrdering(tuple(picked))
        log(f"{self.name}: {problem.problem_id} -> {ordering}")
        return Ok(HeuristicChoice(
            ordering=ordering,
            heuristic_name=self.name,
            heuristic_cost=cost,
            diagnostics=diagnostics,
            chosen_candidates=tuple(chosen),
        ))

    def recorded_cost(self, timings: "ProblemTimings", ordering: VariableOrdering) -> Optional[float]:
        """Recorded trial steps along the chosen path, minus the path itself"""
        if not timings.projection_times:
            return None
        total = 0.0
        for k in range(len(ordering) - 1):
            prefix = tuple(ordering[:k])
            for v in ordering[k:]:
                seconds = timings.projection_seconds(prefix + (v,))
                if seconds is None:
                    return None
                if v != ordering[k]:
                    total += seconds
        return total


def greedy_sotd_choose(polys: PolySet, variables: Optional[Sequence[str]] = None, **options) -> Result[HeuristicChoice]:
    return run_heuristic(GreedySotd, polys, variables, **options)
