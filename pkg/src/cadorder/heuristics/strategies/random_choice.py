"""
Random - a uniformly drawn ordering, reproducible from the seed
"""

import random
from typing import TYPE_CHECKING, Optional, Sequence

from ...decorators import heuristic
from ...polyarith import PolySet
from ...result import Ok, Result
from ...types import ProblemInstance, VariableOrdering
from ..base import Heuristic, HeuristicChoice, run_heuristic

if TYPE_CHECKING:
    from ...metrics.records import ProblemTimings


@heuristic
class Random(Heuristic):

    def choose(self, problem: ProblemInstance, timings: Optional["ProblemTimings"] = None) -> Result[HeuristicChoice]:
        # string seeds are hashed deterministically, independent of PYTHONHASHSEED
        rng = random.Random(f"{self._config.seed}:{problem.problem_id}")
        variables = sorted(problem.variables)
        ordering = VariableOrdering(tuple(rng.sample(variables, len(variables))))
        return Ok(HeuristicChoice(ordering=ordering, heuristic_name=self.name, chosen_candidates=(str(ordering),),
                                  diagnostics={str(ordering): 0}))


def random_choose(
    polys: PolySet,
    seed: int = 0,
    variables: Optional[Sequence[str]] = None,
    problem_id: str = "",
) -> Result[HeuristicChoice]:
    return run_heuristic(Random, polys, variables, problem_id=problem_id, seed=seed)
