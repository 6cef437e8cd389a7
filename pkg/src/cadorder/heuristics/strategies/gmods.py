"""
Gmods - greedy choice by minimal degree sum
"""

from typing import Optional, Sequence

from ...decorators import heuristic
from ...polyarith import PolySet, degree_sum
from ...result import Result
from ...types import Variable
from ..base import GreedyHeuristic, HeuristicChoice, run_heuristic


@heuristic
class Gmods(GreedyHeuristic):
    """Projects first the variable whose degree sum over the current set is lowest"""

    def rank(self, polys: PolySet, v: Variable) -> int:
        return degree_sum(polys, v)


def gmods_choose(polys: PolySet, variables: Optional[Sequence[str]] = None, **options) -> Result[HeuristicChoice]:
    return run_heuristic(Gmods, polys, variables, **options)
