"""
Brown - greedy choice by degree, then total degree, then term count
"""

from typing import Optional, Sequence

from ...decorators import heuristic
from ...polyarith import PolySet
from ...result import Result
from ...types import Variable
from ..base import GreedyHeuristic, HeuristicChoice, run_heuristic


@heuristic
class Brown(GreedyHeuristic):
    """
    Projects first the variable of
    1. lowest degree in the current set
    2. lowest total degree of the terms containing it
    3. fewest terms containing it
    and of lowest index when all three tie. No projection beyond the ones the CAD reuses.
    """

    def rank(self, polys: PolySet, v: Variable) -> tuple[int, int, int]:
        position = v.position
        max_degree = max((p.degree(position) for p in polys), default=0)
        containing = [sum(e) for p in polys for e, _ in p.items() if e[position]]
        return max_degree, max(containing, default=0), len(containing)


def brown_choose(polys: PolySet, variables: Optional[Sequence[str]] = None, **options) -> Result[HeuristicChoice]:
    return run_heuristic(Brown, polys, variables, **options)
