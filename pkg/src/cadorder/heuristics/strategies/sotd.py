"""
Sotd - the ordering whose whole projection has the smallest sum of total degrees
"""

from typing import Optional, Sequence

from ...decorators import heuristic
from ...polyarith import PolySet, sotd_value
from ...projection import ProjectionChain
from ...result import Ok, Result
from ..base import ChainScoringHeuristic, HeuristicChoice, run_heuristic


def chain_sotd(chain: ProjectionChain) -> int:
    """Sum over every set of the chain, the input set included"""
    return sum(sotd_value(polys) for polys in chain.sets)


@heuristic
class Sotd(ChainScoringHeuristic):

    def score_chain(self, chain: ProjectionChain) -> Result[int]:
        return Ok(chain_sotd(chain))


def sotd_choose(polys: PolySet, variables: Optional[Sequence[str]] = None, **options) -> Result[HeuristicChoice]:
    return run_heuristic(Sotd, polys, variables, **options)
