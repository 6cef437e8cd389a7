"""
Mods - the ordering minimizing the product bound on the number of cells
"""

from typing import Optional, Sequence

from ...decorators import heuristic
from ...polyarith import PolySet, degree_sum
from ...projection import ProjectionChain
from ...result import Ok, Result
from ..base import ChainScoringHeuristic, HeuristicChoice, run_heuristic


def chain_degree_sums(chain: ProjectionChain) -> list[int]:
    """
    Degree sum of each ordering variable in the set it is eliminated from;
    the last variable is measured on the last set.
    """
    return [degree_sum(polys, v) for polys, v in zip(chain.sets, chain.ordering)]


def chain_mods(chain: ProjectionChain) -> int:
    score = 1
    for d in chain_degree_sums(chain):
        score *= 2 * d + 1
    return score


@heuristic
class Mods(ChainScoringHeuristic):

    def score_chain(self, chain: ProjectionChain) -> Result[int]:
        return Ok(chain_mods(chain))


def mods_choose(polys: PolySet, variables: Optional[Sequence[str]] = None, **options) -> Result[HeuristicChoice]:
    return run_heuristic(Mods, polys, variables, **options)
