"""
Logmods - mods with logarithmic degree sums
"""

import math
from typing import Optional, Sequence

from ...decorators import heuristic
from ...polyarith import PolySet
from ...projection import ProjectionChain
from ...result import DATA, Ok, Result
from ..base import ChainScoringHeuristic, HeuristicChoice, LogmodsConfig, run_heuristic
from .mods import chain_degree_sums


def chain_logmods(chain: ProjectionChain, cfg: LogmodsConfig) -> Result[float]:
    score = 1.0
    for v, d in zip(chain.ordering, chain_degree_sums(chain)):
        shifted = d + cfg.degree_offset
        if shifted <= 0:
            return Result.error(
                f"logarithm of degree sum {d} + offset {cfg.degree_offset} of {v} "
                f"in ordering {chain.ordering} is undefined", kind=DATA)
        score *= 2 * math.log(shifted, cfg.log_base) + 1
    return Ok(score)


@heuristic
class Logmods(ChainScoringHeuristic):

    # float scores this close are ties
    rel_tol = 1e-12

    def init(self) -> Result[None]:
        self._cfg = LogmodsConfig(float(self._config.log_base), int(self._config.degree_offset))
        res = self._cfg.validate()
        if not res:
            return Result.error("Logmods: invalid configuration", res)
        return super().init()

    def score_chain(self, chain: ProjectionChain) -> Result[float]:
        return chain_logmods(chain, self._cfg)


def logmods_choose(
    polys: PolySet,
    cfg: LogmodsConfig = LogmodsConfig(),
    variables: Optional[Sequence[str]] = None,
    **options,
) -> Result[HeuristicChoice]:
    return run_heuristic(Logmods, polys, variables, log_base=cfg.log_base, degree_offset=cfg.degree_offset, **options)
