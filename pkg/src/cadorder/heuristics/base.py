"""
Heuristic - base classes of the ordering choosers

A heuristic turns a ProblemInstance into a HeuristicChoice: the ordering,
the seconds of projection spent deciding, and the score of every candidate
it looked at. Enumerating heuristics score whole chains, greedy ones score
one variable per step.
"""

import math
from abc import abstractmethod
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any, Callable, Optional, Sequence

from munch import Munch

from ..config import default_config
from ..logging import log
from ..polyarith import PolySet
from ..projection import ChainForest, ProjectionChain
from ..result import DATA, LIMIT, Ok, Result
from ..stringcase import spinalcase
from ..types import Object, ProblemInstance, Variable, VariableOrdering

if TYPE_CHECKING:
    from ..metrics.records import ProblemTimings


@dataclass(frozen=True)
class LogmodsConfig:
    log_base: float = 10.0
    degree_offset: int = 0

    def validate(self) -> Result[None]:
        if not self.log_base > 1:
            return Result.error(f"log base must be greater than 1, got {self.log_base}", kind=DATA)
        if self.degree_offset < 0:
            return Result.error(f"degree offset must be non-negative, got {self.degree_offset}", kind=DATA)
        return Ok(None)


@dataclass(frozen=True)
class HeuristicChoice:
    ordering: VariableOrdering
    heuristic_name: str
    heuristic_cost: float = 0.0
    diagnostics: dict[str, Any] = field(default_factory=dict)
    chosen_candidates: tuple[str, ...] = ()
    score: Any = None

    def __post_init__(self):
        if self.heuristic_cost < 0:
            raise ValueError(f"negative heuristic cost {self.heuristic_cost}")

    def rows(self) -> list[dict]:
        """Scores table rows: heuristic, candidate, score, chosen"""
        chosen = set(self.chosen_candidates)
        return [
            {"heuristic": self.heuristic_name, "candidate": candidate,
             "score": _score_text(score), "chosen": candidate in chosen}
            for candidate, score in self.diagnostics.items()
        ]


def _score_text(score) -> str:
    match score:
        case tuple():
            return "/".join(str(s) for s in score)
        case float() if math.isinf(score):
            return "inf"
        case float():
            return repr(score)
        case _:
            return str(score)


def best_ordering(scores: dict[VariableOrdering, Any], rel_tol: float = 0.0) -> Optional[VariableOrdering]:
    """
    Minimal score, ties resolved by lexicographic index order.
    Scores within rel_tol of the minimum count as ties. None when every score is infinite.
    """
    finite = {o: s for o, s in scores.items() if not (isinstance(s, float) and math.isinf(s))}
    if not finite:
        return None
    low = min(finite.values())
    window = abs(low) * rel_tol
    tied = [o for o, s in finite.items() if s - low <= window]
    return min(tied, key=lambda o: o.sort_key)


class Heuristic(Object):
    """Base class of every ordering chooser"""

    # whether choose() needs the recorded timings of the problem
    needs_timings = False

    def __init__(self, config: Optional[Munch] = None, clock: Optional[Callable[[], float]] = None):
        super().__init__()
        self._config = config if config is not None else default_config()
        self._clock = clock

    def init(self) -> Result[None]:
        return Ok(None)

    def dispose(self) -> Result[None]:
        return Ok(None)

    @property
    def name(self) -> str:
        return spinalcase(type(self).__name__)

    @abstractmethod
    def choose(self, problem: ProblemInstance, timings: Optional["ProblemTimings"] = None) -> Result[HeuristicChoice]:
        """Pick an ordering for the problem"""

    def recorded_cost(self, timings: "ProblemTimings", ordering: VariableOrdering) -> Optional[float]:
        """Cost of the choice from recorded projection times; None keeps the measured cost"""
        return 0.0

    def _new_forest(self) -> Result[ChainForest]:
        res = ChainForest.create(self._config.step_time_limit, self._clock, self._config.enumeration_cap)
        if not res:
            return Result.error(f"{self.name}: failed to create chain forest", res)
        return res


class ChainScoringHeuristic(Heuristic):
    """
    Enumerates the chains of every ordering and keeps the one of minimal score.
    The cost is the time of every distinct projection step.
    """

    rel_tol = 0.0

    @abstractmethod
    def score_chain(self, chain: ProjectionChain) -> Result[Any]:
        """Score of a complete chain, lower is better"""

    def choose(self, problem: ProblemInstance, timings: Optional["ProblemTimings"] = None) -> Result[HeuristicChoice]:
        res = self._new_forest()
        if not res:
            return res
        forest = res.unwrapped

        res = forest.all_chains(problem.polys, problem.variables)
        if not res:
            forest.dispose()
            return Result.error(f"{self.name}: failed to enumerate chains of {problem.problem_id}", res)
        chains = res.unwrapped

        scores = {}
        for ordering, chain in chains.items():
            if not chain.complete:
                scores[ordering] = math.inf
                continue
            res = self.score_chain(chain)
            if not res:
                forest.dispose()
                return Result.error(f"{self.name}: cannot score ordering {ordering}", res)
            scores[ordering] = res.unwrapped

        best = best_ordering(scores, self.rel_tol)
        cost = forest.total_cost()
        forest.dispose()
        if best is None:
            return Result.error(f"{self.name}: every ordering of {problem.problem_id} timed out", kind=LIMIT)
        log(f"{self.name}: {problem.problem_id} -> {best} ({scores[best]})")
        return Ok(HeuristicChoice(
            ordering=best,
            heuristic_name=self.name,
            heuristic_cost=cost,
            diagnostics={str(o): scores[o] for o in sorted(scores, key=lambda o: o.sort_key)},
            chosen_candidates=(str(best),),
            score=scores[best],
        ))

    def recorded_cost(self, timings: "ProblemTimings", ordering: VariableOrdering) -> Optional[float]:
        if not timings.projection_times:
            return None
        return timings.total_projection_time


class GreedyHeuristic(Heuristic):
    """
    Picks one variable per step by minimal rank on the current set, ties to
    the lowest index, and projects the current set w.r.t. the pick.
    """

    @abstractmethod
    def rank(self, polys: PolySet, v: Variable) -> Any:
        """Rank of v on the current set, lower is better"""

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
        step = 1
        while remaining:
            ranks = {v: self.rank(current, v) for v in remaining}
            v = min(remaining, key=lambda u: (ranks[u], u.index))
            for u in remaining:
                diagnostics[f"{step}:{u}"] = ranks[u]
            chosen.append(f"{step}:{v}")
            picked.append(v)
            remaining.remove(v)
            if remaining:
                outcome = forest.project(current, v)
                if outcome.timed_out:
                    forest.dispose()
                    return Result.error(
                        f"{self.name}: projection of {problem.problem_id} w.r.t. {v} timed out", kind=LIMIT)
                current = outcome.polys
            step += 1

        forest.dispose()
        ordering = VariableOrdering(tuple(picked))
        log(f"{self.name}: {problem.problem_id} -> {ordering}")
        return Ok(HeuristicChoice(
            ordering=ordering,
            heuristic_name=self.name,
            heuristic_cost=0.0,
            diagnostics=diagnostics,
            chosen_candidates=tuple(chosen),
        ))


def run_heuristic(
    cls: type[Heuristic],
    polys: PolySet,
    variables: Optional[Sequence[str]] = None,
    problem_id: str = "",
    clock: Optional[Callable[[], float]] = None,
    **overrides,
) -> Result[HeuristicChoice]:
    """Run one heuristic on a bare polynomial set with default configuration"""
    config = default_config()
    config.update(overrides)
    res = cls.create(config, clock)
    if not res:
        return Result.error(f"failed to create heuristic {cls.__name__}", res)
    return res.unwrapped.choose(ProblemInstance.of(polys, variables, problem_id))
