"""
McCallum projection: single steps, chains along an ordering and a memoized
forest of chains over every ordering.

With the wall clock, a forest runs every step in a worker process and kills the
worker when the step outlives the limit; the step then counts the limit as its
time and yields no set. An injected clock runs steps inline and declares a
timeout after the step returns, when its measured duration exceeded the limit.
Chains through a timed out step are truncated after it.
"""

import multiprocessing
import time
from dataclasses import dataclass, field
from itertools import combinations
from math import factorial
from multiprocessing.pool import Pool
from typing import Callable, Iterable, Optional, Sequence

from .logging import log, warn
from .polyarith import PolySet, Polynomial, render
from .polyarith.algorithms import basis, poly_discriminant, poly_resultant, split_content, squarefree_factors
from .result import LIMIT, USAGE, Ok, Result
from .types import Object, Variable, VariableOrdering, all_orderings

Clock = Callable[[], float]
Step = Callable[[PolySet, Variable], PolySet]


def project_step(polys: PolySet, v: Variable) -> PolySet:
    """McCallum projection of a set w.r.t. v, in normal form"""
    position = v.position
    if position >= polys.nvars:
        raise ValueError(f"variable {v} outside a universe of {polys.nvars} variables")

    # contents, plus members free of v, pass through
    passed: list[Polynomial] = []
    factors: list[Polynomial] = []
    for p in polys:
        if p.degree(position) == 0:
            passed.append(p)
            continue
        c, primitive = split_content(p, position)
        passed.append(c)
        for f in squarefree_factors(primitive, position):
            (factors if f.degree(position) else passed).append(f)

    out = list(passed)
    members = basis(factors)
    for b in members:
        out.extend(b.coefficients(position).values())
        if b.degree(position) >= 2:
            out.append(poly_discriminant(b, position))
    for a, b in combinations(members, 2):
        out.append(poly_resultant(a, b, position))

    return PolySet(polys.nvars, (f for q in out if not q.is_zero for f in squarefree_factors(q)))


@dataclass(frozen=True)
class StepOutcome:
    polys: PolySet
    seconds: float
    timed_out: bool


@dataclass(frozen=True)
class ProjectionChain:
    """
    sets[0] is the input set, sets[k] the set after projecting ordering[:k].
    A timed out step contributes its time but no set.
    """
    ordering: VariableOrdering
    sets: tuple[PolySet, ...]
    step_times: tuple[float, ...] = field(compare=False)
    any_step_timed_out: bool = False

    @property
    def complete(self) -> bool:
        return not self.any_step_timed_out


class ChainForest(Object):
    """
    Shares single projection steps between the chains of different orderings.
    Keyed by (set, variable); a cached outcome is the outcome of the first
    computation, timeouts included.

    isolated defaults to running steps in a worker process exactly when no
    clock is injected. The worker is started on the first step, replaced after
    a kill and stopped by dispose.
    """

    def __init__(
        self,
        step_time_limit: float = 10.0,
        clock: Optional[Clock] = None,
        enumeration_cap: int = 7,
        step: Step = project_step,
        isolated: Optional[bool] = None,
    ):
        self._step_time_limit = step_time_limit
        self._clock = clock or time.perf_counter
        self._enumeration_cap = enumeration_cap
        self._step = step
        self._isolated = clock is None if isolated is None else isolated
        self._pool: Optional[Pool] = None
        self._memo: dict[tuple[PolySet, Variable], StepOutcome] = {}

    def init(self) -> Result[None]:
        if self._step_time_limit <= 0:
            return Result.error(f"step time limit must be positive, got {self._step_time_limit}", kind=USAGE)
        if self._enumeration_cap < 1:
            return Result.error(f"enumeration cap must be at least 1, got {self._enumeration_cap}", kind=USAGE)
        return Ok(None)

    def dispose(self) -> Result[None]:
        self._stop_worker(kill=False)
        self._memo.clear()
        return Ok(None)

    @property
    def step_time_limit(self) -> float:
        return self._step_time_limit

    def project(self, polys: PolySet, v: Variable) -> StepOutcome:
        key = (polys, v)
        outcome = self._memo.get(key)
        if outcome is not None:
            return outcome
        outcome = self._run_isolated(polys, v) if self._isolated else self._run_inline(polys, v)
        if outcome.timed_out:
            warn(f"projection w.r.t. {v} took {outcome.seconds:.3f}s, over the {self._step_time_limit}s limit")
        self._memo[key] = outcome
        return outcome

    def _run_inline(self, polys: PolySet, v: Variable) -> StepOutcome:
        start = self._clock()
        projected = self._step(polys, v)
        seconds = max(0.0, self._clock() - start)
        return StepOutcome(projected, seconds, seconds > self._step_time_limit)

    def _run_isolated(self, polys: PolySet, v: Variable) -> StepOutcome:
        if self._pool is None:
            self._pool = Pool(processes=1)
        pending = self._pool.apply_async(self._step, (polys, v))
        start = self._clock()
        try:
            projected = pending.get(timeout=self._step_time_limit)
        except multiprocessing.TimeoutError:
            self._stop_worker(kill=True)
            return StepOutcome(PolySet(polys.nvars), self._step_time_limit, True)
        seconds = max(0.0, self._clock() - start)
        return StepOutcome(projected, seconds, seconds > self._step_time_limit)

    def _stop_worker(self, kill: bool):
        if self._pool is None:
            return
        if kill:
            self._pool.terminate()
        else:
            self._pool.close()
        self._pool.join()
        self._pool = None

    def total_cost(self) -> float:
        """Time of every distinct step computed so far"""
        return sum(outcome.seconds for outcome in self._memo.values())

    def chain(self, polys: PolySet, ordering: VariableOrdering) -> ProjectionChain:
        sets = [polys]
        times = []
        timed_out = False
        # the last variable needs no projection
        for v in ordering[:-1]:
            outcome = self.project(sets[-1], v)
            times.append(outcome.seconds)
            if outcome.timed_out:
                timed_out = True
                break
            sets.append(outcome.polys)
        return ProjectionChain(ordering, tuple(sets), tuple(times), timed_out)

    def all_chains(self, polys: PolySet, variables: Sequence[Variable]) -> Result[dict[VariableOrdering, ProjectionChain]]:
        n = len(variables)
        if n > self._enumeration_cap:
            return Result.error(
                f"ordering enumeration too large: {n} variables give {factorial(n)} orderings "
                f"(cap is {self._enumeration_cap} variables)", kind=LIMIT)
        chains = {}
        for ordering in all_orderings(variables):
            chains[ordering] = self.chain(polys, ordering)
        log(f"enumerated {len(chains)} chains with {len(self._memo)} distinct steps")
        return Ok(chains)


def default_variables(polys: PolySet) -> tuple[Variable, ...]:
    return tuple(Variable(i + 1) for i in range(polys.nvars))


def project_chain(
    polys: PolySet,
    ordering: VariableOrdering,
    step_time_limit: float = 10.0,
    clock: Optional[Clock] = None,
) -> Result[ProjectionChain]:
    if not ordering.is_permutation_of(default_variables(polys)):
        return Result.error(f"ordering {ordering} is not a permutation of the {polys.nvars} variables", kind=USAGE)
    res = ChainForest.create(step_time_limit, clock)
    if not res:
        return Result.error("failed to create chain forest", res)
    forest = res.unwrapped
    chain = forest.chain(polys, ordering)
    forest.dispose()
    return Ok(chain)


def all_chains(
    polys: PolySet,
    step_time_limit: float = 10.0,
    variables: Optional[Sequence[Variable]] = None,
    enumeration_cap: int = 7,
    clock: Optional[Clock] = None,
) -> Result[dict[VariableOrdering, ProjectionChain]]:
    res = ChainForest.create(step_time_limit, clock, enumeration_cap)
    if not res:
        return Result.error("failed to create chain forest", res)
    forest = res.unwrapped
    res = forest.all_chains(polys, variables or default_variables(polys))
    forest.dispose()
    return res


def dump_chain(chain: ProjectionChain, names: Optional[Iterable[str]] = None, with_times: bool = True) -> str:
    """
    Chain dump: an ordering header then one line per set, e.g.

        ordering: x3,x1,x2
        S3: -x2^3 + x1, x1^4 - x2^3 - x3^3 - x2
        S2 (x3, 0.0012s): ...
    """
    names = list(names) if names is not None else None
    n = len(chain.ordering)
    lines = [f"ordering: {chain.ordering}"]
    for k, polys in enumerate(chain.sets):
        label = f"S{n - k}"
        if k:
            v = chain.ordering[k - 1]
            label += f" ({v}, {chain.step_times[k - 1]:.4f}s)" if with_times else f" ({v})"
        body = ", ".join(render(p, names) for p in polys) or "(empty)"
        lines.append(f"{label}: {body}")
    if chain.any_step_timed_out:
        k = len(chain.sets)
        v = chain.ordering[k - 1]
        lines.append(f"S{n - k} ({v}, {chain.step_times[k - 1]:.4f}s): timed out")
    return "\n".join(lines) + "\n"
