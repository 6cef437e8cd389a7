import itertools
import math
from collections import Counter

import pytest

from cadorder.config import HEURISTIC_NAMES, default_config
from cadorder.heuristics import HeuristicChoice, HeuristicFactory, LogmodsConfig, best_ordering, run_heuristic
from cadorder.heuristics.strategies.brown import brown_choose
from cadorder.heuristics.strategies.gmods import gmods_choose
from cadorder.heuristics.strategies.greedy_sotd import GreedySotd, greedy_sotd_choose
from cadorder.heuristics.strategies.logmods import chain_logmods, logmods_choose
from cadorder.heuristics.strategies.mods import chain_degree_sums, chain_mods, mods_choose
from cadorder.heuristics.strategies.random_choice import random_choose
from cadorder.heuristics.strategies.sotd import Sotd, chain_sotd, sotd_choose
from cadorder.heuristics.strategies.virtual_best import virtual_best
from cadorder.metrics.records import ProblemTimings, ProjectionTimeRecord, TimingRecord
from cadorder.polyarith import PolySet, degree_sum, sotd_value
from cadorder.projection import all_chains, project_step
from cadorder.result import DATA, LIMIT, USAGE
from cadorder.types import VariableOrdering

from helpers import X1, X2, X3, poly, polyset, s3, s3_problem


def ticking_clock(step: float):
    counter = itertools.count()
    return lambda: next(counter) * step


def order(*variables) -> VariableOrdering:
    return VariableOrdering(tuple(variables))


WORKED = order(X3, X1, X2)

DETERMINISTIC = (brown_choose, gmods_choose, sotd_choose, mods_choose, logmods_choose, greedy_sotd_choose)


def test_brown_worked_example():
    choice = brown_choose(s3()).unwrapped
    assert choice.ordering == order(X3, X2, X1)
    assert choice.heuristic_cost == 0.0
    assert choice.heuristic_name == "brown"


def test_brown_ties_go_to_lowest_index():
    assert str(brown_choose(polyset("x1*x2", names=("x1", "x2"))).unwrapped.ordering) == "x1,x2"


def test_brown_single_variable():
    assert str(brown_choose(polyset("x1^2 - 3", names=("x1",))).unwrapped.ordering) == "x1"


def test_gmods_worked_example():
    choice = gmods_choose(s3()).unwrapped
    assert choice.ordering == WORKED
    assert choice.heuristic_cost == 0.0
    assert choice.diagnostics["1:x3"] == 3
    assert choice.diagnostics["1:x1"] == 5
    assert choice.diagnostics["1:x2"] == 6


def test_gmods_picks_absent_variable_first():
    ps = polyset("x1^2 + x2 - 1", "x1*x2 + 2")
    assert gmods_choose(ps).unwrapped.ordering[0] == X3


def test_gmods_symmetric_tie():
    assert str(gmods_choose(polyset("x1^2 + x2^2", names=("x1", "x2"))).unwrapped.ordering) == "x1,x2"


def test_gmods_first_pick_is_degree_sum_argmin():
    for ps in (s3(), polyset("x1*x2^2 + x3^2", "x2^3 - x3"), polyset("x3^5 + x1", "x2^2*x1 - 1")):
        first = gmods_choose(ps).unwrapped.ordering[0]
        assert first == min((X1, X2, X3), key=lambda v: (degree_sum(ps, v), v.index))


def test_sotd_worked_example():
    choice = sotd_choose(s3()).unwrapped
    assert choice.ordering == WORKED
    assert choice.score == 43
    assert choice.diagnostics["x3,x1,x2"] == 43
    assert len(choice.diagnostics) == 6
    assert choice.heuristic_cost >= 0


def test_sotd_univariate():
    ps = polyset("x1^3 - x1 + 1", names=("x1",))
    choice = sotd_choose(ps).unwrapped
    assert choice.score == sotd_value(ps)


def test_sotd_scores_recompute_from_chains():
    chains = all_chains(s3()).unwrapped
    choice = sotd_choose(s3()).unwrapped
    for ordering, chain in chains.items():
        assert choice.diagnostics[str(ordering)] == chain_sotd(chain)
    assert choice.score == min(choice.diagnostics.values())


def test_mods_worked_example():
    choice = mods_choose(s3()).unwrapped
    assert choice.ordering == WORKED
    assert choice.score == 2233 == 7 * 11 * 29
    assert min(choice.diagnostics.values()) == 2233


def test_mods_scores_recompute_from_chains():
    chains = all_chains(s3()).unwrapped
    choice = mods_choose(s3()).unwrapped
    for ordering, chain in chains.items():
        assert choice.diagnostics[str(ordering)] == chain_mods(chain)
    assert chain_degree_sums(chains[WORKED]) == [3, 5, 14]


def test_mods_univariate():
    ps = polyset("x1^4 + 1", names=("x1",))
    assert mods_choose(ps).unwrapped.score == 9


def test_logmods_worked_example():
    choice = logmods_choose(s3()).unwrapped
    assert choice.ordering == WORKED
    assert choice.score == pytest.approx(15.43, abs=0.01)
    assert choice.score == min(choice.diagnostics.values())


def test_logmods_offset_one():
    choice = logmods_choose(s3(), LogmodsConfig(10.0, 1)).unwrapped
    assert choice.diagnostics["x3,x1,x2"] == pytest.approx(18.88, abs=0.01)


def test_logmods_scores_recompute_from_chains():
    cfg = LogmodsConfig()
    chains = all_chains(s3()).unwrapped
    choice = logmods_choose(s3(), cfg).unwrapped
    for ordering, chain in chains.items():
        assert choice.diagnostics[str(ordering)] == pytest.approx(chain_logmods(chain, cfg).unwrapped, rel=1e-9)


def test_logmods_single_factor():
    ps = polyset("x1 + 1", names=("x1",))
    choice = logmods_choose(ps, LogmodsConfig(10.0, 1)).unwrapped
    assert choice.score == pytest.approx(2 * math.log10(2) + 1)


def test_logmods_undefined_logarithm():
    res = logmods_choose(polyset("x1^2 + x2^2 - 1"))
    assert not res
    assert res.kind == DATA


def test_logmods_rejects_bad_base():
    res = logmods_choose(s3(), LogmodsConfig(1.0, 0))
    assert not res


def test_mods_bound_dominates_plain_product():
    for ps in (s3(), polyset("x1*x2 + x3^2", "x1^2 - x3"), polyset("x1^3 + x2^2 + x3")):
        for chain in all_chains(ps).unwrapped.values():
            sums = chain_degree_sums(chain)
            assert chain_mods(chain) >= math.prod(sums)


def test_greedy_sotd_worked_example():
    choice = greedy_sotd_choose(s3()).unwrapped
    assert choice.ordering == WORKED
    assert choice.diagnostics["1:x3"] == 12
    assert choice.diagnostics["2:x1"] == 16
    assert choice.chosen_candidates == ("1:x3", "2:x1", "3:x2")


def test_greedy_sotd_first_pick_by_brute_force():
    ps = polyset("x1^2 + x2^2 - 1", "x1 - x2")
    first = greedy_sotd_choose(ps).unwrapped.ordering[0]
    brute = min((X1, X2, X3), key=lambda v: (sotd_value(project_step(ps, v)), v.index))
    assert first == brute


def test_greedy_sotd_univariate():
    ps = polyset("x1^2 - 2", names=("x1",))
    assert str(greedy_sotd_choose(ps).unwrapped.ordering) == "x1"


def test_greedy_sotd_cost_leaves_out_chosen_path():
    choice = run_heuristic(GreedySotd, s3(), clock=ticking_clock(0.5)).unwrapped
    # five trial projections of half a second, two of them on the chosen path
    assert choice.heuristic_cost == pytest.approx(1.5)


def test_chain_scoring_cost_counts_shared_steps_once():
    choice = run_heuristic(Sotd, s3(), clock=ticking_clock(0.5)).unwrapped
    assert choice.heuristic_cost == pytest.approx(4.5)


def test_every_ordering_timed_out():
    res = run_heuristic(Sotd, s3(), clock=ticking_clock(1.0), step_time_limit=0.5)
    assert not res
    assert res.kind == LIMIT
    res = run_heuristic(GreedySotd, s3(), clock=ticking_clock(1.0), step_time_limit=0.5)
    assert not res
    assert res.kind == LIMIT


def test_greedy_projection_timeout_is_a_limit():
    res = brown_choose(s3(), clock=ticking_clock(1.0), step_time_limit=0.5)
    assert not res
    assert res.kind == LIMIT
    assert "timed out" in res.message


def test_enumeration_cap_propagates():
    res = sotd_choose(s3(), enumeration_cap=2)
    assert not res
    assert res.kind == LIMIT


@pytest.mark.parametrize("choose", DETERMINISTIC)
def test_choices_ignore_scaling_and_listing_order(choose):
    texts = ["x3^3 + x2^3 + x2 - x1^4", "x2^3 - x1"]
    expected = choose(s3()).unwrapped.ordering
    scaled = PolySet(3, [poly(texts[0]) * -4, poly(texts[1]) * 7])
    assert choose(scaled).unwrapped.ordering == expected
    assert choose(polyset(*reversed(texts))).unwrapped.ordering == expected


def test_random_is_reproducible():
    first = random_choose(s3(), seed=7).unwrapped
    again = random_choose(s3(), seed=7).unwrapped
    assert first.ordering == again.ordering
    assert first.heuristic_cost == 0.0
    assert first.ordering.is_permutation_of((X1, X2, X3))


def test_random_single_variable():
    ps = polyset("x1 - 1", names=("x1",))
    assert {str(random_choose(ps, seed=s).unwrapped.ordering) for s in range(10)} == {"x1"}


def test_random_is_uniform():
    counts = Counter(str(random_choose(s3(), seed=seed).unwrapped.ordering) for seed in range(6000))
    assert len(counts) == 6
    sigma = math.sqrt(6000 * (1 / 6) * (5 / 6))
    for count in counts.values():
        assert abs(count - 1000) < 4 * sigma


def _timings(times: dict, limit: float = 30.0, problem_id: str = "p") -> ProblemTimings:
    records = {}
    for ordering, value in times.items():
        timed_out = value is None
        records[ordering] = TimingRecord(problem_id, ordering, limit if timed_out else value, timed_out, limit)
    return ProblemTimings(problem_id, (X1, X2, X3), records)


def test_virtual_best():
    a = order(X1, X2, X3)
    b = order(X2, X1, X3)
    assert virtual_best(_timings({a: 3.0, b: 7.0})).unwrapped.ordering == a
    assert virtual_best(_timings({b: 5.0, a: 5.0})).unwrapped.ordering == a
    choice = virtual_best(_timings({a: None, b: None}))
    assert choice.unwrapped.score == 60.0
    assert choice.unwrapped.heuristic_cost == 0.0


def test_virtual_best_without_data():
    res = virtual_best(ProblemTimings("p", (X1, X2, X3), {}))
    assert not res
    assert res.kind == DATA
    assert "has no timing data" in res.message


def test_best_ordering_ties_and_infinities():
    a = order(X2, X1, X3)
    b = order(X1, X3, X2)
    assert best_ordering({a: 1.0, b: 1.0}) == b
    assert best_ordering({a: 1.0, b: 1.0 + 1e-15}, rel_tol=1e-12) == b
    assert best_ordering({a: math.inf, b: math.inf}) is None


def test_choice_rows():
    choice = mods_choose(s3()).unwrapped
    rows = {row["candidate"]: row for row in choice.rows()}
    assert rows["x3,x1,x2"] == {"heuristic": "mods", "candidate": "x3,x1,x2", "score": "2233", "chosen": True}
    assert sum(row["chosen"] for row in rows.values()) == 1


def test_choice_rejects_negative_cost():
    with pytest.raises(ValueError):
        HeuristicChoice(WORKED, "brown", heuristic_cost=-1.0)


def test_factory_names_and_creation():
    factory = HeuristicFactory.create(default_config()).unwrapped
    assert factory.names[:len(HEURISTIC_NAMES)] == list(HEURISTIC_NAMES)
    for name in ("greedy_sotd", "GreedySotd", "greedy-sotd"):
        assert factory.create_heuristic(name).unwrapped.name == "greedy-sotd"
    res = factory.create_heuristic("oracle")
    assert not res
    assert res.kind == USAGE
    factory.dispose()


def test_factory_virtual_best_needs_timings():
    factory = HeuristicFactory.create().unwrapped
    heuristic = factory.create_heuristic("virtual-best").unwrapped
    assert heuristic.needs_timings
    res = heuristic.choose(s3_problem())
    assert not res
    assert res.kind == USAGE


def test_factory_loads_extra_strategies(tmp_path):
    strategies = tmp_path / "extra_strategies"
    strategies.mkdir()
    (strategies / "reverse.py").write_text(
        "from cadorder.decorators import heuristic\n"
        "from cadorder.heuristics import GreedyHeuristic\n"
        "\n"
        "\n"
        "@heuristic\n"
        "class ReverseIndex(GreedyHeuristic):\n"
        "    def rank(self, polys, v):\n"
        "        return -v.index\n"
    )
    factory = HeuristicFactory.create(default_config(), str(strategies)).unwrapped
    assert "reverse-index" in factory.names
    choice = factory.create_heuristic("reverse-index").unwrapped.choose(s3_problem()).unwrapped
    assert str(choice.ordering) == "x3,x2,x1"


def test_factory_rejects_missing_directory(tmp_path):
    res = HeuristicFactory.create(default_config(), str(tmp_path / "missing"))
    assert not res
    assert res.kind == USAGE


def test_recorded_costs():
    steps = {
        ("x1",): 0.021, ("x2",): 0.034, ("x3",): 0.004,
        ("x1", "x2"): 0.011, ("x1", "x3"): 0.009, ("x2", "x1"): 0.015,
        ("x2", "x3"): 0.012, ("x3", "x1"): 0.003, ("x3", "x2"): 0.006,
    }
    by_name = {"x1": X1, "x2": X2, "x3": X3}
    records = tuple(
        ProjectionTimeRecord("s3", tuple(by_name[n] for n in prefix), len(prefix), seconds, False)
        for prefix, seconds in steps.items()
    )
    timings = ProblemTimings("s3", (X1, X2, X3), {}, None, records)
    factory = HeuristicFactory.create().unwrapped
    sotd = factory.create_heuristic("sotd").unwrapped
    greedy = factory.create_heuristic("greedy-sotd").unwrapped
    brown = factory.create_heuristic("brown").unwrapped
    assert sotd.recorded_cost(timings, WORKED) == pytest.approx(0.115)
    assert greedy.recorded_cost(timings, WORKED) == pytest.approx(0.021 + 0.034 + 0.006)
    assert brown.recorded_cost(timings, WORKED) == 0.0
    bare = ProblemTimings("s3", (X1, X2, X3), {})
    assert sotd.recorded_cost(bare, WORKED) is None
    assert greedy.recorded_cost(bare, WORKED) is None
