import itertools
import time

from cadorder.polyarith import PolySet, normalize
from cadorder.projection import ChainForest, all_chains, dump_chain, project_chain, project_step
from cadorder.result import LIMIT, USAGE
from cadorder.types import VariableOrdering, all_orderings, make_variables

from helpers import X1, X2, X3, polyset, s3, stalled_step

S2 = ("x2^3 + x2 - x1^4", "x2^3 - x1")
S1 = ("x2", "x2^2 + 1", "x2^11 - x2^2 - 1")


def ticking_clock(step: float = 1.0):
    """Advances by `step` on every reading"""
    counter = itertools.count()
    return lambda: next(counter) * step


def test_project_step_worked_examples():
    assert project_step(s3(), X3) == polyset(*S2)
    assert project_step(polyset(*S2), X1) == polyset(*S1)


def test_project_step_absent_variable_passes_set_through():
    ps = polyset("x1^2 - 4*x2", "2*x1 + 2")
    assert project_step(ps, X3) == ps


def test_project_step_empty_set():
    assert project_step(PolySet(3), X1) == PolySet(3)


def test_project_step_output_is_normalized():
    for v in (X1, X2, X3):
        out = project_step(s3(), v)
        assert all(normalize(p) == p and not p.is_constant for p in out)


def test_project_step_ignores_listing_order():
    texts = ["x1^2 + x2*x3 - 1", "x3^2 - x1", "x2*x1 + x3"]
    expected = {v: project_step(polyset(*texts), v) for v in (X1, X2, X3)}
    for perm in itertools.permutations(texts):
        for v in (X1, X2, X3):
            assert project_step(polyset(*perm), v) == expected[v]


def test_project_chain_worked_ordering():
    ordering = VariableOrdering((X3, X1, X2))
    chain = project_chain(s3(), ordering).unwrapped
    assert chain.sets == (s3(), polyset(*S2), polyset(*S1))
    assert len(chain.step_times) == 2
    assert all(t >= 0 for t in chain.step_times)
    assert chain.complete


def test_project_chain_brown_ordering_starts_with_worked_set():
    chain = project_chain(s3(), VariableOrdering((X3, X2, X1))).unwrapped
    assert chain.sets[1] == polyset(*S2)
    assert len(chain.sets) == 3
    assert all(p.positions() <= {X1.position} for p in chain.sets[2])


def test_project_chain_univariate():
    (x,) = make_variables(["x1"])
    ps = polyset("x1^2 - 2", names=("x1",))
    chain = project_chain(ps, VariableOrdering((x,))).unwrapped
    assert chain.sets == (ps,)
    assert chain.step_times == ()


def test_project_chain_rejects_partial_ordering():
    res = project_chain(s3(), VariableOrdering((X3, X1)))
    assert not res
    assert res.kind == USAGE


def test_chains_eliminate_their_variables():
    chains = all_chains(s3()).unwrapped
    assert len(chains) == 6
    for ordering, chain in chains.items():
        assert len(chain.sets) == 3
        for k, polys in enumerate(chain.sets):
            eliminated = {v.position for v in chain.ordering[:k]}
            assert all(not (p.positions() & eliminated) for p in polys)


def test_all_chains_is_memoization_transparent():
    chains = all_chains(s3()).unwrapped
    for ordering in all_orderings((X1, X2, X3)):
        assert chains[ordering] == project_chain(s3(), ordering).unwrapped


def test_all_chains_univariate():
    ps = polyset("x1^3 - x1", names=("x1",))
    assert len(all_chains(ps).unwrapped) == 1


def test_enumeration_cap():
    res = all_chains(s3(), enumeration_cap=2)
    assert not res
    assert res.kind == LIMIT
    assert "ordering enumeration too large" in res.message
    assert "6 orderings" in res.message


def test_forest_shares_steps():
    forest = ChainForest.create(10.0, ticking_clock(0.5)).unwrapped
    first = forest.project(s3(), X3)
    again = forest.project(s3(), X3)
    assert first is again
    assert forest.total_cost() == 0.5
    forest.all_chains(s3(), (X1, X2, X3))
    # three first steps and six second steps, each timed once
    assert forest.total_cost() == 0.5 * 9
    forest.dispose()


def test_step_timeout_truncates_chain():
    forest = ChainForest.create(0.5, ticking_clock(1.0)).unwrapped
    chain = forest.chain(s3(), VariableOrdering((X3, X1, X2)))
    assert chain.any_step_timed_out
    assert not chain.complete
    assert chain.sets == (s3(),)
    assert chain.step_times == (1.0,)


def test_forest_rejects_bad_limits():
    res = ChainForest.create(0.0)
    assert not res
    assert res.kind == USAGE
    assert not ChainForest.create(1.0, None, 0)


def test_dump_chain():
    chain = project_chain(s3(), VariableOrdering((X3, X1, X2))).unwrapped
    assert dump_chain(chain, with_times=False) == (
        "ordering: x3,x1,x2\n"
        "S3: -x2^3 + x1, x1^4 - x2^3 - x3^3 - x2\n"
        "S2 (x3): -x2^3 + x1, x1^4 - x2^3 - x2\n"
        "S1 (x1): x2, x2^2 + 1, x2^11 - x2^2 - 1\n"
    )


def test_dump_chain_with_times_and_timeout():
    forest = ChainForest.create(0.5, ticking_clock(1.0)).unwrapped
    chain = forest.chain(s3(), VariableOrdering((X3, X1, X2)))
    text = dump_chain(chain)
    assert text.splitlines()[-1] == "S2 (x3, 1.0000s): timed out"


def test_dump_chain_uses_names():
    a, b = make_variables(["a", "b"])
    ps = polyset("a^2 + b^2 - 1", names=("a", "b"))
    chain = project_chain(ps, VariableOrdering((b, a))).unwrapped
    lines = dump_chain(chain, ("a", "b"), with_times=False).splitlines()
    assert lines[0] == "ordering: b,a"
    assert lines[1] == "S2: a^2 + b^2 - 1"
    assert lines[2].startswith("S1 (b): ")


def test_worker_step_matches_inline_step():
    ordering = VariableOrdering((X3, X1, X2))
    isolated = ChainForest.create(10.0, isolated=True).unwrapped
    inline = ChainForest.create(10.0, isolated=False).unwrapped
    assert isolated.chain(s3(), ordering) == inline.chain(s3(), ordering)
    isolated.dispose()
    inline.dispose()


def test_step_over_the_limit_is_stopped():
    forest = ChainForest.create(0.2, step=stalled_step).unwrapped
    start = time.perf_counter()
    chain = forest.chain(s3(), VariableOrdering((X3, X1, X2)))
    assert chain.any_step_timed_out
    assert chain.sets == (s3(),)
    assert chain.step_times == (0.2,)
    # a fresh worker serves the next step
    outcome = forest.project(s3(), X1)
    assert outcome.timed_out
    assert len(outcome.polys) == 0
    assert time.perf_counter() - start < 10.0
    assert forest.total_cost() == 0.4
    forest.dispose()
