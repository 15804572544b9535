import pytest

from sbrsat import strategies as S
from sbrsat.clausedb import ClauseMeta
from sbrsat.prng import Rng
from sbrsat.solver import Trail, level_blocks, to_lit
from sbrsat.strategies import StrategyConfig, make_strategy

from .test_prng import FIRST_DRAND, SECOND_DRAND


def trail_with_levels(levels):
    """A trail where literal i+1 (DIMACS) is false at ``levels[i]``; returns (trail, clause)."""
    trail = Trail(len(levels))
    clause = []
    for v, lev in sorted(enumerate(levels, 1), key=lambda p: p[1]):
        while trail.current_level < lev:
            trail.new_level()
        trail.assign(to_lit(-v))
        clause.append(to_lit(v))
    return trail, clause


def clause_of(size):
    return list(range(2, 2 * size + 2, 2))


def meta(activity, size=20):
    return ClauseMeta(0, float(activity), size, 2, 0)


def test_size():
    assert S.size_initial(7) == 7
    assert S.size_initial(2) == 2
    strat = make_strategy(StrategyConfig("size"), Rng(), 10)
    assert strat.initial_activity(clause_of(5), None, 0) == strat.initial_activity(clause_of(5), None, 9) == 5


def test_rand_consumes_one_stream():
    strat = make_strategy(StrategyConfig("rand"), Rng(), 10)
    a = strat.initial_activity(clause_of(3), None, 0)
    b = strat.initial_activity(clause_of(8), None, 1)
    assert (a, b) == (FIRST_DRAND, SECOND_DRAND)
    assert 0 <= a < 1 and 0 <= b < 1


def test_fifo():
    assert (S.fifo_initial(5), S.fifo_initial(9)) == (-5, -9)
    # the larger activity (older clause) goes first
    assert S.fifo_initial(5) > S.fifo_initial(9)


def test_sbr():
    assert S.sbr_initial(5, 12, Rng()) == 5
    assert S.sbr_initial(12, 12, Rng()) == 12
    assert S.sbr_initial(20, 12, Rng()) == 12 + FIRST_DRAND
    rng = Rng()
    S.sbr_initial(3, 12, rng)
    assert rng.seed == Rng().seed  # short clauses do not touch the stream


def test_sized():
    a = S.sized_initial(9)
    a = S.sized_on_reason(a, 4)
    assert a == 4
    assert S.sized_on_reason(a, 6) == 4
    assert S.sized_on_reason(S.sized_initial(9), 11) == 9


def test_sizekd():
    assert S.sizekd_initial(5, 12) == 5
    assert S.sizekd_update(5, 12, 0) == 5  # k + d >= k always
    a = S.sizekd_initial(20, 12)
    assert a == 32
    a = S.sizekd_update(a, 12, 7)
    assert a == 19
    assert S.sizekd_update(a, 12, 10) == 19
    assert S.sizekd_update(32, 12, 25) == 32
    assert S.sizekd_initial(12, 12) == 12


def test_reld_blocks():
    trail, clause = trail_with_levels([1, 3, 3])
    assert level_blocks(clause, trail) == {1: 1, 3: 2}
    assert S.reld_initial(clause, trail.level) == 7
    trail, clause = trail_with_levels([1] * 6)
    assert S.reld_initial(clause, trail.level) == 6


def test_reld_keeps_better_value():
    trail, clause = trail_with_levels([1, 1, 3])  # sum 5
    assert S.reld_on_reason(7.0, clause, trail.level) == 5
    trail, clause = trail_with_levels([3, 3, 3])  # sum 9
    assert S.reld_on_reason(7.0, clause, trail.level) == 7


def test_lbd():
    trail, clause = trail_with_levels([1, 1, 4, 7])
    assert S.lbd_static_initial(clause, trail.level) == 3
    trail, clause = trail_with_levels([2, 2, 5])
    assert S.lbd_dynamic_on_analysis(3.0, clause, trail.level) == 2
    m = meta(3, size=3)
    m.lbd = 3
    strat = make_strategy(StrategyConfig("lbd_dynamic"), Rng(), 5)
    strat.on_conflict_analysis(m, clause, trail, 5)
    assert (m.activity, m.lbd) == (2, 2)


def test_glucose_sizekd():
    assert S.glucose_sizekd_initial(11, 12) == 11
    assert S.glucose_sizekd_initial(12, 12) == 24
    assert S.glucose_sizekd_initial(30, 12) == 42
    strat = make_strategy(StrategyConfig("glucose_sizekd", 12), Rng(), 50)
    m = meta(42, size=30)
    strat.on_conflict_analysis(m, [], None, 6)
    assert m.activity == 18
    short = meta(11, size=11)
    strat.on_conflict_analysis(short, [], None, 0)
    assert short.activity == 11


def test_glucose_sbr():
    assert S.glucose_sbr_initial(10, 15, Rng(), 100) == 10
    a = S.glucose_sbr_initial(20, 15, Rng(), 100)
    assert a == 15 + int(FIRST_DRAND * 100) == 53
    assert 15 <= a < 115
    rng = Rng()
    assert all(S.glucose_sbr_initial(20, 15, rng, 1) == 15 for _ in range(100))


def test_config_defaults_and_parsing():
    assert StrategyConfig("sbr").k == 12
    assert StrategyConfig("sizekd").k == 12
    assert StrategyConfig("glucose_sbr").k == 15
    assert StrategyConfig("glucose_sizekd").k == 12
    assert StrategyConfig("size").k is None
    assert StrategyConfig("fifo", 7) == StrategyConfig("fifo")
    assert StrategyConfig.parse("glucose-sbr:7") == StrategyConfig("glucose_sbr", 7)
    assert StrategyConfig.parse("lbdd").kind == "lbd_dynamic"
    assert StrategyConfig.parse("lbd").kind == "lbd_static"
    assert StrategyConfig("sbr", 5).label == "sbr(5)"
    with pytest.raises(ValueError):
        StrategyConfig("sbr", 0)
    with pytest.raises(ValueError):
        StrategyConfig("bogus")


@pytest.mark.parametrize("kind", S.KINDS)
def test_make_strategy_kinds(kind):
    strat = make_strategy(StrategyConfig(kind), Rng(), 20)
    assert strat.kind == kind
    assert (kind in S.DYNAMIC_KINDS) == (strat.uses_reason_hook or strat.uses_analysis_hook)
