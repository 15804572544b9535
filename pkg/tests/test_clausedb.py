import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sbrsat.clausedb import ClauseDatabase, DbConfig
from sbrsat.solver import Stats, Trail


class FixedActivity:
    """Stand-in strategy returning preset activities in order."""

    def __init__(self, activities):
        self.activities = iter(activities)

    def initial_activity(self, clause, trail, birth):
        return next(self.activities)


def build_db(sizes, activities, num_vars=40):
    db = ClauseDatabase(num_vars)
    trail = Trail(num_vars)
    stats = Stats()
    strat = FixedActivity(activities)
    crefs = []
    for size in sizes:
        stats.conflicts += 1
        clause = [2 * v for v in range(1, size + 1)]
        crefs.append(db.add_learned(clause, trail, strat, stats, lbd=min(size, 2)))
    return db, trail, crefs


def test_add_learned_records_meta():
    db, _, (cref,) = build_db([7], [7.0])
    m = db.meta[cref]
    assert (m.activity, m.size, m.birth, m.lbd) == (7.0, 7, 1, 2)
    assert cref in db.watches[db.clauses[cref][0]] and cref in db.watches[db.clauses[cref][1]]


def test_halving_deletes_largest_activities():
    db, trail, crefs = build_db([3] * 10, [float(a) for a in range(1, 11)])
    assert db.reduce(trail) == 5
    assert sorted(db.meta[c].activity for c in db.learnts) == [1, 2, 3, 4, 5]


def test_locked_clause_retained():
    db, trail, crefs = build_db([3] * 4, [1.0, 2.0, 3.0, 100.0])
    worst = crefs[3]
    trail.assign(db.clauses[worst][0], worst)
    assert db.locked(worst, trail)
    deleted = db.reduce(trail)
    assert worst in db.learnts
    assert deleted == 2
    assert [db.meta[c].activity for c in db.learnts] == [1.0, 100.0]


def test_binary_never_deleted():
    db, trail, crefs = build_db([2, 2, 2, 3], [50.0, 60.0, 70.0, 1.0])
    assert db.reduce(trail) == 1
    assert sorted(db.learnts) == crefs[:3]


def test_ties_delete_older_first():
    db, trail, crefs = build_db([3] * 4, [5.0] * 4)
    db.reduce(trail)
    assert db.learnts == crefs[2:]


def test_deleted_clauses_leave_watch_lists():
    db, trail, crefs = build_db([4] * 6, [float(a) for a in range(6)])
    db.reduce(trail)
    live = set(db.learnts)
    for ws in db.watches:
        assert set(ws) <= live


def test_minisat_initial_limit():
    db = ClauseDatabase(10)
    for i in range(900):
        db.add_original([2, 4, 6])
    db.start()
    assert db.max_learnts == pytest.approx(300)


def test_minisat_limit_growth():
    db = ClauseDatabase(10, DbConfig(adjust_start=2, adjust_inc=2.0))
    for _ in range(30):
        db.add_original([2, 4])
    db.start()
    limits = []
    for _ in range(6):
        db.on_conflict()
        limits.append(db.max_learnts)
    # adjust after conflicts 2, 6 (interval 2 then 4)
    assert limits == pytest.approx([10, 11, 11, 11, 11, 12.1])


def test_minisat_trigger_counts_assignments():
    db, trail, _ = build_db([3] * 5, [1.0] * 5)
    db.max_learnts = 5
    assert db.should_reduce(trail, Stats())
    trail.assign(3)
    assert not db.should_reduce(trail, Stats())


def test_glucose_schedule():
    db = ClauseDatabase(5, DbConfig("glucose"))
    trail = Trail(5)
    stats = Stats()
    fired = []
    for conflict in range(1, 7000):
        stats.conflicts = conflict
        if db.should_reduce(trail, stats):
            fired.append(conflict)
            db.reduce(trail, stats)
    assert fired == [2000, 4300, 6900]
    assert stats.reductions == 3


def test_config_validation():
    with pytest.raises(ValueError):
        DbConfig("chaff")
    with pytest.raises(ValueError):
        DbConfig(learntsize_factor=0)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_reduce_invariants(seed):
    check_reduce_once(random.Random(seed))


def check_reduce_once(rnd):
    """One randomized reduce() on a synthetic database; asserts every invariant."""
    n = 40
    count = rnd.randint(0, 60)
    db = ClauseDatabase(n)
    trail = Trail(n)
    stats = Stats()
    acts = [float(rnd.choice([rnd.randint(0, 8), rnd.random() * 10])) for _ in range(count)]
    strat = FixedActivity(acts)
    for i in range(count):
        stats.conflicts += 1
        vs = rnd.sample(range(1, n + 1), rnd.randint(2, 7))
        db.add_learned([2 * v + rnd.randint(0, 1) for v in vs], trail, strat, stats, 2)
    for cref in list(db.learnts):
        lit = db.clauses[cref][0]
        if rnd.random() < 0.3 and trail.vals[lit] == 0:
            trail.assign(lit, cref)

    before = list(db.learnts)
    acts_before = {c: db.meta[c].activity for c in before}
    locked = {c for c in before if db.locked(c, trail)}
    binary = {c for c in before if db.meta[c].size == 2}
    eligible = [c for c in before if c not in locked and c not in binary]

    deleted = db.reduce(trail, stats)
    after = set(db.learnts)

    assert locked <= after
    assert binary <= after
    assert deleted == len(before) - len(after) == stats.clauses_deleted
    assert deleted <= math.ceil(len(eligible) / 2)
    assert deleted <= math.ceil(len(before) / 2)
    for c in after:
        assert db.meta[c].activity <= acts_before[c]
    kept = [c for c in eligible if c in after]
    gone = [c for c in eligible if c not in after]
    for c1 in kept:
        for c2 in gone:
            assert acts_before[c2] >= acts_before[c1]
    return deleted
