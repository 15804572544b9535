"""Clause storage, watch lists and learned-clause reduction.

Original and learned clauses live in one list indexed by clause reference
(``cref``); learned clauses additionally carry a :class:`ClauseMeta`.  A
deleted clause leaves ``None`` behind so crefs stay stable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Callable, Optional

if TYPE_CHECKING:
    from .solver import Stats, Trail
    from .strategies import Strategy

SCHEDULES = ("minisat", "glucose")


@dataclass(slots=True)
class ClauseMeta:
    cref: int
    activity: float
    size: int
    lbd: int
    birth: int
    protected_this_round: bool = False


@dataclass(frozen=True)
class DbConfig:
    schedule: str = "minisat"
    learntsize_factor: float = 1 / 3
    learntsize_inc: float = 1.1
    adjust_start: int = 100
    adjust_inc: float = 1.5
    glucose_first: int = 2000
    glucose_inc: int = 300

    def __post_init__(self):
        if self.schedule not in SCHEDULES:
            raise ValueError(f"unknown schedule {self.schedule!r}; expected one of {SCHEDULES}")
        for name in ("learntsize_factor", "learntsize_inc", "adjust_start", "adjust_inc", "glucose_first"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be > 0")
        if self.glucose_inc < 0:
            raise ValueError("glucose_inc must be >= 0")


class ClauseDatabase:
    def __init__(self, num_vars: int, config: DbConfig = DbConfig()):
        self.config = config
        self.clauses: list[Optional[list[int]]] = []
        self.watches: list[list[int]] = [[] for _ in range(2 * num_vars + 2)]
        self.learnts: list[int] = []
        self.meta: dict[int, ClauseMeta] = {}
        self.num_original = 0
        # callbacks taking internal literal lists
        self.on_add: Optional[Callable[[list[int]], None]] = None
        self.on_delete: Optional[Callable[[list[int]], None]] = None

        # minisat schedule
        self.max_learnts = 0.0
        self._adjust_confl = float(config.adjust_start)
        self._adjust_cnt = config.adjust_start
        # glucose schedule
        self._last_reduce_conflicts = 0
        self._reductions = 0

    # -- storage --------------------------------------------------------------

    def _attach(self, lits: list[int]) -> int:
        cref = len(self.clauses)
        self.clauses.append(lits)
        self.watches[lits[0]].append(cref)
        self.watches[lits[1]].append(cref)
        return cref

    def add_original(self, lits: list[int]) -> int:
        """Store a problem clause of size >= 2; returns its cref."""
        cref = self._attach(lits)
        self.num_original += 1
        return cref

    def start(self) -> None:
        """Initialise the schedule once all problem clauses are in."""
        self.max_learnts = self.num_original * self.config.learntsize_factor

    def is_learnt(self, cref: int) -> bool:
        return cref in self.meta

    def add_learned(self, lits: list[int], trail: "Trail", strategy: "Strategy", stats: "Stats", lbd: int) -> int:
        """Store a learned clause (size >= 2) whose first literal is the asserting one.

        Its activity comes from the strategy and is evaluated against the
        trail *before* backjumping, i.e. at the conflict.
        """
        if len(lits) < 2:
            raise ValueError("learned units are not stored in the database")
        birth = stats.conflicts
        activity = float(strategy.initial_activity(lits, trail, birth))
        cref = self._attach(lits)
        self.learnts.append(cref)
        self.meta[cref] = ClauseMeta(cref, activity, len(lits), lbd, birth)
        if self.on_add is not None:
            self.on_add(lits)
        return cref

    def num_learnts(self) -> int:
        return len(self.learnts)

    # -- schedules ------------------------------------------------------------

    def on_conflict(self) -> None:
        """Advance the minisat growth schedule; call once per conflict."""
        self._adjust_cnt -= 1
        if self._adjust_cnt == 0:
            self._adjust_confl *= self.config.adjust_inc
            self._adjust_cnt = int(self._adjust_confl)
            self.max_learnts *= self.config.learntsize_inc

    def should_reduce(self, trail: "Trail", stats: "Stats") -> bool:
        if self.config.schedule == "minisat":
            return len(self.learnts) - len(trail.stack) >= self.max_learnts
        interval = self.config.glucose_first + self.config.glucose_inc * self._reductions
        return stats.conflicts - self._last_reduce_conflicts >= interval

    # -- reduction ------------------------------------------------------------

    def locked(self, cref: int, trail: "Trail") -> bool:
        lit = self.clauses[cref][0]
        return trail.reason[lit >> 1] == cref and trail.vals[lit] == 1

    def reduce(self, trail: "Trail", stats: Optional["Stats"] = None) -> int:
        """Delete the less relevant half of the deletable learned clauses.

        Locked clauses (reasons on the trail) and binary clauses are never
        candidates.  Candidates are ordered by activity descending, older
        first on ties, and the first ``ceil(n/2)`` of them are deleted.
        Returns the number of deleted clauses.
        """
        meta = self.meta
        clauses = self.clauses
        candidates = []
        for cref in self.learnts:
            m = meta[cref]
            keep = m.size <= 2 or self.locked(cref, trail)
            m.protected_this_round = keep
            if not keep:
                candidates.append(m)
        candidates.sort(key=lambda m: (-m.activity, m.birth))
        doomed = candidates[: math.ceil(len(candidates) / 2)]

        touched = set()
        for m in doomed:
            lits = clauses[m.cref]
            touched.add(lits[0])
            touched.add(lits[1])
            if self.on_delete is not None:
                self.on_delete(lits)
            clauses[m.cref] = None
            del meta[m.cref]
        if doomed:
            self.learnts = [c for c in self.learnts if c in meta]
            for lit in touched:
                self.watches[lit] = [c for c in self.watches[lit] if clauses[c] is not None]

        if stats is not None:
            self._last_reduce_conflicts = stats.conflicts
            stats.reductions += 1
            stats.clauses_deleted += len(doomed)
        self._reductions += 1
        return len(doomed)
