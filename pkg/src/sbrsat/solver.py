"""CDCL search engine.

Two-watched-literal propagation, first-UIP learning with recursive clause
minimisation, VSIDS with phase saving, and Luby restarts, following MiniSAT
2.2's defaults.  The learned-clause database policy is delegated to a
:class:`~sbrsat.strategies.Strategy` and a :class:`~sbrsat.clausedb.DbConfig`.

Internally variable ``v`` (1-based) has literals ``2*v`` (positive) and
``2*v + 1`` (negative); ``lit ^ 1`` negates and ``lit >> 1`` is the variable.
"""

from __future__ import annotations

import heapq
import time
from dataclasses import asdict, dataclass, field
from typing import Optional, Sequence

from .clausedb import ClauseDatabase, ClauseMeta, DbConfig
from .dimacs import Instance
from .prng import Rng
from .strategies import StrategyConfig, make_strategy

SAT = "SAT"
UNSAT = "UNSAT"
UNKNOWN = "UNKNOWN"

NO_REASON = -1

VAR_DECAY = 0.95
RESCALE_LIMIT = 1e100
RESTART_BASE = 100
RESTART_FACTOR = 2.0


def to_lit(d: int) -> int:
    """DIMACS literal -> internal literal."""
    return 2 * d if d > 0 else 2 * -d + 1


def to_dimacs(lit: int) -> int:
    return -(lit >> 1) if lit & 1 else lit >> 1


def luby(i: int, y: float = RESTART_FACTOR) -> float:
    """``i``-th term (1-based) of the Luby sequence scaled by powers of ``y``."""
    if i < 1:
        raise ValueError("luby index is 1-based")
    x = i - 1
    size, seq = 1, 0
    while size < x + 1:
        seq += 1
        size = 2 * size + 1
    while size - 1 != x:
        size = (size - 1) >> 1
        seq -= 1
        x %= size
    return y**seq


@dataclass
class Stats:
    conflicts: int = 0
    decisions: int = 0
    propagations: int = 0
    restarts: int = 0
    reductions: int = 0
    clauses_deleted: int = 0
    learned_clauses: int = 0
    peak_learned: int = 0
    cpu_time: float = 0.0

    def counters(self) -> dict:
        d = asdict(self)
        del d["cpu_time"]
        return d


@dataclass
class Limits:
    timeout: Optional[float] = None  # seconds of CPU time
    max_conflicts: Optional[int] = None


@dataclass
class SolveResult:
    answer: str
    model: Optional[list[int]] = None  # signed DIMACS literal per variable
    stats: Stats = field(default_factory=Stats)

    @property
    def exit_code(self) -> int:
        return {SAT: 10, UNSAT: 20}.get(self.answer, 0)


class Observer:
    """No-op base for solver event callbacks (tracing, tests)."""

    def on_learned(self, lits: list[int], meta: Optional[ClauseMeta], trail: "Trail") -> None:
        pass

    def on_activity(self, meta: ClauseMeta) -> None:
        pass


class Trail:
    """Assignment stack with levels and reasons (the partial ordered interpretation)."""

    def __init__(self, num_vars: int):
        self.num_vars = num_vars
        self.vals = [0] * (2 * num_vars + 2)  # per literal: 1 true, -1 false, 0 unassigned
        self.level = [0] * (num_vars + 1)
        self.reason = [NO_REASON] * (num_vars + 1)
        self.stack: list[int] = []
        self.lims: list[int] = []  # stack index where each level starts
        self.qhead = 0

    @property
    def current_level(self) -> int:
        return len(self.lims)

    def assign(self, lit: int, reason: int = NO_REASON) -> None:
        v = lit >> 1
        if self.vals[lit] != 0:
            raise ValueError(f"variable {v} already assigned")
        self.vals[lit] = 1
        self.vals[lit ^ 1] = -1
        self.level[v] = len(self.lims)
        self.reason[v] = reason
        self.stack.append(lit)

    def new_level(self) -> None:
        self.lims.append(len(self.stack))

    def value(self, lit: int) -> int:
        return self.vals[lit]

    def is_assigned(self, var: int) -> bool:
        return self.vals[2 * var] != 0


def level_blocks(clause: Sequence[int], trail: Trail) -> dict[int, int]:
    """Map each level ``i`` to ``|c^i|``, the number of clause literals assigned at ``i``."""
    blocks: dict[int, int] = {}
    for lit in clause:
        if trail.vals[lit] == 0:
            raise ValueError(f"literal {to_dimacs(lit)} is unassigned")
        lev = trail.level[lit >> 1]
        blocks[lev] = blocks.get(lev, 0) + 1
    return blocks


def compute_lbd(clause: Sequence[int], trail: Trail) -> int:
    return len(level_blocks(clause, trail))


class Solver:
    def __init__(
        self,
        instance: Instance,
        strategy: StrategyConfig = StrategyConfig(),
        db_config: Optional[DbConfig] = None,
        *,
        minimize: bool = True,
        proof=None,
        observer: Optional[Observer] = None,
    ):
        n = instance.num_vars
        self.instance = instance
        self.num_vars = n
        self.strategy_config = strategy
        if db_config is None:
            db_config = DbConfig("glucose" if strategy.kind.startswith("glucose") else "minisat")
        self.db_config = db_config
        self.minimize = minimize
        self.proof = proof
        self.observer = observer

        self.rng = Rng(strategy.seed)
        self.strategy = make_strategy(strategy, self.rng, n)
        self.trail = Trail(n)
        self.db = ClauseDatabase(n, db_config)
        if proof is not None:
            self.db.on_add = lambda lits: proof.add(map(to_dimacs, lits))
            self.db.on_delete = lambda lits: proof.delete(map(to_dimacs, lits))
        self.stats = Stats()

        self.activity = [0.0] * (n + 1)
        self.var_inc = 1.0
        self.phase = [1] * (n + 1)  # 1 = negative literal, i.e. initial phase false
        self.heap = [(-0.0, v) for v in range(1, n + 1)]
        self.seen = [False] * (n + 1)

        self.ok = not instance.has_empty_clause
        self._load(instance)

    # -- setup ----------------------------------------------------------------

    def _load(self, instance: Instance) -> None:
        trail = self.trail
        for clause in instance.clauses:
            if not self.ok:
                return
            lits = [to_lit(d) for d in clause]
            if len(lits) == 1:
                lit = lits[0]
                if trail.vals[lit] == -1:
                    self.ok = False
                elif trail.vals[lit] == 0:
                    trail.assign(lit)
            else:
                self.db.add_original(lits)
        self.db.start()

    # -- propagation ----------------------------------------------------------

    def propagate(self) -> int:
        """Unit propagation to fixpoint; returns a conflicting cref or -1."""
        trail = self.trail
        vals = trail.vals
        level = trail.level
        reason = trail.reason
        stack = trail.stack
        clauses = self.db.clauses
        watches = self.db.watches
        meta = self.db.meta
        strategy = self.strategy
        hook = strategy.uses_reason_hook
        observer = self.observer if hook else None
        cur_level = len(trail.lims)
        confl = -1
        qhead = trail.qhead
        start = qhead

        while qhead < len(stack):
            false_lit = stack[qhead] ^ 1
            qhead += 1
            ws = watches[false_lit]
            i = j = 0
            end = len(ws)
            while i < end:
                cr = ws[i]
                i += 1
                c = clauses[cr]
                if c[0] == false_lit:
                    c[0] = c[1]
                    c[1] = false_lit
                first = c[0]
                if vals[first] == 1:
                    ws[j] = cr
                    j += 1
                    continue
                for k in range(2, len(c)):
                    lk = c[k]
                    if vals[lk] != -1:
                        c[1] = lk
                        c[k] = false_lit
                        watches[lk].append(cr)
                        break
                else:
                    ws[j] = cr
                    j += 1
                    if vals[first] == -1:
                        confl = cr
                        while i < end:
                            ws[j] = ws[i]
                            j += 1
                            i += 1
                    else:
                        v = first >> 1
                        vals[first] = 1
                        vals[first ^ 1] = -1
                        level[v] = cur_level
                        reason[v] = cr
                        stack.append(first)
                        if hook:
                            m = meta.get(cr)
                            if m is not None:
                                strategy.on_reason_used(m, c, trail, cur_level)
                                if observer is not None:
                                    observer.on_activity(m)
            del ws[j:]
            if confl != -1:
                break

        self.stats.propagations += qhead - start
        trail.qhead = qhead if confl == -1 else len(stack)
        return confl

    # -- decisions ------------------------------------------------------------

    def _bump(self, v: int) -> None:
        act = self.activity
        act[v] += self.var_inc
        if act[v] > RESCALE_LIMIT:
            for u in range(1, self.num_vars + 1):
                act[u] *= 1e-100
            self.var_inc *= 1e-100
            self._rebuild_heap()
        elif self.trail.vals[2 * v] == 0:
            heapq.heappush(self.heap, (-act[v], v))

    def _rebuild_heap(self) -> None:
        vals = self.trail.vals
        act = self.activity
        self.heap = [(-act[v], v) for v in range(1, self.num_vars + 1) if vals[2 * v] == 0]
        heapq.heapify(self.heap)

    def decide(self) -> int:
        """Open a new level with the most active unassigned variable (lowest index on ties).

        Returns the decision literal, or -1 when every variable is assigned.
        """
        heap = self.heap
        vals = self.trail.vals
        act = self.activity
        while heap:
            neg_act, v = heapq.heappop(heap)
            if vals[2 * v] == 0 and -neg_act == act[v]:
                break
        else:
            return -1
        if len(heap) > 4 * self.num_vars + 64:
            self._rebuild_heap()
        lit = 2 * v + self.phase[v]
        self.stats.decisions += 1
        self.trail.new_level()
        self.trail.assign(lit)
        return lit

    # -- conflict analysis ----------------------------------------------------

    def analyze(self, confl: int) -> tuple[list[int], int]:
        """First-UIP learning; returns (learned clause, backjump level).

        The asserting literal is first in the returned clause and the literal
        at the backjump level (if any) second.
        """
        trail = self.trail
        level = trail.level
        reason = trail.reason
        stack = trail.stack
        clauses = self.db.clauses
        meta = self.db.meta
        seen = self.seen
        cur_level = len(trail.lims)
        if cur_level == 0:
            raise ValueError("conflict at level 0: formula is unsatisfiable")
        strategy = self.strategy
        hook = strategy.uses_analysis_hook
        observer = self.observer

        out = [-1]
        path = 0
        p = -1
        idx = len(stack) - 1
        bump = self._bump
        while True:
            c = clauses[confl]
            if hook:
                m = meta.get(confl)
                if m is not None:
                    strategy.on_conflict_analysis(m, c, trail, cur_level)
                    if observer is not None:
                        observer.on_activity(m)
            for q in c if p == -1 else c[1:]:
                v = q >> 1
                if not seen[v] and level[v] > 0:
                    bump(v)
                    seen[v] = True
                    if level[v] >= cur_level:
                        path += 1
                    else:
                        out.append(q)
            while not seen[stack[idx] >> 1]:
                idx -= 1
            p = stack[idx]
            idx -= 1
            confl = reason[p >> 1]
            seen[p >> 1] = False
            path -= 1
            if path == 0:
                break
        out[0] = p ^ 1

        to_clear = out[1:]
        if self.minimize and len(out) > 1:
            abstract = 0
            for q in out[1:]:
                abstract |= 1 << (level[q >> 1] & 31)
            kept = [out[0]]
            for q in out[1:]:
                if reason[q >> 1] == NO_REASON or not self._redundant(q, abstract, to_clear):
                    kept.append(q)
            out = kept
        for q in to_clear:
            seen[q >> 1] = False

        if len(out) == 1:
            return out, 0
        best = 1
        for i in range(2, len(out)):
            if level[out[i] >> 1] > level[out[best] >> 1]:
                best = i
        out[1], out[best] = out[best], out[1]
        return out, level[out[1] >> 1]

    def _redundant(self, p: int, abstract: int, to_clear: list[int]) -> bool:
        trail = self.trail
        level = trail.level
        reason = trail.reason
        clauses = self.db.clauses
        seen = self.seen
        stack = [p]
        top = len(to_clear)
        while stack:
            c = clauses[reason[stack.pop() >> 1]]
            for q in c[1:]:
                v = q >> 1
                if not seen[v] and level[v] > 0:
                    if reason[v] != NO_REASON and (1 << (level[v] & 31)) & abstract:
                        seen[v] = True
                        stack.append(q)
                        to_clear.append(q)
                    else:
                        for r in to_clear[top:]:
                            seen[r >> 1] = False
                        del to_clear[top:]
                        return False
        return True

    # -- backtracking ---------------------------------------------------------

    def backjump(self, target: int) -> None:
        """Undo every assignment above ``target``, saving phases."""
        trail = self.trail
        cur = len(trail.lims)
        if target > cur:
            raise ValueError(f"cannot backjump up from level {cur} to {target}")
        if target == cur:
            return
        vals = trail.vals
        reason = trail.reason
        phase = self.phase
        act = self.activity
        heap = self.heap
        stack = trail.stack
        cut = trail.lims[target]
        for i in range(len(stack) - 1, cut - 1, -1):
            lit = stack[i]
            v = lit >> 1
            vals[lit] = 0
            vals[lit ^ 1] = 0
            reason[v] = NO_REASON
            phase[v] = lit & 1
            heapq.heappush(heap, (-act[v], v))
        del stack[cut:]
        del trail.lims[target:]
        trail.qhead = cut

    # -- main loop ------------------------------------------------------------

    def _learn(self, learned: list[int], lbd: int) -> int:
        """Record a learned clause; must run before backjumping.

        Units go straight to level 0 (after the caller backjumps) and never
        enter the database, so they return ``NO_REASON``.
        """
        stats = self.stats
        stats.learned_clauses += 1
        if len(learned) == 1:
            if self.proof is not None:
                self.proof.add([to_dimacs(learned[0])])
            if self.observer is not None:
                self.observer.on_learned(learned, None, self.trail)
            return NO_REASON
        cref = self.db.add_learned(learned, self.trail, self.strategy, stats, lbd)
        n = len(self.db.learnts)
        if n > stats.peak_learned:
            stats.peak_learned = n
        if self.observer is not None:
            self.observer.on_learned(learned, self.db.meta[cref], self.trail)
        return cref

    def solve(self, limits: Limits = Limits()) -> SolveResult:
        t0 = time.process_time()
        result = self._search(limits, t0)
        self.stats.cpu_time = time.process_time() - t0
        if result.answer == UNSAT and self.proof is not None:
            self.proof.add([])
        return result

    def _search(self, limits: Limits, t0: float) -> SolveResult:
        stats = self.stats
        trail = self.trail
        db = self.db
        if not self.ok:
            return SolveResult(UNSAT, stats=stats)

        deadline = None if limits.timeout is None else t0 + limits.timeout
        max_conflicts = limits.max_conflicts
        restart_index = 1
        restart_limit = RESTART_BASE * luby(restart_index)
        since_restart = 0

        while True:
            confl = self.propagate()
            if confl != -1:
                stats.conflicts += 1
                since_restart += 1
                if not trail.lims:
                    return SolveResult(UNSAT, stats=stats)
                learned, bj = self.analyze(confl)
                lbd = compute_lbd(learned, trail) if len(learned) > 1 else 1
                cref = self._learn(learned, lbd)
                self.backjump(bj)
                trail.assign(learned[0], cref)
                self.var_inc /= VAR_DECAY
                db.on_conflict()
                if max_conflicts is not None and stats.conflicts >= max_conflicts:
                    self.backjump(0)
                    return SolveResult(UNKNOWN, stats=stats)
                if deadline is not None and time.process_time() >= deadline:
                    self.backjump(0)
                    return SolveResult(UNKNOWN, stats=stats)
            else:
                if since_restart >= restart_limit:
                    stats.restarts += 1
                    since_restart = 0
                    restart_index += 1
                    restart_limit = RESTART_BASE * luby(restart_index)
                    self.backjump(0)
                    continue
                if db.should_reduce(trail, stats):
                    db.reduce(trail, stats)
                if self.decide() == -1:
                    return SolveResult(SAT, self.model(), stats)

    def model(self) -> list[int]:
        vals = self.trail.vals
        return [v if vals[2 * v] == 1 else -v for v in range(1, self.num_vars + 1)]


def solve(
    instance: Instance,
    strategy: StrategyConfig = StrategyConfig(),
    schedule: Optional[DbConfig] = None,
    limits: Limits = Limits(),
    **kwargs,
) -> SolveResult:
    return Solver(instance, strategy, schedule, **kwargs).solve(limits)
