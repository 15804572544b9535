"""Learned-clause activity measures.

Every strategy assigns each learned clause a real activity; the database
reduction deletes clauses with the *largest* activities first, so a smaller
activity always means a more relevant clause.

Strategies see literals in the solver's internal encoding (``2*var + sign``)
and read assignment levels from the solver's :class:`~sbrsat.solver.Trail`.
The pure ``*_initial`` / ``*_on_*`` functions below hold the formulas; the
classes only wire them to solver events.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Optional, Sequence

from .prng import DEFAULT_SEED, Rng

if TYPE_CHECKING:
    from .clausedb import ClauseMeta
    from .solver import Trail

KINDS = (
    "size",
    "rand",
    "fifo",
    "sbr",
    "sized",
    "sizekd",
    "reld",
    "lbd_static",
    "lbd_dynamic",
    "glucose_sizekd",
    "glucose_sbr",
)

DEFAULT_K = {"sbr": 12, "sizekd": 12, "glucose_sizekd": 12, "glucose_sbr": 15}

# command-line spellings
CLI_NAMES = {
    "size": "size",
    "rand": "rand",
    "fifo": "fifo",
    "sbr": "sbr",
    "sized": "sized",
    "sizekd": "sizekd",
    "reld": "reld",
    "lbd": "lbd_static",
    "lbdd": "lbd_dynamic",
    "glucose-sizekd": "glucose_sizekd",
    "glucose-sbr": "glucose_sbr",
}


@dataclass(frozen=True)
class StrategyConfig:
    kind: str = "size"
    k: Optional[int] = None
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown strategy kind {self.kind!r}; expected one of {KINDS}")
        if self.kind in DEFAULT_K:
            if self.k is None:
                object.__setattr__(self, "k", DEFAULT_K[self.kind])
            elif self.k < 1:
                raise ValueError(f"{self.kind} needs k >= 1, got {self.k}")
        elif self.k is not None:
            object.__setattr__(self, "k", None)

    @classmethod
    def parse(cls, text: str, seed: int = DEFAULT_SEED) -> "StrategyConfig":
        """Build from ``name`` or ``name:k`` using the command-line names."""
        name, _, k = text.partition(":")
        name = name.strip().lower()
        kind = CLI_NAMES.get(name, name.replace("-", "_"))
        return cls(kind, int(k) if k else None, seed)

    @property
    def label(self) -> str:
        name = next(n for n, kind in CLI_NAMES.items() if kind == self.kind)
        return f"{name}({self.k})" if self.k is not None else name


# --- formulas ---------------------------------------------------------------


def level_sum(clause: Sequence[int], level: Sequence[int]) -> int:
    """sum over blocks of ``i * |c^i|``, which is just the sum of literal levels."""
    total = 0
    for lit in clause:
        total += level[lit >> 1]
    return total


def distinct_levels(clause: Sequence[int], level: Sequence[int]) -> int:
    return len({level[lit >> 1] for lit in clause})


def size_initial(size: int) -> float:
    return float(size)


def rand_initial(rng: Rng) -> float:
    return rng.drand()


def fifo_initial(birth: int) -> float:
    return -float(birth)


def sbr_initial(size: int, k: int, rng: Rng) -> float:
    # size <= k counts as short; rng is only consumed for long clauses
    if size <= k:
        return float(size)
    return k + rng.drand()


def sized_initial(size: int) -> float:
    return float(size)


def sized_on_reason(activity: float, level: int) -> float:
    return min(activity, float(level))


def sizekd_initial(size: int, k: int) -> float:
    return float(size) if size <= k else float(k + size)


def sizekd_update(activity: float, k: int, level: int) -> float:
    return float(k + level) if k + level < activity else activity


def reld_initial(clause: Sequence[int], level: Sequence[int]) -> float:
    return float(level_sum(clause, level))


def reld_on_reason(activity: float, clause: Sequence[int], level: Sequence[int]) -> float:
    return min(activity, float(level_sum(clause, level)))


def lbd_static_initial(clause: Sequence[int], level: Sequence[int]) -> float:
    return float(distinct_levels(clause, level))


def lbd_dynamic_on_analysis(activity: float, clause: Sequence[int], level: Sequence[int]) -> float:
    return min(activity, float(distinct_levels(clause, level)))


def glucose_sizekd_initial(size: int, k: int) -> float:
    # strict comparison here, unlike sizekd_initial
    return float(size) if size < k else float(k + size)


def glucose_sbr_initial(size: int, k: int, rng: Rng, num_vars: int) -> float:
    if size <= k:
        return float(size)
    return float(k + rng.irand(num_vars))


# --- strategy objects -------------------------------------------------------


class Strategy:
    """Base class: static activity, no update hooks."""

    kind = ""
    # the solver skips the hook calls entirely when these are False
    uses_reason_hook = False
    uses_analysis_hook = False

    def __init__(self, config: StrategyConfig, rng: Rng, num_vars: int):
        self.config = config
        self.k = config.k
        self.rng = rng
        self.num_vars = num_vars

    def initial_activity(self, clause: Sequence[int], trail: "Trail", birth: int) -> float:
        raise NotImplementedError

    def on_reason_used(self, meta: "ClauseMeta", clause: Sequence[int], trail: "Trail", level: int) -> None:
        pass

    def on_conflict_analysis(self, meta: "ClauseMeta", clause: Sequence[int], trail: "Trail", level: int) -> None:
        pass

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.config.label}>"


class SizeStrategy(Strategy):
    kind = "size"

    def initial_activity(self, clause, trail, birth):
        return size_initial(len(clause))


class RandStrategy(Strategy):
    kind = "rand"

    def initial_activity(self, clause, trail, birth):
        return rand_initial(self.rng)


class FifoStrategy(Strategy):
    kind = "fifo"

    def initial_activity(self, clause, trail, birth):
        return fifo_initial(birth)


class SbrStrategy(Strategy):
    kind = "sbr"

    def initial_activity(self, clause, trail, birth):
        return sbr_initial(len(clause), self.k, self.rng)


class SizeDStrategy(Strategy):
    kind = "sized"
    uses_reason_hook = True

    def initial_activity(self, clause, trail, birth):
        return sized_initial(len(clause))

    def on_reason_used(self, meta, clause, trail, level):
        meta.activity = sized_on_reason(meta.activity, level)


class SizeKDStrategy(Strategy):
    kind = "sizekd"
    uses_reason_hook = True

    def initial_activity(self, clause, trail, birth):
        return sizekd_initial(len(clause), self.k)

    def on_reason_used(self, meta, clause, trail, level):
        meta.activity = sizekd_update(meta.activity, self.k, level)


class RelDStrategy(Strategy):
    kind = "reld"
    uses_reason_hook = True

    def initial_activity(self, clause, trail, birth):
        return reld_initial(clause, trail.level)

    def on_reason_used(self, meta, clause, trail, level):
        meta.activity = reld_on_reason(meta.activity, clause, trail.level)


class LbdStaticStrategy(Strategy):
    kind = "lbd_static"

    def initial_activity(self, clause, trail, birth):
        return lbd_static_initial(clause, trail.level)


class LbdDynamicStrategy(Strategy):
    kind = "lbd_dynamic"
    uses_analysis_hook = True

    def initial_activity(self, clause, trail, birth):
        return lbd_static_initial(clause, trail.level)

    def on_conflict_analysis(self, meta, clause, trail, level):
        meta.activity = lbd_dynamic_on_analysis(meta.activity, clause, trail.level)
        if meta.activity < meta.lbd:
            meta.lbd = int(meta.activity)


class GlucoseSizeKDStrategy(Strategy):
    kind = "glucose_sizekd"
    uses_analysis_hook = True

    def initial_activity(self, clause, trail, birth):
        return glucose_sizekd_initial(len(clause), self.k)

    def on_conflict_analysis(self, meta, clause, trail, level):
        meta.activity = sizekd_update(meta.activity, self.k, level)


class GlucoseSbrStrategy(Strategy):
    kind = "glucose_sbr"

    def initial_activity(self, clause, trail, birth):
        return glucose_sbr_initial(len(clause), self.k, self.rng, self.num_vars)


_CLASSES = {
    cls.kind: cls
    for cls in (
        SizeStrategy,
        RandStrategy,
        FifoStrategy,
        SbrStrategy,
        SizeDStrategy,
        SizeKDStrategy,
        RelDStrategy,
        LbdStaticStrategy,
        LbdDynamicStrategy,
        GlucoseSizeKDStrategy,
        GlucoseSbrStrategy,
    )
}

STATIC_KINDS = frozenset({"size", "rand", "fifo", "sbr", "lbd_static", "glucose_sbr"})
DYNAMIC_KINDS = frozenset(KINDS) - STATIC_KINDS


def make_strategy(config: StrategyConfig, rng: Rng, num_vars: int) -> Strategy:
    return _CLASSES[config.kind](config, rng, num_vars)
