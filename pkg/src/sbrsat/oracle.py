"""Brute-force satisfiability oracle, model checker and random 3-CNF generator.

Nothing here touches the CDCL code; the oracle is a plain depth-first
enumeration over variables in index order that abandons a branch as soon as
some clause has all of its variables assigned and is false.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .dimacs import Instance
from .prng import DEFAULT_SEED, Rng

MAX_BRUTEFORCE_VARS = 26


@dataclass(frozen=True)
class OracleResult:
    answer: str  # "SAT" or "UNSAT"
    witness: Optional[tuple[int, ...]] = None


def solve_bruteforce(instance: Instance) -> OracleResult:
    n = instance.num_vars
    if n > MAX_BRUTEFORCE_VARS:
        raise ValueError(f"{n} variables exceeds the enumeration bound of {MAX_BRUTEFORCE_VARS}")
    if instance.has_empty_clause:
        return OracleResult("UNSAT")

    # Bit v of an assignment mask is set when variable v is true.  A clause
    # (pos, neg) is false under mask T iff no positive var is set and every
    # negated var is set.  Each clause is checked once, at the depth of its
    # highest variable, when it becomes fully assigned.
    by_last: list[list[tuple[int, int]]] = [[] for _ in range(n + 1)]
    for clause in instance.clauses:
        pos = neg = 0
        for lit in clause:
            if lit > 0:
                pos |= 1 << lit
            else:
                neg |= 1 << -lit
        by_last[max(abs(lit) for lit in clause)].append((pos, neg))

    def consistent(mask: int, v: int) -> bool:
        for pos, neg in by_last[v]:
            if not pos & mask and neg & mask == neg:
                return False
        return True

    def search(v: int, mask: int) -> Optional[int]:
        if v > n:
            return mask
        for value in (0, 1):
            m = mask | (value << v)
            if consistent(m, v):
                found = search(v + 1, m)
                if found is not None:
                    return found
        return None

    mask = search(1, 0)
    if mask is None:
        return OracleResult("UNSAT")
    return OracleResult("SAT", tuple(v if mask >> v & 1 else -v for v in range(1, n + 1)))


def check_model(instance: Instance, model: Sequence[int]) -> bool:
    """True iff ``model`` (one signed literal per variable) satisfies every clause."""
    assigned = set(model)
    for v in range(1, instance.num_vars + 1):
        if (v in assigned) == (-v in assigned):
            raise ValueError(f"model must assign variable {v} exactly once")
    if instance.has_empty_clause:
        return False
    return all(any(lit in assigned for lit in clause) for clause in instance.clauses)


def gen_random_3cnf(n: int, m: int, seed: int = DEFAULT_SEED) -> Instance:
    """Uniform random 3-CNF: three distinct variables per clause, fair-coin signs."""
    if n < 3:
        raise ValueError("random 3-CNF needs at least 3 variables")
    rng = Rng(seed)
    clauses = []
    for _ in range(m):
        chosen: list[int] = []
        while len(chosen) < 3:
            v = rng.irand(n) + 1
            if v not in chosen:
                chosen.append(v)
        clauses.append(tuple(v if rng.drand() < 0.5 else -v for v in chosen))
    return Instance(n, tuple(clauses))
