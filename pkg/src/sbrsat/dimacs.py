"""DIMACS CNF reading and writing.

Literals are plain DIMACS integers: ``v`` for the positive literal of
variable ``v`` and ``-v`` for its negation.
"""

from __future__ import annotations

import io
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence, TextIO, Union

log = logging.getLogger(__name__)

Clause = tuple[int, ...]


class DimacsError(ValueError):
    """Malformed DIMACS input."""


class _Tautology:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "TAUTOLOGY"

    def __bool__(self) -> bool:
        return False


TAUTOLOGY = _Tautology()


@dataclass(frozen=True)
class Instance:
    num_vars: int
    clauses: tuple[Clause, ...]
    # an empty clause in the input makes the formula trivially UNSAT; it is
    # kept out of ``clauses`` so every stored clause is nonempty
    has_empty_clause: bool = False
    tautologies: int = field(default=0, compare=False)
    warnings: tuple[str, ...] = field(default=(), compare=False)

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)


def normalize_clause(literals: Sequence[int]) -> Union[Clause, _Tautology]:
    """Drop duplicate literals (first occurrence wins) and detect tautologies.

    >>> normalize_clause([1, 1, -2])
    (1, -2)
    >>> normalize_clause([1, -1, 2])
    TAUTOLOGY
    """
    if not literals:
        raise ValueError("cannot normalize an empty clause")
    seen: set[int] = set()
    out = []
    for lit in literals:
        if lit == 0:
            raise ValueError("0 is not a literal")
        if -lit in seen:
            return TAUTOLOGY
        if lit not in seen:
            seen.add(lit)
            out.append(lit)
    return tuple(out)


def parse_dimacs(text: Union[str, TextIO]) -> Instance:
    if isinstance(text, str):
        text = io.StringIO(text)

    num_vars = num_clauses = None
    clauses: list[Clause] = []
    pending: list[int] = []
    has_empty = False
    tautologies = 0

    for lineno, line in enumerate(text, 1):
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            # SATLIB uf* files end with "%\n0\n"
            break
        if line.startswith("p"):
            if num_vars is not None:
                raise DimacsError(f"line {lineno}: duplicate header")
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError(f"line {lineno}: malformed header {line!r}")
            try:
                num_vars, num_clauses = int(parts[2]), int(parts[3])
            except ValueError:
                raise DimacsError(f"line {lineno}: malformed header {line!r}") from None
            if num_vars < 0 or num_clauses < 0:
                raise DimacsError(f"line {lineno}: negative header count")
            continue
        if num_vars is None:
            raise DimacsError(f"line {lineno}: clause before 'p cnf' header")
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise DimacsError(f"line {lineno}: non-integer token {tok!r}") from None
            if lit == 0:
                if not pending:
                    has_empty = True
                else:
                    norm = normalize_clause(pending)
                    if norm is TAUTOLOGY:
                        tautologies += 1
                    else:
                        clauses.append(norm)
                    pending = []
            elif abs(lit) > num_vars:
                raise DimacsError(
                    f"line {lineno}: literal {lit} out of declared range 1..{num_vars}"
                )
            else:
                pending.append(lit)

    if num_vars is None:
        raise DimacsError("missing 'p cnf' header")
    if pending:
        raise DimacsError("unterminated final clause (missing trailing 0)")

    warnings = []
    seen_count = len(clauses) + tautologies + (1 if has_empty else 0)
    if seen_count != num_clauses:
        msg = f"header declares {num_clauses} clauses, found {seen_count}"
        log.warning(msg)
        warnings.append(msg)

    return Instance(num_vars, tuple(clauses), has_empty, tautologies, tuple(warnings))


def read_dimacs(path: Union[str, Path]) -> Instance:
    """Parse a DIMACS file; ``"-"`` reads standard input."""
    if str(path) == "-":
        return parse_dimacs(sys.stdin)
    with open(path) as fh:
        return parse_dimacs(fh)


def to_dimacs(instance: Instance, comments: Iterable[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    n = instance.num_clauses + (1 if instance.has_empty_clause else 0)
    lines.append(f"p cnf {instance.num_vars} {n}")
    if instance.has_empty_clause:
        lines.append("0")
    lines.extend(" ".join(map(str, c)) + " 0" for c in instance.clauses)
    return "\n".join(lines) + "\n"
