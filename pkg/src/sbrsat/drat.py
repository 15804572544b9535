"""DRAT proof emission (text format)."""

from __future__ import annotations

from typing import Iterable, TextIO, Tuple


class DratWriter:
    """Writes ``lits 0`` for additions and ``d lits 0`` for deletions.

    Literals are DIMACS integers.  Adding the empty clause writes ``0``.
    """

    def __init__(self, sink: TextIO):
        self.sink = sink
        self.additions = 0
        self.deletions = 0

    def add(self, lits: Iterable[int]) -> None:
        self.sink.write(" ".join(map(str, (*lits, 0))) + "\n")
        self.additions += 1

    def delete(self, lits: Iterable[int]) -> None:
        self.sink.write("d " + " ".join(map(str, (*lits, 0))) + "\n")
        self.deletions += 1


def emit_drat(events: Iterable[Tuple[str, Iterable[int]]], sink: TextIO) -> None:
    """Replay ``("a" | "d", literals)`` events into ``sink``."""
    writer = DratWriter(sink)
    for kind, lits in events:
        if kind == "a":
            writer.add(lits)
        elif kind == "d":
            writer.delete(lits)
        else:
            raise ValueError(f"unknown DRAT event {kind!r}")
