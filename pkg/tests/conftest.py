import pytest

from sbrsat.dimacs import Instance
from sbrsat.solver import Solver, to_lit


def lits(*dimacs):
    return [to_lit(d) for d in dimacs]


@pytest.fixture
def make_solver():
    def build(num_vars, clauses, **kw):
        return Solver(Instance(num_vars, tuple(tuple(c) for c in clauses)), **kw)

    return build


# (criterion, passed, detail) rows reported by tests/test_acceptance.py
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {name}: {detail}")
