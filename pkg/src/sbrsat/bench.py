"""Single runs, corpus runs and CSV reporting."""

from __future__ import annotations

import csv
import io
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Optional, Sequence, Union

from .clausedb import DbConfig
from .dimacs import DimacsError, read_dimacs, to_dimacs
from .drat import DratWriter
from .oracle import check_model, gen_random_3cnf
from .solver import SAT, UNKNOWN, UNSAT, Limits, Solver
from .strategies import StrategyConfig

log = logging.getLogger(__name__)

SCHEMA = "sbrsat-bench v1"
TIMING_COLUMNS = ("cpu_time", "average_time")


class ModelCheckError(RuntimeError):
    pass


@dataclass(frozen=True)
class RunConfig:
    strategy: StrategyConfig = StrategyConfig()
    schedule: Optional[str] = None  # None picks the strategy's natural schedule
    timeout: Optional[float] = None
    verify: bool = False
    minimize: bool = True

    @property
    def db_config(self) -> DbConfig:
        if self.schedule is None:
            return DbConfig("glucose" if self.strategy.kind.startswith("glucose") else "minisat")
        return DbConfig(self.schedule)

    @property
    def label(self) -> str:
        return f"{self.strategy.label}/{self.db_config.schedule}"

    @classmethod
    def parse(cls, text: str, seed: int, schedule: Optional[str] = None, **kw) -> "RunConfig":
        """``name[:k][@schedule]``, e.g. ``sbr:12@glucose``."""
        text, _, sched = text.partition("@")
        return cls(StrategyConfig.parse(text, seed), sched or schedule, **kw)


@dataclass
class RunReport:
    instance: str
    strategy: str
    k: Optional[int]
    seed: int
    schedule: str
    answer: str
    cpu_time: float
    conflicts: int
    decisions: int
    propagations: int
    restarts: int
    reductions: int
    clauses_deleted: int
    peak_learned: int
    model: Optional[list[int]] = field(default=None, repr=False, compare=False)

    @property
    def exit_code(self) -> int:
        return {SAT: 10, UNSAT: 20}.get(self.answer, 0)

    @property
    def solved(self) -> bool:
        return self.answer != UNKNOWN


COLUMNS = [f.name for f in fields(RunReport) if f.name != "model"]


def run_single(path: Union[str, Path], config: RunConfig, drat: Optional[Union[str, Path]] = None) -> RunReport:
    """Solve one DIMACS file.  Raises DimacsError / OSError on unreadable input."""
    instance = read_dimacs(path)
    sink = open(drat, "w") if drat is not None else None
    try:
        solver = Solver(
            instance,
            config.strategy,
            config.db_config,
            minimize=config.minimize,
            proof=DratWriter(sink) if sink is not None else None,
        )
        result = solver.solve(Limits(timeout=config.timeout))
    finally:
        if sink is not None:
            sink.close()
    if result.answer == SAT and config.verify and not check_model(instance, result.model):
        raise ModelCheckError(f"{path}: model does not satisfy the formula")
    st = result.stats
    report = RunReport(
        instance=Path(path).name if str(path) != "-" else "<stdin>",
        strategy=config.strategy.kind,
        k=config.strategy.k,
        seed=config.strategy.seed,
        schedule=config.db_config.schedule,
        answer=result.answer,
        cpu_time=st.cpu_time,
        conflicts=st.conflicts,
        decisions=st.decisions,
        propagations=st.propagations,
        restarts=st.restarts,
        reductions=st.reductions,
        clauses_deleted=st.clauses_deleted,
        peak_learned=st.peak_learned,
        model=result.model,
    )
    return report


def _run_job(job: tuple[str, RunConfig]) -> Optional[RunReport]:
    path, config = job
    try:
        report = run_single(path, config)
    except (OSError, DimacsError, UnicodeDecodeError) as exc:
        log.warning("skipping %s: %s", path, exc)
        return None
    report.model = None
    return report


def list_instances(directory: Union[str, Path]) -> list[Path]:
    return sorted(p for p in Path(directory).iterdir() if p.suffix == ".cnf" and p.is_file())


def collect(paths: Sequence[Union[str, Path]], configs: Sequence[RunConfig], jobs: int = 1) -> list[RunReport]:
    """Run every (instance, config) pair; reports come back in instance-major order."""
    work = [(str(p), c) for p in paths for c in configs]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_run_job, work, chunksize=max(1, len(work) // (8 * jobs))))
    else:
        reports = [_run_job(w) for w in work]
    return [r for r in reports if r is not None]


@dataclass
class Summary:
    config: str
    solved: int
    sat: int
    unsat: int
    average_time: float  # total time on solved instances / #solved

    @property
    def table(self) -> str:
        return f"{self.solved} ({self.sat} - {self.unsat})"


def config_label(report: RunReport) -> str:
    strategy = StrategyConfig(report.strategy, report.k, report.seed)
    return f"{strategy.label}/{report.schedule}"


def summarize(reports: Sequence[RunReport]) -> list[Summary]:
    groups: dict[str, list[RunReport]] = {}
    for r in reports:
        groups.setdefault(config_label(r), []).append(r)
    out = []
    for label, rows in groups.items():
        solved = [r for r in rows if r.solved]
        total = sum(r.cpu_time for r in solved)
        out.append(
            Summary(
                label,
                len(solved),
                sum(r.answer == SAT for r in solved),
                sum(r.answer == UNSAT for r in solved),
                total / len(solved) if solved else 0.0,
            )
        )
    return out


def write_csv(reports: Sequence[RunReport], out: Optional[io.TextIOBase] = None) -> str:
    """Data rows, then one summary row per configuration, in one document.

    Layout::

        # sbrsat-bench v1
        instance,strategy,...        <- one row per (instance, config)
        # summary
        config,solved,sat,unsat,average_time,table
    """
    buf = io.StringIO()
    buf.write(f"# {SCHEMA}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for r in reports:
        row = asdict(r)
        row["cpu_time"] = f"{r.cpu_time:.4f}"
        w.writerow(["" if row[c] is None else row[c] for c in COLUMNS])
    buf.write("# summary\n")
    w.writerow(["config", "solved", "sat", "unsat", "average_time", "table"])
    for s in summarize(reports):
        w.writerow([s.config, s.solved, s.sat, s.unsat, f"{s.average_time:.4f}", s.table])
    text = buf.getvalue()
    if out is not None:
        out.write(text)
    return text


def read_csv(text: str) -> tuple[list[dict], list[dict]]:
    """Parse a document produced by :func:`write_csv` into (rows, summaries)."""
    head, _, tail = text.partition("# summary\n")
    body = [line for line in head.splitlines() if not line.startswith("#")]
    rows = list(csv.DictReader(body))
    summaries = list(csv.DictReader(tail.splitlines()))
    return rows, summaries


def run_batch(
    directory: Union[str, Path],
    configs: Sequence[RunConfig],
    timeout: Optional[float] = None,
    jobs: int = 1,
) -> str:
    if timeout is not None:
        configs = [RunConfig(c.strategy, c.schedule, timeout, c.verify, c.minimize) for c in configs]
    return write_csv(collect(list_instances(directory), configs, jobs))


def generate_corpus(
    directory: Union[str, Path],
    n: int,
    m: int,
    num_sat: int,
    num_unsat: int,
    seed: int = 1,
) -> list[Path]:
    """Write uniform random 3-CNF files split by satisfiability, SATLIB style.

    Files are named ``uf{n}-{i}.cnf`` / ``uuf{n}-{i}.cnf``.  Candidates are
    drawn with consecutive generator seeds starting at ``seed`` and labelled
    by solving them; SAT labels are model-checked.
    """
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    counts = {SAT: 0, UNSAT: 0}
    wanted = {SAT: num_sat, UNSAT: num_unsat}
    prefix = {SAT: "uf", UNSAT: "uuf"}
    s = seed
    while counts[SAT] < num_sat or counts[UNSAT] < num_unsat:
        inst = gen_random_3cnf(n, m, s)
        result = Solver(inst, StrategyConfig("size")).solve()
        label = result.answer
        if label == SAT and not check_model(inst, result.model):
            raise ModelCheckError(f"generator seed {s}: bad model")
        if counts[label] < wanted[label]:
            counts[label] += 1
            path = directory / f"{prefix[label]}{n}-{counts[label]:04d}.cnf"
            path.write_text(to_dimacs(inst, [f"random 3-CNF n={n} m={m} seed={s} label={label}"]))
            written.append(path)
        s += 1
    return written


def default_jobs() -> int:
    return max(1, (os.cpu_count() or 1))
