"""DIMACS encoding of the arrowing question and a CEGAR loop around an external solver.

Variable ``x*n + y + 1`` is true iff edge (x_x, y_y) is red.  A model of the
full encoding is exactly a good coloring; the ``red_only`` encoding leaves
out the blue constraint, which :func:`cegar` adds back lazily one violated
K_{s,s} at a time.
"""

from __future__ import annotations

import os
import shlex
import subprocess
import tempfile
import time
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .core import Coloring, ProblemSpec, find_blue_K, find_red_K, full_mask, verify
from .errors import (EncodingTooLarge, IncompleteModel, SolverFailure, UnknownVariable,
                     WitnessFormatError)
from .search import Budget, SearchOutcome, SearchStats, Status

FULL_CLAUSE_CAP = 10**7
SOLVER_ENV = "BRAMSEY_SOLVER_CMD"


def var_id(spec: ProblemSpec, x: int, y: int) -> int:
    return x * spec.n + y + 1


@dataclass
class CnfDoc:
    spec: ProblemSpec
    num_vars: int
    clauses: list[list[int]]
    var_map: dict[tuple[int, int], int]
    mode: str = "full"

    def with_clauses(self, extra: Iterable[Sequence[int]]) -> "CnfDoc":
        return CnfDoc(self.spec, self.num_vars, self.clauses + [list(c) for c in extra],
                      self.var_map, self.mode)

    def to_dimacs(self) -> str:
        sp = self.spec
        lines = [f"c spec {sp.m} {sp.n} {sp.a} {sp.s}", f"c mode {self.mode}",
                 f"p cnf {self.num_vars} {len(self.clauses)}"]
        lines.extend(" ".join(map(str, c)) + " 0" for c in self.clauses)
        return "\n".join(lines) + "\n"

    def write(self, path) -> Path:
        path = Path(path)
        path.write_text(self.to_dimacs())
        return path


def _edge_vars(spec: ProblemSpec) -> dict[tuple[int, int], int]:
    return {(x, y): var_id(spec, x, y) for x in range(spec.m) for y in range(spec.n)}


def full_clause_count(spec: ProblemSpec) -> int:
    return comb(spec.m, spec.a) * comb(spec.n, spec.a) + comb(spec.m, spec.s) * comb(spec.n, spec.s)


def _block_clauses(spec: ProblemSpec, p: int, sign: int):
    if p > spec.m or p > spec.n:
        return
    for xs in combinations(range(spec.m), p):
        bases = [x * spec.n + 1 for x in xs]
        for ys in combinations(range(spec.n), p):
            yield [sign * (b + y) for b in bases for y in ys]


def _lex_clauses(spec: ProblemSpec, next_var: int) -> tuple[list[list[int]], int]:
    """Clauses forcing row x >= row x+1 lexicographically (column 0 most significant).

    Aux variable e_j (per adjacent row pair) is forced true while the two rows
    agree on columns before j.
    """
    clauses = []
    n = spec.n
    for x in range(spec.m - 1):
        eq = list(range(next_var, next_var + n))
        next_var += n
        clauses.append([eq[0]])
        for j in range(n):
            a_j, b_j = var_id(spec, x, j), var_id(spec, x + 1, j)
            clauses.append([-eq[j], a_j, -b_j])
            if j + 1 < n:
                clauses.append([-eq[j], -a_j, -b_j, eq[j + 1]])
                clauses.append([-eq[j], a_j, b_j, eq[j + 1]])
    return clauses, next_var


def encode_cnf(spec: ProblemSpec, mode: str = "full", symmetry_breaking: bool = False,
               cap: int = FULL_CLAUSE_CAP) -> CnfDoc:
    """CNF whose models are the good colorings (``full``) or the red-K_{a,a}-free ones."""
    if mode not in ("full", "red_only"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "full" and full_clause_count(spec) > cap:
        raise EncodingTooLarge(
            f"full encoding of {spec} needs {full_clause_count(spec)} clauses (cap {cap}); "
            "use cegar"
        )
    var_map = _edge_vars(spec)
    clauses = list(_block_clauses(spec, spec.a, -1))
    if mode == "full":
        clauses.extend(_block_clauses(spec, spec.s, +1))
    num_vars = spec.m * spec.n
    if symmetry_breaking:
        lex, top = _lex_clauses(spec, num_vars + 1)
        clauses.extend(lex)
        num_vars = top - 1
    return CnfDoc(spec, num_vars, clauses, var_map, mode)


def parse_dimacs(text: str) -> CnfDoc:
    """Inverse of :meth:`CnfDoc.to_dimacs` (requires the ``c spec`` comment)."""
    spec = None
    mode = "full"
    header = None
    clauses: list[list[int]] = []
    pending: list[int] = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("c"):
            parts = line.split()
            if len(parts) == 6 and parts[1] == "spec":
                spec = ProblemSpec(*map(int, parts[2:]))
            elif len(parts) == 3 and parts[1] == "mode":
                mode = parts[2]
            continue
        if line.startswith("p"):
            parts = line.split()
            header = (int(parts[2]), int(parts[3]))
            continue
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                clauses.append(pending)
                pending = []
            else:
                pending.append(lit)
    if spec is None or header is None:
        raise WitnessFormatError("DIMACS text lacks a 'c spec' comment or 'p cnf' header")
    if len(clauses) != header[1]:
        raise WitnessFormatError(f"header declares {header[1]} clauses, found {len(clauses)}")
    return CnfDoc(spec, header[0], clauses, _edge_vars(spec), mode)


def decode_model(doc: CnfDoc, assignment: Iterable[int], spec: ProblemSpec) -> Coloring:
    """Coloring whose red edges are the true edge variables of ``assignment``."""
    value: dict[int, bool] = {}
    for lit in assignment:
        v = abs(lit)
        if lit == 0:
            continue
        if v > doc.num_vars:
            raise UnknownVariable(f"literal {lit} names no variable of the document")
        value[v] = lit > 0
    missing = [v for v in range(1, doc.num_vars + 1) if v not in value]
    if missing:
        raise IncompleteModel(f"{len(missing)} variables unassigned, first {missing[0]}")
    masks = [0] * spec.m
    for (x, y), v in doc.var_map.items():
        if value[v]:
            masks[x] |= 1 << y
    return Coloring(spec.m, spec.n, tuple(masks))


class SolverTimeout(SolverFailure):
    pass


@dataclass
class SolverHarness:
    """An external DIMACS solver: ``command`` contains a ``{cnf_path}`` placeholder."""

    command: str
    timeout: Optional[float] = None

    @classmethod
    def from_env(cls, timeout: Optional[float] = None) -> Optional["SolverHarness"]:
        cmd = os.environ.get(SOLVER_ENV)
        return cls(cmd, timeout) if cmd else None

    def argv(self, cnf_path: Path) -> list[str]:
        tokens = shlex.split(self.command)
        if not any("{cnf_path}" in t for t in tokens):
            tokens.append("{cnf_path}")
        return [t.replace("{cnf_path}", str(cnf_path)) for t in tokens]

    def solve(self, doc: CnfDoc, workdir: Optional[Path] = None) -> Optional[list[int]]:
        """A model as signed literals, or None when the solver reports UNSAT."""
        with tempfile.TemporaryDirectory(dir=workdir) as tmp:
            path = doc.write(Path(tmp) / "instance.cnf")
            try:
                proc = subprocess.run(self.argv(path), capture_output=True, text=True,
                                      timeout=self.timeout)
            except subprocess.TimeoutExpired as exc:
                raise SolverTimeout(f"solver exceeded {self.timeout}s") from exc
            except OSError as exc:
                raise SolverFailure(f"cannot run solver: {exc}") from exc
        return parse_solver_output(proc.stdout, proc.returncode)


def parse_solver_output(stdout: str, returncode: int = 0) -> Optional[list[int]]:
    if returncode not in (0, 10, 20):
        raise SolverFailure(f"solver exited with status {returncode}")
    verdict = None
    model: list[int] = []
    for line in stdout.splitlines():
        if line.startswith("s "):
            verdict = line[2:].strip()
        elif line.startswith("v "):
            try:
                model.extend(int(tok) for tok in line[2:].split())
            except ValueError as exc:
                raise SolverFailure(f"unparsable model line {line!r}") from exc
    if verdict == "UNSATISFIABLE":
        return None
    if verdict == "SATISFIABLE":
        return [lit for lit in model if lit != 0]
    raise SolverFailure(f"no usable 's' line in solver output (got {verdict!r})")


@dataclass
class CegarTrace:
    """Blocking clauses in the order they were added, with their blue copies
    and the model coloring each one was cut from."""

    copies: list[tuple[tuple[int, ...], tuple[int, ...]]] = field(default_factory=list)
    clauses: list[list[int]] = field(default_factory=list)
    models: list[Coloring] = field(default_factory=list)


def blue_copies(c: Coloring, s: int):
    """Every s-subset with >= s uncovered columns, paired with its s lowest uncovered."""
    full = full_mask(c.n)
    for xs in combinations(range(c.m), s):
        union = 0
        for x in xs:
            union |= c.masks[x]
        free = full & ~union
        if free.bit_count() >= s:
            ys = []
            while len(ys) < s:
                low = free & -free
                ys.append(low.bit_length() - 1)
                free ^= low
            yield xs, tuple(ys)


def cegar(spec: ProblemSpec, harness: SolverHarness, budget: Budget = Budget(),
          batch: bool = False, symmetry_breaking: bool = False,
          trace: Optional[CegarTrace] = None) -> SearchOutcome:
    """Solve red-freeness plus lazily added blue blocking clauses until UNSAT or good.

    ``budget.max_nodes`` bounds the number of solver calls.  Arrow answers
    rest on the solver's UNSAT verdict.
    """
    started = time.monotonic()
    stats = SearchStats()
    base = encode_cnf(spec, "red_only", symmetry_breaking)
    blocking: list[list[int]] = []

    def done(status: Status, witness: Optional[Coloring] = None) -> SearchOutcome:
        stats.elapsed = time.monotonic() - started
        stats.prunes["blocking_clauses"] = len(blocking)
        return SearchOutcome(spec, status, witness, stats, engine="cegar")

    while True:
        if stats.nodes >= budget.max_nodes or time.monotonic() - started > budget.max_seconds:
            return done(Status.INCONCLUSIVE)
        stats.nodes += 1
        try:
            model = harness.solve(base.with_clauses(blocking))
        except SolverTimeout:
            return done(Status.INCONCLUSIVE)
        if model is None:
            return done(Status.ARROW)
        coloring = decode_model(base, model, spec)
        if find_red_K(coloring, spec.a, spec.a) is not None:
            raise SolverFailure("solver model violates the red-freeness clauses")
        copies = list(blue_copies(coloring, spec.s)) if batch else []
        if not batch:
            first = find_blue_K(coloring, spec.s, spec.s)
            copies = [first] if first is not None else []
        if not copies:
            if not verify(coloring, spec).good:
                raise AssertionError(f"cegar accepted a bad coloring for {spec}")
            return done(Status.NOT_ARROW, coloring)
        for xs, ys in copies:
            clause = [var_id(spec, x, y) for x in xs for y in ys]
            blocking.append(clause)
            if trace is not None:
                trace.copies.append((xs, ys))
                trace.clauses.append(clause)
                trace.models.append(coloring)
