"""Pruned depth-first search for K_{m,n} -> (K_{2,2}, K_{s,s}).

Rows (red neighbourhoods of x_0, x_1, ...) are placed one at a time with
nonincreasing degree.  Red C4-freeness is built in: a new row meets every
earlier row in at most one column.  Two symmetries are broken on the Y side:

* unused columns are interchangeable, so a row takes the lowest fresh ones;
* used columns are grouped by which earlier rows contain them (their
  pattern).  Columns of one pattern are interchangeable, and a row can take at
  most one column from each pattern class, with the chosen patterns pairwise
  disjoint.  So a row is a set of disjoint patterns plus a fresh count.

A blue K_{s,s} exists iff some s rows have union <= n - s.  Every partial
assignment keeps the unions of all subsets of at most s placed rows.
"""

from __future__ import annotations

import logging
import multiprocessing as mp
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from math import comb
from typing import Callable, Iterable, Iterator, Optional, Sequence

from .core import Coloring, ProblemSpec, verify
from .errors import CapacityExceeded, UnsupportedRedTarget

log = logging.getLogger(__name__)

MAX_M = 16
STOP_CHECK_EVERY = 32


class Status(str, Enum):
    ARROW = "Arrow"
    NOT_ARROW = "NotArrow"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class Budget:
    max_nodes: int = 50_000_000
    max_seconds: float = 3600.0
    parallel_width: int = 1

    def __post_init__(self) -> None:
        if self.max_nodes < 1 or self.max_seconds <= 0 or self.parallel_width < 1:
            raise ValueError(f"invalid budget {self}")


@dataclass
class SearchStats:
    nodes: int = 0
    prunes: Counter = field(default_factory=Counter)
    elapsed: float = 0.0

    def merge(self, other: "SearchStats") -> None:
        self.nodes += other.nodes
        self.prunes.update(other.prunes)

    def as_dict(self) -> dict:
        return {"nodes": self.nodes, "prunes": dict(sorted(self.prunes.items())),
                "elapsed": round(self.elapsed, 6)}


@dataclass
class SearchOutcome:
    spec: ProblemSpec
    status: Status
    witness: Optional[Coloring] = None
    stats: SearchStats = field(default_factory=SearchStats)
    engine: str = "dfs"


@dataclass(frozen=True)
class Partial:
    """A search node: placed rows plus the unions of their small subsets.

    ``unions`` holds ``(k, mask)`` for every subset of at most s placed rows,
    the empty subset included.
    """

    rows: tuple[int, ...]
    unions: tuple[tuple[int, int], ...]

    @property
    def cap(self) -> int:
        # degrees are nonincreasing, so later rows are bounded by the last one
        return self.rows[-1].bit_count() if self.rows else 0


@dataclass(frozen=True)
class PruneRule:
    """A sound pruning test.

    ``on_degree(spec, partial, d)`` is consulted before any row of degree
    ``d`` is tried below ``partial``; ``on_node(spec, partial)`` after a row
    is placed.  Firing must imply that no good coloring extends the node with
    every later row of degree at most the last placed one (at most ``d`` for
    degree-level firings).  A ``monotone`` degree test also refuses every
    degree below a refused one, so the search stops trying lower degrees.
    """

    name: str
    on_degree: Optional[Callable[[ProblemSpec, Partial, int], bool]] = None
    on_node: Optional[Callable[[ProblemSpec, Partial], bool]] = None
    monotone: bool = False


def _max_degree_fires(spec: ProblemSpec, p: Partial, d: int) -> bool:
    # any s of the other >= s rows meet a row of degree >= 2s in <= s columns
    return spec.m >= spec.s + 1 and d >= 2 * spec.s


def _unions_blocked(spec: ProblemSpec, unions, remaining: int, cap: int) -> bool:
    s = spec.s
    limit = spec.n - s
    for k, mask in unions:
        if k < s and s - k <= remaining and mask.bit_count() + (s - k) * cap <= limit:
            return True
    return False


def _lookahead_fires(spec: ProblemSpec, p: Partial) -> bool:
    return _unions_blocked(spec, p.unions, spec.m - len(p.rows), p.cap)


def _lookahead_degree_fires(spec: ProblemSpec, p: Partial, d: int) -> bool:
    return _unions_blocked(spec, p.unions, spec.m - len(p.rows), d)


def column_count_bound(spec: ProblemSpec, rows: Sequence[int], cap: int) -> int:
    """Least possible number of (s-subset, uncovered column) incidences.

    In a good coloring each s-subset of X leaves at most s-1 columns uncovered,
    so the incidences total at most (s-1)*C(m, s).  A column lying in r rows
    is uncovered by C(m-r, s) subsets.  Later rows add at most ``cap`` to the
    degree sum, and red C4-freeness caps the shared pairs sum_y C(r_y, 2) at
    C(m, 2).  Raising the lowest columns first is optimal for both budgets,
    which gives the minimum of the relaxation.
    """
    m, n, s = spec.m, spec.n, spec.s
    hist = [0] * (m + 1)
    col_degree: dict[int, int] = {}
    for row in rows:
        r = row
        while r:
            low = r & -r
            col_degree[low] = col_degree.get(low, 0) + 1
            r ^= low
    pairs = comb(m, 2)
    for deg in col_degree.values():
        hist[deg] += 1
        pairs -= comb(deg, 2)
    hist[0] = n - len(col_degree)
    degree_budget = (m - len(rows)) * cap
    for level in range(m):
        if degree_budget <= 0 or pairs < level:
            break
        move = hist[level] if level == 0 else min(hist[level], pairs // level)
        move = min(move, degree_budget)
        hist[level] -= move
        hist[level + 1] += move
        degree_budget -= move
        pairs -= move * level
        if hist[level]:
            break
    return sum(cnt * comb(m - lvl, s) for lvl, cnt in enumerate(hist))


def _column_count_fires(spec: ProblemSpec, p: Partial, d: int) -> bool:
    if spec.s > spec.m or spec.s > spec.n:
        return False
    return column_count_bound(spec, p.rows, d) > (spec.s - 1) * comb(spec.m, spec.s)


rule_max_degree = PruneRule("max_degree", on_degree=_max_degree_fires)
rule_union_lookahead = PruneRule("union_lookahead", on_degree=_lookahead_degree_fires,
                                 on_node=_lookahead_fires, monotone=True)
rule_column_count = PruneRule("column_count", on_degree=_column_count_fires, monotone=True)
DEFAULT_RULES = (rule_max_degree, rule_union_lookahead, rule_column_count)
RULES = {r.name: r for r in DEFAULT_RULES}

PARTIAL_BLUE = "partial_blue"

# (rule name, placed rows, degree): degree is the refused next-row degree for
# degree-level firings and None when the last of ``rows`` was refused.
FiringHook = Callable[[str, tuple[int, ...], Optional[int]], None]


class _Stop(Exception):
    pass


def _disjoint_choices(classes: Sequence[tuple[int, int]], t: int) -> Iterator[int]:
    """Bitmasks of t columns, one from each of t pattern-disjoint classes, lexicographic."""
    nclass = len(classes)

    def rec(start: int, need: int, used_rows: int, acc: int) -> Iterator[int]:
        if need == 0:
            yield acc
            return
        for j in range(start, nclass - need + 1):
            pattern, col = classes[j]
            if pattern & used_rows:
                continue
            yield from rec(j + 1, need - 1, used_rows | pattern, acc | (1 << col))

    yield from rec(0, t, 0, 0)


class _Dfs:
    def __init__(self, spec: ProblemSpec, budget: Budget, rules: Iterable[PruneRule],
                 deadline: float, hook: Optional[FiringHook] = None, stop_flag=None):
        self.spec = spec
        self.budget = budget
        rules = tuple(rules)
        self.degree_rules = [r for r in rules if r.on_degree is not None]
        self.node_rules = [r for r in rules if r.on_node is not None]
        self.hook = hook
        self.stop_flag = stop_flag
        self.deadline = deadline
        self.stats = SearchStats()
        self.witness: Optional[tuple[int, ...]] = None
        self.out_of_budget = False
        self.stopped = False

    def _tick(self) -> None:
        self.stats.nodes += 1
        if self.stats.nodes > self.budget.max_nodes:
            self.out_of_budget = True
            raise _Stop
        if time.monotonic() > self.deadline:
            self.out_of_budget = True
            raise _Stop
        # the stop flag is a manager proxy, so each read is an IPC round trip
        if self.stats.nodes % STOP_CHECK_EVERY == 0:
            if self.stop_flag is not None and self.stop_flag.is_set():
                self.stopped = True
                raise _Stop

    def _prune(self, name: str, rows: tuple[int, ...], degree: Optional[int]) -> None:
        self.stats.prunes[name] += 1
        if self.hook is not None:
            self.hook(name, rows, degree)

    def run(self, first_degrees: Optional[Sequence[int]] = None) -> None:
        try:
            self._extend(Partial((), ((0, 0),)), [], 0, self.spec.n, first_degrees)
        except _Stop:
            pass

    def _extend(self, p: Partial, col_patterns: list[int], used: int, max_deg: int,
                degrees: Optional[Sequence[int]] = None) -> bool:
        spec = self.spec
        i = len(p.rows)
        if i == spec.m:
            self.witness = p.rows
            return True
        self._tick()
        n, s = spec.n, spec.s
        limit = n - s

        first_col: dict[int, int] = {}
        for y in range(used):
            first_col.setdefault(col_patterns[y], y)
        classes = sorted(first_col.items(), key=lambda pc: pc[1])

        if degrees is None:
            degrees = range(min(max_deg, n), -1, -1)
        for d in degrees:
            refused = self._refuse_degree(p, d)
            if refused is not None:
                if refused.monotone:
                    break
                continue
            t_hi = min(d, i, len(classes))
            t_lo = max(0, d - (n - used))
            for t in range(t_hi, t_lo - 1, -1):
                fresh = d - t
                fresh_mask = ((1 << fresh) - 1) << used
                for shared in _disjoint_choices(classes, t):
                    row = shared | fresh_mask
                    grown = tuple((k + 1, u | row) for k, u in p.unions if k < s)
                    rows = p.rows + (row,)
                    if any(k == s and u.bit_count() <= limit for k, u in grown):
                        self._prune(PARTIAL_BLUE, rows, None)
                        continue
                    child = Partial(rows, p.unions + grown)
                    if any(self._fire_node(rule, child) for rule in self.node_rules):
                        continue
                    patterns = col_patterns + [0] * fresh
                    bit = 1 << i
                    r = row
                    while r:
                        low = r & -r
                        patterns[low.bit_length() - 1] |= bit
                        r ^= low
                    if self._extend(child, patterns, used + fresh, d):
                        return True
        return False

    def _refuse_degree(self, p: Partial, d: int) -> Optional[PruneRule]:
        for rule in self.degree_rules:
            if rule.on_degree(self.spec, p, d):
                self._prune(rule.name, p.rows, d)
                return rule
        return None

    def _fire_node(self, rule: PruneRule, child: Partial) -> bool:
        if rule.on_node(self.spec, child):
            self._prune(rule.name, child.rows, None)
            return True
        return False


def _check_spec(spec: ProblemSpec) -> None:
    if spec.a != 2:
        raise UnsupportedRedTarget(
            f"the DFS handles red K_{{2,2}} only (got a={spec.a}); use the SAT bridge"
        )
    if spec.m > MAX_M:
        raise CapacityExceeded(f"m={spec.m} exceeds the DFS limit of {MAX_M}")


def _finish(spec: ProblemSpec, dfs_witness, stats: SearchStats, out_of_budget: bool,
            started: float) -> SearchOutcome:
    stats.elapsed = time.monotonic() - started
    if dfs_witness is not None:
        coloring = Coloring(spec.m, spec.n, tuple(dfs_witness))
        if not verify(coloring, spec).good:
            raise AssertionError(f"search produced a bad witness for {spec}")
        return SearchOutcome(spec, Status.NOT_ARROW, coloring, stats)
    if out_of_budget:
        return SearchOutcome(spec, Status.INCONCLUSIVE, None, stats)
    return SearchOutcome(spec, Status.ARROW, None, stats)


_worker_stop = None


def _init_worker(stop_event) -> None:
    global _worker_stop
    _worker_stop = stop_event


def _run_branch(spec: ProblemSpec, budget: Budget, rules: tuple[PruneRule, ...],
                degree: int, deadline: float):
    # time.monotonic() reads a host-wide clock, so the parent's deadline is valid here
    dfs = _Dfs(spec, budget, rules, deadline, stop_flag=_worker_stop)
    dfs.run([degree])
    if dfs.witness is not None and _worker_stop is not None:
        _worker_stop.set()
    return degree, dfs.witness, dfs.stats, dfs.out_of_budget, dfs.stopped


def decide_arrow(
    spec: ProblemSpec,
    budget: Budget = Budget(),
    rules: Iterable[PruneRule] = DEFAULT_RULES,
    hook: Optional[FiringHook] = None,
) -> SearchOutcome:
    """Decide K_{m,n} -> (K_{2,2}, K_{s,s}) by exhaustive pruned search.

    Returns NotArrow with a verified good coloring, Arrow when every canonical
    candidate was refuted, or Inconclusive when the budget ran out first.  With
    ``parallel_width > 1`` the first row's degree is farmed out to worker
    processes; each worker gets the full node budget (the time budget stays
    shared), and which witness is
    returned depends on scheduling.  ``hook`` sees every pruning event and
    forces a single worker.
    """
    _check_spec(spec)
    rules = tuple(rules)
    started = time.monotonic()
    deadline = started + budget.max_seconds
    if budget.parallel_width == 1 or hook is not None:
        dfs = _Dfs(spec, budget, rules, deadline, hook=hook)
        dfs.run()
        return _finish(spec, dfs.witness, dfs.stats, dfs.out_of_budget, started)

    stats = SearchStats()
    witness = None
    out_of_budget = False
    stats.nodes += 1  # the root, expanded here
    first = []
    root = Partial((), ((0, 0),))
    for d in range(spec.n, -1, -1):
        refused = [r for r in rules if r.on_degree is not None and r.on_degree(spec, root, d)]
        if refused:
            stats.prunes[refused[0].name] += 1
            if refused[0].monotone:
                break
        else:
            first.append(d)
    with mp.Manager() as manager:
        stop = manager.Event()
        with ProcessPoolExecutor(budget.parallel_width, initializer=_init_worker,
                                 initargs=(stop,)) as pool:
            futures = [pool.submit(_run_branch, spec, budget, rules, d, deadline)
                       for d in first]
            results = sorted((f.result() for f in futures), key=lambda r: -r[0])
    for _, w, st, oob, stopped in results:
        stats.merge(st)
        if w is not None and witness is None:
            witness = w
        out_of_budget = out_of_budget or oob
    return _finish(spec, witness, stats, out_of_budget and witness is None, started)


@dataclass
class ScanResult:
    m: int
    a: int
    s: int
    outcomes: list[tuple[int, SearchOutcome]]
    value: Optional[int]
    bracket: Optional[tuple[int, Optional[int]]]
    monotone: bool

    def status_at(self, n: int) -> Status:
        for k, outcome in self.outcomes:
            if k == n:
                return outcome.status
        raise KeyError(n)


def infer_value(statuses: Sequence[tuple[int, Status]]):
    """BR_m from an ascending scan: (value, bracket, monotone).

    ``value`` is the first Arrow preceded only by NotArrow.  When an
    Inconclusive comes first, ``bracket`` is (first inconclusive n, first
    Arrow n or None).
    """
    value = None
    bracket = None
    seen_arrow = False
    monotone = True
    for n, status in statuses:
        if status is Status.ARROW:
            if not seen_arrow:
                if bracket is None:
                    value = n
                else:
                    bracket = (bracket[0], n)
            seen_arrow = True
        elif status is Status.NOT_ARROW:
            if seen_arrow:
                monotone = False
        elif not seen_arrow and bracket is None:
            bracket = (n, None)
    return value, bracket, monotone


def brm_scan(m: int, a: int, s: int, n_lo: int, n_hi: int,
             budget: Budget = Budget(),
             rules: Iterable[PruneRule] = DEFAULT_RULES) -> ScanResult:
    """Run decide_arrow for n = n_lo..n_hi and infer BR_m(K_{a,a}, K_{s,s})."""
    if n_lo > n_hi:
        raise ValueError(f"empty scan range {n_lo}..{n_hi}")
    rules = tuple(rules)
    outcomes = []
    for n in range(n_lo, n_hi + 1):
        outcome = decide_arrow(ProblemSpec(m, n, a, s), budget, rules)
        log.info("m=%d n=%d s=%d: %s (%d nodes)", m, n, s, outcome.status.value,
                 outcome.stats.nodes)
        outcomes.append((n, outcome))
    value, bracket, monotone = infer_value([(n, o.status) for n, o in outcomes])
    return ScanResult(m, a, s, outcomes, value, bracket, monotone)
