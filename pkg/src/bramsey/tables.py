"""Reproduction tables: recomputed BR_m(K_{2,2}, K_{s,s}) against published values.

A published value v is checked as two cells: K_{m,v-1} does not arrow (a good
coloring exists) and K_{m,v} arrows.  "Does not exist" is checked by the star
coloring on a few column counts.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .constructions import star_witness, witness_7_56, witness_8_44
from .core import ProblemSpec, verify
from .search import Budget, Status, decide_arrow

FAMILIES: dict[str, tuple[int, dict[int, Optional[int]]]] = {
    "k22_k33": (3, {2: None, 3: None, 4: 15, 5: 12, 6: 12, 7: 9, 8: 9}),
    "k22_k55": (5, {2: None, 3: None, 4: None, 5: None, 6: 40, 7: 30, 8: 30}),
    "k22_k66": (6, {2: None, 3: None, 4: None, 5: None, 6: None, 7: 57, 8: 45}),
}

BUNDLED = {(7, 56, 6): witness_7_56, (8, 44, 6): witness_8_44}


@dataclass
class Cell:
    family: str
    m: int
    kind: str  # "nonexistence", "lower" or "upper"
    n: Optional[int]
    expected: str
    computed: str
    status: str  # "match", "mismatch" or "inconclusive"
    engine: str
    nodes: int = 0

    def line(self) -> str:
        n = "-" if self.n is None else str(self.n)
        return (f"{self.family:8} m={self.m:<2} {self.kind:12} n={n:>4}  expected {self.expected:12}"
                f" computed {self.computed:12} {self.status:12} [{self.engine}, {self.nodes} nodes]")


def _star_cell(family: str, m: int, s: int) -> Cell:
    ns = (s, 2 * s, 10 * s)
    ok = all(verify(star_witness(m, n), ProblemSpec(m, n, 2, s)).good for n in ns)
    return Cell(family, m, "nonexistence", None, "NotArrow", "NotArrow" if ok else "Arrow?",
                "match" if ok else "mismatch", f"star n={','.join(map(str, ns))}")


def _decide_cell(family: str, m: int, n: int, s: int, kind: str, budget: Budget) -> Cell:
    expected = Status.NOT_ARROW if kind == "lower" else Status.ARROW
    bundled = BUNDLED.get((m, n, s)) if kind == "lower" else None
    if bundled is not None:
        w = bundled()
        good = verify(w.coloring, w.spec).good
        computed = Status.NOT_ARROW if good else Status.INCONCLUSIVE
        return Cell(family, m, kind, n, expected.value, computed.value,
                    "match" if good else "inconclusive", f"witness {w.name}")
    outcome = decide_arrow(ProblemSpec(m, n, 2, s), budget)
    if outcome.status is Status.INCONCLUSIVE:
        status = "inconclusive"
    else:
        status = "match" if outcome.status is expected else "mismatch"
    return Cell(family, m, kind, n, expected.value, outcome.status.value, status, "dfs",
                outcome.stats.nodes)


def reproduce(family: str, budget: Budget = Budget()) -> list[Cell]:
    if family not in FAMILIES:
        raise KeyError(f"unknown family {family!r}; choose from {sorted(FAMILIES)}")
    s, values = FAMILIES[family]
    cells = []
    for m, value in values.items():
        if value is None:
            cells.append(_star_cell(family, m, s))
        else:
            cells.append(_decide_cell(family, m, value - 1, s, "lower", budget))
            cells.append(_decide_cell(family, m, value, s, "upper", budget))
    return cells


def overall(cells: list[Cell]) -> str:
    statuses = {c.status for c in cells}
    if "mismatch" in statuses:
        return "mismatch"
    if "inconclusive" in statuses:
        return "inconclusive"
    return "match"
