"""Explicit good colorings: the star and the two pairwise-1-intersecting families."""

from __future__ import annotations

from dataclasses import dataclass

from .core import Coloring, ProblemSpec, build_coloring, full_mask, verify


@dataclass(frozen=True)
class Claims:
    pairwise: int
    min_union: int


@dataclass(frozen=True)
class NamedWitness:
    name: str
    spec: ProblemSpec
    coloring: Coloring
    claims: Claims

    def check(self) -> bool:
        """True iff the coloring is good and reproduces its stored statistics."""
        report = verify(self.coloring, self.spec)
        off = report.off_diagonal()
        return (
            report.good
            and bool((off == self.claims.pairwise).all())
            and report.min_union_k is not None
            and report.min_union_k[1] == self.claims.min_union
        )


def _span(lo: int, hi: int) -> list[int]:
    return list(range(lo, hi + 1))


# 1-based, one line per X-vertex.  Row 2 is {1} + {12..21}: any second
# column from 2..11 would give it two common columns with row 1.
ROWS_7_56 = [
    _span(1, 11),
    [1] + _span(12, 21),
    [2, 12] + _span(22, 30),
    [3, 13, 22] + _span(31, 38),
    [4, 14, 23, 31, 39] + _span(40, 45),
    [5, 15, 24, 32, 39, 46] + _span(47, 51),
    [6, 16, 25, 33, 40, 46] + _span(52, 56),
]

ROWS_8_44 = [
    _span(1, 9),
    [1] + _span(10, 17),
    [2, 10] + _span(18, 24),
    [3, 11, 18, 25, 26, 27, 28, 29, 30],
    [4, 12, 19, 25, 31, 32, 33, 34, 35],
    [5, 13, 20, 26, 31, 36, 37, 38, 39],
    [6, 14, 21, 27, 32, 36, 40, 41, 42],
    [7, 15, 22, 28, 33, 37, 40, 43, 44],
]


def _from_one_based(m: int, n: int, rows: list[list[int]]) -> Coloring:
    return build_coloring(m, n, [[y - 1 for y in row] for row in rows])


def star_witness(m: int, n: int) -> Coloring:
    """x_0 red to every column, every other X-vertex all blue."""
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    return Coloring(m, n, (full_mask(n),) + (0,) * (m - 1))


def witness_7_56() -> NamedWitness:
    return NamedWitness(
        name="a7x56",
        spec=ProblemSpec(7, 56, 2, 6),
        coloring=_from_one_based(7, 56, ROWS_7_56),
        claims=Claims(pairwise=1, min_union=51),
    )


def witness_8_44() -> NamedWitness:
    return NamedWitness(
        name="b8x44",
        spec=ProblemSpec(8, 44, 2, 6),
        coloring=_from_one_based(8, 44, ROWS_8_44),
        claims=Claims(pairwise=1, min_union=39),
    )


NAMED = {"a7x56": witness_7_56, "b8x44": witness_8_44}
