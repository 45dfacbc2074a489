"""Exhaustive ground truth for tiny instances.

Colorings are enumerated as integers over the m*n edge bits, bit ``x*n + y``
meaning "edge (x, y) is red", lowest mask first.  The work is vectorised over
chunks of masks with numpy, so K_{4,6} (2^24 colorings) takes a few seconds.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from .core import Coloring, ProblemSpec, full_mask
from .errors import TooLarge

MAX_EDGES = 24
CHUNK = 1 << 20


@dataclass(frozen=True)
class OracleResult:
    arrows: bool
    good_count: int
    example: Optional[Coloring]


def _good_flags(rows: list[np.ndarray], spec: ProblemSpec) -> np.ndarray:
    n = spec.n
    full = np.uint32(full_mask(n))
    good = np.ones(rows[0].shape, dtype=bool)
    if spec.a <= spec.m and spec.a <= n:
        for xs in combinations(range(spec.m), spec.a):
            common = rows[xs[0]]
            for x in xs[1:]:
                common = common & rows[x]
            good &= np.bitwise_count(common) < spec.a
    if spec.s <= spec.m and spec.s <= n:
        for xs in combinations(range(spec.m), spec.s):
            union = rows[xs[0]]
            for x in xs[1:]:
                union = union | rows[x]
            good &= np.bitwise_count(full & ~union) < spec.s
    return good


def count_good_completions(
    spec: ProblemSpec,
    prefix: Sequence[int] = (),
    max_degree: Optional[int] = None,
) -> tuple[int, Optional[int]]:
    """Count good colorings whose first rows equal ``prefix`` (bitmasks).

    The remaining rows range over all subsets of ``[0, n)``, restricted to
    degree <= ``max_degree`` when given.  Returns the count and the least
    free-bit mask of a good completion (or None).
    """
    free_rows = spec.m - len(prefix)
    nbits = free_rows * spec.n
    if nbits > MAX_EDGES:
        raise TooLarge(f"{nbits} free edge bits exceeds the cap of {MAX_EDGES}")
    n = spec.n
    full = np.uint32(full_mask(n))
    total = 1 << nbits
    count = 0
    least = None
    fixed = [np.uint32(p) for p in prefix]
    for start in range(0, total, CHUNK):
        masks = np.arange(start, min(total, start + CHUNK), dtype=np.uint32)
        free = [(masks >> np.uint32(i * n)) & full for i in range(free_rows)]
        rows = [np.full(masks.shape, p, dtype=np.uint32) for p in fixed] + free
        if not rows:
            rows = [masks & np.uint32(0)]
        good = _good_flags(rows, spec)
        if max_degree is not None:
            for r in free:
                good &= np.bitwise_count(r) <= max_degree
        hits = np.flatnonzero(good)
        count += int(hits.size)
        if least is None and hits.size:
            least = int(masks[hits[0]])
    return count, least


def coloring_from_mask(m: int, n: int, mask: int) -> Coloring:
    full = full_mask(n)
    return Coloring(m, n, tuple((mask >> (i * n)) & full for i in range(m)))


def brute_force_arrow(spec: ProblemSpec) -> OracleResult:
    """Decide K_{m,n} -> (K_{a,a}, K_{s,s}) by enumerating all 2^(m*n) colorings."""
    if spec.m * spec.n > MAX_EDGES:
        raise TooLarge(f"m*n = {spec.m * spec.n} exceeds the cap of {MAX_EDGES}")
    count, least = count_good_completions(spec)
    example = None if least is None else coloring_from_mask(spec.m, spec.n, least)
    return OracleResult(arrows=count == 0, good_count=count, example=example)
