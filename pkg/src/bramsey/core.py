"""Bipartite 2-colorings stored as bitset rows, and monochromatic K_{p,q} detection.

A coloring of K_{m,n} is kept as ``m`` red neighbourhoods, one per X-vertex.
Each neighbourhood is an integer bitmask over the Y-indices ``0..n-1``; blue
edges are never stored, they are the complement of a row inside ``[0, n)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from .errors import BadK, CapacityExceeded, IndexOutOfRange, RowCountMismatch, SpecMismatch

MAX_N = 512

Copy = tuple[tuple[int, ...], tuple[int, ...]]


def full_mask(n: int) -> int:
    return (1 << n) - 1


def bits_of(mask: int) -> list[int]:
    """Indices of the set bits of ``mask``, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def lowest_bits(mask: int, k: int) -> tuple[int, ...]:
    out = []
    while mask and len(out) < k:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


@dataclass(frozen=True)
class ProblemSpec:
    """Does K_{m,n} arrow (K_{a,a}, K_{s,s})?"""

    m: int
    n: int
    a: int
    s: int

    def __post_init__(self) -> None:
        for name in ("m", "n", "a", "s"):
            value = getattr(self, name)
            if not isinstance(value, (int, np.integer)) or value < 1:
                raise ValueError(f"{name} must be a positive integer, got {value!r}")
        if self.n > MAX_N:
            raise CapacityExceeded(f"n={self.n} exceeds bitset capacity {MAX_N}")

    def __str__(self) -> str:
        return f"K_{{{self.m},{self.n}}} -> (K_{{{self.a},{self.a}}}, K_{{{self.s},{self.s}}})"


@dataclass(frozen=True)
class YSet:
    """A subset of ``[0, n)`` backed by an integer bitmask."""

    bits: int
    n: int

    def __post_init__(self) -> None:
        if self.n > MAX_N:
            raise CapacityExceeded(f"n={self.n} exceeds bitset capacity {MAX_N}")
        if self.bits < 0 or self.bits >> self.n:
            raise IndexOutOfRange(f"bitmask has bits outside [0, {self.n})")

    @classmethod
    def from_indices(cls, indices: Iterable[int], n: int) -> "YSet":
        if n > MAX_N:
            raise CapacityExceeded(f"n={n} exceeds bitset capacity {MAX_N}")
        bits = 0
        for y in indices:
            if not 0 <= y < n:
                raise IndexOutOfRange(f"Y-index {y} not in [0, {n})")
            bits |= 1 << y
        return cls(bits, n)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __iter__(self) -> Iterator[int]:
        return iter(bits_of(self.bits))

    def __contains__(self, y: int) -> bool:
        return 0 <= y < self.n and bool(self.bits >> y & 1)

    def _check(self, other: "YSet") -> None:
        if self.n != other.n:
            raise ValueError(f"YSet universes differ: {self.n} vs {other.n}")

    def __and__(self, other: "YSet") -> "YSet":
        self._check(other)
        return YSet(self.bits & other.bits, self.n)

    def __or__(self, other: "YSet") -> "YSet":
        self._check(other)
        return YSet(self.bits | other.bits, self.n)

    def __sub__(self, other: "YSet") -> "YSet":
        self._check(other)
        return YSet(self.bits & ~other.bits, self.n)

    def complement(self) -> "YSet":
        return YSet(full_mask(self.n) & ~self.bits, self.n)

    def indices(self) -> list[int]:
        return bits_of(self.bits)


@dataclass(frozen=True)
class Coloring:
    """Red/blue coloring of K_{m,n}; ``masks[i]`` is the red neighbourhood of x_i."""

    m: int
    n: int
    masks: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n > MAX_N:
            raise CapacityExceeded(f"n={self.n} exceeds bitset capacity {MAX_N}")
        if len(self.masks) != self.m:
            raise RowCountMismatch(f"expected {self.m} rows, got {len(self.masks)}")
        for i, mask in enumerate(self.masks):
            if mask < 0 or mask >> self.n:
                raise IndexOutOfRange(f"row {i} has Y-indices outside [0, {self.n})")

    @property
    def rows(self) -> tuple[YSet, ...]:
        return tuple(YSet(mask, self.n) for mask in self.masks)

    def degrees(self) -> tuple[int, ...]:
        return tuple(mask.bit_count() for mask in self.masks)

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def blue_row(self, i: int) -> YSet:
        return YSet(full_mask(self.n) & ~self.masks[i], self.n)

    def is_red(self, x: int, y: int) -> bool:
        return bool(self.masks[x] >> y & 1)

    def complement(self) -> "Coloring":
        """Swap red and blue."""
        full = full_mask(self.n)
        return Coloring(self.m, self.n, tuple(full & ~mask for mask in self.masks))

    def padded(self, n: int) -> "Coloring":
        """The same coloring on ``n >= self.n`` columns, extra columns all blue."""
        if n < self.n:
            raise ValueError("padding cannot shrink the Y side")
        return Coloring(self.m, n, self.masks)

    def permuted(self, order: Sequence[int]) -> "Coloring":
        return Coloring(self.m, self.n, tuple(self.masks[i] for i in order))

    def to_rows(self, one_based: bool = False) -> list[list[int]]:
        shift = 1 if one_based else 0
        return [[y + shift for y in bits_of(mask)] for mask in self.masks]

    def to_matrix(self) -> np.ndarray:
        """0/1 red-edge matrix of shape (m, n)."""
        out = np.zeros((self.m, self.n), dtype=np.uint8)
        for i, mask in enumerate(self.masks):
            out[i, bits_of(mask)] = 1
        return out


def build_coloring(m: int, n: int, rows: Sequence[Iterable[int]]) -> Coloring:
    """Coloring of K_{m,n} whose red edges are exactly ``rows`` (0-based Y-indices)."""
    if n > MAX_N:
        raise CapacityExceeded(f"n={n} exceeds bitset capacity {MAX_N}")
    rows = list(rows)
    if len(rows) != m:
        raise RowCountMismatch(f"expected {m} rows, got {len(rows)}")
    return Coloring(m, n, tuple(YSet.from_indices(r, n).bits for r in rows))


def find_red_K(c: Coloring, a: int, b: int) -> Optional[Copy]:
    """Lexicographically first red K_{a,b}: a X-indices and the b smallest common Y-indices."""
    if a < 1 or b < 1 or a > c.m or b > c.n:
        return None
    masks = c.masks
    for xs in combinations(range(c.m), a):
        common = masks[xs[0]]
        for x in xs[1:]:
            common &= masks[x]
            if common.bit_count() < b:
                break
        if common.bit_count() >= b:
            return xs, lowest_bits(common, b)
    return None


def find_blue_K(c: Coloring, s: int, t: int) -> Optional[Copy]:
    """Blue K_{s,t}: the least s-subset S of X leaving >= t columns uncovered by red.

    Returns S together with the t smallest uncovered Y-indices.
    """
    if s < 1 or t < 1 or s > c.m or t > c.n:
        return None
    full = full_mask(c.n)
    masks = c.masks
    need = c.n - t
    for xs in combinations(range(c.m), s):
        union = 0
        for x in xs:
            union |= masks[x]
        if union.bit_count() <= need:
            return xs, lowest_bits(full & ~union, t)
    return None


def min_union(c: Coloring, k: int) -> tuple[int, tuple[int, ...]]:
    """Smallest red-neighbourhood union over k-subsets of X, with the first minimiser."""
    if not 1 <= k <= c.m:
        raise BadK(f"k={k} outside [1, {c.m}]")
    best = None
    best_xs: tuple[int, ...] = ()
    for xs in combinations(range(c.m), k):
        union = 0
        for x in xs:
            union |= c.masks[x]
        size = union.bit_count()
        if best is None or size < best:
            best, best_xs = size, xs
    return best, best_xs


def pairwise_intersections(c: Coloring) -> np.ndarray:
    out = np.zeros((c.m, c.m), dtype=np.int64)
    for i in range(c.m):
        for j in range(i, c.m):
            out[i, j] = out[j, i] = (c.masks[i] & c.masks[j]).bit_count()
    return out


@dataclass(frozen=True)
class VerifyReport:
    spec: ProblemSpec
    red_copy: Optional[Copy]
    blue_copy: Optional[Copy]
    pairwise: np.ndarray = field(repr=False, compare=False)
    min_union_k: Optional[tuple[int, int, tuple[int, ...]]]
    max_red_degree: int

    @property
    def good(self) -> bool:
        return self.red_copy is None and self.blue_copy is None

    def off_diagonal(self) -> np.ndarray:
        mask = ~np.eye(len(self.pairwise), dtype=bool)
        return self.pairwise[mask]

    def summary(self) -> str:
        lines = [f"spec: {self.spec}", f"good coloring: {'yes' if self.good else 'no'}"]
        lines.append(f"max red degree: {self.max_red_degree}")
        off = self.off_diagonal()
        if off.size:
            lines.append(f"pairwise intersections: min {off.min()}, max {off.max()}")
        if self.min_union_k is not None:
            k, value, xs = self.min_union_k
            lines.append(f"min {k}-subset union: {value} (x-subset {[x + 1 for x in xs]})")
        for label, copy in (("red", self.red_copy), ("blue", self.blue_copy)):
            if copy is not None:
                xs, ys = copy
                lines.append(
                    f"{label} copy: X={[x + 1 for x in xs]} Y={[y + 1 for y in ys]}"
                )
        return "\n".join(lines)


def verify(c: Coloring, spec: ProblemSpec) -> VerifyReport:
    """Check a coloring against a spec and gather its intersection/union statistics."""
    if c.m != spec.m or c.n != spec.n:
        raise SpecMismatch(f"coloring is {c.m}x{c.n}, spec is {spec.m}x{spec.n}")
    mu = None
    if spec.s <= c.m:
        value, xs = min_union(c, spec.s)
        mu = (spec.s, value, xs)
    return VerifyReport(
        spec=spec,
        red_copy=find_red_K(c, spec.a, spec.a),
        blue_copy=find_blue_K(c, spec.s, spec.s),
        pairwise=pairwise_intersections(c),
        min_union_k=mu,
        max_red_degree=c.max_degree(),
    )


def is_good(c: Coloring, spec: ProblemSpec) -> bool:
    return find_red_K(c, spec.a, spec.a) is None and find_blue_K(c, spec.s, spec.s) is None
