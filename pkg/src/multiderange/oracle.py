"""Brute-force ground truth for derangement weight enumerators.

Everything here enumerates permutations directly and counts cycles by orbit
traversal.  It is deliberately dumb: the only cleverness allowed is pruning
a partial assignment as soon as an element lands in its own block.  A small
cap keeps runtimes sane; callers who need larger shapes use the
Laguerre-moment path and this module to cross-check it on small cases.

Block i of a shape occupies the labels k_1+...+k_{i-1}+1 .. k_1+...+k_i,
so results are deterministic.
"""

from __future__ import annotations

from itertools import permutations
from typing import Sequence

from .polys import AlphaPoly

DEFAULT_CAP = 9


class CapExceeded(Exception):
    """Ground set too large for brute force; use the enumerator instead."""


class NotABijection(ValueError):
    """Image list has duplicates or out-of-range entries."""


def cycle_count(perm: Sequence[int]) -> int:
    """Number of cycles of a permutation given as the image list of 1..m."""
    m = len(perm)
    seen = [False] * (m + 1)
    for v in perm:
        if not isinstance(v, int) or not 1 <= v <= m or seen[v]:
            raise NotABijection(f"not a bijection on 1..{m}: {list(perm)!r}")
        seen[v] = True
    visited = [False] * (m + 1)
    cycles = 0
    for start in range(1, m + 1):
        if not visited[start]:
            cycles += 1
            v = start
            while not visited[v]:
                visited[v] = True
                v = perm[v - 1]
    return cycles


def _validated_blocks(shape: Sequence[int], cap: int) -> tuple[int, ...]:
    blocks = tuple(k for k in shape if k)
    if any(k < 0 for k in shape):
        raise ValueError("shape entries must be nonnegative")
    total = sum(blocks)
    if total > cap:
        raise CapExceeded(f"ground set size {total} exceeds brute-force cap {cap}")
    return blocks


def enumerate_derangements(shape: Sequence[int], cap: int = DEFAULT_CAP) -> AlphaPoly:
    """Weight enumerator sum of a^cycles over all derangements of the shape.

    Lexicographic generation over the labeled ground set with early pruning:
    a prefix dies as soon as some element maps into its own block.
    """
    blocks = _validated_blocks(shape, cap)
    total = sum(blocks)
    block_of = []
    for b, size in enumerate(blocks):
        block_of.extend([b] * size)
    allowed = [
        [v for v in range(total) if block_of[v] != block_of[pos]]
        for pos in range(total)
    ]
    counts = [0] * (total + 1)
    image = [0] * total

    def extend(pos: int, used: int) -> None:
        if pos == total:
            counts[_cycles_min2(image)] += 1
            return
        for v in allowed[pos]:
            bit = 1 << v
            if not used & bit:
                image[pos] = v
                extend(pos + 1, used | bit)

    extend(0, 0)
    return AlphaPoly(counts)


def _cycles_min2(image: list[int]) -> int:
    # orbit traversal over 0-based images; derangements never have 1-cycles
    m = len(image)
    visited = [False] * m
    cycles = 0
    for start in range(m):
        if not visited[start]:
            cycles += 1
            length = 0
            v = start
            while not visited[v]:
                visited[v] = True
                v = image[v]
                length += 1
            assert length >= 2, "derangement produced a fixed point"
    return cycles


def cycle_enumerator_all(n: int, cap: int = DEFAULT_CAP) -> AlphaPoly:
    """Sum of a^cycles over all n! permutations (no derangement filter).

    Equals rising_factorial(n); asserting that equality is the classic
    sanity check for the whole cycle-counting machinery.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > cap:
        raise CapExceeded(f"n={n} exceeds brute-force cap {cap}")
    counts = [0] * (n + 1)
    for perm in permutations(range(n)):
        visited = [False] * n
        cycles = 0
        for start in range(n):
            if not visited[start]:
                cycles += 1
                v = start
                while not visited[v]:
                    visited[v] = True
                    v = perm[v]
        counts[cycles] += 1
    return AlphaPoly(counts)
