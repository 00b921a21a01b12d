"""Classical side of the search: brute-force solutions and Grover predictions."""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "SolutionSet",
    "brute_force_solutions",
    "solution_count",
    "predicted_success",
    "optimal_iterations",
]


@dataclass(frozen=True)
class SolutionSet:
    m: int
    n: int
    pairs: tuple[tuple[int, int], ...]

    @property
    def M(self) -> int:
        return len(self.pairs)

    @property
    def N(self) -> int:
        return 1 << (2 * self.m)

    def __contains__(self, pair):
        return tuple(pair) in set(self.pairs)


def brute_force_solutions(m: int, n: int) -> SolutionSet:
    """Every (x, y) with x + y = n and 0 <= x, y < 2**m, found by scanning all pairs."""
    if m < 1:
        raise ValueError("m must be at least 1")
    if n < 0:
        raise ValueError("n must be non-negative")
    size = 1 << m
    pairs = tuple((x, y) for x in range(size) for y in range(size) if x + y == n)
    return SolutionSet(m, n, pairs)


def solution_count(m: int, n: int) -> int:
    top = (1 << m) - 1
    if not 0 <= n <= 2 * top:
        return 0
    return min(n, top) - max(0, n - top) + 1


def predicted_success(N: int, M: int, k: int) -> float:
    """sin^2((2k+1) theta) with sin(theta) = sqrt(M/N)."""
    if not 0 < M <= N:
        raise ValueError(f"need 0 < M <= N, got M={M}, N={N}")
    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 0:
        return M / N
    theta = math.asin(math.sqrt(M / N))
    return math.sin((2 * k + 1) * theta) ** 2


def optimal_iterations(N: int, M: int) -> int:
    if not 0 < M < N / 2:
        raise ValueError(f"need 0 < M < N/2, got M={M}, N={N}")
    return max(1, math.floor(math.pi / 4 * math.sqrt(N / M)))
