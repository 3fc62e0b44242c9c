"""Uniform partition of the left-widened interval [a - (b-a)/N, b].

The grid has N+2 points x_k = a + (k-1)*h for k = 0..N+1 with h = (b-a)/N,
so x_0 = a - h, x_1 = a and x_{N+1} = b.  Points come from the closed
formula (one multiply each), not cumulative addition, so the right endpoint
lands on b without drift.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

__all__ = ["UniformPartition", "unif_part", "select_index"]


@dataclass(frozen=True)
class UniformPartition:
    a: float
    b: float
    n_intervals: int
    points: tuple[float, ...] = field(repr=False)

    @property
    def h(self) -> float:
        return (self.b - self.a) / self.n_intervals


def unif_part(a: float, b: float, n: int) -> UniformPartition:
    """The N+2 equally spaced points on [a - h, b], h = (b - a)/N."""
    a = float(a)
    b = float(b)
    if not (math.isfinite(a) and math.isfinite(b)):
        raise ValueError("interval endpoints must be finite")
    if a >= b:
        raise ValueError(f"need a < b, got a={a!r}, b={b!r}")
    if n < 1:
        raise ValueError("n must be at least 1")
    h = (b - a) / n
    points = tuple(a + (k - 1) * h for k in range(n + 2))
    return UniformPartition(a=a, b=b, n_intervals=n, points=points)


def select_index(p: UniformPartition, x: float) -> int:
    """max{i in 1..N : points[i] <= x}, so that x lies in [x_i, x_{i+1}].

    O(1): arithmetic floor((x - a)/h) + 1 clamped to [1, N], then corrected
    against the stored points to be immune to floating-point boundary ties.
    """
    x = float(x)
    if not (p.a <= x <= p.b):
        raise ValueError(f"x={x!r} outside [{p.a!r}, {p.b!r}]")
    n = p.n_intervals
    i = int(math.floor((x - p.a) / p.h)) + 1
    i = max(1, min(n, i))
    while i > 1 and p.points[i] > x:
        i -= 1
    while i < n and p.points[i + 1] <= x:
        i += 1
    return i
