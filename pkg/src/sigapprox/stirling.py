"""Exact combinatorial kernels: Stirling numbers of the second kind and factorials.

Everything here is unbounded-integer arithmetic.  S(n, k) passes 64-bit range
around n = 25, and the derivative coefficients built on top of these values
must stay exact until the final conversion to floating point.
"""

from __future__ import annotations

import threading
from math import factorial

__all__ = ["StirlingTable", "factorial", "stirling2", "stirling_row"]


class StirlingTable:
    """Memoized triangular table of S(n, k) for 0 <= k <= n <= max_n.

    Rows are built bottom-up with S(n+1, k) = k*S(n, k) + S(n, k-1) and
    appended only once complete, so concurrent readers never observe a
    partially written row.  Extension is serialized by a lock.
    """

    def __init__(self, max_n: int = 0) -> None:
        if max_n < 0:
            raise ValueError("max_n must be nonnegative")
        self._rows: list[tuple[int, ...]] = [(1,)]
        self._lock = threading.Lock()
        self.extend_to(max_n)

    @property
    def max_n(self) -> int:
        return len(self._rows) - 1

    def extend_to(self, n: int) -> None:
        """Grow the table so rows 0..n are available."""
        with self._lock:
            while len(self._rows) <= n:
                prev = self._rows[-1]
                m = len(self._rows)  # index of the row being built
                row = [0] * (m + 1)
                for k in range(1, m + 1):
                    below = prev[k] if k < len(prev) else 0
                    row[k] = k * below + prev[k - 1]
                self._rows.append(tuple(row))

    def row(self, n: int) -> tuple[int, ...]:
        if n < 0:
            raise ValueError("n must be nonnegative")
        if n > self.max_n:
            self.extend_to(n)
        return self._rows[n]

    def value(self, n: int, k: int) -> int:
        if n < 0 or k < 0:
            raise ValueError("n and k must be nonnegative")
        if k > n:
            return 0
        return self.row(n)[k]


_TABLE = StirlingTable(32)


def stirling2(n: int, k: int) -> int:
    """S(n, k): the number of partitions of an n-set into k nonempty blocks.

    Exact for any n, k; k > n is permitted and yields 0.
    """
    return _TABLE.value(n, k)


def stirling_row(n: int) -> tuple[int, ...]:
    """The full row (S(n, 0), ..., S(n, n))."""
    return _TABLE.row(n)
