"""Numerically stable logistic sigmoid and its derivatives.

The nth derivative uses the closed form

    sigma^(n)(x) = sum_{k=1}^{n+1} (-1)^(k+1) (k-1)! S(n+1, k) sigma(x)^k

with S(.,.) a Stirling number of the second kind.  Coefficients are exact
integers until the final float conversion.
"""

from __future__ import annotations

import math

from .stirling import factorial, stirling_row

__all__ = [
    "MAX_DERIVATIVE_ORDER",
    "sigmoid",
    "sigmoid_deriv1",
    "sigmoid_deriv2",
    "sigmoid_nth_derivative",
]

# Beyond order ~30 the coefficients (k-1)! * S(n+1, k) exceed ~1e35 and the
# alternating sum loses all double precision to cancellation.
MAX_DERIVATIVE_ORDER = 30


def _require_finite(x: float) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"input must be finite, got {x!r}")
    return x


def sigmoid(x: float) -> float:
    """Logistic sigmoid, stable over the full double range.

    For x >= 0 this evaluates 1/(1 + e^-x); for x < 0 it evaluates
    e^x/(1 + e^x).  Neither branch exponentiates a large positive argument,
    so there is no overflow anywhere.
    """
    x = _require_finite(x)
    if x >= 0.0:
        return 1.0 / (1.0 + math.exp(-x))
    t = math.exp(x)
    return t / (1.0 + t)


def sigmoid_deriv1(x: float) -> float:
    """First derivative: sigma(x) * (1 - sigma(x)), in (0, 0.25].

    Evaluated as sigma(-|x|) * (1 - sigma(-|x|)) so the small factor is the
    directly computed one; forming 1 - sigma(x) for large x would cancel.
    The derivative is even, so this changes nothing mathematically.
    """
    s = sigmoid(-abs(_require_finite(x)))
    return s * (1.0 - s)


def sigmoid_deriv2(x: float) -> float:
    """Second derivative: sigma(x) * (1 - sigma(x)) * (1 - 2*sigma(x))."""
    s = sigmoid(x)
    return s * (1.0 - s) * (1.0 - 2.0 * s)


def sigmoid_nth_derivative(n: int, x: float) -> float:
    """nth derivative of the sigmoid via the Stirling closed form.

    n = 0 returns sigmoid(x) itself.  Orders above MAX_DERIVATIVE_ORDER are
    rejected: the coefficient growth would silently destroy double precision.
    Powers sigma^k are formed by iterated multiplication and the alternating
    sum is accumulated in ascending k, sequentially, for reproducibility.
    """
    if n < 0:
        raise ValueError("derivative order must be nonnegative")
    if n > MAX_DERIVATIVE_ORDER:
        raise ValueError(
            f"derivative order {n} exceeds the supported maximum "
            f"{MAX_DERIVATIVE_ORDER}"
        )
    s = sigmoid(x)
    row = stirling_row(n + 1)
    acc = 0.0
    power = 1.0
    for k in range(1, n + 2):
        power *= s
        coeff = factorial(k - 1) * row[k]
        term = float(coeff) * power
        if k % 2 == 1:
            acc += term
        else:
            acc -= term
    return acc
