"""Normalized symmetric Krawtchouk polynomials and their binomial weights.

The three-term recurrence is the production path; the terminating 2F1 closed
form is kept as a reference for cross-checks at small N, since the alternating
series loses precision as N grows.
"""
import math
from typing import List

import numpy as np

from ..common.exceptions import InvalidParameterError
from ..vo.krawtchouk import KrawtchoukTable


def pochhammer(a: float, k: int) -> float:
    """Rising factorial (a)_k = a(a+1)...(a+k-1), with (a)_0 = 1."""
    if k < 0:
        raise InvalidParameterError(f"pochhammer order must be nonnegative, got {k}")
    result = 1.0
    for j in range(k):
        result *= a + j
    return result


def hyp2f1_terminating(n: int, b_neg: int, N: int, z: float) -> float:
    """2F1(-n, -b_neg; -N; z), summed up to k = min(n, b_neg).

    Requires n <= N so no denominator factor (-N)_k vanishes inside the sum.
    """
    if n < 0 or b_neg < 0 or N < 1:
        raise InvalidParameterError(f"invalid series parameters n={n}, b={b_neg}, N={N}")
    if n > N:
        raise InvalidParameterError(f"2F1(-{n}, -{b_neg}; -{N}; z) is ill-defined for n > N")
    total = 1.0
    term = 1.0
    for k in range(min(n, b_neg)):
        term *= (-n + k) * (-b_neg + k) / ((-N + k) * (k + 1)) * z
        total += term
    return total


def binomial(N: int, k: int) -> float:
    """binom(N, k) as a float, built multiplicatively."""
    if k < 0 or k > N:
        return 0.0
    k = min(k, N - k)
    result = 1.0
    for j in range(1, k + 1):
        result *= (N - k + j) / j
    return result


def _check_range(name: str, value: int, N: int) -> None:
    if not 0 <= value <= N:
        raise InvalidParameterError(f"{name}={value} outside 0..{N}")


def krawtchouk_eval_hypergeometric(n: int, s: int, N: int) -> float:
    """K_n(s) = (-1)^n sqrt(binom(N, n)) 2F1(-n, -s; -N; 2)."""
    if N < 1:
        raise InvalidParameterError(f"N must be >= 1, got {N}")
    _check_range("n", n, N)
    _check_range("s", s, N)
    sign = -1.0 if n % 2 else 1.0
    return sign * math.sqrt(binomial(N, n)) * hyp2f1_terminating(n, s, N, 2.0)


def recurrence_coefficient(n: int, N: int) -> float:
    """a_n = sqrt(n(N-n+1))/2; zero at both ends n = 0 and n = N+1."""
    if not 0 <= n <= N + 1:
        raise InvalidParameterError(f"n={n} outside 0..{N + 1}")
    return 0.5 * math.sqrt(n * (N - n + 1))


def binomial_weights(N: int) -> List[float]:
    if N < 1:
        raise InvalidParameterError(f"N must be >= 1, got {N}")
    scale = 0.5 ** N
    return [binomial(N, s) * scale for s in range(N + 1)]


def krawtchouk_eval_recurrence(N: int) -> KrawtchoukTable:
    """Fill K_n(s) row by row from (s - N/2) K_n = a_{n+1} K_{n+1} + a_n K_{n-1}."""
    if N < 1:
        raise InvalidParameterError(f"N must be >= 1, got {N}")
    x = np.arange(N + 1, dtype=float) - N / 2.0
    values = np.zeros((N + 1, N + 1))
    values[0] = 1.0
    previous = np.zeros(N + 1)
    for n in range(N):
        a_n = recurrence_coefficient(n, N)
        a_next = recurrence_coefficient(n + 1, N)
        values[n + 1] = (x * values[n] - a_n * previous) / a_next
        previous = values[n]
    return KrawtchoukTable(N=N, values=values, weights=binomial_weights(N))


def krawtchouk_table_hypergeometric(N: int) -> KrawtchoukTable:
    """Reference table through the closed form; meant for N <= 20."""
    values = [[krawtchouk_eval_hypergeometric(n, s, N) for s in range(N + 1)] for n in range(N + 1)]
    return KrawtchoukTable(N=N, values=values, weights=binomial_weights(N))
