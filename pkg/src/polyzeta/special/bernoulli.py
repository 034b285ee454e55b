"""Exact Bernoulli numbers and the rational part of zeta at even integers."""
from __future__ import annotations

import threading
from fractions import Fraction
from math import comb, factorial

_lock = threading.Lock()
_B = [Fraction(1)]


def bernoulli(n: int) -> Fraction:
    """B_n with B_1 = -1/2, from sum_{j<=n} C(n+1, j) B_j = 0."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n > 1 and n % 2:
        return Fraction(0)
    with _lock:
        while len(_B) <= n:
            m = len(_B)
            s = sum(comb(m + 1, j) * _B[j] for j in range(m))
            _B.append(-s / (m + 1))
        return _B[n]


def zeta_even_bernoulli(k: int) -> Fraction:
    """q with zeta(2k) = q pi^(2k), from (-1)^(k+1) B_2k (2 pi)^2k / (2 (2k)!)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return (-1) ** (k + 1) * bernoulli(2 * k) * 2 ** (2 * k) / (2 * factorial(2 * k))


def _odd_factorial_series(k: int) -> list:
    # a(x) = sum_{n>=1} x^n / (2n+1)!, coefficients 0..k
    return [Fraction(0)] + [Fraction(1, factorial(2 * n + 1)) for n in range(1, k + 1)]


def _mul_trunc(p, q, k):
    out = [Fraction(0)] * (k + 1)
    for i, a in enumerate(p):
        if a:
            for j in range(0, k + 1 - i):
                if q[j]:
                    out[i + j] += a * q[j]
    return out


def zeta_even_rational(k: int) -> Fraction:
    """q with zeta(2k) = q pi^(2k), from the composition sum.

    q = k sum_{l=1}^{k} (-1)^(k+l)/l sum_{n_1+...+n_l=k} prod 1/(2 n_i + 1)!
    The inner sums are the coefficients of x^k in a(x)^l.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    a = _odd_factorial_series(k)
    power = a
    total = Fraction(0)
    for l in range(1, k + 1):
        if l > 1:
            power = _mul_trunc(power, a, k)
        total += Fraction((-1) ** (k + l), l) * power[k]
    return k * total


def stirling2(n: int, k: int) -> int:
    """Stirling numbers of the second kind."""
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    row = [1] + [0] * k
    for m in range(1, n + 1):
        new = [0] * (k + 1)
        for j in range(1, min(m, k) + 1):
            new[j] = j * row[j] + row[j - 1]
        row = new
    return row[k]
