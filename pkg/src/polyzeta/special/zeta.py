"""Zeta values, multiple zeta values, harmonic sums and polylogarithms.

Numbers are mpmath ``mpf``/``mpc``.  Every routine takes ``prec`` in bits and
works internally with a few guard bits.
"""
from __future__ import annotations

import threading
from fractions import Fraction
from math import comb, factorial
from typing import NamedTuple

import mpmath
from mpmath import mp

from ..words import Composition, as_composition, pi_X, pi_Y, Word, X
from .bernoulli import bernoulli

GUARD = 24
DEFAULT_PREC = 256


class DomainError(ValueError):
    pass


class Value(NamedTuple):
    """A numeric result with an absolute error bound."""
    value: object
    bound: object

    def __str__(self):
        return "%s +/- %s" % (mpmath.nstr(self.value, 30), mpmath.nstr(self.bound, 3))


def _mpq(q):
    q = Fraction(q)
    return mpmath.mpf(q.numerator) / q.denominator


# -- zeta at integers ---------------------------------------------------------------

_zeta_lock = threading.Lock()
_zeta_cache: dict = {}


def _zeta_em(k: int, prec: int):
    """sum_{n<N} n^-k + Euler-Maclaurin tail, with the first omitted term as bound."""
    N = max(12, prec // 3)
    s = mpmath.fsum(mpmath.mpf(n) ** -k for n in range(1, N))
    Nf = mpmath.mpf(N)
    tail = Nf ** (1 - k) / (k - 1) + Nf ** (-k) / 2
    eps = mpmath.mpf(2) ** (-prec - 4)
    poch = mpmath.mpf(k)          # (k)_{2j-1}
    power = Nf ** (-k - 1)        # N^(-k-2j+1)
    j = 1
    while True:
        term = _mpq(bernoulli(2 * j)) / mpmath.factorial(2 * j) * poch * power
        if abs(term) < eps * s:
            return s + tail, abs(term)
        tail += term
        poch *= (k + 2 * j - 1) * (k + 2 * j)
        power /= Nf * Nf
        j += 1


def zeta_int(k: int, prec: int = DEFAULT_PREC):
    """zeta(k) for an integer k >= 2 (cached per precision)."""
    if k < 2:
        raise DomainError("zeta_int needs k >= 2, got %d" % k)
    key = (k, prec)
    with _zeta_lock:
        hit = _zeta_cache.get(key)
    if hit is not None:
        return hit
    with mp.workprec(prec + GUARD):
        v, _ = _zeta_em(k, prec + GUARD)
    with _zeta_lock:
        _zeta_cache[key] = v
    return v


_gamma_cache: dict = {}


def euler_gamma(prec: int = DEFAULT_PREC):
    """Euler's constant as H_n - log n - 1/(2n) + sum_{k<=m} B_2k / (2k n^2k).

    m = 8 up to 256 bits and grows with prec; n is then chosen so that the first
    omitted correction is below 2^-(prec+GUARD).
    """
    with _zeta_lock:
        hit = _gamma_cache.get(prec)
    if hit is not None:
        return hit
    wp = prec + GUARD
    with mp.workprec(wp):
        m = max(8, -(-prec // 32))
        b = abs(_mpq(bernoulli(2 * m + 2))) / (2 * m + 2)
        n = int(mpmath.ceil(mpmath.exp((mpmath.log(b) + wp * mpmath.log(2)) / (2 * m + 2)))) + 1
        h = mpmath.fsum(mpmath.mpf(1) / i for i in range(1, n + 1))
        nf = mpmath.mpf(n)
        g = h - mpmath.log(nf) - 1 / (2 * nf)
        for k in range(1, m + 1):
            g += _mpq(bernoulli(2 * k)) / (2 * k) / nf ** (2 * k)
    with _zeta_lock:
        _gamma_cache[prec] = g
    return g


# -- harmonic sums --------------------------------------------------------------------

def harmonic_sum(idx, n: int) -> Fraction:
    """H_s(n) = sum_{n >= n_1 > ... > n_r > 0} n_1^-s_1 ... n_r^-s_r, exactly.

    Negative parts are positive powers.
    """
    s = as_composition(idx).parts
    r = len(s)
    if n < r:
        return Fraction(0)
    acc = [Fraction(0)] * r + [Fraction(1)]
    for m in range(1, n + 1):
        # update outer indices first so acc[j+1] still holds the value at m-1
        for j in range(r):
            e = s[j]
            w = Fraction(1, m ** e) if e > 0 else Fraction(m ** (-e))
            acc[j] += w * acc[j + 1]
    return acc[0]


def harmonic_sum_table(idx, n: int) -> list:
    """[H_s(0), ..., H_s(n)]."""
    s = as_composition(idx).parts
    r = len(s)
    acc = [Fraction(0)] * r + [Fraction(1)]
    out = [acc[0]]
    for m in range(1, n + 1):
        for j in range(r):
            e = s[j]
            w = Fraction(1, m ** e) if e > 0 else Fraction(m ** (-e))
            acc[j] += w * acc[j + 1]
        out.append(acc[0])
    return out


# -- polylogarithms by power series -------------------------------------------------------

def _tail_bound(x, s1: int, r: int, N: int):
    """Bound on sum_{n>N} x^n n^-s1 C(n-1, r-1) >= the Li_s tail for |z| = x."""
    rho = x * (1 + mpmath.mpf(1) / (N + 1)) ** (r - 1)
    if rho >= 1:
        return mpmath.inf
    return x ** (N + 1) * mpmath.mpf(N + 1) ** (r - 1 - s1) / mpmath.factorial(r - 1) / (1 - rho)


def _cutoff(x, s1: int, r: int, err):
    N = 8
    while _tail_bound(x, s1, r, N) > err:
        N = int(N * 1.25) + 1
    return N


def li_series(s, z, N: int):
    """Partial sum over n_1 <= N of Li_s(z), inner sums as running harmonic sums."""
    s = tuple(s)
    r = len(s)
    acc = [mpmath.mpf(0)] * r + [mpmath.mpf(1)]
    zn = mpmath.mpf(1)
    out = 0
    for m in range(1, N + 1):
        zn *= z
        # acc[j] for j >= 1 are the inner sums H_{s_j..}(m); outermost gets the z power
        out += zn * mpmath.mpf(m) ** (-s[0]) * acc[1]
        for j in range(1, r):
            acc[j] += mpmath.mpf(m) ** (-s[j]) * acc[j + 1]
    return out


def li_numeric(idx, z, err=1e-10, prec: int = DEFAULT_PREC) -> Value:
    """Li_s(z) for |z| < 1; at z = 1 with s_1 >= 2 the Abel limit zeta(s)."""
    c = as_composition(idx)
    if any(p < 1 for p in c.parts):
        raise DomainError("li_numeric needs positive parts, got %s" % c)
    with mp.workprec(prec + GUARD):
        z = mpmath.mpmathify(z)
        x = abs(z)
        if x >= 1:
            if c.parts[0] < 2:
                raise DomainError("Li_%s diverges at |z| >= 1" % c)
            if z != 1:
                raise DomainError("on the unit circle only the Abel limit z -> 1 is supported")
            return mzv(c, err, prec)
        N = _cutoff(x, c.parts[0], c.depth, mpmath.mpf(err) / 2)
        v = li_series(c.parts, z, N)
        return Value(v, _tail_bound(x, c.parts[0], c.depth, N))


# -- multiple zeta values --------------------------------------------------------------------

def _check_mzv(idx) -> Composition:
    c = as_composition(idx)
    if any(p < 1 for p in c.parts):
        raise DomainError("MZV index needs positive parts, got %s" % c)
    if c.parts[0] < 2:
        raise DomainError("non-convergent index %s (s1 = 1)" % c)
    return c


def _li_half_word(letters, err, cutoff=None):
    """Li_w(1/2) for a word in X*x1 (or the empty word) with its tail bound."""
    if not letters:
        return mpmath.mpf(1), mpmath.mpf(0)
    comp = pi_Y(Word(X, tuple(letters))).parts
    half = mpmath.mpf(1) / 2
    N = cutoff or _cutoff(half, comp[0], len(comp), err)
    return li_series(comp, half, N), _tail_bound(half, comp[0], len(comp), N)


def mzv(idx, err=1e-10, prec: int = DEFAULT_PREC, cutoff: int | None = None) -> Value:
    """zeta(s_1, ..., s_r) with a rigorous absolute error bound.

    Uses the convolution at 1/2: for the X-word w = a_1...a_n,
    zeta(w) = sum_j Li_{dual(a_1..a_j)}(1/2) Li_{a_(j+1)..a_n}(1/2), where dual
    reverses the word and exchanges x0 and x1.  Each Li(1/2) is a power series with
    a geometric tail bound; ``cutoff`` forces the number of terms.
    """
    c = _check_mzv(idx)
    w = pi_X(c).letters
    n = len(w)
    with mp.workprec(prec + GUARD):
        err = mpmath.mpf(err)
        per = err / (4 * (n + 1))
        total = mpmath.mpf(0)
        bound = mpmath.mpf(0)
        for j in range(n + 1):
            pre = tuple(1 - a for a in reversed(w[:j]))
            a, ea = _li_half_word(pre, per, cutoff)
            b, eb = _li_half_word(w[j:], per, cutoff)
            total += a * b
            bound += ea * abs(b) + eb * abs(a) + ea * eb
        bound += abs(total) * mpmath.mpf(2) ** (-prec)
        return Value(total, bound)


# -- second route: truncated sum plus asymptotic tails --------------------------------------------

def _tail_expansion(s, K: int) -> dict:
    """Asymptotic expansion of sum_{n_1 > ... > n_j > N} prod n_i^-s_i as {e: c}, meaning sum c N^-e.

    Built from the outermost index inwards (n_1 first, then n_2 > N, ...) by
    Euler-Maclaurin on single power sums:
    sum_{n>N} n^-a ~ N^(1-a)/(a-1) - N^-a/2 + sum_k B_2k/(2k)! (a)_(2k-1) N^(-a-2k+1).
    Exponents above K are dropped.
    """
    exp = {0: Fraction(1)}
    for a in s:
        new = {}
        for e, c in exp.items():
            sig = a + e
            terms = {sig - 1: Fraction(1, sig - 1), sig: Fraction(-1, 2)}
            poch = Fraction(sig)
            k = 1
            while sig + 2 * k - 1 <= K:
                terms[sig + 2 * k - 1] = terms.get(sig + 2 * k - 1, 0) + \
                    bernoulli(2 * k) / factorial(2 * k) * poch
                poch *= (sig + 2 * k - 1) * (sig + 2 * k)
                k += 1
            for f, d in terms.items():
                if f <= K:
                    new[f] = new.get(f, 0) + c * d
        exp = new
    return exp


def mzv_em(idx, N: int = 40, order: int = 60, prec: int = DEFAULT_PREC) -> Value:
    """zeta(s) = sum_{j=0}^{r} zeta_{>N}(s_1..s_j) H_{s_(j+1)..s_r}(N).

    zeta_{>N} comes from :func:`_tail_expansion`; the error estimate is the size of
    the last kept order (heuristic, the expansion is asymptotic).
    """
    c = _check_mzv(idx)
    s = c.parts
    r = len(s)
    with mp.workprec(prec + GUARD):
        Nf = mpmath.mpf(N)
        total = mpmath.mpf(0)
        est = mpmath.mpf(0)
        for j in range(r + 1):
            h = harmonic_sum(s[j:], N) if j < r else Fraction(1)
            if j == 0:
                total += _mpq(h)
                continue
            expn = _tail_expansion(s[:j], order)
            t = mpmath.fsum(_mpq(cf) * Nf ** (-e) for e, cf in expn.items())
            last = [cf for e, cf in expn.items() if e >= order - 1]
            est += abs(_mpq(h)) * mpmath.fsum(abs(_mpq(cf)) for cf in last) * Nf ** (-(order - 1))
            total += _mpq(h) * t
        return Value(total, est)


__all__ = [
    "DomainError", "Value", "zeta_int", "euler_gamma", "harmonic_sum", "harmonic_sum_table",
    "li_series", "li_numeric", "mzv", "mzv_em", "DEFAULT_PREC",
]
