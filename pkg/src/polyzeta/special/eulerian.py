"""ell_r, Gamma_{y_r} and the root systems G_r.

    ell_1(z) = gamma z - sum_{k>=2} zeta(k) (-z)^k / k
    ell_r(z) = -sum_{k>=1} zeta(kr) (-z^r)^k / k          (r >= 2)
    Gamma_{y_r}(1 + z) = exp(-ell_r(z))

so exp(ell_r(z)) = prod_n (1 + z^r / n^r) for r >= 2 and exp(ell_1) is 1/Gamma(1+z).
"""
from __future__ import annotations

from dataclasses import dataclass

import mpmath
from mpmath import mp

from ..coeffs import Cyclotomic
from .zeta import DEFAULT_PREC, GUARD, DomainError, euler_gamma, zeta_int


def ell_r(r: int, z, prec: int = DEFAULT_PREC):
    if r < 1:
        raise DomainError("r must be >= 1")
    with mp.workprec(prec + GUARD):
        z = mpmath.mpmathify(z)
        if abs(z) >= 1:
            raise DomainError("ell_r needs |z| < 1, got |z| = %s" % mpmath.nstr(abs(z), 8))
        if z == 0:
            return mpmath.mpf(0)
        eps = mpmath.mpf(2) ** (-(prec + GUARD // 2))
        # w^k carries the sign: w = -z for r = 1, w = -z^r otherwise
        w = -z if r == 1 else -(z ** r)
        aw = abs(w)
        k = 2 if r == 1 else 1
        total = euler_gamma(prec) * z if r == 1 else mpmath.mpf(0)
        wk = w ** k
        # zeta(kr) <= zeta(2), so the tail after term k is below zeta(2) |w|^(k+1) / (1 - |w|)
        zeta2 = zeta_int(2, prec)
        while True:
            total -= zeta_int(k * r, prec) * wk / k
            if zeta2 * aw ** (k + 1) / (1 - aw) < eps:
                break
            k += 1
            wk *= w
        return total


def gamma_yr(r: int, z, prec: int = DEFAULT_PREC):
    """Gamma_{y_r}(1 + z) = exp(-ell_r(z))."""
    with mp.workprec(prec + GUARD):
        return mpmath.exp(-ell_r(r, z, prec))


@dataclass(frozen=True)
class RootSystem:
    """G_r: solutions of z^r = (-1)^(r-1); calG_r: the r-th roots of unity.

    ``G_exact`` holds the same points as elements of Q(zeta_2r).
    """
    r: int
    G: tuple
    calG: tuple
    G_exact: tuple


def roots_G(r: int, prec: int = DEFAULT_PREC) -> RootSystem:
    if r < 1:
        raise DomainError("r must be >= 1")
    with mp.workprec(prec + GUARD):
        G = tuple(mpmath.expjpi(mpmath.mpf(2 * k + r - 1) / r) for k in range(r))
        calG = tuple(mpmath.expjpi(mpmath.mpf(2 * k) / r) for k in range(r))
    exact = tuple(Cyclotomic.root(2 * r, 2 * k + r - 1) for k in range(r))
    return RootSystem(r, G, calG, exact)


def zero_set_sample(r: int, depth: int, prec: int = DEFAULT_PREC) -> list:
    """{chi m : chi in G_r, -depth <= m <= -1}, the zeros of exp(ell_r(z - 1)) near the origin."""
    rs = roots_G(r, prec)
    return [chi * m for chi in rs.G for m in range(-depth, 0)]


def weierstrass_product_check(r: int, z, N: int, prec: int = DEFAULT_PREC):
    """(exp(ell_r(z)), partial product up to N).

    r >= 2: prod_{n<=N} (1 + z^r/n^r); r = 1: exp(gamma z) prod_{n<=N} (1 + z/n) exp(-z/n).
    """
    with mp.workprec(prec + GUARD):
        z = mpmath.mpmathify(z)
        lhs = mpmath.exp(ell_r(r, z, prec))
        p = mpmath.mpf(1)
        for n in range(1, N + 1):
            if r == 1:
                p *= (1 + z / n) * mpmath.exp(-z / n)
            else:
                p *= 1 + z ** r / mpmath.mpf(n) ** r
        if r == 1:
            p *= mpmath.exp(euler_gamma(prec) * z)
        return lhs, p


def weierstrass3_check(r: int, q: int, z, prec: int = DEFAULT_PREC):
    """|exp(ell_qr(z)) - prod_{k<q} exp(ell_r(chi_k z))| with chi_k = exp(2 i k pi / (q r))."""
    if q < 1 or q % 2 == 0:
        raise DomainError("factorization holds only for odd q")
    with mp.workprec(prec + GUARD):
        z = mpmath.mpmathify(z)
        lhs = mpmath.exp(ell_r(q * r, z, prec))
        rhs = mpmath.mpf(1)
        for k in range(q):
            chi = mpmath.expjpi(mpmath.mpf(2 * k) / (q * r))
            rhs *= mpmath.exp(ell_r(r, chi * z, prec))
        return abs(lhs - rhs)


__all__ = ["ell_r", "gamma_yr", "RootSystem", "roots_G", "zero_set_sample",
           "weierstrass_product_check", "weierstrass3_check"]
