"""Exact coefficient rings.

Besides plain :class:`fractions.Fraction` the series code accepts

* :class:`MPoly` - polynomials in named formal parameters over Q, optionally
  truncated at a total degree (``t`` with order <= K is ``MPoly`` with
  ``max_degree=K``),
* :class:`Cyclotomic` - elements of Q(zeta_n) written in the power basis
  ``1, zeta, ..., zeta^(phi(n)-1)``.

Both behave like numbers: ``+ - *``, division by rationals, ``==`` and
truthiness (nonzero test) are exact.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Rational


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError("not an exact rational: %r" % (x,))


def is_zero(c) -> bool:
    return not c


def format_coeff(c) -> str:
    if isinstance(c, (int, Fraction)):
        c = Fraction(c)
        return str(c.numerator) if c.denominator == 1 else "%d/%d" % (c.numerator, c.denominator)
    return str(c)


class MPoly:
    """Polynomial in formal parameters with exact rational coefficients.

    ``terms`` maps exponent tuples (aligned with ``variables``) to Fractions.
    When ``max_degree`` is set, monomials of larger total degree are dropped
    after every operation (the ring Q[t]/(t^(K+1)) for a single variable).
    """

    __slots__ = ("variables", "terms", "max_degree")

    def __init__(self, variables=("t",), terms=None, max_degree=None):
        self.variables = tuple(variables)
        self.max_degree = max_degree
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != len(self.variables):
                raise ValueError("exponent %r does not match variables %r" % (e, self.variables))
            if max_degree is not None and sum(e) > max_degree:
                continue
            c = to_fraction(c)
            if c:
                clean[e] = clean.get(e, 0) + c
                if not clean[e]:
                    del clean[e]
        self.terms = clean

    # -- construction ----------------------------------------------------------
    @classmethod
    def gen(cls, name, variables=None, max_degree=None):
        variables = tuple(variables or (name,))
        e = tuple(1 if v == name else 0 for v in variables)
        return cls(variables, {e: 1}, max_degree)

    @classmethod
    def gens(cls, *names, max_degree=None):
        return tuple(cls.gen(n, names, max_degree) for n in names)

    def _const(self, c):
        return MPoly(self.variables, {(0,) * len(self.variables): c}, self.max_degree)

    def _coerce(self, other):
        if isinstance(other, MPoly):
            if other.variables != self.variables:
                raise ValueError("variable mismatch: %r vs %r" % (self.variables, other.variables))
            return other
        if isinstance(other, (int, Fraction)):
            return self._const(other)
        return NotImplemented

    def _cap(self, other):
        caps = [d for d in (self.max_degree, getattr(other, "max_degree", None)) if d is not None]
        return min(caps) if caps else None

    # -- arithmetic -------------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        t = dict(self.terms)
        for e, c in o.terms.items():
            t[e] = t.get(e, 0) + c
        return MPoly(self.variables, t, self._cap(o))

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.variables, {e: -c for e, c in self.terms.items()}, self.max_degree)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return MPoly(self.variables, {e: c * other for e, c in self.terms.items()}, self.max_degree)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        cap = self._cap(o)
        t = {}
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            for e2, c2 in o.terms.items():
                if cap is not None and d1 + sum(e2) > cap:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return MPoly(self.variables, t, cap)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        return NotImplemented

    def __pow__(self, n: int):
        out = self._const(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self._const(other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # -- inspection ---------------------------------------------------------------
    def coeff(self, *exps) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def constant(self) -> Fraction:
        return self.terms.get((0,) * len(self.variables), Fraction(0))

    def evaluate(self, **values):
        out = 0
        for e, c in self.terms.items():
            term = c
            for v, k in zip(self.variables, e):
                term = term * values[v] ** k
            out = out + term
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda e: (sum(e), e)):
            mono = "*".join(v if k == 1 else "%s^%d" % (v, k) for v, k in zip(self.variables, e) if k)
            c = self.terms[e]
            if not mono:
                parts.append(format_coeff(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append("%s*%s" % (format_coeff(c), mono))
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__


# -- cyclotomic numbers -------------------------------------------------------------

def _poly_divmod(a, b):
    """Integer-coefficient polynomial division, lists from low to high degree; b monic."""
    a = list(a)
    q = [0] * max(len(a) - len(b) + 1, 1)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1]
        q[i] = c
        if c:
            for j, bj in enumerate(b):
                a[i + j] -= c * bj
    r = a[:len(b) - 1]
    return q, r


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple:
    """Coefficients (low to high) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("n must be positive")
    num = [-1] + [0] * (n - 1) + [1]  # z^n - 1
    for d in range(1, n):
        if n % d == 0:
            q, r = _poly_divmod(num, list(cyclotomic_polynomial(d)))
            assert not any(r)
            num = q
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return tuple(num)


class Cyclotomic:
    """Element of Q(zeta_n), zeta_n = exp(2 i pi / n)."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs=()):
        self.n = n
        phi = cyclotomic_polynomial(n)
        deg = len(phi) - 1
        c = [to_fraction(x) for x in coeffs]
        # reduce modulo the cyclotomic polynomial (monic)
        for i in range(len(c) - 1, deg - 1, -1):
            lead = c[i]
            if lead:
                for j, pj in enumerate(phi):
                    c[i - deg + j] -= lead * pj
        c = (c + [Fraction(0)] * deg)[:deg]
        self.coeffs = tuple(c)

    @classmethod
    def root(cls, n: int, k: int = 1) -> "Cyclotomic":
        """zeta_n^k."""
        k %= n
        return cls(n, [0] * k + [1])

    @classmethod
    def rational(cls, n: int, q) -> "Cyclotomic":
        return cls(n, [q])

    def _coerce(self, other):
        if isinstance(other, Cyclotomic):
            if other.n != self.n:
                raise ValueError("cyclotomic fields differ: %d vs %d" % (self.n, other.n))
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.n, [other])
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Cyclotomic(self.n, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.n, [-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.n, [a * other for a in self.coeffs])
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        prod = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs))
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    prod[i + j] += a * b
        return Cyclotomic(self.n, prod)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        return NotImplemented

    def __pow__(self, k: int):
        out = Cyclotomic(self.n, [1])
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyclotomic(self.n, [other])
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.n, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def __complex__(self):
        import cmath
        z = cmath.exp(2j * cmath.pi / self.n)
        return complex(sum(float(c) * z ** i for i, c in enumerate(self.coeffs)))

    def to_mpc(self):
        import mpmath
        z = mpmath.expjpi(mpmath.mpf(2) / self.n)
        return mpmath.fsum(mpmath.mpf(c.numerator) / c.denominator * z ** i
                           for i, c in enumerate(self.coeffs))

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else ("z%d" % self.n if i == 1 else "z%d^%d" % (self.n, i))
            if not mono:
                terms.append(format_coeff(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append("%s*%s" % (format_coeff(c), mono))
        return " + ".join(terms) if terms else "0"

    __repr__ = __str__
