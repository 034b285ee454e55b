"""Noncommutative polynomials and weight-truncated series.

An :class:`NcPoly` is a finite map word -> coefficient over one alphabet.  A
:class:`TruncSeries` is the same object carrying a weight bound ``W``; every
product involving a truncated operand drops the terms of weight > W.

Coefficients may be ints/Fractions, :class:`~polyzeta.coeffs.MPoly` or
:class:`~polyzeta.coeffs.Cyclotomic`; the algorithms only use ring
operations and division by integers.
"""
from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .coeffs import format_coeff, to_fraction
from .words import X, Y, Word, WordError, is_lyndon, lyndon_factorize, parse_word, weight_of


class AlgebraError(ValueError):
    pass


class NcPoly:
    __slots__ = ("alphabet", "terms")

    max_weight = None

    def __init__(self, alphabet: str, terms=None):
        if alphabet not in (X, Y):
            raise AlgebraError("unknown alphabet %r" % (alphabet,))
        self.alphabet = alphabet
        self.terms = {}
        for w, c in (dict(terms) if terms else {}).items():
            key = self._key(w)
            self._acc(key, c)

    def _key(self, w):
        if isinstance(w, Word):
            if w.alphabet != self.alphabet:
                raise AlgebraError("alphabet mismatch: %s word in %s polynomial" % (w.alphabet, self.alphabet))
            return w.letters
        if isinstance(w, str):
            return parse_word(w, self.alphabet).letters
        return Word(self.alphabet, tuple(w)).letters

    def _acc(self, key, c):
        if not c:
            return
        if self.max_weight is not None and weight_of(self.alphabet, key) > self.max_weight:
            return
        new = self.terms.get(key, 0) + c
        if new:
            self.terms[key] = new
        else:
            self.terms.pop(key, None)

    def _empty_like(self, other=None):
        W = _meet(self, other)
        if W is None:
            return NcPoly(self.alphabet)
        return TruncSeries(self.alphabet, W)

    # -- constructors -----------------------------------------------------------
    @classmethod
    def word(cls, w: Word, c=1):
        return cls(w.alphabet, {w: c})

    @classmethod
    def one(cls, alphabet, c=1):
        return cls(alphabet, {(): c})

    @classmethod
    def letter(cls, alphabet, index, c=1):
        return cls(alphabet, {(index,): c})

    # -- inspection ---------------------------------------------------------------
    def coeff(self, w):
        return self.terms.get(self._key(w), 0)

    __getitem__ = coeff

    def constant_term(self):
        return self.terms.get((), 0)

    def items(self):
        for key in sorted(self.terms, key=lambda k: (weight_of(self.alphabet, k), k)):
            yield Word(self.alphabet, key), self.terms[key]

    def words(self):
        return [w for w, _ in self.items()]

    def weight(self) -> int:
        """Largest weight in the support (-1 for zero)."""
        return max((weight_of(self.alphabet, k) for k in self.terms), default=-1)

    def valuation(self) -> int:
        return min((weight_of(self.alphabet, k) for k in self.terms), default=-1)

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, NcPoly):
            return self.alphabet == other.alphabet and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == ({(): other} if other else {})
        return NotImplemented

    def __hash__(self):
        return hash((self.alphabet, frozenset(self.terms.items())))

    def homogeneous(self, wt: int) -> "NcPoly":
        return NcPoly(self.alphabet, {k: c for k, c in self.terms.items()
                                      if weight_of(self.alphabet, k) == wt})

    def truncate(self, W: int) -> "TruncSeries":
        return TruncSeries(self.alphabet, W, self.terms)

    def map_coeffs(self, f) -> "NcPoly":
        out = self._empty_like()
        for k, c in self.terms.items():
            out._acc(k, f(c))
        return out

    # -- linear structure ---------------------------------------------------------
    def _check(self, other):
        if not isinstance(other, NcPoly):
            raise AlgebraError("expected a polynomial, got %r" % (other,))
        if other.alphabet != self.alphabet:
            raise AlgebraError("alphabet mismatch: %s vs %s" % (self.alphabet, other.alphabet))

    def __add__(self, other):
        if not isinstance(other, NcPoly):
            if other == 0:
                return self.copy()
            other = NcPoly.one(self.alphabet, other)
        self._check(other)
        out = self._empty_like(other)
        for k, c in self.terms.items():
            out._acc(k, c)
        for k, c in other.terms.items():
            out._acc(k, c)
        return out

    __radd__ = __add__

    def __neg__(self):
        return self.map_coeffs(lambda c: -c)

    def __sub__(self, other):
        if not isinstance(other, NcPoly):
            other = NcPoly.one(self.alphabet, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "NcPoly":
        return self.map_coeffs(lambda x: x * c)

    def __mul__(self, other):
        if isinstance(other, NcPoly):
            return conc_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, d):
        return self.map_coeffs(lambda x: x / d)

    def copy(self):
        out = self._empty_like()
        out.terms = dict(self.terms)
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.items():
            cs = format_coeff(c)
            if w.is_unit():
                parts.append(cs)
            elif cs == "1":
                parts.append(str(w))
            elif isinstance(c, (int, Fraction)):
                parts.append("%s*%s" % (cs, w))
            else:
                parts.append("(%s)*%s" % (cs, w))
        return " + ".join(parts)

    def __repr__(self):
        return "NcPoly(%s)" % self

    # -- serialization ------------------------------------------------------------
    def to_pairs(self) -> list:
        """``[(word text, "p/q"), ...]`` in graded lexicographic order."""
        out = []
        for w, c in self.items():
            if not isinstance(c, (int, Fraction)):
                raise AlgebraError("only rational coefficients serialize, got %r" % (c,))
            out.append((str(w), format_coeff(c)))
        return out

    def to_json(self) -> str:
        return json.dumps({"alphabet": self.alphabet, "terms": self.to_pairs()})

    @classmethod
    def from_pairs(cls, alphabet: str, pairs) -> "NcPoly":
        out = cls(alphabet)
        for w, c in pairs:
            out._acc(parse_word(w, alphabet).letters, to_fraction(c))
        return out

    @classmethod
    def from_json(cls, text: str) -> "NcPoly":
        d = json.loads(text)
        return cls.from_pairs(d["alphabet"], d["terms"])


class TruncSeries(NcPoly):
    """An NcPoly with every term of weight <= ``max_weight``."""

    __slots__ = ("max_weight",)

    def __init__(self, alphabet: str, max_weight: int, terms=None):
        if max_weight < 0:
            raise AlgebraError("truncation weight must be >= 0")
        self.max_weight = max_weight
        super().__init__(alphabet, terms)

    def __eq__(self, other):
        if isinstance(other, TruncSeries) and other.max_weight != self.max_weight:
            W = min(self.max_weight, other.max_weight)
            return self.truncate(W).terms == other.truncate(W).terms
        return super().__eq__(other)

    __hash__ = NcPoly.__hash__

    def __repr__(self):
        return "TruncSeries(W=%d, %s)" % (self.max_weight, self)


def _meet(p, q=None):
    caps = [x.max_weight for x in (p, q) if x is not None and x.max_weight is not None]
    return min(caps) if caps else None


def parse_poly(text: str, alphabet: str | None = None) -> NcPoly:
    """Parse ``"x0 x1 + 2*x1 x0 - 1/2*x1"``; coefficients are rationals."""
    pieces = [t.strip() for t in text.replace("-", "+-").split("+")]
    pieces = [t for t in pieces if t]
    if not pieces:
        raise AlgebraError("empty polynomial text")
    found = alphabet
    terms = []
    for body in pieces:
        sign = 1
        if body.startswith("-"):
            sign, body = -1, body[1:].strip()
        if "*" in body:
            cs, ws = body.split("*", 1)
        elif body and (body[0].isdigit()) and body != "1":
            cs, ws = body, "1"
        else:
            cs, ws = "1", body
        try:
            c = sign * to_fraction(cs)
        except (ValueError, ZeroDivisionError):
            raise AlgebraError("bad coefficient %r in %r" % (cs, text)) from None
        ws = ws.strip()
        if ws in ("", "1"):
            terms.append(((), c))
            continue
        try:
            w = parse_word(ws, found)
        except WordError as e:
            raise AlgebraError(str(e)) from None
        found = w.alphabet
        terms.append((w.letters, c))
    if found is None:
        raise AlgebraError("cannot infer alphabet of %r" % (text,))
    out = NcPoly(found)
    for k, c in terms:
        out._acc(k, c)
    return out


# -- products ------------------------------------------------------------------------

def conc_mul(p: NcPoly, q: NcPoly) -> NcPoly:
    """Bilinear extension of concatenation."""
    p._check(q)
    out = p._empty_like(q)
    W = out.max_weight
    alpha = p.alphabet
    for k1, c1 in p.terms.items():
        w1 = weight_of(alpha, k1)
        for k2, c2 in q.terms.items():
            if W is not None and w1 + weight_of(alpha, k2) > W:
                continue
            out._acc(k1 + k2, c1 * c2)
    return out


@lru_cache(maxsize=200_000)
def shuffle_words(u: tuple, v: tuple) -> tuple:
    """Shuffle of two words as a tuple of (word, multiplicity) pairs."""
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    acc = {}
    a, b = u[0], v[0]
    for w, m in shuffle_words(u[1:], v):
        key = (a,) + w
        acc[key] = acc.get(key, 0) + m
    for w, m in shuffle_words(u, v[1:]):
        key = (b,) + w
        acc[key] = acc.get(key, 0) + m
    return tuple(acc.items())


@lru_cache(maxsize=200_000)
def stuffle_words(u: tuple, v: tuple) -> tuple:
    """Quasi-shuffle over Y with y_i <> y_j = y_{i+j}."""
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    acc = {}
    a, b = u[0], v[0]
    for w, m in stuffle_words(u[1:], v):
        key = (a,) + w
        acc[key] = acc.get(key, 0) + m
    for w, m in stuffle_words(u, v[1:]):
        key = (b,) + w
        acc[key] = acc.get(key, 0) + m
    for w, m in stuffle_words(u[1:], v[1:]):
        key = (a + b,) + w
        acc[key] = acc.get(key, 0) + m
    return tuple(acc.items())


def _bilinear(p: NcPoly, q: NcPoly, word_product) -> NcPoly:
    p._check(q)
    out = p._empty_like(q)
    W = out.max_weight
    alpha = p.alphabet
    for k1, c1 in p.terms.items():
        w1 = weight_of(alpha, k1)
        for k2, c2 in q.terms.items():
            if W is not None and w1 + weight_of(alpha, k2) > W:
                continue
            c = c1 * c2
            for k, m in word_product(k1, k2):
                out._acc(k, c * m)
    return out


def shuffle(p: NcPoly, q: NcPoly) -> NcPoly:
    return _bilinear(p, q, shuffle_words)


def stuffle(p: NcPoly, q: NcPoly) -> NcPoly:
    if p.alphabet != Y or q.alphabet != Y:
        raise AlgebraError("stuffle is defined over Y only")
    return _bilinear(p, q, stuffle_words)


PRODUCTS = {"conc": conc_mul, "shuffle": shuffle, "stuffle": stuffle}


def _product(name):
    try:
        return PRODUCTS[name]
    except KeyError:
        raise AlgebraError("unknown product %r" % (name,)) from None


def power(p: NcPoly, n: int, product: str = "conc") -> NcPoly:
    mul = _product(product)
    out = p._empty_like()
    out._acc((), 1)
    for _ in range(n):
        out = mul(out, p)
    return out


def star_trunc(s: NcPoly, W: int | None = None, product: str = "conc") -> TruncSeries:
    """Truncation at weight W of s* = 1 + s + s^2 + ... (s proper)."""
    if s.constant_term():
        raise AlgebraError("star of improper series")
    if W is None:
        W = s.max_weight
        if W is None:
            raise AlgebraError("a truncation weight is needed for the star of a polynomial")
    mul = _product(product)
    s = s.truncate(W)
    out = TruncSeries(s.alphabet, W, {(): 1})
    if not s:
        return out
    term = TruncSeries(s.alphabet, W, {(): 1})
    v = s.valuation()
    for _ in range(W // max(v, 1)):
        term = mul(term, s)
        if not term:
            break
        out = out + term
    return out


def exp_stuffle(s: NcPoly, W: int | None = None) -> TruncSeries:
    """Truncated exponential for the stuffle product (constant term must be 0)."""
    if s.alphabet != Y:
        raise AlgebraError("exp_stuffle is defined over Y only")
    if s.constant_term():
        raise AlgebraError("exp_stuffle needs a series without constant term")
    W = s.max_weight if W is None else W
    s = s.truncate(W)
    out = TruncSeries(Y, W, {(): 1})
    term = TruncSeries(Y, W, {(): 1})
    for m in range(1, W + 1):
        term = stuffle(term, s) / m
        if not term:
            break
        out = out + term
    return out


def log_stuffle(g: NcPoly, W: int | None = None) -> TruncSeries:
    """Truncated logarithm for the stuffle product (constant term must be 1)."""
    if g.alphabet != Y:
        raise AlgebraError("log_stuffle is defined over Y only")
    if g.constant_term() != 1:
        raise AlgebraError("log_stuffle needs constant term 1")
    W = g.max_weight if W is None else W
    h = g.truncate(W) - 1
    out = TruncSeries(Y, W)
    term = TruncSeries(Y, W, {(): 1})
    for m in range(1, W + 1):
        term = stuffle(term, h)
        if not term:
            break
        out = out + term * Fraction((-1) ** (m - 1), m)
    return out


# -- Radford / Lyndon decomposition ---------------------------------------------------

def shuffle_monomial(alphabet: str, lyndons) -> NcPoly:
    """Shuffle product of a sequence of Lyndon words (repetitions allowed)."""
    out = NcPoly.one(alphabet)
    for l in lyndons:
        out = shuffle(out, NcPoly.word(l))
    return out


def lyndon_decompose(p: NcPoly) -> dict:
    """Write p as a commutative polynomial in Lyndon words for the shuffle product.

    Returns ``{(l1, ..., lk): c}`` where the key is a non-increasing tuple of
    Lyndon :class:`Word` (a shuffle monomial) and ``c`` its coefficient; the
    empty tuple is the constant.  Uses the triangularity
    ``l1^{sh i1} sh ... sh lk^{sh ik} = i1!...ik! w + (smaller words)``.
    """
    rest = p.copy() if p.max_weight is None else NcPoly(p.alphabet, p.terms)
    out = {}
    while rest:
        key = max(rest.terms)
        c = rest.terms[key]
        if not key:
            out[()] = out.get((), 0) + c
            rest.terms.pop(())
            continue
        w = Word(p.alphabet, key)
        factors = tuple(lyndon_factorize(w))
        mult = 1
        run = 1
        for i in range(1, len(factors) + 1):
            if i < len(factors) and factors[i] == factors[i - 1]:
                run += 1
            else:
                mult *= factorial(run)
                run = 1
        coef = _div(c, mult)
        out[factors] = out.get(factors, 0) + coef
        rest = rest - shuffle_monomial(p.alphabet, factors) * coef
    return {k: v for k, v in out.items() if v}


def _div(c, m):
    if isinstance(c, int):
        return Fraction(c, m)
    return c / m


def lyndon_recompose(alphabet: str, decomposition: dict) -> NcPoly:
    """Evaluate a Lyndon-word shuffle polynomial back to an NcPoly."""
    out = NcPoly(alphabet)
    for factors, c in decomposition.items():
        out = out + shuffle_monomial(alphabet, factors) * c
    return out


def format_decomposition(dec: dict) -> str:
    parts = []
    for factors, c in sorted(dec.items(), key=lambda kv: [f.letters for f in kv[0]]):
        mono = " sh ".join("[%s]" % f for f in factors) or "1"
        parts.append("%s*%s" % (format_coeff(c), mono))
    return " + ".join(parts) if parts else "0"


__all__ = [
    "AlgebraError", "NcPoly", "TruncSeries", "parse_poly", "conc_mul", "shuffle", "stuffle",
    "shuffle_words", "stuffle_words", "power", "star_trunc", "exp_stuffle", "log_stuffle",
    "lyndon_decompose", "lyndon_recompose", "shuffle_monomial", "is_lyndon",
]
