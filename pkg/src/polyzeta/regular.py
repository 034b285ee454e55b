"""Regularization of divergent polyzetas through star combinations.

A star atom is a conc-character ``(sum_x c_x x)^*``.  Over X it is
``(a x0 + b x1)^*`` and shuffle products of atoms add coefficients; over Y it is
``(sum_s c_s y_s)^*`` and stuffle products multiply the polynomials
``1 + sum_s c_s u^s``.  A :class:`StarCombo` is a finite linear combination of atoms.

The characters:

* zeta_sh sends every X atom to 1 (and convergent words to their MZV),
* gamma sends ``(t y1)^*`` to ``1/Gamma(1+t)`` and ``(t^r y_r)^*`` to ``exp(ell_r(t))``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial, gcd
from typing import NamedTuple

import mpmath
from mpmath import mp

from .coeffs import format_coeff, to_fraction
from .ncalg import NcPoly, TruncSeries, star_trunc
from .ratseries import conc_character
from .special import (DEFAULT_PREC, DomainError, Value, ell_r, harmonic_sum, mzv, stirling2,
                      zeta_int)
from .special.zeta import GUARD
from .words import X, Y, Composition, Word, as_composition, compositions, pi_Y


class RegularizationError(ValueError):
    pass


# -- star atoms and combinations ---------------------------------------------------------

def _norm_coeffs(mapping) -> tuple:
    return tuple(sorted((int(k), c) for k, c in mapping.items() if c))


@dataclass(frozen=True)
class StarAtom:
    """(sum_i c_i letter_i)^*; the empty atom is the unit 1."""

    alphabet: str
    coeffs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _norm_coeffs(dict(self.coeffs)))
        for k, _ in self.coeffs:
            Word(self.alphabet, (k,))

    @classmethod
    def unit(cls, alphabet: str) -> "StarAtom":
        return cls(alphabet, ())

    @classmethod
    def x(cls, i: int, t) -> "StarAtom":
        """(t x_i)^*"""
        return cls(X, ((i, t),))

    @classmethod
    def xy(cls, a, b) -> "StarAtom":
        """(a x0 + b x1)^* = (a x0)^* sh (b x1)^*"""
        return cls(X, ((0, a), (1, b)))

    @classmethod
    def y(cls, r: int, t) -> "StarAtom":
        """(t^r y_r)^*"""
        return cls(Y, ((r, t ** r),))

    def is_unit(self) -> bool:
        return not self.coeffs

    def as_dict(self) -> dict:
        return dict(self.coeffs)

    def product(self, other: "StarAtom") -> "StarAtom":
        """Shuffle product over X, stuffle product over Y."""
        if other.alphabet != self.alphabet:
            raise RegularizationError("alphabet mismatch")
        a, b = self.as_dict(), other.as_dict()
        if self.alphabet == X:
            return StarAtom(X, {k: a.get(k, 0) + b.get(k, 0) for k in set(a) | set(b)}.items())
        out = dict(a)
        for k, c in b.items():
            out[k] = out.get(k, 0) + c
        for i, c in a.items():
            for j, d in b.items():
                out[i + j] = out.get(i + j, 0) + c * d
        return StarAtom(Y, out.items())

    def polynomial(self) -> NcPoly:
        return NcPoly(self.alphabet, {(k,): c for k, c in self.coeffs})

    def to_series(self, W: int) -> TruncSeries:
        return star_trunc(TruncSeries(self.alphabet, W, self.polynomial().terms), W)

    def to_rep(self):
        return conc_character(self.alphabet, self.as_dict())

    def __str__(self):
        if not self.coeffs:
            return "1"
        pre = "x" if self.alphabet == X else "y"
        parts = []
        for k, c in self.coeffs:
            parts.append(("%s%d" if c == 1 else "%s*%s%d") % ((pre, k) if c == 1 else (format_coeff(c), pre, k)))
        return "(" + " + ".join(parts) + ")*"

    __repr__ = __str__


class StarCombo:
    """Finite linear combination of star atoms over one alphabet."""

    def __init__(self, alphabet: str, terms=None):
        self.alphabet = alphabet
        self.terms = {}
        for atom, c in (terms or {}).items():
            self._acc(atom, c)

    def _acc(self, atom, c):
        if atom.alphabet != self.alphabet:
            raise RegularizationError("alphabet mismatch")
        v = self.terms.get(atom, 0) + c
        if v:
            self.terms[atom] = v
        else:
            self.terms.pop(atom, None)

    @classmethod
    def atom(cls, atom: StarAtom, c=1) -> "StarCombo":
        return cls(atom.alphabet, {atom: c})

    @classmethod
    def one(cls, alphabet: str) -> "StarCombo":
        return cls.atom(StarAtom.unit(alphabet))

    @classmethod
    def from_x1_coeffs(cls, coeffs, alphabet: str = X) -> "StarCombo":
        """sum_k coeffs[k] (k x1)^* (or (k y1)^* over Y); index 0 is the constant 1."""
        out = cls(alphabet)
        letter = 1
        for k, c in enumerate(coeffs):
            out._acc(StarAtom(alphabet, ((letter, k),)), c)
        return out

    def x1_coeffs(self) -> list:
        """Inverse of :meth:`from_x1_coeffs`; fails on other atoms."""
        out = {}
        for atom, c in self.terms.items():
            d = atom.as_dict()
            if set(d) - {1}:
                raise RegularizationError("not a combination of (k x1)* atoms: %s" % atom)
            k = d.get(1, 0)
            if Fraction(k).denominator != 1 or k < 0:
                raise RegularizationError("non-integer scale in %s" % atom)
            out[int(k)] = c
        n = max(out, default=-1) + 1
        return [out.get(k, 0) for k in range(n)]

    def __add__(self, other):
        out = StarCombo(self.alphabet, self.terms)
        for a, c in other.terms.items():
            out._acc(a, c)
        return out

    def __neg__(self):
        return StarCombo(self.alphabet, {a: -c for a, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "StarCombo":
        return StarCombo(self.alphabet, {a: c * v for a, v in self.terms.items()})

    def __mul__(self, other):
        """Shuffle (X) or stuffle (Y) product, or scaling by a number."""
        if not isinstance(other, StarCombo):
            return self.scale(other)
        out = StarCombo(self.alphabet)
        for a, c in self.terms.items():
            for b, d in other.terms.items():
                out._acc(a.product(b), c * d)
        return out

    __rmul__ = scale

    def power(self, n: int) -> "StarCombo":
        out = StarCombo.one(self.alphabet)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        return isinstance(other, StarCombo) and self.alphabet == other.alphabet and self.terms == other.terms

    def constant_term(self):
        """Constant term of the series (every star contributes 1)."""
        return sum(self.terms.values(), 0)

    def to_series(self, W: int) -> TruncSeries:
        out = TruncSeries(self.alphabet, W)
        for a, c in self.terms.items():
            out = out + a.to_series(W) * c
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        items = sorted(self.terms.items(), key=lambda kv: (len(kv[0].coeffs), [str(v) for v in kv[0].coeffs]))
        return " + ".join("%s%s" % ("" if c == 1 else format_coeff(c) + "*", a) for a, c in items)

    __repr__ = __str__


# -- asymptotic scale {eps^a log^b eps} -----------------------------------------------------

class ScaleExpansion:
    """Finite sum of c_{a,b} eps^a log^b(eps); eps = 1 - z (or 1/n)."""

    def __init__(self, terms=None):
        self.terms = {}
        for k, c in (terms or {}).items():
            if c:
                self.terms[(int(k[0]), int(k[1]))] = self.terms.get(k, 0) + c

    def __add__(self, other):
        t = dict(self.terms)
        for k, c in other.terms.items():
            t[k] = t.get(k, 0) + c
        return ScaleExpansion({k: c for k, c in t.items() if c})

    def __mul__(self, other):
        if not isinstance(other, ScaleExpansion):
            return ScaleExpansion({k: c * other for k, c in self.terms.items()})
        t = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                k = (a1 + a2, b1 + b2)
                t[k] = t.get(k, 0) + c1 * c2
        return ScaleExpansion({k: c for k, c in t.items() if c})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, ScaleExpansion) and self.terms == other.terms

    def finite_part(self):
        return self.terms.get((0, 0), 0)

    def __str__(self):
        return " + ".join("%s*e^%d*log^%d" % (format_coeff(c), a, b)
                          for (a, b), c in sorted(self.terms.items())) or "0"


def finite_part(e: ScaleExpansion):
    return e.finite_part()


def _gbinom(a, j: int):
    """Generalized binomial C(a, j) for rational a."""
    out = Fraction(1)
    for i in range(j):
        out = out * (Fraction(a) - i) / (i + 1)
    return out


def atom_scale_expansion(atom: StarAtom, order: int = 0) -> ScaleExpansion:
    """Li_{(a x0 + b x1)^*} = z^a (1-z)^-b = eps^-b (1-eps)^a, kept up to eps^order."""
    if atom.alphabet != X:
        raise RegularizationError("scale expansions of Li are over X")
    d = atom.as_dict()
    a, b = to_fraction(d.get(0, 0)), to_fraction(d.get(1, 0))
    if b.denominator != 1:
        raise RegularizationError("non-integer power of (1-z) in %s" % atom)
    b = int(b)
    terms = {}
    for j in range(0, order + b + 1):
        terms[(j - b, 0)] = _gbinom(a, j) * (-1) ** j
    return ScaleExpansion(terms)


def x1_power_expansion(k: int) -> ScaleExpansion:
    """Li_{x1^k} = (-log eps)^k / k!."""
    return ScaleExpansion({(0, k): Fraction((-1) ** k, factorial(k))})


def combo_scale_expansion(c: StarCombo, order: int = 0) -> ScaleExpansion:
    out = ScaleExpansion()
    for atom, v in c.terms.items():
        out = out + atom_scale_expansion(atom, order) * v
    return out


# -- negative indices ---------------------------------------------------------------------

def _check_negative(idx) -> Composition:
    c = as_composition(idx)
    if any(p >= 0 for p in c.parts):
        raise RegularizationError("negative index expected, got %s" % c)
    return c


def negindex_poly_values(idx, n_max: int) -> list:
    """[P(0), ..., P(n_max)] with Li_s(z) = sum_n P(n) z^n, P(n) = n^|s_1| H_{s_2..}(n-1)."""
    c = _check_negative(idx)
    s = c.parts
    out = [Fraction(0)]
    for n in range(1, n_max + 1):
        inner = harmonic_sum(s[1:], n - 1) if len(s) > 1 else Fraction(1)
        out.append(Fraction(n) ** (-s[0]) * inner)
    return out


def _solve(A, b):
    """Exact Gauss-Jordan on a square nonsingular system."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(A, b)]
    for col in range(n):
        piv = next(r for r in range(col, n) if M[r][col])
        M[col], M[piv] = M[piv], M[col]
        inv = 1 / M[col][col]
        M[col] = [x * inv for x in M[col]]
        for r in range(n):
            if r != col and M[r][col]:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return [M[r][n] for r in range(n)]


def negindex_to_starcombo(idx, alphabet: str = X) -> StarCombo:
    """The unique sum_k c_k (k x1)^* with Li_s(z) = sum_k c_k (1-z)^-k.

    P has degree D = |s| + depth - 1; c_1..c_(D+1) solve P(n) = sum_k c_k C(n+k-1, k-1)
    on n = 1..D+1, and c_0 = -sum c_k makes the constant terms agree.
    Over Y the same coefficients express H_s through the atoms (k y1)^*.
    """
    c = _check_negative(idx)
    D = c.weight + c.depth - 1
    P = negindex_poly_values(c, D + 1)
    A = [[comb(n + k - 1, k - 1) for k in range(1, D + 2)] for n in range(1, D + 2)]
    sol = _solve(A, P[1:])
    coeffs = [-sum(sol)] + sol
    while len(coeffs) > 1 and not coeffs[-1]:
        coeffs.pop()
    return StarCombo.from_x1_coeffs(coeffs, alphabet)


def starcombo_taylor(c: StarCombo, n_max: int) -> list:
    """Taylor coefficients of Li_c(z) for c a combination of (k x1)^* atoms."""
    coeffs = c.x1_coeffs()
    out = []
    for n in range(n_max + 1):
        v = Fraction(0)
        for k, ck in enumerate(coeffs):
            if k == 0:
                v += ck if n == 0 else 0
            else:
                v += ck * comb(n + k - 1, k - 1)
        out.append(v)
    return out


def stirling_starcombo(idx) -> StarCombo:
    """Literal evaluation of the closed Stirling-number formula for R_{y_s1...y_sr}.

    rho_0 = x1* - 1, rho_k = x1* sh sum_j S2(k, j) j! (x1* - 1)^{sh j}, and
    R = sum prod_i C(U_i, k_i) rho_k1 sh ... sh rho_kr over 0 <= k_i <= U_i with
    U_i = (s_1 + ... + s_i) - (k_1 + ... + k_(i-1)).
    Kept to document that it does not match :func:`negindex_to_starcombo`.
    """
    c = _check_negative(idx)
    s = [-p for p in c.parts]
    x1s = StarCombo.atom(StarAtom.x(1, 1))
    one = StarCombo.one(X)
    base = x1s - one

    def rho(k):
        if k == 0:
            return base
        acc = StarCombo(X)
        for j in range(1, k + 1):
            acc = acc + base.power(j).scale(stirling2(k, j) * factorial(j))
        return x1s * acc

    total = StarCombo(X)

    def rec(i, partial_s, partial_k, coeff, prod):
        nonlocal total
        if i == len(s):
            total = total + prod.scale(coeff)
            return
        U = partial_s + s[i] - partial_k
        for k in range(0, U + 1):
            rec(i + 1, partial_s + s[i], partial_k + k, coeff * comb(U, k), prod * rho(k))

    rec(0, 0, 0, 1, one)
    return total


# -- characters ------------------------------------------------------------------------------

def zeta_shuffle_char(c: StarCombo | None = None, poly: NcPoly | None = None, err=1e-10,
                      prec: int = DEFAULT_PREC):
    """zeta_sh: star atoms -> 1, convergent words -> MZV, constants -> themselves."""
    total = Fraction(0)
    if c is not None:
        if c.alphabet != X:
            raise RegularizationError("zeta_shuffle_char works over X")
        total = c.constant_term()
    if poly is None or not poly.terms:
        return total
    numeric = mpmath.mpf(0)
    with mp.workprec(prec + GUARD):
        for key, v in poly.terms.items():
            if not key:
                total += v
                continue
            if key[0] != 0 or key[-1] != 1:
                raise RegularizationError("divergent word %s outside star form" % Word(X, key))
            numeric += mzv(pi_Y(Word(X, key)), err, prec).value * v
        return numeric + mpmath.mpf(total.numerator) / total.denominator


def _as_mp(c):
    if isinstance(c, (int, Fraction)):
        c = Fraction(c)
        return mpmath.mpf(c.numerator) / c.denominator
    if hasattr(c, "to_mpc"):
        return c.to_mpc()
    return mpmath.mpmathify(c)


def _rgamma1(alpha, prec):
    """1/Gamma(1 + alpha): exp(ell_1(alpha)) inside the unit disc, exact at integers."""
    a = _as_mp(alpha)
    near = mpmath.nint(mpmath.re(a))
    if abs(a - near) < mpmath.mpf(2) ** (-(prec // 2)):
        k = int(near)
        return mpmath.mpf(0) if k < 0 else 1 / mpmath.factorial(k)
    if abs(a) >= 1:
        raise RegularizationError("atom with |t| >= 1 and non-integer t")
    return mpmath.exp(ell_r(1, a, prec))


def _pdivmod(a, b):
    """Polynomial division over Q, coefficient lists from low to high degree."""
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] / b[-1]
        q[i] = c
        for j, bj in enumerate(b):
            a[i + j] -= c * bj
    r = a[:len(b) - 1] or [Fraction(0)]
    while len(r) > 1 and not r[-1]:
        r.pop()
    return q, r


def _pgcd(a, b):
    while any(b):
        _, r = _pdivmod(a, b)
        a, b = b, r
    return [c / a[-1] for c in a]


def _squarefree(p):
    """Yun's algorithm: [(f_i, i)] with p = lc * prod f_i^i."""
    dp = [i * c for i, c in enumerate(p)][1:] or [Fraction(0)]
    a = _pgcd(p, dp)
    b, _ = _pdivmod(p, a)
    c, _ = _pdivmod(dp, a)
    out = []
    i = 1
    while len(b) > 1:
        db = [j * x for j, x in enumerate(b)][1:] or [Fraction(0)]
        d = [x - y for x, y in itertools.zip_longest(c, db, fillvalue=Fraction(0))]
        while len(d) > 1 and not d[-1]:
            d.pop()
        g = _pgcd(b, d) if any(d) else [c_ / b[-1] for c_ in b]
        if len(g) > 1:
            out.append((g, i))
        b, _ = _pdivmod(b, g)
        c, _ = _pdivmod(d, g) if any(d) else ([Fraction(0)], None)
        i += 1
    return out


def _roots_with_multiplicity(d: dict, prec: int):
    deg = max(d)
    if all(isinstance(v, (int, Fraction)) for v in d.values()):
        p = [Fraction(1)] + [Fraction(d.get(s, 0)) for s in range(1, deg + 1)]
        out = []
        for f, m in _squarefree(p):
            if len(f) == 2:
                out += [-_as_mp(f[0]) / _as_mp(f[1])] * m
            else:
                out += list(mpmath.polyroots([_as_mp(x) for x in reversed(f)], maxsteps=400,
                                             extraprec=prec)) * m
        return out
    coeffs = [_as_mp(d.get(s, 0)) for s in range(deg, 0, -1)] + [mpmath.mpf(1)]
    return list(mpmath.polyroots(coeffs, maxsteps=800, extraprec=2 * prec))


def gamma_atom_roots(atom: StarAtom, prec: int = DEFAULT_PREC):
    """gamma of (sum c_s y_s)^* through 1 + sum c_s u^s = prod (1 + alpha_i u)."""
    if atom.is_unit():
        return mpmath.mpf(1)
    with mp.workprec(prec + GUARD):
        out = mpmath.mpf(1)
        for u in _roots_with_multiplicity(atom.as_dict(), prec):
            out *= _rgamma1(-1 / u, prec)
        if abs(mpmath.im(out)) < mpmath.mpf(2) ** (-prec) * max(1, abs(out)):
            out = mpmath.re(out)
        return out


def gamma_atom(atom: StarAtom, prec: int = DEFAULT_PREC):
    """(k y1)^* -> 1/k! exactly; (c y_r)^* -> exp(ell_r(t)) with t^r = c; otherwise by roots."""
    if atom.alphabet != Y:
        raise RegularizationError("gamma character works over Y")
    if atom.is_unit():
        return Fraction(1)
    d = atom.as_dict()
    if len(d) == 1:
        (r, c), = d.items()
        if r == 1 and isinstance(c, (int, Fraction)) and Fraction(c).denominator == 1:
            k = int(c)
            return Fraction(0) if k < 0 else Fraction(1, factorial(k))
        with mp.workprec(prec + GUARD):
            cm = _as_mp(c)
            if abs(cm) >= 1:
                if r == 1:
                    return _rgamma1(cm, prec)
                raise RegularizationError("atom with |t| >= 1 and non-integer t")
            t = mpmath.root(cm, r)
            v = mpmath.exp(ell_r(r, t, prec))
            if isinstance(c, (int, Fraction)) or not mpmath.im(v):
                v = mpmath.re(v)
            return v
    return gamma_atom_roots(atom, prec)


def gamma_char(g, prec: int = DEFAULT_PREC):
    """gamma on an atom, a list of atoms (their stuffle product) or a StarCombo over Y."""
    if isinstance(g, StarAtom):
        return gamma_atom(g, prec)
    if isinstance(g, StarCombo):
        if g.alphabet != Y:
            raise RegularizationError("gamma character works over Y")
        total = Fraction(0)
        for atom, c in g.terms.items():
            total = total + c * gamma_atom(atom, prec)
        return total
    out = Fraction(1)
    for atom in g:
        out = out * gamma_atom(atom, prec)
    return out


class Regularized(NamedTuple):
    index: Composition
    combo: StarCombo
    gamma: object
    zeta_shuffle: object
    finite_part: object


def regularize(idx) -> Regularized:
    """Star combination of a negative index with gamma, zeta_sh and the finite-part value."""
    c = _check_negative(idx)
    combo = negindex_to_starcombo(c, X)
    ycombo = negindex_to_starcombo(c, Y)
    return Regularized(c, combo, gamma_char(ycombo), zeta_shuffle_char(combo),
                       finite_part(combo_scale_expansion(combo)))


# -- identity checks ----------------------------------------------------------------------------

_FAMILIES = {"2": (2,), "4": (4,), "31": (3, 1)}


def repeated_mzv_exact(family, k: int):
    """(index, q) with zeta(index) = q pi^weight for the repeated families 2^k, 4^k, (3,1)^k.

    q is 1/(2k+1)!, 2 4^k/(4k+2)! and 2/(4k+2)! respectively.
    """
    key = "".join(str(p) for p in family) if not isinstance(family, str) else family.strip("()").replace(",", "")
    if key not in _FAMILIES:
        raise RegularizationError("unsupported family %r" % (family,))
    if k < 1:
        raise RegularizationError("k must be >= 1")
    idx = Composition(_FAMILIES[key] * k)
    if key == "2":
        q = Fraction(1, factorial(2 * k + 1))
    elif key == "4":
        # zeta({4}^k) = 4^k zeta({3,1}^k); the factor 4^k multiplies (zeta(4) = pi^4/90)
        q = Fraction(2 * 4 ** k, factorial(4 * k + 2))
    else:
        q = Fraction(2, factorial(4 * k + 2))
    return idx, q


class SumFormulaReport(NamedTuple):
    k: int
    reading: str
    zeta_k: object
    by_depth: dict          # depth -> (sum, residual, bound)
    all_depths: tuple       # (sum, residual) for the reading that sums every depth >= 2
    passed: bool


def sum_formula_check(k: int, err=1e-10, prec: int = DEFAULT_PREC) -> SumFormulaReport:
    """zeta(k) against sums of MZVs of weight k with s_1 >= 2.

    Adopted reading: for each depth 1 <= l <= k-1 the sum over that depth alone equals
    zeta(k).  The reading that lumps all depths >= 2 together is reported alongside.
    """
    if k < 3:
        raise RegularizationError("sum formula needs k >= 3")
    with mp.workprec(prec + GUARD):
        zk = zeta_int(k, prec)
        by_depth = {}
        lumped = mpmath.mpf(0)
        ok = True
        for l in range(1, k):
            idxs = list(compositions(k, l, first_min=2))
            per = mpmath.mpf(err) / max(1, len(idxs))
            vals = [mzv(c, per, prec) for c in idxs]
            s = mpmath.fsum(v.value for v in vals)
            bound = mpmath.fsum(v.bound for v in vals) + mpmath.mpf(2) ** (-prec + 4)
            res = abs(zk - s)
            by_depth[l] = (s, res, bound)
            ok = ok and res < bound
            if l >= 2:
                lumped += s
        return SumFormulaReport(k, "per-depth", zk, by_depth, (lumped, abs(zk - lumped)), ok)


def _phi(a, b, t):
    return t ** a * (1 - t) ** (-b)


def _atom_ab(E):
    if isinstance(E, StarAtom):
        if E.alphabet != X:
            raise RegularizationError("li_extended_eval works over X")
        d = E.as_dict()
        return d.get(0, 0), d.get(1, 0)
    a, b = E
    return a, b


def li_extended_eval(expr, z, err=1e-10, prec: int = 64) -> Value:
    """Li of E_1 x_i1 E_2 ... x_ij E_(j+1) with E = (a x0)^* sh (b x1)^* = (a, b).

    Li_E = z^a (1-z)^-b and Li_{E x_i T}(z) = phi_E(z) int_0^z phi_E(s)^-1 omega_i(s) Li_T(s) ds
    with omega_0 = ds/s, omega_1 = ds/(1-s).  Integrals use tanh-sinh quadrature, which
    absorbs the algebraic endpoint singularities.
    """
    expr = list(expr)
    if len(expr) % 2 != 1:
        raise RegularizationError("expression must alternate E, letter, E, ..., E")
    atoms = [_atom_ab(E) for E in expr[0::2]]
    letters = list(expr[1::2])
    if len(letters) > 3:
        raise RegularizationError("nesting depth above 3")
    if any(i not in (0, 1) for i in letters):
        raise RegularizationError("letters must be 0 or 1")
    # exponent of s at 0 of each partial result, checked from the inside out
    e = Fraction(atoms[-1][0])
    for (a, _), i in zip(reversed(atoms[:-1]), reversed(letters)):
        integrand = -Fraction(a) + e - (1 if i == 0 else 0)
        if integrand <= -1:
            raise RegularizationError("divergent configuration at an endpoint")
        e = Fraction(a) + integrand + 1
    # t = s u^q with q the common denominator of the x0-exponents turns every
    # t^(p/q) into an integer power of u, so the integrands become smooth
    q = 1
    for a, _ in atoms:
        if isinstance(a, (int, Fraction)):
            d = Fraction(a).denominator
            q = q * d // gcd(q, d)
    dps = max(20, int(-mpmath.log10(err)) + 10)
    with mp.workdps(dps):
        z = mpmath.mpmathify(z)
        if not (mpmath.im(z) == 0 and 0 <= z < 1):
            raise RegularizationError("z must lie in [0, 1)")
        z = mpmath.re(z)
        errors = []

        def value(pos, s):
            a, b = (_as_mp(v) for v in atoms[pos])
            if pos == len(letters):
                return _phi(a, b, s)
            i = letters[pos]

            def f(u):
                if u == 0:
                    return mpmath.mpf(0)
                t = s * u ** q
                w = 1 / t if i == 0 else 1 / (1 - t)
                return w * value(pos + 1, t) / _phi(a, b, t) * q * s * u ** (q - 1)

            if s == 0:
                return mpmath.mpf(0)
            v, er = mpmath.quad(f, [0, 1], error=True)
            errors.append(er)
            return _phi(a, b, s) * v

        v = value(0, z)
        bound = max(errors) if errors else mpmath.mpf(0)
        return Value(v, bound)


class BetaCheck(NamedTuple):
    beta: object             # Gamma(a)Gamma(b)/Gamma(a+b) from exp(-ell_1)
    rhs: object              # gamma(((a+b-1)y1)*) / (gamma(((a-1)y1)*) gamma(((b-1)y1)*))
    rhs_roots: object        # same with the denominator atom evaluated through its roots
    reference: object        # mpmath.beta
    residual: object         # max of the three discrepancies


def beta_gamma_check(a, b, prec: int = DEFAULT_PREC) -> BetaCheck:
    """B(a,b) = gamma_{((a+b-1)y1)^*} / gamma_{((a+b-2)y1 + (a-1)(b-1)y2)^*}."""
    a, b = to_fraction(a), to_fraction(b)
    if a <= 0 or b <= 0 or abs(a - 1) >= 1 or abs(b - 1) >= 1:
        raise RegularizationError("parameters outside the series domain")
    num = StarAtom.y(1, a + b - 1)
    A1, A2 = StarAtom.y(1, a - 1), StarAtom.y(1, b - 1)
    den = A1.product(A2)
    with mp.workprec(prec + GUARD):
        def gam(t):
            # Gamma(1 + t) = exp(-ell_1(t)), or factorial at integers
            t = Fraction(t)
            if t.denominator == 1:
                return mpmath.factorial(int(t))
            return mpmath.exp(-ell_r(1, _as_mp(t), prec))

        beta = gam(a - 1) * gam(b - 1) / gam(a + b - 1)
        rhs = _as_mp(gamma_char(num, prec)) / _as_mp(gamma_char([A1, A2], prec))
        rhs_roots = _as_mp(gamma_char(num, prec)) / gamma_atom_roots(den, prec)
        ref = mpmath.beta(_as_mp(a), _as_mp(b))
        res = max(abs(beta - rhs), abs(beta - rhs_roots), abs(beta - ref))
        return BetaCheck(beta, rhs, rhs_roots, ref, res)


def _exp_trunc(p, one):
    """exp(p) for p without constant term in a degree-capped ring."""
    out = one
    term = one
    m = 1
    while True:
        term = term * p / m
        if not term:
            return out
        out = out + term
        m += 1


def newton_girard_H_check(r: int, t=None, N: int = 5) -> bool:
    """sum_k H_{y_r^k}(N) t^(kr) = prod_{n<=N} (1 + t^r/n^r) = exp(sum_k (-1)^(k-1) H_{y_kr}(N) t^(kr)/k).

    ``t=None`` checks the polynomial identity in a formal t; a rational t checks the values.
    """
    from .coeffs import MPoly

    D = N * r
    T = MPoly.gen("t", max_degree=D)
    one = MPoly(("t",), {(0,): 1}, D)
    series = one
    for k in range(1, N + 1):
        series = series + T ** (k * r) * harmonic_sum((r,) * k, N)
    prod = one
    for n in range(1, N + 1):
        prod = prod * (one + T ** r / Fraction(n ** r))
    log = MPoly(("t",), {}, D)
    for k in range(1, N + 1):
        log = log + T ** (k * r) * (Fraction((-1) ** (k - 1), k) * harmonic_sum((r * k,), N))
    expf = _exp_trunc(log, one)
    if t is None:
        return series == prod == expf
    t = to_fraction(t)
    vals = [p.evaluate(t=t) for p in (series, prod, expf)]
    direct = Fraction(1)
    for n in range(1, N + 1):
        direct *= 1 + t ** r / n ** r
    return vals[0] == vals[1] == vals[2] == direct


__all__ = [
    "RegularizationError", "StarAtom", "StarCombo", "ScaleExpansion", "finite_part",
    "atom_scale_expansion", "x1_power_expansion", "combo_scale_expansion", "negindex_poly_values",
    "negindex_to_starcombo", "starcombo_taylor", "stirling_starcombo", "zeta_shuffle_char",
    "gamma_atom", "gamma_atom_roots", "gamma_char", "Regularized", "regularize",
    "repeated_mzv_exact", "SumFormulaReport", "sum_formula_check", "li_extended_eval",
    "BetaCheck", "beta_gamma_check", "newton_girard_H_check",
]
