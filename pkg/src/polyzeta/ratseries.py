"""Rational series given by linear representations (beta, mu, eta).

The coefficient of a word ``w = a1...ak`` is ``beta . mu(a1) ... mu(ak) . eta``.
Matrices are plain lists of lists so any exact coefficient type works; the
reduction routines (:func:`minimize`, :func:`kronecker_form`) need a field
and are written for Fractions.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .coeffs import format_coeff, to_fraction
from .ncalg import NcPoly, TruncSeries, conc_mul, shuffle, star_trunc, stuffle
from .words import X, Y, Word, all_words, distinct_permutations, letter_multiset, weight_of


class RepresentationError(ValueError):
    pass


# -- small exact matrix helpers ---------------------------------------------------------

def zeros(n, m):
    return [[0] * m for _ in range(n)]


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def matmul(a, b):
    if not a:
        return []
    m = len(b[0]) if b else 0
    out = []
    for row in a:
        r = [0] * m
        for k, x in enumerate(row):
            if x:
                bk = b[k]
                for j in range(m):
                    if bk[j]:
                        r[j] = r[j] + x * bk[j]
        out.append(r)
    return out


def vecmat(v, a):
    m = len(a[0]) if a else 0
    r = [0] * m
    for k, x in enumerate(v):
        if x:
            ak = a[k]
            for j in range(m):
                if ak[j]:
                    r[j] = r[j] + x * ak[j]
    return r


def matvec(a, v):
    return [dot(row, v) for row in a]


def dot(u, v):
    s = 0
    for x, y in zip(u, v):
        if x and y:
            s = s + x * y
    return s


def transpose(a):
    return [list(r) for r in zip(*a)] if a else []


def kron(a, b):
    out = []
    for ra in a:
        for rb in b:
            out.append([x * y if x and y else 0 for x in ra for y in rb])
    return out


def kron_vec(u, v):
    return [x * y if x and y else 0 for x in u for y in v]


def matadd(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def block(a, b, c, d):
    """[[a, b], [c, d]]"""
    return [ra + rb for ra, rb in zip(a, b)] + [rc + rd for rc, rd in zip(c, d)]


# -- linear representations --------------------------------------------------------------

@dataclass
class LinRep:
    alphabet: str
    beta: list
    mu: dict
    eta: list

    def __post_init__(self):
        n = len(self.beta)
        if n < 1:
            raise RepresentationError("dimension must be >= 1")
        if len(self.eta) != n:
            raise RepresentationError("beta and eta sizes differ")
        for k, m in self.mu.items():
            if len(m) != n or any(len(r) != n for r in m):
                raise RepresentationError("mu(%s) is not %dx%d" % (k, n, n))
            Word(self.alphabet, (k,))  # validates the letter

    @property
    def dim(self) -> int:
        return len(self.beta)

    def matrix(self, letter: int):
        return self.mu.get(letter)

    def letters(self):
        return sorted(self.mu)

    def constant_term(self):
        return dot(self.beta, self.eta)

    def __str__(self):
        return "LinRep(%s, dim=%d, letters=%s)" % (self.alphabet, self.dim, self.letters())

    # -- serialization ---------------------------------------------------------------
    def to_dict(self) -> dict:
        pre = "x" if self.alphabet == X else "y"
        return {
            "dim": self.dim,
            "alphabet": self.alphabet,
            "beta": [format_coeff(c) for c in self.beta],
            "eta": [format_coeff(c) for c in self.eta],
            "mu": {"%s%d" % (pre, k): [[format_coeff(c) for c in row] for row in m]
                   for k, m in sorted(self.mu.items())},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> "LinRep":
        mu = {}
        alphabet = d.get("alphabet")
        for name, m in d["mu"].items():
            tag = X if name[0] == "x" else Y
            if alphabet is None:
                alphabet = tag
            elif alphabet != tag:
                raise RepresentationError("mixed alphabets in mu")
            mu[int(name[1:])] = [[to_fraction(c) for c in row] for row in m]
        rep = cls(alphabet or X, [to_fraction(c) for c in d["beta"]], mu,
                  [to_fraction(c) for c in d["eta"]])
        if "dim" in d and d["dim"] != rep.dim:
            raise RepresentationError("declared dim %s does not match data" % d["dim"])
        return rep

    @classmethod
    def from_json(cls, text: str) -> "LinRep":
        return cls.from_dict(json.loads(text))


def _word_letters(r: LinRep, w) -> tuple:
    if isinstance(w, Word):
        if w.alphabet != r.alphabet:
            raise RepresentationError("alphabet mismatch: %s word for a %s series" % (w.alphabet, r.alphabet))
        return w.letters
    return tuple(w)


def coeff(r: LinRep, w) -> object:
    """beta mu(w) eta."""
    v = list(r.beta)
    for a in _word_letters(r, w):
        m = r.mu.get(a)
        if m is None:
            return 0
        v = vecmat(v, m)
    return dot(v, r.eta)


def to_series(r: LinRep, W: int, max_index: int | None = None) -> TruncSeries:
    """All coefficients of weight <= W, by a depth-first walk sharing prefixes."""
    out = TruncSeries(r.alphabet, W)
    letters = [a for a in r.letters() if (1 if r.alphabet == X else a) <= W]
    if max_index is not None:
        letters = [a for a in letters if a <= max_index]

    def walk(prefix, v, wt):
        out._acc(prefix, dot(v, r.eta))
        for a in letters:
            la = 1 if r.alphabet == X else a
            if wt + la > W:
                continue
            nv = vecmat(v, r.mu[a])
            if any(nv):
                walk(prefix + (a,), nv, wt + la)

    walk((), list(r.beta), 0)
    return out


# -- elementary representations ------------------------------------------------------------

def rep_zero(alphabet: str) -> LinRep:
    return LinRep(alphabet, [0], {}, [0])


def rep_scalar(alphabet: str, c=1) -> LinRep:
    return LinRep(alphabet, [1], {}, [c])


def rep_letter(alphabet: str, letter: int, c=1) -> LinRep:
    """The series c.letter."""
    return LinRep(alphabet, [1, 0], {letter: [[0, c], [0, 0]]}, [0, 1])


def rep_polynomial(p: NcPoly) -> LinRep:
    """Prefix-tree representation of a polynomial."""
    prefixes = {(): 0}
    for key in p.terms:
        for i in range(1, len(key) + 1):
            prefixes.setdefault(key[:i], len(prefixes))
    n = len(prefixes)
    mu = {}
    for pre, i in prefixes.items():
        if pre:
            a = pre[-1]
            m = mu.setdefault(a, zeros(n, n))
            m[prefixes[pre[:-1]]][i] = 1
    eta = [0] * n
    for key, c in p.terms.items():
        eta[prefixes[key]] = c
    beta = [1] + [0] * (n - 1)
    return LinRep(p.alphabet, beta, mu, eta)


def conc_character(alphabet: str, alpha: dict) -> LinRep:
    """(sum_x alpha_x x)^*, dimension 1."""
    return LinRep(alphabet, [1], {a: [[c]] for a, c in alpha.items()}, [1])


# -- rational operations -------------------------------------------------------------------

def _same(r1: LinRep, r2: LinRep):
    if r1.alphabet != r2.alphabet:
        raise RepresentationError("alphabet mismatch: %s vs %s" % (r1.alphabet, r2.alphabet))


def rep_add(r1: LinRep, r2: LinRep) -> LinRep:
    _same(r1, r2)
    n1, n2 = r1.dim, r2.dim
    mu = {}
    for a in set(r1.mu) | set(r2.mu):
        m1 = r1.mu.get(a) or zeros(n1, n1)
        m2 = r2.mu.get(a) or zeros(n2, n2)
        mu[a] = block(m1, zeros(n1, n2), zeros(n2, n1), m2)
    return LinRep(r1.alphabet, list(r1.beta) + list(r2.beta), mu, list(r1.eta) + list(r2.eta))


def rep_scale(r: LinRep, c) -> LinRep:
    return LinRep(r.alphabet, list(r.beta), dict(r.mu), [c * x for x in r.eta])


def rep_conc(r1: LinRep, r2: LinRep) -> LinRep:
    _same(r1, r2)
    n1, n2 = r1.dim, r2.dim
    c1 = dot(r1.beta, r1.eta)
    mu = {}
    for a in set(r1.mu) | set(r2.mu):
        m1 = r1.mu.get(a) or zeros(n1, n1)
        m2 = r2.mu.get(a) or zeros(n2, n2)
        m1eta = matvec(m1, r1.eta)
        link = [[x * b if x and b else 0 for b in r2.beta] for x in m1eta]
        mu[a] = block(m1, link, zeros(n2, n1), m2)
    beta = list(r1.beta) + [c1 * b if c1 and b else 0 for b in r2.beta]
    # reading ends in the second block; the link already covers an empty right factor
    eta = [0] * n1 + list(r2.eta)
    return LinRep(r1.alphabet, beta, mu, eta)


def rep_shuffle(r1: LinRep, r2: LinRep) -> LinRep:
    _same(r1, r2)
    n1, n2 = r1.dim, r2.dim
    i1, i2 = identity(n1), identity(n2)
    mu = {}
    for a in set(r1.mu) | set(r2.mu):
        m1 = r1.mu.get(a) or zeros(n1, n1)
        m2 = r2.mu.get(a) or zeros(n2, n2)
        mu[a] = matadd(kron(m1, i2), kron(i1, m2))
    return LinRep(r1.alphabet, kron_vec(r1.beta, r2.beta), mu, kron_vec(r1.eta, r2.eta))


def rep_stuffle(r1: LinRep, r2: LinRep) -> LinRep:
    _same(r1, r2)
    if r1.alphabet != Y:
        raise RepresentationError("stuffle is defined over Y only")
    n1, n2 = r1.dim, r2.dim
    i1, i2 = identity(n1), identity(n2)
    mu = {}
    letters = set(r1.mu) | set(r2.mu) | {i + j for i in r1.mu for j in r2.mu}
    for k in letters:
        m = zeros(n1 * n2, n1 * n2)
        if k in r1.mu:
            m = matadd(m, kron(r1.mu[k], i2))
        if k in r2.mu:
            m = matadd(m, kron(i1, r2.mu[k]))
        for i in r1.mu:
            j = k - i
            if j in r2.mu:
                m = matadd(m, kron(r1.mu[i], r2.mu[j]))
        mu[k] = m
    return LinRep(Y, kron_vec(r1.beta, r2.beta), mu, kron_vec(r1.eta, r2.eta))


def rep_star(r: LinRep) -> LinRep:
    """Star of a proper series: S^+ via mu + eta.beta.mu, then one extra state for the unit."""
    if dot(r.beta, r.eta):
        raise RepresentationError("star of improper series")
    n = r.dim
    eb = [[e * b if e and b else 0 for b in r.beta] for e in r.eta]
    mu = {}
    for a, m in r.mu.items():
        plus = matadd(m, matmul(eb, m))
        mu[a] = block([[0]], [[0] * n], [[0] for _ in range(n)], plus)
    return LinRep(r.alphabet, [1] + list(r.beta), mu, [1] + list(r.eta))


# -- reduction over Q ---------------------------------------------------------------------------

class _Span:
    """Incremental row echelon form remembering how each row combines the inputs."""

    def __init__(self, n):
        self.n = n
        self.rows = []       # (pivot, row, combo) with row[pivot] == 1
        self.basis = []

    def _reduce(self, v):
        v = [to_fraction(x) for x in v]
        combo = [Fraction(0)] * len(self.basis)
        for piv, row, rc in self.rows:
            c = v[piv]
            if c:
                v = [a - c * b for a, b in zip(v, row)]
                for j, x in enumerate(rc):
                    if x:
                        combo[j] += c * x
        return v, combo

    def add(self, v) -> bool:
        res, combo = self._reduce(v)
        piv = next((i for i, x in enumerate(res) if x), None)
        if piv is None:
            return False
        k = len(self.basis)
        self.basis.append([to_fraction(x) for x in v])
        # res = v - sum combo_j basis_j, normalized
        inv = 1 / res[piv]
        row = [x * inv for x in res]
        rc = [-c * inv for c in combo] + [inv]
        self.rows.append((piv, row, rc))
        return True

    def coords(self, v):
        res, combo = self._reduce(v)
        if any(res):
            raise RepresentationError("vector outside the span")
        return combo + [Fraction(0)] * (len(self.basis) - len(combo))


def _left_reduce(r: LinRep) -> LinRep:
    span = _Span(r.dim)
    if not span.add(r.beta):
        return rep_zero(r.alphabet)
    letters = r.letters()
    i = 0
    while i < len(span.basis):
        v = span.basis[i]
        for a in letters:
            span.add(vecmat(v, r.mu[a]))
        i += 1
    B = span.basis
    mu = {a: [span.coords(vecmat(b, r.mu[a])) for b in B] for a in letters}
    eta = [dot(b, r.eta) for b in B]
    return LinRep(r.alphabet, span.coords(r.beta), mu, eta)


def _transpose_rep(r: LinRep) -> LinRep:
    return LinRep(r.alphabet, list(r.eta), {a: transpose(m) for a, m in r.mu.items()}, list(r.beta))


def minimize(r: LinRep) -> LinRep:
    """Equivalent representation of minimal dimension (reachable then observable part)."""
    left = _left_reduce(r)
    both = _transpose_rep(_left_reduce(_transpose_rep(left)))
    mu = {a: m for a, m in both.mu.items() if any(any(row) for row in m)}
    return LinRep(both.alphabet, both.beta, mu, both.eta)


def hankel_rank(r: LinRep, max_len: int) -> int:
    """Rank of the finite Hankel block indexed by words of length <= max_len (over X by length)."""
    words = [w.letters for w in all_words(r.alphabet, max_len)] if r.alphabet == X else \
        [w.letters for w in all_words(r.alphabet, max_len, max_index=max(r.letters(), default=1))]
    span = _Span(len(words))
    for u in words:
        span.add([coeff(r, u + v) for v in words])
    return len(span.basis)


# -- exchangeability ----------------------------------------------------------------------------

def commuting(matrices) -> bool:
    ms = list(matrices)
    for a, b in itertools.combinations(ms, 2):
        if matmul(a, b) != matmul(b, a):
            return False
    return True


def is_exchangeable_rational(r: LinRep) -> bool:
    """Minimize, then test pairwise commutation of the letter matrices."""
    try:
        m = minimize(r)
    except TypeError:
        m = r
    return commuting(m.mu.values())


def is_exchangeable_syntactic(s: NcPoly) -> bool:
    """Coefficients constant on each class of words with the same letter multiset."""
    seen = set()
    for key, c in s.terms.items():
        ms = tuple(sorted(key))
        if ms in seen:
            continue
        seen.add(ms)
        for perm in distinct_permutations(ms):
            if s.terms.get(perm, 0) != c:
                return False
    return True


# -- one letter: Kronecker ---------------------------------------------------------------------------

def _poly_trim(p):
    p = list(p)
    while len(p) > 1 and not p[-1]:
        p.pop()
    return p


def univar_star(P, Q):
    """(P/(1 - xQ))^* = (1 - xQ)/(1 - x(Q + P1)) where P = x.P1; returns (num, den) coefficient lists."""
    P = [to_fraction(c) for c in P] or [Fraction(0)]
    Q = [to_fraction(c) for c in Q]
    if P[0]:
        raise RepresentationError("improper: P(0) must vanish")
    P1 = P[1:]
    QP = [Fraction(0)] * max(len(Q), len(P1))
    for i, c in enumerate(Q):
        QP[i] += c
    for i, c in enumerate(P1):
        QP[i] += c
    num = [Fraction(1)] + [-c for c in Q]
    den = [Fraction(1)] + [-c for c in QP]
    return _poly_trim(num), _poly_trim(den)


def series_of_fraction(num, den, order: int) -> list:
    """Taylor coefficients of num/den up to x^order (den(0) != 0)."""
    num = [to_fraction(c) for c in num]
    den = [to_fraction(c) for c in den]
    if not den[0]:
        raise RepresentationError("denominator vanishes at 0")
    out = []
    for n in range(order + 1):
        c = num[n] if n < len(num) else Fraction(0)
        for k in range(1, min(n, len(den) - 1) + 1):
            c -= den[k] * out[n - k]
        out.append(c / den[0])
    return out


def charpoly(m) -> list:
    """Coefficients [1, c1, ..., cn] of det(lambda I - M) = lambda^n + c1 lambda^(n-1) + ... (Faddeev-LeVerrier)."""
    n = len(m)
    m = [[to_fraction(x) for x in row] for row in m]
    coeffs = [Fraction(1)]
    mk = zeros(n, n)
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{k-1} I,  c_k = -tr(A M_k) / k
        mk = matmul(m, mk)
        for i in range(n):
            mk[i][i] += coeffs[-1]
        amk = matmul(m, mk)
        coeffs.append(-Fraction(sum(amk[i][i] for i in range(n))) / k)
    return coeffs


def kronecker_form(r: LinRep):
    """For a one-letter rational series S, (P, Q) with S = P (1 - xQ)^(-1)."""
    if len(r.mu) > 1:
        raise RepresentationError("Kronecker form needs a one-letter series")
    if not r.mu:
        return [to_fraction(r.constant_term())], [Fraction(0)]
    (a, m), = r.mu.items()
    cp = charpoly(m)                      # det(I - xM) = sum cp[k] x^k
    Q = [-c for c in cp[1:]] or [Fraction(0)]
    n = r.dim
    coeffs = [to_fraction(coeff(r, (a,) * k)) for k in range(n + 1)]
    den = cp
    P = []
    for k in range(n):
        P.append(sum(den[j] * coeffs[k - j] for j in range(0, min(k, len(den) - 1) + 1)))
    return _poly_trim(P), _poly_trim(Q)


# -- rational expressions -----------------------------------------------------------------------------

class RatExpr:
    """Syntax tree over scalar.letter atoms with +, conc, shuffle, stuffle and star."""

    def constant(self):
        raise NotImplementedError

    def size(self) -> int:
        raise NotImplementedError

    def star_height(self) -> int:
        raise NotImplementedError


@dataclass(frozen=True)
class Atom(RatExpr):
    letter: int
    scalar: object = 1

    def constant(self):
        return 0

    def size(self):
        return 1

    def star_height(self):
        return 0

    def __str__(self):
        return ("%s*" % format_coeff(self.scalar) if self.scalar != 1 else "") + "@%d" % self.letter


@dataclass(frozen=True)
class Binary(RatExpr):
    op: str
    left: RatExpr
    right: RatExpr

    def constant(self):
        a, b = self.left.constant(), self.right.constant()
        if self.op == "+":
            return a + b
        return a * b

    def size(self):
        return 1 + self.left.size() + self.right.size()

    def star_height(self):
        return max(self.left.star_height(), self.right.star_height())

    def __str__(self):
        sym = {"+": " + ", "conc": " . ", "shuffle": " sh ", "stuffle": " st "}[self.op]
        return "(%s%s%s)" % (self.left, sym, self.right)


@dataclass(frozen=True)
class Star(RatExpr):
    inner: RatExpr

    def __post_init__(self):
        if self.inner.constant():
            raise RepresentationError("star of improper series")

    def constant(self):
        return 1

    def size(self):
        return 1 + self.inner.size()

    def star_height(self):
        return 1 + self.inner.star_height()

    def __str__(self):
        return "(%s)*" % (self.inner,)


def to_rep(e: RatExpr, alphabet: str) -> LinRep:
    if isinstance(e, Atom):
        return rep_letter(alphabet, e.letter, e.scalar)
    if isinstance(e, Star):
        return rep_star(to_rep(e.inner, alphabet))
    l, r = to_rep(e.left, alphabet), to_rep(e.right, alphabet)
    return {"+": rep_add, "conc": rep_conc, "shuffle": rep_shuffle, "stuffle": rep_stuffle}[e.op](l, r)


def to_trunc(e: RatExpr, alphabet: str, W: int, _memo=None) -> TruncSeries:
    """Evaluate by truncated series arithmetic (independent of the LinRep constructions)."""
    memo = {} if _memo is None else _memo
    if e in memo:
        return memo[e]
    if isinstance(e, Atom):
        out = TruncSeries(alphabet, W, {(e.letter,): e.scalar})
    elif isinstance(e, Star):
        out = star_trunc(to_trunc(e.inner, alphabet, W, memo), W)
    else:
        l = to_trunc(e.left, alphabet, W, memo)
        r = to_trunc(e.right, alphabet, W, memo)
        if e.op == "+":
            out = l + r
        elif e.op == "conc":
            out = conc_mul(l, r)
        elif e.op == "shuffle":
            out = shuffle(l, r)
        else:
            out = stuffle(l, r)
    memo[e] = out
    return out


def enumerate_ratexprs(atoms, ops, max_size: int, max_star_height: int = 2):
    """Every well-formed expression (star only on proper subexpressions) up to a size."""
    by_size = {1: [Atom(*a) if isinstance(a, tuple) else a for a in atoms]}
    for n in range(2, max_size + 1):
        cur = []
        for e in by_size[n - 1]:
            if not e.constant() and e.star_height() < max_star_height:
                cur.append(Star(e))
        for i in range(1, n - 1):
            j = n - 1 - i
            for a in by_size.get(i, ()):
                for b in by_size.get(j, ()):
                    for op in ops:
                        cur.append(Binary(op, a, b))
        by_size[n] = cur
    for n in range(1, max_size + 1):
        yield from by_size[n]


__all__ = [
    "LinRep", "RepresentationError", "coeff", "to_series", "rep_zero", "rep_scalar", "rep_letter",
    "rep_polynomial", "conc_character", "rep_add", "rep_scale", "rep_conc", "rep_shuffle",
    "rep_stuffle", "rep_star", "minimize", "hankel_rank", "is_exchangeable_rational",
    "is_exchangeable_syntactic", "univar_star", "series_of_fraction", "charpoly", "kronecker_form",
    "RatExpr", "Atom", "Binary", "Star", "to_rep", "to_trunc", "enumerate_ratexprs", "commuting",
]
