"""Letters, words and compositions over the alphabets X = {x0, x1} and Y = {y1, y2, ...}.

Letters are stored as plain integers inside a :class:`Word`; the alphabet tag
says how to read them (``0``/``1`` for X, ``k >= 1`` for ``y_k``).  Words compare
lexicographically with a proper prefix being smaller, which is the order used
for Lyndon words.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence

X = "X"
Y = "Y"
ALPHABETS = (X, Y)


class WordError(ValueError):
    pass


class Letter(NamedTuple):
    alphabet: str
    index: int

    @property
    def weight(self) -> int:
        return self.index if self.alphabet == Y else 1

    def __str__(self) -> str:
        return ("x%d" if self.alphabet == X else "y%d") % self.index


def _check_letter(alphabet: str, index: int) -> None:
    if alphabet == X:
        if index not in (0, 1):
            raise WordError("X letters are x0 and x1, got index %r" % (index,))
    elif alphabet == Y:
        if index < 1:
            raise WordError("Y letters are y_k with k >= 1, got index %r" % (index,))
    else:
        raise WordError("unknown alphabet %r" % (alphabet,))


@dataclass(frozen=True, order=False)
class Word:
    """A word over a single alphabet; ``Word(X, ())`` is the unit."""

    alphabet: str
    letters: tuple = ()

    def __post_init__(self):
        letters = tuple(int(i) for i in self.letters)
        for i in letters:
            _check_letter(self.alphabet, i)
        object.__setattr__(self, "letters", letters)

    @classmethod
    def unit(cls, alphabet: str) -> "Word":
        return cls(alphabet, ())

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return (Letter(self.alphabet, i) for i in self.letters)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word(self.alphabet, self.letters[item])
        return Letter(self.alphabet, self.letters[item])

    def __add__(self, other: "Word") -> "Word":
        if other.alphabet != self.alphabet:
            raise WordError("alphabet mismatch: %s vs %s" % (self.alphabet, other.alphabet))
        return Word(self.alphabet, self.letters + other.letters)

    def __mul__(self, n: int) -> "Word":
        return Word(self.alphabet, self.letters * n)

    def __lt__(self, other: "Word") -> bool:
        return self.letters < other.letters

    def __le__(self, other: "Word") -> bool:
        return self.letters <= other.letters

    def __gt__(self, other: "Word") -> bool:
        return self.letters > other.letters

    def __ge__(self, other: "Word") -> bool:
        return self.letters >= other.letters

    @property
    def weight(self) -> int:
        return weight_of(self.alphabet, self.letters)

    def is_unit(self) -> bool:
        return not self.letters

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(str(l) for l in self)

    def __repr__(self) -> str:
        return "Word(%r)" % str(self)


def weight_of(alphabet: str, letters: Sequence[int]) -> int:
    if alphabet == Y:
        return sum(letters)
    return len(letters)


_LETTER_RE = re.compile(r"\s*([xy])(\d+)")


def parse_word(text: str, alphabet: str | None = None) -> Word:
    """Parse ``"x0 x1 x1"`` / ``"y2 y1"`` (spaces optional); ``"1"`` or ``""`` is the unit."""
    s = text.strip()
    if s in ("", "1"):
        if alphabet is None:
            raise WordError("cannot infer alphabet of the empty word")
        return Word.unit(alphabet)
    pos = 0
    letters = []
    tags = set()
    while pos < len(s):
        m = _LETTER_RE.match(s, pos)
        if not m:
            raise WordError("bad letter at position %d in %r" % (pos, text))
        tags.add(m.group(1))
        letters.append(int(m.group(2)))
        pos = m.end()
        while pos < len(s) and s[pos] == " ":
            pos += 1
    if len(tags) != 1:
        raise WordError("mixed alphabets in %r" % (text,))
    found = X if tags.pop() == "x" else Y
    if alphabet is not None and alphabet != found:
        raise WordError("expected a word over %s, got %r" % (alphabet, text))
    return Word(found, tuple(letters))


# -- compositions -----------------------------------------------------------

@dataclass(frozen=True)
class Composition:
    parts: tuple

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if not parts:
            raise WordError("a composition needs at least one part")
        if any(p == 0 for p in parts):
            raise WordError("composition parts must be nonzero")
        object.__setattr__(self, "parts", parts)

    @property
    def weight(self) -> int:
        return sum(abs(p) for p in self.parts)

    @property
    def depth(self) -> int:
        return len(self.parts)

    def is_convergent(self) -> bool:
        return self.parts[0] >= 2 and all(p >= 1 for p in self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __str__(self) -> str:
        return "(" + ",".join(str(p) for p in self.parts) + ")"


def parse_composition(text: str) -> Composition:
    """Parse ``"(2,1)"``, ``"2,1"`` or ``"(-1, -2)"``."""
    s = text.strip()
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    try:
        parts = tuple(int(p) for p in s.split(","))
    except ValueError:
        raise WordError("bad composition %r" % (text,)) from None
    return Composition(parts)


def as_composition(c) -> Composition:
    if isinstance(c, Composition):
        return c
    if isinstance(c, str):
        return parse_composition(c)
    if isinstance(c, int):
        return Composition((c,))
    return Composition(tuple(c))


def pi_X(c) -> Word:
    """(s1,...,sr) -> x0^{s1-1} x1 ... x0^{sr-1} x1."""
    c = as_composition(c)
    if any(p < 1 for p in c.parts):
        raise WordError("pi_X needs positive parts, got %s" % c)
    letters = []
    for s in c.parts:
        letters.extend([0] * (s - 1))
        letters.append(1)
    return Word(X, tuple(letters))


def pi_Y(w: Word) -> Composition:
    """Inverse of :func:`pi_X` on X* x1."""
    if w.alphabet != X:
        raise WordError("pi_Y expects a word over X")
    if not w.letters or w.letters[-1] != 1:
        raise WordError("not in X*x1: %s" % w)
    parts = []
    run = 0
    for i in w.letters:
        if i == 0:
            run += 1
        else:
            parts.append(run + 1)
            run = 0
    return Composition(tuple(parts))


def y_word(c) -> Word:
    """(s1,...,sr) -> y_{s1} ... y_{sr}."""
    return Word(Y, as_composition(c).parts)


# -- Lyndon words -------------------------------------------------------------

def is_lyndon(w: Word | Sequence[int]) -> bool:
    """Brute-force test: nonempty and strictly smaller than every proper suffix."""
    letters = w.letters if isinstance(w, Word) else tuple(w)
    if not letters:
        return False
    return all(letters < letters[i:] for i in range(1, len(letters)))


def _duval_sequences(k: int, n: int) -> Iterator[tuple]:
    # Duval's successor iteration over letters 0..k-1, lengths <= n, in lex order.
    if k <= 0 or n <= 0:
        return
    w = [0]
    while w:
        yield tuple(w)
        m = len(w)
        while len(w) < n:
            w.append(w[len(w) - m])
        while w and w[-1] == k - 1:
            w.pop()
        if w:
            w[-1] += 1


def lyndon_words(alphabet: str, max_weight: int, max_index: int | None = None) -> list:
    """Lyndon words of weight <= ``max_weight`` in lexicographic order.

    Over Y the letters are restricted to ``y_k`` with ``k <= max_index``
    (default ``max_weight``, i.e. every letter that can occur).
    """
    if max_weight < 1:
        return []
    if alphabet == X:
        return [Word(X, t) for t in _duval_sequences(2, max_weight)]
    if alphabet != Y:
        raise WordError("unknown alphabet %r" % (alphabet,))
    K = max_weight if max_index is None else min(max_index, max_weight)
    if K < 1:
        return []
    out = []
    for t in _duval_sequences(K, max_weight):
        letters = tuple(i + 1 for i in t)
        if sum(letters) <= max_weight:
            out.append(Word(Y, letters))
    return out


def lyndon_factorize(w: Word) -> list:
    """Chen-Fox-Lyndon factorization (Duval), factors in non-increasing order."""
    if not w.letters:
        raise WordError("empty word has no factorization")
    s = w.letters
    n = len(s)
    out = []
    i = 0
    while i < n:
        j, k = i + 1, i
        while j < n and s[k] <= s[j]:
            k = i if s[k] < s[j] else k + 1
            j += 1
        while i <= k:
            out.append(Word(w.alphabet, s[i:i + j - k]))
            i += j - k
    return out


def all_words(alphabet: str, max_weight: int, max_index: int | None = None) -> Iterator[Word]:
    """Every word of weight <= max_weight (unit first), by increasing weight."""
    if alphabet == X:
        letters = (0, 1)
    else:
        K = max_weight if max_index is None else max_index
        letters = tuple(range(1, K + 1))
    by_weight = {0: [()]}
    yield Word(alphabet, ())
    for wt in range(1, max_weight + 1):
        cur = []
        for a in letters:
            lw = 1 if alphabet == X else a
            if lw > wt:
                continue
            for tail in by_weight.get(wt - lw, ()):
                cur.append((a,) + tail)
        cur.sort()
        by_weight[wt] = cur
        for t in cur:
            yield Word(alphabet, t)


def compositions(n: int, parts: int | None = None, first_min: int = 1) -> Iterator[tuple]:
    """Compositions of n (optionally with a fixed number of parts), first part >= first_min."""
    if n <= 0:
        return

    def rec(rem, k, first):
        lo = first_min if first else 1
        if k is None:
            for a in range(lo, rem + 1):
                if a == rem:
                    yield (a,)
                else:
                    for t in rec(rem - a, None, False):
                        yield (a,) + t
            return
        if k == 1:
            if rem >= lo:
                yield (rem,)
            return
        for a in range(lo, rem - (k - 1) + 1):
            for t in rec(rem - a, k - 1, False):
                yield (a,) + t

    yield from rec(n, parts, True)


def letter_multiset(w: Word) -> tuple:
    return tuple(sorted(w.letters))


def distinct_permutations(letters: Iterable[int]) -> Iterator[tuple]:
    """Distinct rearrangements in lexicographic order."""
    a = sorted(letters)
    n = len(a)
    while True:
        yield tuple(a)
        i = n - 2
        while i >= 0 and a[i] >= a[i + 1]:
            i -= 1
        if i < 0:
            return
        j = n - 1
        while a[j] <= a[i]:
            j -= 1
        a[i], a[j] = a[j], a[i]
        a[i + 1:] = reversed(a[i + 1:])
