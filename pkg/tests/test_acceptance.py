"""Acceptance suite: one test per criterion, each against an oracle built here.

Every test records a PASS/FAIL line; the lines are printed together in the
terminal summary.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

import mpmath
import pytest
import scipy.special
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from conftest import record
from polyzeta import ncalg, ratseries, regular, special, verify, words
from polyzeta.coeffs import MPoly
from polyzeta.ncalg import NcPoly, TruncSeries
from polyzeta.words import X, Y

PREC = 256


def _mpq(q):
    q = Fraction(q)
    return mpmath.mpf(q.numerator) / q.denominator


# -- oracles --------------------------------------------------------------------------------

def bernoulli_akiyama_tanigawa(n: int) -> Fraction:
    """B_n with B_1 = +1/2 (irrelevant here: only even n are used)."""
    a = [Fraction(0)] * (n + 1)
    for m in range(n + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
    return a[0]


def zeta_even_oracle(k: int) -> Fraction:
    """zeta(2k)/pi^(2k) = (-1)^(k+1) B_2k 2^(2k-1) / (2k)!."""
    return (-1) ** (k + 1) * bernoulli_akiyama_tanigawa(2 * k) * 2 ** (2 * k - 1) / factorial(2 * k)


def li_negative_coeff(idx, n: int) -> int:
    """Coefficient of z^n in Li_s(z) for negative s, by direct nested summation."""
    s = [-p for p in idx]

    def inner(depth, bound):
        if depth == len(s):
            return 1
        return sum(m ** s[depth] * inner(depth + 1, m) for m in range(1, bound))

    if n < len(s):
        return 0
    return n ** s[0] * inner(1, n)


def brute_is_lyndon(letters) -> bool:
    return bool(letters) and all(letters < letters[i:] for i in range(1, len(letters)))


# -- criterion 1 ------------------------------------------------------------------------------

def test_criterion_01_zeta_even_rational():
    got = [special.zeta_even_rational(k) for k in range(1, 13)]
    want = [zeta_even_oracle(k) for k in range(1, 13)]
    ok = got == want and got[:3] == [Fraction(1, 6), Fraction(1, 90), Fraction(1, 945)]
    record(1, "zeta(2k)/pi^2k exact for k = 1..12", ok, "k=12: %s" % got[-1])
    assert ok


# -- criterion 2 ------------------------------------------------------------------------------

def test_criterion_02_mzv_closed_forms():
    with mpmath.workprec(PREC):
        pi = mpmath.pi
        cases = {(2, 2): pi ** 4 / 120, (3, 1): pi ** 4 / 360, (2, 2, 2): pi ** 6 / factorial(7)}
        rels = {}
        for idx, ref in cases.items():
            v = special.mzv(idx, 1e-10, PREC)
            rels[idx] = abs(v.value - ref) / ref
    worst = max(rels.values())
    ok = worst < 1e-8
    record(2, "mzv (2,2), (3,1), (2,2,2) closed forms within 1e-8 relative", ok,
           "worst rel err %s" % mpmath.nstr(worst, 3))
    assert ok


# -- criteria 3 and 4 -------------------------------------------------------------------------

GOLDEN = {
    (-1, -1): ([-1, 5, -7, 3], Fraction(11, 24)),
    (-2, -1): ([1, -11, 31, -33, 12], Fraction(-73, 120)),
    (-1, -2): ([1, -9, 23, -23, 8], Fraction(-67, 120)),
}


def test_criterion_03_gamma_values():
    ok = True
    details = []
    for idx, (_, want) in GOLDEN.items():
        ycombo = regular.negindex_to_starcombo(idx, Y)
        got = regular.gamma_char(ycombo)
        # oracle: (k y1)* -> 1/k!, so gamma is sum_k c_k / k!
        coeffs = ycombo.x1_coeffs()
        oracle = sum(Fraction(c, factorial(k)) for k, c in enumerate(coeffs))
        ok = ok and got == want == oracle
        details.append("%s=%s" % (idx, got))
    record(3, "gamma on (-1,-1), (-2,-1), (-1,-2) exact", ok, ", ".join(details))
    assert ok


def test_criterion_04_negindex_combinations():
    ok = True
    for idx, (want, _) in GOLDEN.items():
        coeffs = regular.negindex_to_starcombo(idx).x1_coeffs()
        ok = ok and coeffs[0] == 0 and coeffs[1:] == want
        # independent check: Li of (k x1)* is (1-z)^-k, whose z^n coefficient is C(n+k-1, n)
        for n in range(1, 15):
            taylor = sum(c * comb(n + k - 1, n) for k, c in enumerate(coeffs))
            ok = ok and taylor == li_negative_coeff(idx, n)
    record(4, "star combinations of the three negative indices, coefficient for coefficient", ok)
    assert ok


# -- criterion 5 ------------------------------------------------------------------------------

def _star_oracle(coeff_of_letter, W):
    """(sum_s c_s y_s)^* truncated: the coefficient of y_i1...y_ik is prod c_ij."""
    terms = {}
    for w in words.all_words(Y, W):
        c = 1
        for a in w.letters:
            c = c * coeff_of_letter.get(a, 0)
        if c:
            terms[w.letters] = c
    return TruncSeries(Y, W, terms)


def test_criterion_05_stuffle_star_and_newton_girard():
    W = 8
    a1, a2, b1, b2 = MPoly.gens("a1", "a2", "b1", "b2")
    lhs = ncalg.stuffle(_star_oracle({1: a1, 2: a2}, W), _star_oracle({1: b1, 2: b2}, W))
    rhs = _star_oracle({1: a1 + b1, 2: a2 + b2 + a1 * b1, 3: a1 * b2 + a2 * b1, 4: a2 * b2}, W)
    star_ok = lhs == rhs
    # the package's own star agrees with the oracle star
    pkg = ncalg.star_trunc(TruncSeries(Y, W, {(1,): a1, (2,): a2}), W)
    star_ok = star_ok and pkg == _star_oracle({1: a1, 2: a2}, W)

    ng_ok = all(regular.newton_girard_H_check(r, None, N) for r in (1, 2, 3) for N in range(21))
    # oracle: sum_k u^k H_{y_r^k}(N) = prod_n (1 + u/n^r), a degree-N polynomial in u = t^r,
    # compared at N + 1 points (enough to pin it down)
    for r in (1, 2, 3):
        for N in (0, 1, 7, 20):
            for u in range(N + 1):
                left = 1 + sum(Fraction(u) ** k * special.harmonic_sum((r,) * k, N) for k in range(1, N + 1))
                right = Fraction(1)
                for n in range(1, N + 1):
                    right *= 1 + Fraction(u, n ** r)
                ng_ok = ng_ok and left == right
    ok = star_ok and ng_ok
    record(5, "stuffle star identity to weight 8, Newton-Girard for r = 1,2,3, N <= 20", ok,
           "star %s, newton-girard %s" % (star_ok, ng_ok))
    assert ok


# -- criterion 6 ------------------------------------------------------------------------------

def test_criterion_06_ystar_exp():
    W = 8
    ok = True
    for r in (1, 2):
        L = TruncSeries(Y, W, {(k * r,): Fraction((-1) ** (k - 1), k) for k in range(1, W // r + 1)})
        got = ncalg.exp_stuffle(L, W)
        want = TruncSeries(Y, W, {(r,) * k: 1 for k in range(W // r + 1)})
        ok = ok and got == want
    record(6, "y_r* = exp_stuffle(sum (-1)^(k-1) y_kr / k) to weight 8, r = 1, 2", ok)
    assert ok


# -- criterion 7 ------------------------------------------------------------------------------

def test_criterion_07_euler_complement():
    tol = mpmath.mpf(2) ** -200
    worst = mpmath.mpf(0)
    with mpmath.workprec(PREC):
        for z in (mpmath.mpf("0.1"), mpmath.mpf("-0.37"), mpmath.mpc("0.25", "0.3")):
            sinc = mpmath.sin(z * mpmath.pi) / (z * mpmath.pi)
            e = mpmath.exp(special.ell_r(1, z, PREC) + special.ell_r(1, -z, PREC))
            worst = max(worst, abs(e - sinc))
            g2 = special.gamma_yr(2, 1j * z, PREC)
            worst = max(worst, abs(g2 - 1 / sinc))
            # oracle for ell_1 alone: exp(ell_1(z)) = 1/Gamma(1+z)
            worst = max(worst, abs(mpmath.exp(special.ell_r(1, z, PREC)) - mpmath.rgamma(1 + z)))
    ok = worst < tol
    record(7, "Euler complement and Gamma_y2(1+iz) below 2^-200", ok, "worst %s" % mpmath.nstr(worst, 3))
    assert ok


# -- criterion 8 ------------------------------------------------------------------------------

def test_criterion_08_weierstrass3():
    tol = mpmath.mpf(2) ** -200
    res = [special.weierstrass3_check(r, 3, z, PREC) for r, z in ((1, "0.4"), (2, "0.3"), (1, "-0.2"))]
    # oracle: 1 + x^3 = prod (1 - w x) over w^3 = -1, so exp(ell_3(z)) = prod 1/Gamma(1 - w z)
    with mpmath.workprec(PREC):
        z = mpmath.mpf("0.4")
        ws = [mpmath.expjpi(mpmath.mpf(2 * k + 1) / 3) for k in range(3)]
        oracle = mpmath.fprod(mpmath.rgamma(1 - w * z) for w in ws)
        res.append(abs(mpmath.exp(special.ell_r(3, z, PREC)) - oracle))
    worst = max(res)
    ok = worst < tol
    record(8, "factorization over roots of unity for (r,q) = (1,3), (2,3) below 2^-200", ok,
           "worst %s" % mpmath.nstr(worst, 3))
    with pytest.raises(ValueError, match="odd q"):
        special.weierstrass3_check(1, 2, 0.3)
    assert ok


# -- criterion 9 ------------------------------------------------------------------------------

def test_criterion_09_sum_formula():
    ok = True
    details = []
    with mpmath.workprec(PREC):
        for k in (3, 4, 5):
            rep = regular.sum_formula_check(k, 1e-10, PREC)
            ref = mpmath.zeta(k)
            for l, (s, res, bound) in rep.by_depth.items():
                ok = ok and res < bound and abs(s - ref) < bound + mpmath.mpf(2) ** -200
            details.append("k=%d depths %s" % (k, sorted(rep.by_depth)))
            ok = ok and rep.passed and rep.reading == "per-depth"
            # second route for the MZVs of depth 2
            for c in words.compositions(k, 2, first_min=2):
                a = special.mzv(c, 1e-10, PREC)
                b = special.mzv_em(c, prec=PREC)
                ok = ok and abs(a.value - b.value) <= a.bound + b.bound
    record(9, "sum formula for k = 3, 4, 5 (reading: each depth sums to zeta(k))", ok, "; ".join(details))
    assert ok


# -- criterion 10 -----------------------------------------------------------------------------

def test_criterion_10_beta():
    ok = True
    worst = 0.0
    for z, a, b in ((Fraction(1, 2), Fraction(1, 2), Fraction(1, 2)), (Fraction(2, 3), Fraction(1, 3), Fraction(2, 3))):
        fz, fa, fb = float(z), float(a), float(b)
        ref = scipy.special.betainc(fa, fb, fz) * scipy.special.beta(fa, fb)
        with mpmath.workdps(30):
            # t = u^(1/a) removes the endpoint singularity: t^(a-1) dt = du / a
            ma, mb = _mpq(a), _mpq(b)
            quad = mpmath.quad(lambda u: (1 - u ** (1 / ma)) ** (mb - 1) / ma, [0, _mpq(z) ** ma])
        f1 = regular.li_extended_eval([(0, 0), 0, (a, 1 - b)], z, 1e-12)
        f2 = regular.li_extended_eval([(0, 0), 1, (a - 1, -b)], z, 1e-12)
        for f in (f1, f2):
            worst = max(worst, abs(float(f.value) - ref), abs(float(f.value - quad)))
        ok = ok and abs(float(quad) - ref) < 1e-12 * ref
    ok = bool(ok and worst < 1e-8)
    bg = max(regular.beta_gamma_check(a, b, PREC).residual
             for a, b in ((Fraction(1, 2), Fraction(1, 2)), (Fraction(1, 3), Fraction(2, 3))))
    ok = ok and bg < 1e-20
    record(10, "partial Beta by both series forms within 1e-8; B(a,b) via gamma characters below 1e-20", ok,
           "quad err %.1e, gamma residual %s" % (worst, mpmath.nstr(bg, 3)))
    assert ok


# -- criterion 11 -----------------------------------------------------------------------------

def poly_strategy(alphabet, max_weight):
    pool = [w.letters for w in words.all_words(alphabet, max_weight, max_index=3 if alphabet == Y else None)]
    coeff = st.fractions(min_value=-5, max_value=5, max_denominator=4)
    return st.dictionaries(st.sampled_from(pool), coeff, max_size=3).map(lambda d: NcPoly(alphabet, d))


_LAW_RESULTS = {}

_settings = settings(max_examples=200, deadline=None, derandomize=True,
                     suppress_health_check=[HealthCheck.too_slow])


@_settings
@given(st.data())
def _laws(data):
    for alphabet, prod in ((X, ncalg.shuffle), (Y, ncalg.stuffle)):
        p, q = data.draw(poly_strategy(alphabet, 6)), data.draw(poly_strategy(alphabet, 6))
        one = NcPoly.one(alphabet)
        assert prod(p, q) == prod(q, p)
        assert prod(p, one) == p == prod(one, p)
        # associativity on weight <= 4 triples keeps products below weight 12
        a, b, c = (data.draw(poly_strategy(alphabet, 4)) for _ in range(3))
        assert prod(prod(a, b), c) == prod(a, prod(b, c))


@_settings
@given(st.fractions(min_value=-4, max_value=4, max_denominator=5),
       st.fractions(min_value=-4, max_value=4, max_denominator=5))
def _conc_character(a, b):
    rep = ratseries.conc_character(X, {0: a, 1: b})
    for w in words.all_words(X, 6):
        assert ratseries.coeff(rep, w) == a ** w.letters.count(0) * b ** w.letters.count(1)


def test_criterion_11_properties():
    parts = {}
    try:
        _laws()
        parts["laws"] = True
    except AssertionError:
        parts["laws"] = False
    try:
        _conc_character()
        parts["conc_character"] = True
    except AssertionError:
        parts["conc_character"] = False

    W = 8
    bad = 0
    for alphabet, ops, atoms in ((X, ["+", "conc", "shuffle"], [(0,), (1,)]),
                                 (Y, ["+", "conc", "stuffle"], [(1,), (2,)])):
        memo = {}
        for e in ratseries.enumerate_ratexprs(atoms, ops, 6):
            if ratseries.to_series(ratseries.to_rep(e, alphabet), W) != ratseries.to_trunc(e, alphabet, W, memo):
                bad += 1
    parts["ratexpr_oracle"] = bad == 0

    good = True
    for e in list(ratseries.enumerate_ratexprs([(0,), (1,)], ["+", "conc", "shuffle"], 5))[::7]:
        r = ratseries.to_rep(e, X)
        m = ratseries.minimize(r)
        good = good and ratseries.minimize(m).dim == m.dim <= r.dim
        good = good and ratseries.to_series(m, 2 * r.dim) == ratseries.to_series(r, 2 * r.dim)
    parts["minimize"] = good

    good = True
    for alphabet in (X, Y):
        fast = {w.letters for w in words.lyndon_words(alphabet, 6)}
        brute = {w.letters for w in words.all_words(alphabet, 6) if brute_is_lyndon(w.letters)}
        good = good and fast == brute
    parts["lyndon"] = good

    good = True
    for w in words.all_words(X, 6):
        if w.letters:
            p = NcPoly.word(w)
            good = good and ncalg.lyndon_recompose(X, ncalg.lyndon_decompose(p)) == p
    parts["decompose"] = good

    ok = all(parts.values())
    record(11, "property suites", ok, ", ".join("%s %s" % kv for kv in parts.items()))
    assert ok


# -- criterion 12 -----------------------------------------------------------------------------

def test_criterion_12_discrepancies():
    entries = verify.check_discrepancies(verify.RunConfig())
    by_id = {e["identity_id"]: e for e in entries}
    zs = by_id["A12.zeta_shuffle.m2_1"]
    st_11 = by_id["A12.stirling.m1_1"]
    ok = all(e["status"] != "fail" for e in entries)
    ok = ok and zs["status"] == "discrepancy" and "char=0" in zs["lhs"] and "finite_part=0" in zs["rhs"]
    ok = ok and st_11["status"] == "discrepancy" and "formula=" in st_11["lhs"] and "oracle=" in st_11["rhs"]
    # the character value of the (-2,-1) combination is its coefficient sum
    combo = regular.negindex_to_starcombo((-2, -1))
    ok = ok and sum(combo.x1_coeffs()) == 0 == regular.regularize((-2, -1)).zeta_shuffle
    n_disc = sum(e["status"] == "discrepancy" for e in entries)
    record(12, "discrepancies reported with both values, internal paths agree", ok,
           "%d discrepancy entries" % n_disc)
    assert ok
