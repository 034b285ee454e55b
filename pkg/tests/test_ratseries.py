import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polyzeta import ratseries as rs
from polyzeta.coeffs import MPoly
from polyzeta.ncalg import NcPoly, parse_poly
from polyzeta.words import X, Y, all_words, parse_word


def star_2x1():
    return rs.LinRep(X, [1], {1: [[2]]}, [1])


def test_coeff_geometric():
    assert rs.coeff(star_2x1(), parse_word("x1x1x1")) == 8


def test_conc_character_coefficient():
    a, b = MPoly.gens("a", "b")
    r = rs.conc_character(X, {0: a, 1: b})
    assert rs.coeff(r, parse_word("x0x1x0")) == a * a * b
    assert rs.coeff(r, ()) == 1


def test_coeff_at_unit_is_beta_eta():
    r = rs.LinRep(X, [1, 2], {0: [[0, 1], [0, 0]]}, [3, 4])
    assert rs.coeff(r, ()) == 11


def test_add_zero_rep():
    r = star_2x1()
    s = rs.rep_add(r, rs.rep_zero(X))
    assert rs.to_series(s, 6) == rs.to_series(r, 6)


def test_star_examples():
    t = MPoly.gen("t")
    r = rs.rep_star(rs.rep_letter(Y, 1, t))
    assert rs.coeff(r, parse_word("y1y1")) == t * t
    r = rs.rep_star(rs.rep_add(rs.rep_letter(X, 0, t), rs.rep_letter(X, 1, t)))
    for w in all_words(X, 4):
        assert rs.coeff(r, w) == t ** len(w)
    z = rs.rep_star(rs.rep_zero(X))
    assert rs.to_series(z, 4) == rs.to_series(rs.rep_scalar(X, 1), 4)


def test_star_of_improper_series():
    with pytest.raises(rs.RepresentationError, match="star of improper series"):
        rs.rep_star(rs.rep_scalar(X, 1))


def test_stuffle_needs_y():
    with pytest.raises(rs.RepresentationError, match="Y"):
        rs.rep_stuffle(star_2x1(), star_2x1())


def test_minimize_examples():
    r = rs.rep_add(star_2x1(), star_2x1())
    assert r.dim == 2
    m = rs.minimize(r)
    assert m.dim == 1
    assert rs.coeff(m, ()) == 2
    assert rs.to_series(m, 8) == rs.to_series(r, 8)
    assert rs.minimize(star_2x1()).dim == 1
    x1 = rs.rep_letter(X, 1)
    assert rs.minimize(rs.rep_add(x1, x1)).dim <= 2


def test_hankel_rank_agrees_with_minimal_dim():
    r = rs.rep_shuffle(star_2x1(), rs.rep_star(rs.rep_letter(X, 0, 3)))
    assert rs.hankel_rank(r, 4) == rs.minimize(r).dim


def test_exchangeability():
    a, b = Fraction(2, 3), Fraction(-5, 2)
    assert rs.is_exchangeable_rational(rs.conc_character(X, {0: a, 1: b}))
    assert not rs.is_exchangeable_rational(rs.rep_polynomial(parse_poly("x0x1")))
    assert not rs.is_exchangeable_syntactic(parse_poly("x0x1"))
    assert rs.is_exchangeable_syntactic(parse_poly("x0x1 + x1x0"))


def test_univar_star_examples():
    assert rs.univar_star([0, 1], [0]) == ([1], [1, -1])
    assert rs.univar_star([0, 1], [0, 1]) == ([1, 0, -1], [1, -1, -1])
    assert rs.univar_star([0, 2], [0]) == ([1], [1, -2])
    with pytest.raises(rs.RepresentationError, match="improper"):
        rs.univar_star([1, 1], [0])


def test_univar_star_against_expansion():
    # S = (x + x^2)/(1 - x), starred by power series to order 8
    num, den = rs.univar_star([0, 1, 1], [1])
    S = rs.series_of_fraction([0, 1, 1], [1, -1], 8)
    star = [Fraction(1)] + [Fraction(0)] * 8
    for n in range(1, 9):
        star[n] = sum(S[k] * star[n - k] for k in range(1, n + 1))
    assert rs.series_of_fraction(num, den, 8) == star


def test_kronecker_form_round_trip():
    r = rs.rep_add(star_2x1(), rs.LinRep(X, [1], {1: [[3]]}, [1]))
    P, Q = rs.kronecker_form(r)
    den = [Fraction(1)] + [-c for c in Q]
    assert rs.series_of_fraction(P, den, 6) == [Fraction(2 ** n + 3 ** n) for n in range(7)]


def test_charpoly():
    assert rs.charpoly([[2, 0], [0, 3]]) == [1, -5, 6]


def test_linrep_json_round_trip():
    r = rs.rep_star(rs.rep_add(rs.rep_letter(Y, 1, Fraction(1, 2)), rs.rep_letter(Y, 3, -2)))
    back = rs.LinRep.from_json(r.to_json())
    assert back == r
    assert rs.to_series(back, 6) == rs.to_series(r, 6)


def test_bad_dimensions():
    with pytest.raises(rs.RepresentationError):
        rs.LinRep(X, [1, 0], {0: [[1]]}, [1, 0])


def test_ratexpr_oracle_small():
    memo = {}
    for e in rs.enumerate_ratexprs([(0,), (1,)], ["+", "conc", "shuffle"], 4):
        assert rs.to_series(rs.to_rep(e, X), 6) == rs.to_trunc(e, X, 6, memo)


def test_star_of_proper_expression_only():
    with pytest.raises(rs.RepresentationError):
        rs.Star(rs.Star(rs.Atom((0,))))


rationals = st.fractions(min_value=-3, max_value=3, max_denominator=4)


@settings(max_examples=60, deadline=None)
@given(rationals, rationals, rationals)
def test_shuffle_of_characters_is_character(a, b, c):
    # (a x0)* sh (b x0 + c x1)* = ((a + b) x0 + c x1)*
    left = rs.rep_shuffle(rs.conc_character(X, {0: a, 1: 0}), rs.conc_character(X, {0: b, 1: c}))
    right = rs.conc_character(X, {0: a + b, 1: c})
    assert rs.to_series(left, 5) == rs.to_series(right, 5)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 1), st.integers(0, 1), st.integers(-2, 2)), min_size=1, max_size=6))
def test_minimize_idempotent_and_exact(entries):
    # a random 2-state representation
    mu = {0: [[0, 0], [0, 0]], 1: [[0, 0], [0, 0]]}
    for k, (i, j, v) in enumerate(entries):
        mu[k % 2][i][j] = v
    r = rs.LinRep(X, [1, 1], mu, [1, -1])
    m = rs.minimize(r)
    assert m.dim <= r.dim
    assert rs.minimize(m).dim == m.dim
    assert rs.to_series(m, 6) == rs.to_series(r, 6)


@settings(max_examples=60, deadline=None)
@given(st.dictionaries(st.sampled_from([w.letters for w in all_words(Y, 4, max_index=3)]), rationals, max_size=4))
def test_polynomial_rep(d):
    p = NcPoly(Y, d)
    r = rs.rep_polynomial(p)
    assert rs.to_series(r, 5, max_index=3) == p.truncate(5)


def _rank(rows):
    """Rank over Q by fraction-exact elimination."""
    pivots = {}
    rank = 0
    for row in rows:
        v = dict(row)
        while v:
            col = min(v)
            if col not in pivots:
                pivots[col] = {k: c / v[col] for k, c in v.items()}
                rank += 1
                break
            c = v[col]
            for k, p in pivots[col].items():
                nv = v.get(k, 0) - c * p
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
    return rank


def _monomial_rows(phis, D, E, W):
    """Coefficient maps of l1^i sh l2^j sh l3^k sh phi_1*^a sh ..., over Lyndon words of weight <= 2,
    with i + j + k <= D and each a <= E, truncated at weight W."""
    from polyzeta.ncalg import TruncSeries, shuffle, star_trunc
    from polyzeta.words import lyndon_words

    one = TruncSeries(X, W, {(): 1})

    def powers(s, n):
        out = [one]
        for _ in range(n):
            out.append(shuffle(out[-1], s))
        return out

    lp = [powers(NcPoly.word(w).truncate(W), D) for w in lyndon_words(X, 2)]
    sp = [powers(star_trunc(parse_poly(p), W), E) for p in phis]
    rows = []
    for e in itertools.product(range(D + 1), repeat=len(lp)):
        if sum(e) > D:
            continue
        base = one
        for powers_, k in zip(lp, e):
            base = shuffle(base, powers_[k])
        for f in itertools.product(range(E + 1), repeat=len(sp)):
            m = base
            for powers_, k in zip(sp, f):
                m = shuffle(m, powers_[k])
            rows.append(m.terms)
    return rows


@pytest.mark.parametrize("phis,D,E,count", [
    (("x1", "x0x1"), 2, 1, 40),
    (("x0", "x1"), 1, 2, 36),
])
def test_star_monomials_with_lyndon_words_are_independent(phis, D, E, count):
    """Finite check of algebraic freeness: Lyndon words together with stars of
    Z-independent series give linearly independent shuffle monomials at weight 8.
    Degrees are kept small since truncation itself creates relations."""
    rows = _monomial_rows(phis, D, E, 8)
    assert len(rows) == count
    assert _rank(rows) == count


def test_star_monomials_of_dependent_family_collapse():
    # x1 and 2 x1 are Z-dependent: (x1)* sh (x1)* = (2 x1)*
    from polyzeta.ncalg import shuffle, star_trunc
    a = star_trunc(parse_poly("x1"), 6)
    assert shuffle(a, a) == star_trunc(parse_poly("2*x1"), 6)
