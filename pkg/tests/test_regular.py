from fractions import Fraction
from math import comb, factorial

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polyzeta import regular as rg
from polyzeta.ncalg import TruncSeries, parse_poly, shuffle, stuffle
from polyzeta.words import X, Y


def test_atom_products():
    a = rg.StarAtom.xy(Fraction(1, 2), 3)
    b = rg.StarAtom.xy(1, -1)
    assert a.product(b) == rg.StarAtom.xy(Fraction(3, 2), 2)
    W = 6
    assert shuffle(a.to_series(W), b.to_series(W)) == a.product(b).to_series(W)
    p, q = rg.StarAtom(Y, ((1, 2), (2, 1))), rg.StarAtom(Y, ((1, -1),))
    assert stuffle(p.to_series(W), q.to_series(W)) == p.product(q).to_series(W)


def test_y_atom_is_power():
    assert rg.StarAtom.y(2, 3).as_dict() == {2: 9}


def test_combo_x1_coeffs_round_trip():
    c = rg.StarCombo.from_x1_coeffs([0, -1, 5, -7, 3])
    assert c.x1_coeffs() == [0, -1, 5, -7, 3]
    assert c.constant_term() == 0
    assert str(c) == "-1*(x1)* + 5*(2*x1)* + -7*(3*x1)* + 3*(4*x1)*"


def test_negindex_examples():
    assert rg.negindex_to_starcombo((-1, -1)).x1_coeffs() == [0, -1, 5, -7, 3]
    assert rg.negindex_to_starcombo((-2, -1)).x1_coeffs() == [0, 1, -11, 31, -33, 12]
    assert rg.negindex_to_starcombo((-1, -2)).x1_coeffs() == [0, 1, -9, 23, -23, 8]
    assert rg.negindex_to_starcombo((-1,)).x1_coeffs() == [0, -1, 1]


@pytest.mark.parametrize("idx", [(-1,), (-3,), (-1, -1), (-2, -1), (-1, -1, -1), (-2, -3)])
def test_negindex_taylor(idx):
    c = rg.negindex_to_starcombo(idx)
    assert rg.starcombo_taylor(c, 15) == rg.negindex_poly_values(idx, 15)


def test_negindex_rejects_positive():
    with pytest.raises(rg.RegularizationError):
        rg.negindex_to_starcombo((2, -1))


def test_stirling_formula_outputs():
    # literal evaluations, recorded to document the gap with the oracle
    assert rg.stirling_starcombo((-1,)).x1_coeffs() == [-1, 0, 1]
    assert rg.stirling_starcombo((-1, -1)).x1_coeffs() == [1, 0, 0, -4, 3]
    assert rg.stirling_starcombo((-1, -1)) != rg.negindex_to_starcombo((-1, -1))


def test_zeta_shuffle_examples():
    assert rg.zeta_shuffle_char(rg.negindex_to_starcombo((-1, -1))) == 0
    assert rg.zeta_shuffle_char(rg.negindex_to_starcombo((-1, -2))) == 0
    assert rg.zeta_shuffle_char(rg.StarCombo.atom(rg.StarAtom.x(1, 1))) == 1
    v = rg.zeta_shuffle_char(poly=parse_poly("x0x1 + 2"))
    assert abs(v - (mpmath.pi ** 2 / 6 + 2)) < 1e-10


@pytest.mark.parametrize("idx,value", [
    ((-1, -1), Fraction(11, 24)), ((-2, -1), Fraction(-73, 120)), ((-1, -2), Fraction(-67, 120)),
])
def test_gamma_examples(idx, value):
    assert rg.gamma_char(rg.negindex_to_starcombo(idx, Y)) == value


def test_gamma_atoms():
    assert rg.gamma_atom(rg.StarAtom(Y, ((1, 3),))) == Fraction(1, 6)
    assert rg.gamma_atom(rg.StarAtom(Y, ((1, -2),))) == 0
    with mpmath.workprec(256):
        t = mpmath.mpf("0.4")
        assert abs(rg.gamma_atom(rg.StarAtom.y(1, Fraction(2, 5))) - mpmath.rgamma(1 + t)) < 1e-70
        # (t^2 y2)* -> prod (1 + t^2/n^2) = sinh(pi t)/(pi t)
        g = rg.gamma_atom(rg.StarAtom.y(2, Fraction(2, 5)))
        assert abs(g - mpmath.sinh(mpmath.pi * t) / (mpmath.pi * t)) < 1e-70


def test_gamma_roots_path_matches_product():
    A1, A2 = rg.StarAtom.y(1, Fraction(-1, 3)), rg.StarAtom.y(1, Fraction(1, 4))
    with mpmath.workprec(256):
        direct = rg.gamma_char([A1, A2])
        roots = rg.gamma_atom_roots(A1.product(A2))
        assert abs(direct - roots) < 1e-60


def test_gamma_repeated_root():
    # ((-1/2) y1)* stuffled with itself: 1 - u + u^2/4 has a double root
    A = rg.StarAtom.y(1, Fraction(-1, 2))
    with mpmath.workprec(256):
        want = mpmath.rgamma(mpmath.mpf(1) / 2) ** 2
        assert abs(rg.gamma_atom_roots(A.product(A)) - want) < 1e-50


def test_finite_part():
    assert rg.ScaleExpansion({(-1, 0): 3, (0, 0): 7}).finite_part() == 7
    assert rg.finite_part(rg.ScaleExpansion()) == 0
    assert rg.x1_power_expansion(2).finite_part() == 0


def test_regularize_record():
    r = rg.regularize("(-1,-1)")
    assert r.combo.x1_coeffs()[1:] == [-1, 5, -7, 3]
    assert r.gamma == Fraction(11, 24)
    assert r.zeta_shuffle == 0 == r.finite_part


def test_finite_part_agrees_with_character():
    for idx in ((-1,), (-1, -1), (-2, -1), (-3, -1), (-1, -1, -1)):
        r = rg.regularize(idx)
        assert r.zeta_shuffle == r.finite_part


@pytest.mark.parametrize("family,k,q", [
    ("2", 1, Fraction(1, 6)), ("2", 2, Fraction(1, 120)), ("31", 1, Fraction(1, 360)),
])
def test_repeated_families(family, k, q):
    _, got = rg.repeated_mzv_exact(family, k)
    assert got == q


def test_repeated_family_four():
    idx, q = rg.repeated_mzv_exact("4", 1)
    assert q == Fraction(1, 90)
    _, q2 = rg.repeated_mzv_exact("4", 2)
    assert q2 == Fraction(2 * 16, factorial(10))


def test_sum_formula():
    rep = rg.sum_formula_check(4, 1e-10, 192)
    assert rep.reading == "per-depth"
    assert rep.passed
    assert sorted(rep.by_depth) == [1, 2, 3]
    # lumping depths 2 and 3 gives twice zeta(4)
    assert abs(rep.all_depths[0] - 2 * rep.zeta_k) < 1e-9


def test_li_extended_trivial():
    v = rg.li_extended_eval([(0, 0)], Fraction(1, 3))
    assert v.value == 1


def test_li_extended_against_closed_forms():
    # x0[(a x0)*] at z: int_0^z t^(a-1) dt = z^a / a
    z, a = Fraction(1, 2), Fraction(1, 3)
    v = rg.li_extended_eval([(0, 0), 0, (a, 0)], z, 1e-12)
    assert abs(v.value - mpmath.mpf(0.5) ** (1 / mpmath.mpf(3)) * 3) < 1e-10
    # x1 alone gives -log(1 - z)
    v = rg.li_extended_eval([(0, 0), 1, (0, 0)], z, 1e-12)
    assert abs(v.value - mpmath.log(2)) < 1e-10


def test_li_extended_domain():
    with pytest.raises(rg.RegularizationError):
        rg.li_extended_eval([(0, 0), 0, (0, 0)], Fraction(1, 2))
    with pytest.raises((rg.RegularizationError, ValueError)):
        rg.li_extended_eval([(0, 0)], 2)


def test_beta_gamma():
    bc = rg.beta_gamma_check(Fraction(1, 2), Fraction(1, 2), 256)
    assert bc.residual < 1e-70
    with mpmath.workprec(256):
        assert abs(bc.beta - mpmath.pi) < 1e-70


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 3), st.integers(0, 8), st.fractions(min_value=-3, max_value=3, max_denominator=5))
def test_newton_girard_values(r, N, t):
    assert rg.newton_girard_H_check(r, t, N)


def test_newton_girard_formal():
    assert all(rg.newton_girard_H_check(r, None, N) for r in (1, 2, 3) for N in range(8))


def test_scale_expansion_of_atom():
    # z^a (1-z)^-1 = eps^-1 (1 - eps)^a: constant term -a
    e = rg.atom_scale_expansion(rg.StarAtom.xy(Fraction(1, 2), 1))
    assert e.finite_part() == Fraction(-1, 2)
    assert e.terms[(-1, 0)] == 1
