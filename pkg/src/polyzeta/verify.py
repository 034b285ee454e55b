"""The identity suite behind ``polyzeta verify``.

Each check returns report entries ``{identity_id, paper_ref, status, lhs, rhs, bound}``
with status ``pass``, ``fail`` or ``discrepancy``.  ``paper_ref`` names the identity
being checked.  Discrepancy entries record reference values that the package does
not reproduce; they fail only if the package's own two computation paths disagree.
"""
from __future__ import annotations

import fnmatch
import random
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

import mpmath
from mpmath import mp

from . import ncalg, ratseries, regular, special, words
from .coeffs import MPoly, format_coeff
from .words import X, Y


@dataclass(frozen=True)
class RunConfig:
    prec: int = 256
    err: float = 1e-10
    max_weight: int = 8
    fmt: str = "text"
    filters: tuple = ()
    jobs: int = 1

    def __post_init__(self):
        if self.prec < 64:
            raise ValueError("precision must be >= 64 bits")
        if not 1 <= self.max_weight <= 12:
            raise ValueError("max weight must be in 1..12")


def _s(v) -> str:
    if isinstance(v, (int, Fraction)):
        return format_coeff(v)
    if isinstance(v, (mpmath.mpf, mpmath.mpc)):
        return mpmath.nstr(v, 25)
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_s(x) for x in v) + "]"
    return str(v)


def entry(iid, ref, ok, lhs, rhs, bound="0", status=None) -> dict:
    return {
        "identity_id": iid,
        "paper_ref": ref,
        "status": status or ("pass" if ok else "fail"),
        "lhs": _s(lhs),
        "rhs": _s(rhs),
        "bound": _s(bound),
    }


def _mpq(q):
    q = Fraction(q)
    return mpmath.mpf(q.numerator) / q.denominator


# -- checks ---------------------------------------------------------------------------------
# Each takes the RunConfig and returns a list of entries.

def check_zeta_even(cfg):
    out = []
    for k in range(1, 13):
        a, b = special.zeta_even_rational(k), special.zeta_even_bernoulli(k)
        out.append(entry("A01.zeta_even.k%02d" % k, "zeta(2k)/pi^2k composition formula, sign (-1)^(k+l)",
                         a == b, a, b))
    return out


def check_mzv_closed_forms(cfg):
    out = []
    with mp.workprec(cfg.prec):
        pi = mpmath.pi
        cases = [((2, 2), pi ** 4 / 120), ((3, 1), pi ** 4 / 360), ((2, 2, 2), pi ** 6 / 5040)]
        for idx, ref in cases:
            v = special.mzv(idx, cfg.err, cfg.prec)
            rel = abs(v.value - ref) / ref
            out.append(entry("A02.mzv.%s" % "_".join(map(str, idx)), "repeated-index MZV closed forms",
                             rel < 1e-8 and abs(v.value - ref) <= v.bound, v.value, ref, v.bound))
        for fam, k in (("2", 1), ("2", 2), ("2", 3), ("31", 1), ("31", 2), ("4", 1), ("4", 2)):
            idx, q = regular.repeated_mzv_exact(fam, k)
            v = special.mzv(idx, cfg.err, cfg.prec)
            ref = _mpq(q) * pi ** idx.weight
            out.append(entry("A02.repeated.%s.k%d" % (fam, k), "repeated-index MZV closed forms",
                             abs(v.value - ref) <= v.bound, v.value, ref, v.bound))
    return out


_GOLDEN = {
    (-1, -1): ([0, -1, 5, -7, 3], Fraction(11, 24)),
    (-2, -1): ([0, 1, -11, 31, -33, 12], Fraction(-73, 120)),
    (-1, -2): ([0, 1, -9, 23, -23, 8], Fraction(-67, 120)),
}


def check_negindex(cfg):
    out = []
    for idx, (combo, gam) in sorted(_GOLDEN.items()):
        tag = "_".join(str(-p) for p in idx)
        c = regular.negindex_to_starcombo(idx)
        got = c.x1_coeffs()
        out.append(entry("A04.negindex.m%s" % tag, "Li of negative indices as (k x1)* combinations",
                         got == combo, got, combo))
        g = regular.gamma_char(regular.negindex_to_starcombo(idx, Y))
        out.append(entry("A03.gamma.m%s" % tag, "gamma character on negative indices", g == gam, g, gam))
        # Taylor oracle on the first 12 coefficients
        taylor = regular.starcombo_taylor(c, 12)
        brute = regular.negindex_poly_values(idx, 12)
        out.append(entry("A04.taylor.m%s" % tag, "Li of negative indices as (k x1)* combinations",
                         taylor == brute, taylor[:6], brute[:6]))
    return out


def check_stuffle_star(cfg):
    out = []
    W = cfg.max_weight
    a1, a2, b1, b2 = MPoly.gens("a1", "a2", "b1", "b2")
    A = ncalg.TruncSeries(Y, W, {(1,): a1, (2,): a2})
    B = ncalg.TruncSeries(Y, W, {(1,): b1, (2,): b2})
    lhs = ncalg.stuffle(ncalg.star_trunc(A, W), ncalg.star_trunc(B, W))
    C = ncalg.TruncSeries(Y, W, {(1,): a1 + b1, (2,): a2 + b2 + a1 * b1, (3,): a1 * b2 + a2 * b1, (4,): a2 * b2})
    rhs = ncalg.star_trunc(C, W)
    out.append(entry("A05.stuffle_star", "(sum a_s y_s)* st (sum b_s y_s)* = (sum (a_s+b_s) y_s + sum a_s b_r y_(s+r))*",
                     lhs == rhs, "%d terms" % len(lhs.terms), "%d terms" % len(rhs.terms)))
    for r in (1, 2, 3):
        ok = all(regular.newton_girard_H_check(r, None, N) for N in range(0, 21))
        out.append(entry("A05.newton_girard.r%d" % r, "H of (t^r y_r)* via Newton-Girard", ok, "N<=20", "formal t"))
    return out


def check_ystar_exp(cfg):
    out = []
    W = cfg.max_weight
    for r in (1, 2):
        L = ncalg.TruncSeries(Y, W, {(k * r,): Fraction((-1) ** (k - 1), k) for k in range(1, W // r + 1)})
        lhs = ncalg.star_trunc(ncalg.TruncSeries(Y, W, {(r,): 1}), W)
        rhs = ncalg.exp_stuffle(L, W)
        out.append(entry("A06.ystar_exp.r%d" % r, "y_r* = exp_st(sum (-1)^(k-1) y_kr / k)", lhs == rhs,
                         "%d terms" % len(lhs.terms), "%d terms" % len(rhs.terms)))
    return out


def check_euler_complement(cfg):
    out = []
    tol = mpmath.mpf(2) ** -200
    with mp.workprec(cfg.prec):
        for z in (mpmath.mpf("0.1"), mpmath.mpc("0.3", "0.2"), mpmath.mpf("-0.45")):
            s = mpmath.sin(z * mpmath.pi) / (z * mpmath.pi)
            lhs = mpmath.exp(special.ell_r(1, z, cfg.prec)) * mpmath.exp(special.ell_r(1, -z, cfg.prec))
            out.append(entry("A07.complement.z%s" % mpmath.nstr(z, 3), "e^ell_1(z) e^ell_1(-z) = sin(z pi)/(z pi)",
                             abs(lhs - s) < tol, lhs, s, tol))
            g2 = special.gamma_yr(2, 1j * z, cfg.prec)
            out.append(entry("A07.gamma_y2.z%s" % mpmath.nstr(z, 3), "Gamma_y2(1+iz) = z pi / sin(z pi)",
                             abs(g2 - 1 / s) < tol, g2, 1 / s, tol))
    return out


def check_weierstrass3(cfg):
    out = []
    tol = mpmath.mpf(2) ** -200
    for r, q, z in ((1, 3, "0.4"), (2, 3, "0.3")):
        res = special.weierstrass3_check(r, q, mpmath.mpf(z), cfg.prec)
        out.append(entry("A08.weierstrass3.r%d_q%d" % (r, q), "e^ell_qr(z) = prod_chi e^ell_r(chi z), q odd",
                         res < tol, res, 0, tol))
    return out


def check_sum_formula(cfg):
    out = []
    for k in (3, 4, 5):
        rep = regular.sum_formula_check(k, cfg.err, cfg.prec)
        worst = max(v[1] for v in rep.by_depth.values())
        bound = max(v[2] for v in rep.by_depth.values())
        out.append(entry("A09.sum_formula.k%d" % k, "sum formula, reading: each depth separately sums to zeta(k)",
                         rep.passed, worst, 0, bound))
        lumped, res = rep.all_depths
        out.append(entry("A09.sum_formula_lumped.k%d" % k,
                         "sum formula, alternative reading: all depths >= 2 together",
                         True, lumped, rep.zeta_k, res,
                         status="discrepancy" if res > bound else "pass"))
    return out


def check_beta(cfg):
    out = []
    for z, a, b in ((Fraction(1, 2), Fraction(1, 2), Fraction(1, 2)), (Fraction(2, 3), Fraction(1, 3), Fraction(2, 3))):
        with mp.workdps(30):
            ref = mpmath.betainc(_mpq(a), _mpq(b), 0, _mpq(z))
        f1 = regular.li_extended_eval([(0, 0), 0, (a, 1 - b)], z, 1e-12)
        f2 = regular.li_extended_eval([(0, 0), 1, (a - 1, -b)], z, 1e-12)
        tag = "z%s_a%s_b%s" % (z, a, b)
        for name, f in (("x0form", f1), ("x1form", f2)):
            out.append(entry(("A10.partial_beta.%s.%s" % (name, tag)).replace("/", "|"),
                             "comparison formula for the partial Beta function",
                             abs(f.value - ref) < 1e-8, f.value, ref, 1e-8))
    for a, b in ((Fraction(1, 2), Fraction(1, 2)), (Fraction(1, 3), Fraction(2, 3)), (Fraction(1), Fraction(1))):
        bc = regular.beta_gamma_check(a, b, cfg.prec)
        out.append(entry(("A10.beta_gamma.a%s_b%s" % (a, b)).replace("/", "|"),
                         "B(a,b) as a quotient of gamma characters", bc.residual < 1e-20, bc.beta, bc.rhs_roots, 1e-20))
    return out


def _rand_poly(rng, alphabet, max_w, n_terms=3):
    ws = list(words.all_words(alphabet, max_w, max_index=3 if alphabet == Y else None))[1:]
    terms = {}
    for _ in range(n_terms):
        w = rng.choice(ws)
        terms[w.letters] = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
    return ncalg.NcPoly(alphabet, terms)


def check_properties(cfg):
    out = []
    rng = random.Random(20240601)
    ok_sh = ok_st = True
    for _ in range(200):
        for alphabet, prod in ((X, ncalg.shuffle), (Y, ncalg.stuffle)):
            p, q, r = (_rand_poly(rng, alphabet, 2) for _ in range(3))
            one = ncalg.NcPoly.one(alphabet)
            good = (prod(p, q) == prod(q, p) and prod(prod(p, q), r) == prod(p, prod(q, r))
                    and prod(p, one) == p)
            if alphabet == X:
                ok_sh = ok_sh and good
            else:
                ok_st = ok_st and good
    out.append(entry("A11.shuffle_laws", "shuffle is commutative, associative, unital", ok_sh, "200 cases", ""))
    out.append(entry("A11.stuffle_laws", "stuffle is commutative, associative, unital", ok_st, "200 cases", ""))

    W = cfg.max_weight
    for alphabet, ops, atoms in ((X, ["+", "conc", "shuffle"], [(0,), (1,)]),
                                 (Y, ["+", "conc", "stuffle"], [(1,), (2,)])):
        exprs = list(ratseries.enumerate_ratexprs(atoms, ops, 6))
        memo = {}
        bad = [e for e in exprs
               if ratseries.to_series(ratseries.to_rep(e, alphabet), W) != ratseries.to_trunc(e, alphabet, W, memo)]
        out.append(entry("A11.ratexpr_oracle.%s" % alphabet, "linear representations of rational operations",
                         not bad, "%d expressions" % len(exprs), "%d mismatches" % len(bad)))

    good = True
    for _ in range(20):
        alpha = {0: Fraction(rng.randint(-4, 4), rng.randint(1, 4)), 1: Fraction(rng.randint(-4, 4), rng.randint(1, 4))}
        rep = ratseries.conc_character(X, alpha)
        for w in words.all_words(X, 6):
            p = Fraction(1)
            for a in w.letters:
                p *= alpha[a]
            good = good and ratseries.coeff(rep, w) == p
    out.append(entry("A11.conc_character", "(sum alpha_x x)* is a conc-character", good, "20 alphas", "length <= 6"))

    good = True
    for e in list(ratseries.enumerate_ratexprs([(0,), (1, 2)], ["+", "conc", "shuffle"], 4))[:150]:
        r = ratseries.to_rep(e, X)
        m = ratseries.minimize(r)
        mm = ratseries.minimize(m)
        L = 2 * r.dim
        good = good and m.dim <= r.dim and mm.dim == m.dim and \
            ratseries.to_series(m, min(L, 10)) == ratseries.to_series(r, min(L, 10))
    out.append(entry("A11.minimize", "minimization preserves coefficients and is idempotent", good, "150 reps", ""))

    good = True
    for alphabet in (X, Y):
        fast = set(words.lyndon_words(alphabet, 6))
        brute = {w for w in words.all_words(alphabet, 6) if words.is_lyndon(w)}
        good = good and fast == brute
    out.append(entry("A11.lyndon_generation", "Lyndon words by Duval vs suffix test", good, "weight <= 6", ""))

    good = True
    for w in words.all_words(X, 6):
        if not w.letters:
            continue
        p = ncalg.NcPoly.word(w)
        good = good and ncalg.lyndon_recompose(X, ncalg.lyndon_decompose(p)) == p
    out.append(entry("A11.lyndon_decompose", "words as shuffle polynomials in Lyndon words", good, "weight <= 6", ""))
    return out


def check_discrepancies(cfg):
    out = []
    # zeta_sh(-2,-1): reference value -1; character value and finite part computed independently
    for idx, reference in (((-1, -1), 0), ((-2, -1), -1), ((-1, -2), 0)):
        reg = regular.regularize(idx)
        agree = reg.zeta_shuffle == reg.finite_part
        tag = "_".join(str(-p) for p in idx)
        if not agree:
            status = "fail"
        elif reg.zeta_shuffle == reference:
            status = "pass"
        else:
            status = "discrepancy"
        out.append(entry("A12.zeta_shuffle.m%s" % tag, "zeta_sh on negative indices (reference %s)" % reference,
                         agree, "char=%s" % _s(reg.zeta_shuffle), "finite_part=%s reference=%s" % (_s(reg.finite_part), reference),
                         status=status))
    # stated form 4^k zeta({4}^k) = 2 pi^4k/(4k+2)! against the numeric value
    with mp.workprec(cfg.prec):
        for k in (1, 2):
            idx, q = regular.repeated_mzv_exact("4", k)
            v = special.mzv(idx, cfg.err, cfg.prec)
            exact = _mpq(q) * mpmath.pi ** (4 * k)
            stated = _mpq(Fraction(2, 4 ** k * factorial(4 * k + 2))) * mpmath.pi ** (4 * k)
            own = abs(v.value - exact) <= v.bound
            status = "fail" if not own else ("pass" if abs(v.value - stated) <= v.bound else "discrepancy")
            out.append(entry("A12.repeated4.k%d" % k, "stated form 4^k zeta(4,...,4)/pi^4k = 2/(4k+2)!", own,
                             "mzv=%s" % _s(v.value), "stated=%s corrected=%s" % (_s(stated), _s(exact)),
                             v.bound, status=status))
    for idx in ((-1,), (-1, -1), (-2, -1), (-1, -2)):
        tag = "_".join(str(-p) for p in idx)
        lit = regular.stirling_starcombo(idx)
        orc = regular.negindex_to_starcombo(idx)
        # the oracle's own two paths: linear solve vs Taylor coefficients
        own = regular.starcombo_taylor(orc, 12) == regular.negindex_poly_values(idx, 12)
        if not own:
            status = "fail"
        else:
            status = "pass" if lit == orc else "discrepancy"
        out.append(entry("A12.stirling.m%s" % tag, "closed Stirling-number formula for R_y",
                         own, "formula=%s" % _s(lit.x1_coeffs()), "oracle=%s" % _s(orc.x1_coeffs()), status=status))
    return out


CHECKS = {
    "A01": check_zeta_even,
    "A02": check_mzv_closed_forms,
    "A03": check_negindex,
    "A05": check_stuffle_star,
    "A06": check_ystar_exp,
    "A07": check_euler_complement,
    "A08": check_weierstrass3,
    "A09": check_sum_formula,
    "A10": check_beta,
    "A11": check_properties,
    "A12": check_discrepancies,
}


def _run_one(name, cfg):
    try:
        return CHECKS[name](cfg)
    except Exception as exc:  # report, do not crash the suite
        return [entry("%s.error" % name, "suite", False, type(exc).__name__, str(exc))]


# id prefixes produced by each check, used to skip checks a filter cannot match
PREFIXES = {"A03": ("A03", "A04")}


def _wanted(name, filters) -> bool:
    if not filters:
        return True
    prefixes = PREFIXES.get(name, (name,))
    for f in filters:
        # literal head of the glob, up to the first wildcard
        lit = re.split(r"[*?\[]", f, maxsplit=1)[0]
        if any(p.startswith(lit) or lit.startswith(p) for p in prefixes):
            return True
    return False


def run_suite(cfg: RunConfig | None = None) -> list:
    cfg = cfg or RunConfig()
    names = [n for n in CHECKS if _wanted(n, cfg.filters)]
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as ex:
            results = list(ex.map(_run_one, names, [cfg] * len(names)))
    else:
        results = [_run_one(n, cfg) for n in names]
    entries = [e for batch in results for e in batch]
    if cfg.filters:
        entries = [e for e in entries if any(fnmatch.fnmatch(e["identity_id"], f) for f in cfg.filters)]
    return sorted(entries, key=lambda e: e["identity_id"])


def suite_failed(entries) -> bool:
    return any(e["status"] == "fail" for e in entries)
