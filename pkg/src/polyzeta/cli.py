"""Command-line interface: ``polyzeta <command> ...``."""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import mpmath

from . import ncalg, ratseries, regular, special, verify
from .coeffs import format_coeff
from .words import X, Y, WordError, as_composition, lyndon_factorize, lyndon_words, parse_word


def _num(v, bound=None, prec: int = 256) -> str:
    """Decimal string; with a bound, only a few digits past the guaranteed ones."""
    if isinstance(v, (int, Fraction)):
        return format_coeff(v)
    digits = int(prec * 0.30103)
    if bound is not None and bound > 0:
        digits = min(digits, max(15, int(-mpmath.log10(bound)) + 3))
    return mpmath.nstr(v, digits)


def _common(p: argparse.ArgumentParser):
    p.add_argument("--prec-bits", type=int, default=256, help="working precision in bits (>= 64)")
    p.add_argument("--err", type=float, default=1e-10, help="absolute error target for summations")
    p.add_argument("--max-weight", type=int, default=8, help="truncation weight W (<= 12)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--jobs", type=int, default=1, help="parallel workers for verify")
    p.add_argument("--filter", action="append", default=[], help="identity-id glob (repeatable)")


def _alphabet(text: str) -> str:
    t = text.strip().upper()
    if t not in (X, Y):
        raise WordError("alphabet must be X or Y, got %r" % text)
    return t


def _emit(args, text: str, payload):
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(text)


# -- commands -------------------------------------------------------------------------------

def cmd_lyndon(args):
    alphabet = _alphabet(args.alphabet)
    if args.factor:
        w = parse_word(args.factor, alphabet)
        fs = lyndon_factorize(w)
        _emit(args, " | ".join(str(f) for f in fs), [str(f) for f in fs])
        return 0
    if args.weight > 12:
        raise ValueError("max weight must be <= 12")
    ws = lyndon_words(alphabet, args.weight)
    _emit(args, "\n".join(str(w) for w in ws), [str(w) for w in ws])
    return 0


def _product(args, fn):
    p = ncalg.parse_poly(args.p)
    q = ncalg.parse_poly(args.q, p.alphabet)
    r = fn(p, q)
    _emit(args, str(r), json.loads(r.to_json()))
    return 0


def cmd_shuffle(args):
    return _product(args, ncalg.shuffle)


def cmd_stuffle(args):
    return _product(args, ncalg.stuffle)


def cmd_star(args):
    W = args.weight if args.weight is not None else args.max_weight
    if W > 12:
        raise ValueError("max weight must be <= 12")
    s = ncalg.parse_poly(args.expr)
    r = ncalg.star_trunc(s, W, args.product)
    _emit(args, str(r), json.loads(r.to_json()))
    return 0


def cmd_minimize(args):
    text = sys.stdin.read() if args.rep == "-" else args.rep
    if not text.lstrip().startswith("{"):
        with open(text) as fh:
            text = fh.read()
    r = ratseries.LinRep.from_json(text)
    m = ratseries.minimize(r)
    _emit(args, "dim %d -> %d\n%s" % (r.dim, m.dim, m.to_json()), m.to_dict())
    return 0


def cmd_mzv(args):
    idx = as_composition(args.index)
    if args.method == "em":
        v = special.mzv_em(idx, prec=args.prec_bits)
    else:
        v = special.mzv(idx, args.err, args.prec_bits)
    val = _num(v.value, v.bound, args.prec_bits)
    _emit(args, "zeta%s = %s  (bound %s)" % (idx, val, mpmath.nstr(v.bound, 5)),
          {"index": str(idx), "value": val, "bound": mpmath.nstr(v.bound, 10), "method": args.method})
    return 0


def cmd_hsum(args):
    idx = as_composition(args.index)
    v = special.harmonic_sum(idx, args.n)
    _emit(args, "H%s(%d) = %s" % (idx, args.n, format_coeff(v)),
          {"index": str(idx), "n": args.n, "value": format_coeff(v)})
    return 0


def cmd_li(args):
    idx = as_composition(args.index)
    z = mpmath.mpmathify(args.z)
    v = special.li_numeric(idx, z, args.err, args.prec_bits)
    val = _num(v.value, v.bound, args.prec_bits)
    _emit(args, "Li%s(%s) = %s  (bound %s)" % (idx, args.z, val, mpmath.nstr(v.bound, 5)),
          {"index": str(idx), "z": args.z, "value": val, "bound": mpmath.nstr(v.bound, 10)})
    return 0


def cmd_gammafn(args):
    z = mpmath.mpmathify(args.z)
    with mpmath.workprec(args.prec_bits):
        ell = special.ell_r(args.r, z, args.prec_bits)
        g = special.gamma_yr(args.r, z, args.prec_bits)
    ell, g = _num(ell, prec=args.prec_bits), _num(g, prec=args.prec_bits)
    # both are summed to 2^-prec; the bound field reports that target
    bound = mpmath.nstr(mpmath.mpf(2) ** -args.prec_bits, 5)
    _emit(args, "ell_%d(%s) = %s\nGamma_y%d(1+%s) = %s  (bound %s)" % (args.r, args.z, ell, args.r, args.z, g, bound),
          {"r": args.r, "z": args.z, "ell": ell, "gamma": g, "bound": bound})
    return 0


def cmd_regularize(args):
    reg = regular.regularize(args.index)
    coeffs = reg.combo.x1_coeffs()
    payload = {
        "index": str(reg.index),
        "combo": [format_coeff(c) for c in coeffs[1:]],
        "constant": format_coeff(coeffs[0]) if coeffs else "0",
        "starcombo": str(reg.combo),
        "gamma": format_coeff(reg.gamma),
        "zeta_shuffle": format_coeff(reg.zeta_shuffle),
        "finite_part": format_coeff(reg.finite_part),
    }
    text = "\n".join("%s: %s" % (k, "[%s]" % ", ".join(v) if isinstance(v, list) else v)
                     for k, v in payload.items())
    _emit(args, text, payload)
    return 0


def cmd_verify(args):
    cfg = verify.RunConfig(prec=args.prec_bits, err=args.err, max_weight=args.max_weight,
                           fmt=args.format, filters=tuple(args.filter), jobs=args.jobs)
    entries = verify.run_suite(cfg)
    if args.format == "json":
        print(json.dumps(entries, indent=2))
    else:
        for e in entries:
            print("%-12s %-40s lhs=%s rhs=%s bound=%s" % (e["status"].upper(), e["identity_id"],
                                                          e["lhs"], e["rhs"], e["bound"]))
        counts = {s: sum(e["status"] == s for e in entries) for s in ("pass", "fail", "discrepancy")}
        print("summary: %(pass)d pass, %(fail)d fail, %(discrepancy)d discrepancy" % counts)
        print("sum formula reading adopted: each depth l separately sums to zeta(k)")
    return 1 if verify.suite_failed(entries) else 0


# -- parser ---------------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polyzeta", description="Polyzetas, rational series and regularization.")
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    _common(common)

    p = sub.add_parser("lyndon", parents=[common], help="Lyndon words or a Lyndon factorization")
    p.add_argument("alphabet")
    p.add_argument("weight", type=int, nargs="?", default=4)
    p.add_argument("--factor", help="factorize this word instead of listing")
    p.set_defaults(func=cmd_lyndon)

    for name, fn in (("shuffle", cmd_shuffle), ("stuffle", cmd_stuffle)):
        p = sub.add_parser(name, parents=[common], help="%s product of two polynomials" % name)
        p.add_argument("p")
        p.add_argument("q")
        p.set_defaults(func=fn)

    p = sub.add_parser("star", parents=[common], help="truncated star of a proper polynomial")
    p.add_argument("expr")
    p.add_argument("-W", "--weight", type=int)
    p.add_argument("--product", choices=("conc", "shuffle", "stuffle"), default="conc")
    p.set_defaults(func=cmd_star)

    p = sub.add_parser("minimize", parents=[common], help="minimize a linear representation (JSON, file or -)")
    p.add_argument("rep")
    p.set_defaults(func=cmd_minimize)

    p = sub.add_parser("mzv", parents=[common], help="multiple zeta value")
    p.add_argument("index")
    p.add_argument("--method", choices=("holder", "em"), default="holder")
    p.set_defaults(func=cmd_mzv)

    p = sub.add_parser("hsum", parents=[common], help="exact harmonic sum")
    p.add_argument("index")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_hsum)

    p = sub.add_parser("li", parents=[common], help="polylogarithm")
    p.add_argument("index")
    p.add_argument("z")
    p.set_defaults(func=cmd_li)

    p = sub.add_parser("gammafn", parents=[common], help="ell_r(z) and Gamma_{y_r}(1+z)")
    p.add_argument("r", type=int)
    p.add_argument("z")
    p.set_defaults(func=cmd_gammafn)

    p = sub.add_parser("regularize", parents=[common], help="regularize a negative index")
    p.add_argument("index")
    p.set_defaults(func=cmd_regularize)

    p = sub.add_parser("verify", parents=[common], help="run the identity suite")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.prec_bits < 64:
        print("error: --prec-bits must be >= 64", file=sys.stderr)
        return 2
    if not 1 <= args.max_weight <= 12:
        print("error: --max-weight must be in 1..12", file=sys.stderr)
        return 2
    try:
        with mpmath.workprec(args.prec_bits):
            return args.func(args)
    except (ValueError, ZeroDivisionError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
