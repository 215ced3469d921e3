"""Command-line interface.

Subcommands cover every public operation; all take --prime, --precision,
--uniformizer, --seed and --json.  Exit codes: 0 for success and true
verdicts, 1 for false verdicts, 2 for usage or computation errors.  With
--json the output is a certificate document (schema padic-forms/1) whose
assertions re-verify through the ``verify`` subcommand; identical
arguments and seed produce byte-identical JSON.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from . import certificates as cert
from .errors import PadicFormsError, ParseError
from .padics import PadicContext, hilbert_symbol_qp, square_class_rational
from .parsing import parse_poly, parse_rational_function, parse_rational_scalar
from .polynomials import PadicPolynomial


def _context(args) -> PadicContext:
    precision = args.precision
    if precision is None:
        precision = int(os.environ.get("PADICFORMS_PRECISION", "64"))
    uniformizer = (
        Fraction(args.prime) if args.uniformizer is None else Fraction(args.uniformizer)
    )
    return PadicContext(args.prime, precision, uniformizer)


def _common(sub):
    sub.add_argument("--prime", "-p", type=int, required=True, help="residue prime p")
    sub.add_argument("--precision", type=int, default=None, help="digit cap (default 64)")
    sub.add_argument("--uniformizer", type=str, default=None, help="uniformizer (default p)")
    sub.add_argument("--seed", type=int, default=0, help="seed for randomized searches")
    sub.add_argument("--json", action="store_true", help="emit a JSON certificate")


def _emit(args, command, ctx, result, assertions, human_lines, seed=None):
    if args.json:
        doc = cert.make_certificate(command, ctx, result, assertions, seed=seed)
        sys.stdout.write(cert.dump_certificate(doc))
    else:
        for line in human_lines:
            print(line)


def _cmd_newton(args):
    from .newton import newton_polygon

    ctx = _context(args)
    poly = parse_poly(args.poly, ctx)
    polygon = newton_polygon(poly)
    vertices = [[i, cert.rat_str(v)] for i, v in polygon.vertices]
    slopes = [cert.rat_str(e.slope) for e in polygon.edges]
    result = {
        "poly": poly.to_text(),
        "points": [[i, cert.rat_str(v)] for i, v in polygon.points],
        "vertices": vertices,
        "edges": [
            {"slope": cert.rat_str(e.slope), "length": e.length} for e in polygon.edges
        ],
        "all_vertices_even": polygon.all_vertices_even(),
    }
    assertions = [
        {"kind": "newton-polygon", "poly": poly.to_text(), "vertices": vertices, "slopes": slopes}
    ]
    human = [f"Newton polygon of {poly.to_text()} over Q_{ctx.p}:"]
    human += [f"  vertex at degree {i}, height {v}" for i, v in polygon.vertices]
    human += [f"  edge of slope {e.slope}, length {e.length}" for e in polygon.edges]
    _emit(args, "newton", ctx, result, assertions, human)
    return 0


def _cmd_slopes(args):
    from .newton import slope_factorization

    ctx = _context(args)
    poly = parse_poly(args.poly, ctx)
    fac = slope_factorization(poly, args.digits)
    factors = [[f.poly.to_text(), cert.rat_str(f.slope)] for f in fac.factors]
    result = {
        "poly": poly.to_text(),
        "unit": cert.rat_str(fac.unit),
        "digits": args.digits,
        "factors": [
            {"poly": t, "slope": s, "degree": f.degree, "denominator": f.denominator}
            for (t, s), f in zip(factors, fac.factors)
        ],
    }
    assertions = [
        {
            "kind": "slope-factorization",
            "poly": poly.to_text(),
            "unit": cert.rat_str(fac.unit),
            "digits": args.digits,
            "factors": factors,
        }
    ]
    human = [f"slope factorization of {poly.to_text()} (residual digits > {args.digits}):"]
    human += [f"  slope {f.slope}: {f.poly.to_text()}" for f in fac.factors]
    _emit(args, "slopes", ctx, result, assertions, human)
    return 0


def _cmd_squareclass(args):
    ctx = _context(args)
    x = parse_rational_scalar(args.value, ctx)
    rep = square_class_rational(x, ctx)
    result = {"x": cert.rat_str(x), "representative": cert.rat_str(rep)}
    assertions = [
        {"kind": "square-class", "x": cert.rat_str(x), "representative": cert.rat_str(rep)}
    ]
    _emit(args, "squareclass", ctx, result, assertions, [f"square class of {x} in Q_{ctx.p}: {rep}"])
    return 0


def _cmd_hilbert(args):
    from .oracles import hilbert_by_search

    ctx = _context(args)
    a = parse_rational_scalar(args.a, ctx)
    b = parse_rational_scalar(args.b, ctx)
    value = hilbert_symbol_qp(a, b, ctx)
    oracle = hilbert_by_search(a, b, ctx)
    if value != oracle:
        raise PadicFormsError(f"formula {value} disagrees with search oracle {oracle}")
    result = {"a": cert.rat_str(a), "b": cert.rat_str(b), "value": value, "oracle": oracle}
    assertions = [
        {"kind": "hilbert-base", "a": cert.rat_str(a), "b": cert.rat_str(b), "value": value}
    ]
    _emit(args, "hilbert", ctx, result, assertions, [f"({a}, {b})_{ctx.p} = {value:+d}"])
    return 0


def _cmd_symbol(args):
    from .reciprocity import certify_modulus, legendre_symbol

    ctx = _context(args)
    p = parse_poly(args.p, ctx)
    q = parse_poly(args.q, ctx)
    value = legendre_symbol(p, q, ctx)
    field, evidence = certify_modulus(q, ctx)
    result = {"p": p.to_text(), "q": q.to_text(), "value": value, "modulus_evidence": evidence}
    if not isinstance(field, PadicContext):
        result["field"] = {
            "ramification_index": field.ramification_index,
            "residue_degree": field.residue_degree,
            "uniformizer_coefficients": [cert.rat_str(c) for c in field.uniformizer_elt.coeffs],
        }
    assertions = [
        {"kind": "legendre", "p": p.to_text(), "q": q.to_text(), "value": value},
        {"kind": "irreducible-certified", "poly": q.to_text()},
        {"kind": "coprime", "f": p.to_text(), "g": q.to_text()},
    ]
    _emit(args, "symbol", ctx, result, assertions, [f"<{p.to_text()} / {q.to_text()}> = {value:+d}"])
    return 0


def _law_command(args, runner, law_name, inputs):
    ctx = _context(args)
    res = runner(ctx)
    result = {"law": law_name, "inputs": res.inputs, "values": res.values, "holds": res.holds}
    assertions = [
        {"kind": "law", "law": law_name, "inputs": res.inputs, "values": res.values, "holds": res.holds}
    ]
    human = [f"{law_name}: {'holds' if res.holds else 'FAILS'}", f"  values: {res.values}"]
    _emit(args, inputs, ctx, result, assertions, human)
    return 0 if res.holds else 1


def _cmd_check_mult(args):
    from .reciprocity import check_multiplicativity

    def run(ctx):
        return check_multiplicativity(
            parse_poly(args.p, ctx), parse_poly(args.r, ctx), parse_poly(args.q, ctx), ctx
        )

    return _law_command(args, run, "multiplicativity", "check-mult")


def _cmd_check_recip(args):
    from .reciprocity import check_reciprocity

    def run(ctx):
        return check_reciprocity(parse_poly(args.p, ctx), parse_poly(args.q, ctx), ctx)

    return _law_command(args, run, "reciprocity", "check-recip")


def _cmd_isotropy(args):
    from .oracles import isotropic_by_search
    from .quadform import DiagonalForm, isotropic_over_local

    ctx = _context(args)
    entries = [parse_rational_scalar(e, ctx) for e in args.entries.split(",")]
    verdict = isotropic_over_local(DiagonalForm.make(entries, ctx))
    oracle, witness = isotropic_by_search(entries, ctx)
    if verdict != oracle:
        raise PadicFormsError(f"criterion {verdict} disagrees with search oracle {oracle}")
    result = {
        "entries": [cert.rat_str(e) for e in entries],
        "isotropic": verdict,
        "oracle_witness": witness,
    }
    assertions = [
        {"kind": "isotropy-local", "entries": [cert.rat_str(e) for e in entries], "isotropic": verdict}
    ]
    text = "isotropic" if verdict else "anisotropic"
    _emit(args, "isotropy", ctx, result, assertions, [f"<{args.entries}> over Q_{ctx.p}: {text}"])
    return 0 if verdict else 1


def _construct_assertions(cor, ctx):
    assertions = []
    res = cor.construction
    params = res.params
    assertions.append({"kind": "even-vertices", "poly": params.g_input.to_text()})
    for block in params.blocks:
        for gf in block.factors:
            assertions.append({"kind": "irreducible-certified", "poly": gf.poly.to_text()})
    tg = PadicPolynomial.from_rationals([0, 1], ctx) * params.g_norm
    for sf in res.s_factors:
        assertions.append({"kind": "irreducible-certified", "poly": sf.poly.to_text()})
        assertions.append({"kind": "coprime", "f": sf.poly.to_text(), "g": tg.to_text()})
    for trace in res.traces.values():
        assertions.append(
            {
                "kind": "construct-identity",
                "a": trace.a.to_text(),
                "b": trace.b.to_text(),
                "q": trace.q.to_text(),
                "r": trace.r.to_text(),
                "c": trace.c.to_text(),
                "h": trace.h.to_text(),
                "e": trace.e,
                "pi_exponent": int(trace.slope * trace.e),
            }
        )
    for c in cor.conditions.conditions:
        entry = {
            "kind": "symbol-condition",
            "name": c.name,
            "p": c.p.to_text(),
            "q": c.q.to_text(),
            "lhs": c.lhs,
            "rhs": c.rhs,
            "holds": c.holds,
        }
        if c.rhs_p is not None:
            entry["p2"] = c.rhs_p.to_text()
            entry["q2"] = c.rhs_q.to_text()
        assertions.append(entry)
    for verdict_obj in (cor.milnor_first, cor.milnor_second):
        slot_x, slot_y = verdict_obj.slots
        for test in verdict_obj.tests:
            assertions.append(
                {
                    "kind": "residue-test",
                    "x": slot_x.to_text(),
                    "y": slot_y.to_text(),
                    "place": test.place.to_text(),
                    "symbol": test.symbol_value,
                    "is_zero": test.is_zero,
                }
            )
    return assertions


def _cmd_construct_s(args):
    from .construct import corollary_isotropy

    ctx = _context(args)
    g = parse_poly(args.g, ctx)
    gamma = parse_rational_scalar(args.gamma, ctx)
    factors = None
    if args.factors:
        factors = [parse_poly(t, ctx) for t in args.factors.split(";")]
    cor = corollary_isotropy(gamma, g, ctx, seed=args.seed, factors=factors)
    result = {
        "gamma": cert.rat_str(gamma),
        "g": g.to_text(),
        "isotropic": cor.isotropic,
        "note": cor.note,
    }
    human = [f"gamma = {gamma}, g = {g.to_text()}: {cor.note}"]
    assertions = []
    if cor.construction is not None:
        params = cor.construction.params
        result["s"] = cor.construction.s_poly.to_text()
        result["s_factors"] = [sf.poly.to_text() for sf in cor.construction.s_factors]
        result["g_factors"] = [
            gf.poly.to_text() for b in params.blocks for gf in b.factors
        ]
        result["epsilon"] = cert.rat_str(params.epsilon)
        result["metrics"] = cor.construction.metrics
        assertions = _construct_assertions(cor, ctx)
        human.append(f"s = {cor.construction.s_poly.to_text()}")
        human.append(f"metrics: {cor.construction.metrics}")
        human.append(f"conditions verified: {len(cor.conditions.conditions)}, all hold: {cor.conditions.all_hold}")
    _emit(args, "construct-s", ctx, result, assertions, human, seed=args.seed)
    return 0 if cor.isotropic else 1


def _cmd_predicate(args):
    from .h10 import predicate_vt_nonneg

    ctx = _context(args)
    x = parse_rational_function(args.x, ctx)
    gamma = parse_rational_scalar(args.gamma, ctx) if args.gamma else None
    verdict, pcert = predicate_vt_nonneg(
        x, ctx, gamma=gamma, seed=args.seed,
        attempt_full_construction=args.full_construction,
    )
    result = {
        "x": x.to_text(),
        "verdict": verdict,
        "v_t_x": "inf" if pcert.v_t_x == float("inf") else str(pcert.v_t_x),
        "gamma": cert.rat_str(pcert.gamma),
        "note": pcert.note,
    }
    assertions = [{"kind": "gamma-valid", "gamma": cert.rat_str(pcert.gamma)}]
    human = [f"v_t({x.to_text()}) >= 0: {verdict}"]
    if verdict:
        result["witness_c"] = cert.rat_str(pcert.witness.c)
        assertions.append(
            {
                "kind": "predicate-witness",
                "x": x.to_text(),
                "c": cert.rat_str(pcert.witness.c),
                "g": pcert.witness.g.to_text(),
            }
        )
        human.append(f"witness c = {pcert.witness.c}; all polygon vertices even")
    else:
        h = pcert.report
        from .polynomials import RationalFunction

        assertions.append(
            {
                "kind": "anisotropy-at-t",
                "f": RationalFunction(h.h_num, h.h_den).to_text(),
                "gamma": cert.rat_str(pcert.gamma),
                "v_t_f": pcert.anisotropy.v_t_f,
                "leading_coefficient": cert.rat_str(pcert.anisotropy.leading_coefficient),
                "anisotropic_form": pcert.anisotropy.anisotropic_form,
            }
        )
        human.append(
            f"form {pcert.anisotropy.anisotropic_form} anisotropic at t for every c"
        )
    _emit(args, "predicate", ctx, result, assertions, human, seed=args.seed)
    return 0 if verdict else 1


def _cmd_elliptic(args):
    from .h10 import elliptic_constant_point

    ctx = _context(args)
    y = parse_rational_scalar(args.y, ctx)
    x, witness = elliptic_constant_point(y, ctx, args.digits)
    result = {
        "y": cert.rat_str(y),
        "x": cert.rat_str(Fraction(x)),
        "digits": witness.digits,
        "slack": "inf" if witness.slack == float("inf") else str(witness.slack),
    }
    y2 = y * y
    cubic = f"t^3 - t - {y2.numerator}/{y2.denominator}" if y2 != 0 else "t^3 - t"
    assertions = [
        {"kind": "elliptic-point", "y": cert.rat_str(y), "x": cert.rat_str(Fraction(x)), "digits": witness.digits},
        {
            "kind": "hensel",
            "poly": cubic,
            "start": "0/1",
            "root": cert.rat_str(Fraction(x)),
            "digits": witness.digits,
        },
    ]
    _emit(args, "elliptic-point", ctx, result, assertions,
          [f"x = {x} (mod p^{witness.digits + 1}) solves x^3 - x = {y}^2"])
    return 0


def _cmd_corpus(args):
    ctx = _context(args)
    if args.law == "predicate":
        from .h10 import run_predicate_corpus

        summary = run_predicate_corpus(ctx, args.cases, args.seed)
    else:
        from .reciprocity import run_law_corpus

        summary = run_law_corpus(ctx, args.law, args.cases, args.seed)
    ok = summary["passes"] == summary["cases"]
    assertions = [
        {
            "kind": "law-corpus",
            "law": args.law,
            "cases": summary["cases"],
            "passes": summary["passes"],
            "seed": args.seed,
        }
    ]
    human = [
        f"{args.law} corpus over Q_{ctx.p}, seed {args.seed}:"
        f" {summary['passes']}/{summary['cases']} passed"
    ]
    if summary["failures"]:
        human += [f"  failure: {f}" for f in summary["failures"][:5]]
    _emit(args, "corpus", ctx, summary, assertions, human, seed=args.seed)
    return 0 if ok else 1


def _cmd_verify(args):
    from .certificates import verify_certificate_file

    ok, problems = verify_certificate_file(args.file)
    if ok:
        print(f"{args.file}: certificate verifies")
        return 0
    print(f"{args.file}: certificate REJECTED", file=sys.stderr)
    for p in problems:
        print(f"  {p}", file=sys.stderr)
    return 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="padicforms",
        description="Exact p-adic quadratic form and reciprocity computations",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("newton", help="Newton polygon of a polynomial")
    _common(s)
    s.add_argument("poly")
    s.set_defaults(fn=_cmd_newton)

    s = sub.add_parser("slopes", help="factorization according to the slopes")
    _common(s)
    s.add_argument("poly")
    s.add_argument("--digits", type=int, default=40)
    s.set_defaults(fn=_cmd_slopes)

    s = sub.add_parser("squareclass", help="canonical square-class representative")
    _common(s)
    s.add_argument("value")
    s.set_defaults(fn=_cmd_squareclass)

    s = sub.add_parser("hilbert", help="Hilbert symbol (a, b) over Q_p")
    _common(s)
    s.add_argument("a")
    s.add_argument("b")
    s.set_defaults(fn=_cmd_hilbert)

    s = sub.add_parser("symbol", help="the polynomial Legendre symbol <p/q>")
    _common(s)
    s.add_argument("p")
    s.add_argument("q")
    s.set_defaults(fn=_cmd_symbol)

    s = sub.add_parser("check-mult", help="verify <pr/q> = <p/q><r/q>")
    _common(s)
    s.add_argument("p")
    s.add_argument("r")
    s.add_argument("q")
    s.set_defaults(fn=_cmd_check_mult)

    s = sub.add_parser("check-recip", help="verify the reciprocity law")
    _common(s)
    s.add_argument("p")
    s.add_argument("q")
    s.set_defaults(fn=_cmd_check_recip)

    s = sub.add_parser("isotropy", help="isotropy of a diagonal form over Q_p")
    _common(s)
    s.add_argument("entries", help="comma-separated nonzero rationals")
    s.set_defaults(fn=_cmd_isotropy)

    s = sub.add_parser("construct-s", help="build s and certify both Pfister forms")
    _common(s)
    s.add_argument("g")
    s.add_argument("--gamma", required=True)
    s.add_argument("--factors", help="semicolon-separated monic irreducible factors of g")
    s.set_defaults(fn=_cmd_construct_s)

    s = sub.add_parser("predicate", help="decide v_t(x) >= 0 with certificate")
    _common(s)
    s.add_argument("x", help="rational function in t, e.g. '1/t' or '(t+1)/(t^2-3)'")
    s.add_argument("--gamma", help="constant with i2(gamma) = -1 (default: smallest)")
    s.add_argument("--full-construction", action="store_true",
                   help="also attempt the full auxiliary-polynomial construction")
    s.set_defaults(fn=_cmd_predicate)

    s = sub.add_parser("elliptic-point", help="solve x^3 - x = y^2 by Hensel lifting")
    _common(s)
    s.add_argument("y")
    s.add_argument("--digits", type=int, default=None)
    s.set_defaults(fn=_cmd_elliptic)

    s = sub.add_parser("corpus", help="run a seeded property corpus")
    _common(s)
    s.add_argument("law", choices=["check-mult", "check-recip", "constant",
                                   "pi-invariance", "square-criterion", "predicate"])
    s.add_argument("--cases", type=int, default=100)
    s.set_defaults(fn=_cmd_corpus)

    s = sub.add_parser("verify", help="re-verify a JSON certificate file")
    s.add_argument("file")
    s.set_defaults(fn=_cmd_verify)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except ParseError as exc:
        print(f"parse error at offset {exc.position}: {exc}", file=sys.stderr)
        return 2
    except PadicFormsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
