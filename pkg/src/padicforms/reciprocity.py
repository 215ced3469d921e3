"""The quadratic reciprocity symbol for polynomials over Q_p.

For q monic irreducible with root alpha and p coprime to q, the symbol
<p/q> is the class of <1,pi><1,-p(alpha)> in I^2(K(alpha)) = Z/2,
written multiplicatively as +-1.  It is computed through the norm
projection (p(alpha), -pi)_{K(alpha)} = (N(p(alpha)), -pi)_{Q_p}, with
the norm an exact resultant determinant, and is invariant under
multiplying p by powers of pi.

The laws checked here: multiplicativity <pr/q> = <p/q><r/q>; the
constant rule <c/q> = <c/t>^deg q; and the reciprocity law
<p/q> = <-1/t>^(deg p deg q) <q/p> for distinct monic irreducibles.
The symbol is exposed for q = t as well (evaluation at alpha = 0).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NotCoprime, NotIrreducible, PreconditionFailed
from .extensions import LocalField, is_square
from .newton import reduction_irreducibility
from .padics import PadicContext
from .polynomials import PadicPolynomial
from .quadform import i2_class


def _t_poly(ctx: PadicContext) -> PadicPolynomial:
    return PadicPolynomial.from_rationals([0, 1], ctx)


def is_t(q: PadicPolynomial) -> bool:
    return q.degree == 1 and q.constant_coefficient() == 0 and q.is_monic()


def certify_modulus(q: PadicPolynomial, ctx: PadicContext):
    """Return (residue_field, evidence) for a monic irreducible modulus.

    Degree 1 is trivially irreducible; otherwise the local field
    construction certifies irreducibility by the polygon criteria and
    raises NotIrreducible when it cannot.
    """
    if not q.is_monic() or q.degree < 1:
        raise NotIrreducible("modulus must be monic of degree >= 1")
    if q.degree == 1:
        return ctx, "linear"
    field = LocalField(q, ctx)
    return field, field.irreducibility_evidence


@dataclass(frozen=True)
class SymbolQuery:
    """A validated symbol instance <p/q> over a fixed context.

    Construction certifies the modulus and checks coprimality, so a query
    object always evaluates; the certification evidence is kept for
    certificates.
    """

    p: PadicPolynomial
    q: PadicPolynomial
    context: PadicContext
    evidence: str = ""

    def __post_init__(self):
        _, evidence = certify_modulus(self.q, self.context)
        object.__setattr__(self, "evidence", evidence)
        if self.p.is_zero() or (self.p % self.q).is_zero():
            raise NotCoprime("p and q share a factor")

    def value(self) -> int:
        return legendre_symbol(self.p, self.q, self.context)


def legendre_symbol(p: PadicPolynomial, q: PadicPolynomial, ctx: PadicContext) -> int:
    """<p/q> in {-1, +1}; requires gcd(p, q) = 1 and q monic irreducible."""
    if p.is_zero():
        raise NotCoprime("p vanishes modulo q")
    field, _ = certify_modulus(q, ctx)
    if isinstance(field, PadicContext):
        root = -q.constant_coefficient()
        value = p.evaluate(root)
        if value == 0:
            raise NotCoprime("p vanishes at the root of q")
        return i2_class(value, ctx)
    value = field.from_poly(p)
    if value.is_zero():
        raise NotCoprime("p vanishes modulo q")
    return i2_class(value, field)


def explicit_square_criterion(p: PadicPolynomial, q: PadicPolynomial, ctx: PadicContext) -> int:
    """Odd-p equivalent of the symbol through a single squareness test.

    Over an unramified modulus this is literally: +1 iff
    pi^(-v(p(alpha))) p(alpha) is a square in K(alpha)*.  Over a ramified
    modulus that expression has a fractional exponent, so the equivalent
    unit (-1)^(e w) u^e (-pi)^(-w) is tested instead (w the valuation
    normalized to Z); at e = 1 the two coincide.
    """
    if ctx.p == 2:
        raise PreconditionFailed("the square criterion applies to odd residue characteristic")
    field, _ = certify_modulus(q, ctx)
    pi = ctx.uniformizer
    if isinstance(field, PadicContext):
        value = p.evaluate(-q.constant_coefficient())
        if value == 0:
            raise NotCoprime("p vanishes at the root of q")
        w = ctx.vp(value)
        xi = value * (-pi) ** (-w) * Fraction(-1) ** w
        return 1 if is_square(xi, ctx) else -1
    value = field.from_poly(p)
    if value.is_zero():
        raise NotCoprime("p vanishes modulo q")
    e = field.ramification_index
    w = value.w()
    xi = value ** e * field.embed((-pi) ** (-w) * Fraction(-1) ** (e * w))
    return 1 if is_square(xi) else -1


@dataclass(frozen=True)
class LawCheck:
    """One verified symbol identity with all computed values."""

    law: str
    inputs: dict
    values: dict
    holds: bool


def check_multiplicativity(
    p: PadicPolynomial, r: PadicPolynomial, q: PadicPolynomial, ctx: PadicContext
) -> LawCheck:
    """<p r / q> = <p/q> <r/q>."""
    lhs = legendre_symbol(p * r, q, ctx)
    sp = legendre_symbol(p, q, ctx)
    sr = legendre_symbol(r, q, ctx)
    return LawCheck(
        "multiplicativity",
        {"p": p.to_text(), "r": r.to_text(), "q": q.to_text()},
        {"lhs": lhs, "p_over_q": sp, "r_over_q": sr},
        lhs == sp * sr,
    )


def constant_symbol_check(c, q: PadicPolynomial, ctx: PadicContext) -> LawCheck:
    """<c/q> = <c/t>^(deg q) for constants c in K*."""
    c = Fraction(c)
    if c == 0:
        raise PreconditionFailed("constant must be nonzero")
    cp = PadicPolynomial.from_rationals([c], ctx)
    lhs = legendre_symbol(cp, q, ctx)
    base = legendre_symbol(cp, _t_poly(ctx), ctx)
    rhs = base ** q.degree
    return LawCheck(
        "constant-rule",
        {"c": str(c), "q": q.to_text()},
        {"lhs": lhs, "c_over_t": base, "deg_q": q.degree, "rhs": rhs},
        lhs == rhs,
    )


def check_pi_power_invariance(
    p: PadicPolynomial, q: PadicPolynomial, ctx: PadicContext, powers=(1, 2, 3)
) -> LawCheck:
    """<pi^n p / q> = <p/q> for all n."""
    base = legendre_symbol(p, q, ctx)
    values = {"base": base}
    holds = True
    for n in powers:
        s = legendre_symbol(p * ctx.uniformizer ** n, q, ctx)
        values[f"pi^{n}"] = s
        holds = holds and s == base
    return LawCheck(
        "pi-power-invariance", {"p": p.to_text(), "q": q.to_text()}, values, holds
    )


def check_reciprocity(p: PadicPolynomial, q: PadicPolynomial, ctx: PadicContext) -> LawCheck:
    """<p/q> = <-1/t>^(deg p deg q) <q/p> for distinct monic irreducibles."""
    if p == q:
        raise PreconditionFailed("reciprocity needs distinct irreducibles")
    lhs = legendre_symbol(p, q, ctx)
    minus_one = PadicPolynomial.from_rationals([-1], ctx)
    m1t = legendre_symbol(minus_one, _t_poly(ctx), ctx)
    rhs_sym = legendre_symbol(q, p, ctx)
    rhs = m1t ** (p.degree * q.degree) * rhs_sym
    return LawCheck(
        "reciprocity",
        {"p": p.to_text(), "q": q.to_text()},
        {
            "p_over_q": lhs,
            "minus_one_over_t": m1t,
            "q_over_p": rhs_sym,
            "exponent": p.degree * q.degree,
        },
        lhs == rhs,
    )


def symbol_via_isotropy(p: PadicPolynomial, q: PadicPolynomial, ctx: PadicContext) -> int:
    """The symbol computed through the 4-dimensional isotropy test.

    <p/q> = +1 iff <1, pi, -p(alpha), -pi p(alpha)> is isotropic over
    K(alpha); used as a representation cross-check against i2_class.
    """
    from .quadform import DiagonalForm, isotropic_over_local

    field, _ = certify_modulus(q, ctx)
    pi = ctx.uniformizer
    if isinstance(field, PadicContext):
        u = p.evaluate(-q.constant_coefficient())
        form = DiagonalForm.make([1, pi, -u, -pi * u], ctx)
    else:
        u = field.from_poly(p)
        form = DiagonalForm.make(
            [field.one, field.embed(pi), -u, -(u * field.embed(pi))], field
        )
    return 1 if isotropic_over_local(form) else -1


# ---------------------------------------------------------------------------
# seeded corpus generation
# ---------------------------------------------------------------------------


def random_rational(rng, bound: int = 50) -> Fraction:
    num = 0
    while num == 0:
        num = rng.randint(-bound, bound)
    return Fraction(num, rng.randint(1, bound))


def random_poly(rng, ctx: PadicContext, max_deg: int, scale_padic: bool = True) -> PadicPolynomial:
    """Random nonzero polynomial with small integer times p-power coefficients."""
    deg = rng.randint(0, max_deg)
    coeffs = []
    for k in range(deg + 1):
        c = rng.randint(-9, 9)
        if scale_padic and c and rng.random() < 0.35:
            c *= ctx.p ** rng.randint(1, 2)
        coeffs.append(Fraction(c))
    if all(c == 0 for c in coeffs):
        coeffs[-1] = Fraction(1)
    if coeffs[-1] == 0:
        coeffs[-1] = Fraction(rng.choice([1, -1, 2]))
    return PadicPolynomial.from_rationals(coeffs, ctx)


def random_certified_irreducible(
    rng, ctx: PadicContext, max_deg: int = 4, max_tries: int = 400
) -> PadicPolynomial:
    """Random monic irreducible modulus, certified by the polygon criteria.

    Mixes linear polynomials, Eisenstein-type polynomials, unramified
    reductions and lifted irreducible reductions with denominator 2;
    uncertifiable samples are discarded.
    """
    p = ctx.p
    for _ in range(max_tries):
        deg = rng.randint(1, max_deg)
        kind = rng.random()
        if deg == 1:
            cand = PadicPolynomial.from_rationals([-rng.randint(-9, 9), 1], ctx)
        elif kind < 0.4:
            # Eisenstein: slope -1/deg
            coeffs = [Fraction(p * rng.choice([c for c in range(-4, 5) if c % p]))]
            coeffs += [Fraction(p * rng.randint(-3, 3)) for _ in range(deg - 1)]
            coeffs += [Fraction(1)]
            cand = PadicPolynomial.from_rationals(coeffs, ctx)
        else:
            coeffs = [Fraction(rng.randint(0, p - 1)) for _ in range(deg)] + [Fraction(1)]
            if coeffs[0] == 0:
                coeffs[0] = Fraction(rng.randint(1, p - 1))
            cand = PadicPolynomial.from_rationals(coeffs, ctx)
        if cand.degree == 1:
            return cand
        try:
            if reduction_irreducibility(cand):
                return cand
        except Exception:
            continue
    raise PreconditionFailed("could not sample a certified irreducible modulus")


def random_coprime_poly(rng, ctx, q: PadicPolynomial, max_deg: int = 3) -> PadicPolynomial:
    for _ in range(200):
        p = random_poly(rng, ctx, max_deg)
        if not p.is_zero() and not (p % q).is_zero():
            return p
    raise PreconditionFailed("could not sample a coprime polynomial")


def run_law_corpus(ctx: PadicContext, law: str, cases: int, seed: int):
    """Run a seeded corpus of one symbol law; returns a summary dict."""
    import random

    rng = random.Random(seed)
    passes, failures = 0, []
    for k in range(cases):
        if law == "check-mult":
            q = random_certified_irreducible(rng, ctx)
            p = random_coprime_poly(rng, ctx, q)
            r = random_coprime_poly(rng, ctx, q)
            res = check_multiplicativity(p, r, q, ctx)
        elif law == "constant":
            q = random_certified_irreducible(rng, ctx)
            res = constant_symbol_check(random_rational(rng, 30), q, ctx)
        elif law == "pi-invariance":
            q = random_certified_irreducible(rng, ctx)
            p = random_coprime_poly(rng, ctx, q)
            res = check_pi_power_invariance(p, q, ctx)
        elif law == "check-recip":
            q = random_certified_irreducible(rng, ctx)
            p = random_certified_irreducible(rng, ctx)
            while p == q:
                p = random_certified_irreducible(rng, ctx)
            res = check_reciprocity(p, q, ctx)
        elif law == "square-criterion":
            q = random_certified_irreducible(rng, ctx)
            p = random_coprime_poly(rng, ctx, q)
            s1 = legendre_symbol(p, q, ctx)
            s2 = explicit_square_criterion(p, q, ctx)
            res = LawCheck(
                "square-criterion",
                {"p": p.to_text(), "q": q.to_text()},
                {"i2": s1, "square_criterion": s2},
                s1 == s2,
            )
        else:
            raise PreconditionFailed(f"unknown law {law!r}")
        if res.holds:
            passes += 1
        else:
            failures.append({"case": k, "inputs": res.inputs, "values": res.values})
    return {
        "law": law,
        "prime": ctx.p,
        "seed": seed,
        "cases": passes + len(failures),
        "passes": passes,
        "failures": failures,
    }
