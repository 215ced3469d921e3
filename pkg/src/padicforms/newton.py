"""Newton polygons, slope factorization and reduction-based irreducibility.

The Newton polygon of f = a_0 + ... + a_d t^d (a_0 a_d != 0) is the lower
convex hull of the points (i, v(a_i)).  Each edge of slope m and
horizontal length l predicts l roots of valuation -m, and f splits into
monic one-edge factors, one per slope, computed here by coprime two-block
Hensel lifting at each interior vertex.

For a monic one-edge polynomial of slope m with denominator d, the
coefficients sitting on the edge reduce to a polynomial over the residue
field in the variable ubar (the image of pi^(m d) t^d).  Irreducibility
of the reduction with matching degree certifies irreducibility of the
polynomial itself, as does d = deg (the Eisenstein-type case).  These are
the only two irreducibility criteria implemented; everything in this
package that needs an irreducible polynomial is built to go through them
or through rational linear factors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    BadDecomposition,
    NotOneEdge,
    PrecisionExhausted,
    PreconditionFailed,
    SearchBudgetExhausted,
    SlopeCollision,
    ZeroEndpoint,
)
from .padics import INFINITY, rational_mod_pk
from .polynomials import PadicPolynomial


@dataclass(frozen=True)
class Edge:
    """One edge of a Newton polygon, from (i0, v0) to (i1, v1)."""

    i0: int
    v0: Fraction
    i1: int
    v1: Fraction
    slope: Fraction
    length: int

    def line_value(self, beta):
        """Height of the edge's supporting line at abscissa beta."""
        return self.v0 + self.slope * (beta - self.i0)


@dataclass(frozen=True)
class NewtonPolygon:
    """Lower convex hull data: all points, vertices, and edges.

    Vertices include both endpoints; interior points lying on an edge are
    not vertices.  Slopes strictly increase left to right.
    """

    points: tuple
    vertices: tuple
    edges: tuple

    @property
    def slopes(self):
        return tuple(e.slope for e in self.edges)

    def single_edge(self) -> Edge:
        if len(self.edges) != 1:
            raise NotOneEdge(f"polygon has {len(self.edges)} edges")
        return self.edges[0]

    def all_vertices_even(self) -> bool:
        return all(i % 2 == 0 for i, _ in self.vertices)

    def odd_vertices(self):
        return [(i, v) for i, v in self.vertices if i % 2]


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def newton_polygon(f: PadicPolynomial) -> NewtonPolygon:
    """Newton polygon of f; requires a_0 a_d != 0."""
    if f.is_zero() or f.field.is_zero(f.constant_coefficient()):
        raise ZeroEndpoint("newton_polygon needs a_0 != 0 and f != 0")
    pts = [
        (i, f.field.valuation(c))
        for i, c in enumerate(f.coeffs)
        if not f.field.is_zero(c)
    ]
    hull = []
    for pt in pts:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], pt) <= 0:
            hull.pop()
        hull.append(pt)
    vertices = tuple(hull)
    edges = []
    for (i0, v0), (i1, v1) in zip(hull, hull[1:]):
        edges.append(Edge(i0, v0, i1, v1, Fraction(v1 - v0, i1 - i0), i1 - i0))
    if not edges:
        # constant polynomial: degenerate polygon with a single point
        edges = ()
    return NewtonPolygon(tuple(pts), vertices, tuple(edges))


def slope_denominator(slope) -> int:
    """Denominator d of the slope (1 for slope 0)."""
    return Fraction(slope).denominator


# ---------------------------------------------------------------------------
# slope factorization
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SlopeFactor:
    poly: PadicPolynomial
    slope: Fraction
    degree: int
    denominator: int


@dataclass(frozen=True)
class SlopeFactorization:
    """f = unit * prod(factors), each factor monic with one edge.

    The product matches f with residual coefficient valuations above the
    digit target used to compute it.
    """

    unit: object
    factors: tuple
    digits: int

    def product(self, field) -> PadicPolynomial:
        out = PadicPolynomial((self.unit,), field)
        for fac in self.factors:
            out = out * fac.poly
        return out

    def residual_valuation(self, f: PadicPolynomial):
        diff = self.product(f.field) - f
        return min_coefficient_valuation(diff)


def min_coefficient_valuation(f: PadicPolynomial):
    if f.is_zero():
        return INFINITY
    return min(f.field.valuation(c) for c in f.coeffs)


def _poly_egcd(a: PadicPolynomial, b: PadicPolynomial):
    """Extended Euclid: returns (g, u, v) with u a + v b = g, g monic."""
    field = a.field
    r0, r1 = a, b
    u0, u1 = PadicPolynomial.one(field), PadicPolynomial.zero(field)
    v0, v1 = PadicPolynomial.zero(field), PadicPolynomial.one(field)
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, u0 - q * u1
        v0, v1 = v1, v0 - q * v1
    if r0.is_zero():
        raise PreconditionFailed("egcd of zero polynomials")
    lc_inv = field.inv(r0.leading_coefficient())
    return r0 * lc_inv, u0 * lc_inv, v0 * lc_inv


def _truncate_coeff(c, k: int, ctx):
    """A rational congruent to c modulo p^k with height bounded by ~p^k."""
    if c == 0:
        return c
    v = ctx.vp(c)
    if v >= k:
        return Fraction(0)
    u = Fraction(c) * Fraction(ctx.p) ** (-v)
    rep = u.numerator * pow(u.denominator, -1, ctx.p ** (k - v)) % ctx.p ** (k - v)
    return Fraction(rep) * Fraction(ctx.p) ** v


def _truncate_poly(f: PadicPolynomial, k: int) -> PadicPolynomial:
    ctx = f.field.context
    return PadicPolynomial([_truncate_coeff(c, k, ctx) for c in f.coeffs], f.field)


def _two_block_lift(f: PadicPolynomial, r: int, target, max_iter: int = 200):
    """Split monic f = g * h at the polygon vertex of abscissa r.

    g carries the edges left of the vertex (deg r), h the rest; both
    monic.  Newton refinement on the pair, with coefficients truncated
    modulo p^(target + guard) every step to keep heights bounded; the
    caller re-checks the product residual exactly.
    """
    field = f.field
    if field.is_extension:
        raise PreconditionFailed("two-block lifting implemented over Q_p coefficients")
    guard = int(target) + 24
    a_r = f[r]
    g = PadicPolynomial(list(f.coeffs[: r + 1]), field) * field.inv(a_r)
    h = PadicPolynomial(list(f.coeffs[r:]), field)
    best = None
    stall = 0
    for _ in range(max_iter):
        e = f - g * h
        cur = min_coefficient_valuation(e)
        if cur == INFINITY or cur > target:
            return g, h
        if best is not None and cur <= best:
            stall += 1
            if stall >= 6:
                raise PrecisionExhausted(
                    f"two-block lifting stalled at residual valuation {cur}"
                )
        else:
            stall = 0
            best = cur
        one, u, v = _poly_egcd(g, h)
        if one.degree != 0:
            raise PrecisionExhausted("block approximations are not coprime")
        dg = (e * v) % g
        q = (e * v) // g
        dh = e * u + q * h
        g = _truncate_poly(g + dg, guard)
        h = _truncate_poly(h + dh, guard)
    raise PrecisionExhausted("two-block lifting did not reach the digit target")


def slope_factorization(f: PadicPolynomial, digits: int) -> SlopeFactorization:
    """Factor f according to the slopes of its Newton polygon.

    Returns the leading coefficient as unit and one monic factor per
    slope, each with a one-edge polygon; the product agrees with f to
    coefficient valuations above ``digits``.
    """
    polygon = newton_polygon(f)
    unit = f.leading_coefficient()
    fm = f.monic()
    slopes = polygon.slopes

    work = digits + 8
    for _attempt in range(4):
        try:
            parts = _split_all(fm, work)
        except PrecisionExhausted:
            work *= 2
            continue
        factors = tuple(
            SlopeFactor(p, s, p.degree, slope_denominator(s))
            for p, s in zip(parts, slopes)
        )
        result = SlopeFactorization(unit, factors, digits)
        if result.residual_valuation(f) > digits:
            return result
        work *= 2
    raise PrecisionExhausted("slope factorization residual below digit target")


def _split_all(fm: PadicPolynomial, work):
    polygon = newton_polygon(fm)
    if len(polygon.edges) <= 1:
        return [fm]
    r = polygon.vertices[1][0]
    g, h = _two_block_lift(fm, r, work)
    return [g] + _split_all(h, work)


# ---------------------------------------------------------------------------
# reduction to the residue field and irreducibility
# ---------------------------------------------------------------------------


class FiniteFieldPoly:
    """Polynomial over the prime residue field F_p, coefficients in [0, p)."""

    __slots__ = ("coeffs", "p")

    def __init__(self, coeffs, p: int):
        cs = [c % p for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)
        self.p = p

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def __getitem__(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __eq__(self, other):
        return (
            isinstance(other, FiniteFieldPoly)
            and self.p == other.p
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.coeffs, self.p))

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return FiniteFieldPoly([self[k] + other[k] for k in range(n)], self.p)

    def __sub__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return FiniteFieldPoly([self[k] - other[k] for k in range(n)], self.p)

    def __mul__(self, other):
        if isinstance(other, int):
            return FiniteFieldPoly([c * other for c in self.coeffs], self.p)
        if self.is_zero() or other.is_zero():
            return FiniteFieldPoly((), self.p)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return FiniteFieldPoly(out, self.p)

    def __divmod__(self, other):
        if other.is_zero():
            raise ZeroDivisionError
        p = self.p
        inv = pow(other.coeffs[-1], -1, p)
        r = list(self.coeffs)
        q = [0] * max(0, len(r) - len(other.coeffs) + 1)
        while len(r) >= len(other.coeffs) and r:
            c = r[-1] * inv % p
            k = len(r) - len(other.coeffs)
            q[k] = c
            for j, b in enumerate(other.coeffs):
                r[k + j] = (r[k + j] - c * b) % p
            while r and r[-1] == 0:
                r.pop()
        return FiniteFieldPoly(q, p), FiniteFieldPoly(r, p)

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        if a.is_zero():
            return a
        return a * pow(a.coeffs[-1], -1, self.p)

    def pow_mod(self, n: int, mod: "FiniteFieldPoly"):
        out = FiniteFieldPoly((1,), self.p)
        base = self % mod
        while n:
            if n & 1:
                out = (out * base) % mod
            base = (base * base) % mod
            n >>= 1
        return out

    def monic(self):
        if self.is_zero():
            raise PreconditionFailed("zero polynomial")
        return self * pow(self.coeffs[-1], -1, self.p)

    def to_text(self, var: str = "u") -> str:
        if self.is_zero():
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self[k]
            if not c:
                continue
            if k == 0:
                body = str(c)
            else:
                head = "" if c == 1 else f"{c}*"
                body = f"{head}{var}" if k == 1 else f"{head}{var}^{k}"
            parts.append(body)
        return " + ".join(parts)

    def __repr__(self):
        return f"FiniteFieldPoly({self.to_text()} over F_{self.p})"


def finite_field_irreducible(g: FiniteFieldPoly) -> bool:
    """Irreducibility over F_p by the gcd-with-Frobenius-powers test."""
    n = g.degree
    if n <= 0:
        return False
    if n == 1:
        return True
    p = g.p
    x = FiniteFieldPoly((0, 1), p)
    if x.pow_mod(p ** n, g) != x % g:
        return False
    for r in _prime_divisors(n):
        d = x.pow_mod(p ** (n // r), g) - (x % g)
        if g.gcd(d).degree != 0:
            return False
    return True


def _prime_divisors(n: int):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def reduce_one_edge(f: PadicPolynomial) -> FiniteFieldPoly:
    """Reduction of a monic one-edge polynomial to F_p[ubar].

    The coefficient of t^beta contributes res(c_beta pi^(m (deg f - beta)))
    at ubar^(beta/d) when the point (beta, v(c_beta)) lies on the edge;
    off-edge points reduce to zero.  Leading and constant digits always
    survive for a monic one-edge input.
    """
    field = f.field
    if field.is_extension:
        raise PreconditionFailed("reduction implemented over Q_p coefficients")
    if not f.is_monic():
        raise PreconditionFailed("reduce_one_edge expects a monic polynomial")
    edge = newton_polygon(f).single_edge()
    m = edge.slope
    d = slope_denominator(m)
    ctx = field.context
    n = f.degree
    digits = [0] * (n // d + 1)
    for beta, c in enumerate(f.coeffs):
        if field.is_zero(c):
            continue
        line = m * (beta - n)
        if field.valuation(c) != line:
            continue
        # on-edge points automatically satisfy d | beta
        unit = Fraction(c) * ctx.uniformizer ** int(m * (n - beta))
        digits[beta // d] = rational_mod_pk(unit, ctx.p, 1)
    return FiniteFieldPoly(digits, ctx.p)


def reduction_irreducibility(c: PadicPolynomial) -> bool:
    """Certify irreducibility of a one-edge polynomial over Q_p.

    True when the slope denominator equals the degree (Eisenstein-type),
    or when the reduction to F_p[ubar] is irreducible with
    d * deg(reduction) = deg(c).  False means "not certified by these
    criteria", which includes genuinely reducible inputs.
    """
    cm = c.monic()
    edge = newton_polygon(cm).single_edge()
    d = slope_denominator(edge.slope)
    if cm.degree == d:
        return True
    cbar = reduce_one_edge(cm)
    return d * cbar.degree == cm.degree and finite_field_irreducible(cbar)


# ---------------------------------------------------------------------------
# one-edge square-class evaluation
# ---------------------------------------------------------------------------


def square_class_at_root_one_edge(f, a, g, z, big_n, alpha):
    """Square class of f(alpha) read off one end of a one-edge polynomial.

    Requires f = a + g t^N + z t^(2N + deg g - deg z) with deg a < N,
    deg z < N, deg g and deg z even, f of even degree with f(0) != 0 and a
    one-edge polygon of slope m != -v(alpha), and N > v(4)/|m + v(alpha)|.
    Then f(alpha) lies in the square class of z(alpha) when m < -v(alpha)
    and of a(alpha) when m > -v(alpha).

    Returns the canonical square-class representative (a rational over the
    base field, or an extension square-class tag).  The zero polynomial is
    allowed for g; its degree is treated as 0 in the shape arithmetic.
    """
    from .extensions import square_class_of  # late import to avoid a cycle
    from .padics import square_class_rational

    field = f.field
    ctx = field.context if not field.is_extension else field.base_context
    if f.degree % 2:
        raise BadDecomposition("f must have even degree")
    if field.is_zero(f.constant_coefficient()):
        raise BadDecomposition("f(0) must be nonzero")
    deg_g = g.degree if not g.is_zero() else 0
    deg_z = z.degree if not z.is_zero() else 0
    if z.is_zero():
        raise BadDecomposition("z must be nonzero (it carries the leading term)")
    if deg_g % 2 or deg_z % 2:
        raise BadDecomposition("deg g and deg z must be even")
    if not (a.degree < big_n and deg_z < big_n):
        raise BadDecomposition("deg a and deg z must be below N")
    rebuilt = a + g.shift(big_n) + z.shift(2 * big_n + deg_g - deg_z)
    if rebuilt != f:
        raise BadDecomposition("f does not match a + g t^N + z t^(2N+deg g-deg z)")
    m = newton_polygon(f).single_edge().slope
    v_alpha = _valuation_of_point(alpha, f)
    if m == -v_alpha:
        raise SlopeCollision(f"slope {m} equals -v(alpha)")
    if big_n <= Fraction(ctx.v4) / abs(m + v_alpha):
        raise BadDecomposition("N does not satisfy N > v(4)/|m + v(alpha)|")
    side = z if m < -v_alpha else a
    value = side.evaluate(alpha)
    if value == 0 or getattr(value, "is_zero", lambda: False)():
        raise BadDecomposition("degenerate evaluation; preconditions violated")
    if isinstance(value, Fraction):
        return square_class_rational(value, ctx)
    return square_class_of(value)


def _valuation_of_point(alpha, f):
    if isinstance(alpha, (int, Fraction)):
        return f.field.context.vp(alpha) if not f.field.is_extension else f.field.base_context.vp(alpha)
    return alpha.valuation


# ---------------------------------------------------------------------------
# randomized irreducible search with a top-coefficient window
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WindowSearchResult:
    cbar: FiniteFieldPoly
    qbar1: FiniteFieldPoly
    e_prime: int
    samples: int


def random_irreducible_search(
    hbar: FiniteFieldPoly,
    rho: int,
    n_prime: int,
    cap_g: int,
    rng,
    e_prime_start: int | None = None,
    max_escalations: int = 24,
    samples_per_shape: int = 400,
) -> WindowSearchResult:
    """Find an irreducible cbar = abar + qbar1 * bbar inside the window.

    Here abar = hbar + rho u^(N'+G) and bbar = hbar u^(N'+G); qbar1 runs
    over u^(e'-N'-G) plus a free part of degree <= e'-2N'-G, with e' even
    escalating from the smallest value making deg cbar >= N' + deg bbar.
    Rejection sampling is seeded and deterministic; prime-polynomial
    density makes termination overwhelmingly likely, and every returned
    polynomial is re-certified by the Frobenius irreducibility test.
    """
    p = hbar.p
    shift = n_prime + cap_g
    abar = hbar + FiniteFieldPoly((0,) * shift + (rho,), p)
    bbar = FiniteFieldPoly((0,) * shift + (1,), p) * hbar
    if abar.gcd(bbar).degree != 0:
        raise PreconditionFailed("abar and bbar are not coprime")

    e0 = 2 * n_prime + cap_g
    if e0 % 2:
        e0 += 1
    if e_prime_start is not None:
        e0 = max(e0, e_prime_start + (e_prime_start % 2))
    samples = 0
    for step in range(max_escalations):
        e_prime = e0 + 2 * step
        free_deg = e_prime - 2 * n_prime - cap_g
        space = p ** (free_deg + 1)
        budget = min(samples_per_shape, 4 * space)
        seen = set()
        for _ in range(budget):
            free = tuple(rng.randrange(p) for _ in range(free_deg + 1))
            if free in seen and space <= samples_per_shape:
                continue
            seen.add(free)
            qbar1 = FiniteFieldPoly(
                list(free) + [0] * (e_prime - n_prime - cap_g - free_deg - 1) + [1], p
            )
            cbar = abar + qbar1 * bbar
            samples += 1
            if cbar.degree != hbar.degree + e_prime:
                continue
            if finite_field_irreducible(cbar):
                return WindowSearchResult(cbar, qbar1, e_prime, samples)
    raise SearchBudgetExhausted(
        f"no irreducible polynomial found after {samples} samples"
    )
