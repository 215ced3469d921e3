"""Exact arithmetic in Q_p: valuations, squares, square classes, Hilbert symbols.

All values are plain rationals (`fractions.Fraction`); nothing is ever
rounded.  A :class:`PadicContext` pins the prime p, the uniformizer pi
(pi = p unless the caller overrides it) and a precision cap used only when
truncated digit expansions are emitted.  The valuation is normalized so
that v(pi) = 1, and extends to finite extensions with values in (1/e)Z.

The Hilbert symbol over Q_p is computed by the classical unit/valuation
case formulas; an independent residue-search oracle lives in
:mod:`padicforms.oracles` and the two are compared in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import PreconditionFailed

INFINITY = math.inf

_RAT = (int, Fraction)


def is_prime(n: int) -> bool:
    """Deterministic primality test, adequate for word-sized primes."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    # deterministic Miller-Rabin for n < 3.3 * 10^24
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def vp_int(n: int, p: int) -> int:
    """p-adic order of a nonzero integer."""
    if n == 0:
        raise ValueError("vp_int(0) is infinite")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp_rational(x, p: int):
    """p-adic order of a rational; +infinity for 0."""
    x = Fraction(x)
    if x == 0:
        return INFINITY
    return vp_int(x.numerator, p) - vp_int(x.denominator, p)


def legendre_int(a: int, p: int) -> int:
    """Legendre symbol (a|p) for odd p, in {-1, 0, 1}."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def rational_mod_pk(x, p: int, k: int) -> int:
    """Canonical representative of a p-integral rational modulo p^k."""
    x = Fraction(x)
    if vp_rational(x, p) < 0:
        raise PreconditionFailed(f"{x} is not p-integral at p={p}")
    m = p ** k
    return x.numerator * pow(x.denominator, -1, m) % m


@dataclass(frozen=True)
class PadicContext:
    """Fixes the field Q_p: the prime, the uniformizer and a precision cap.

    ``uniformizer`` must be a rational of valuation 1; it defaults to p.
    Symbols depend on this choice, so certificates always record it.
    ``precision_digits`` caps truncated output expansions only; all
    intermediate arithmetic is exact.
    """

    p: int
    precision_digits: int = 64
    uniformizer: Fraction = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.uniformizer is None:
            object.__setattr__(self, "uniformizer", Fraction(self.p))
        else:
            object.__setattr__(self, "uniformizer", Fraction(self.uniformizer))
        if vp_rational(self.uniformizer, self.p) != 1:
            raise ValueError(f"uniformizer {self.uniformizer} has valuation != 1")
        if self.precision_digits < 2 * self.v4 + 4:
            raise ValueError("precision_digits below 2*v(4) + 4")

    @property
    def v4(self) -> int:
        """v(4) = 2 v(2); the Hensel margin for square testing."""
        return 2 if self.p == 2 else 0

    def vp(self, x):
        return vp_rational(x, self.p)

    def unit_part(self, x) -> tuple[int, Fraction]:
        """Write x = p^v * u with u a p-adic unit; returns (v, u)."""
        x = Fraction(x)
        if x == 0:
            raise PreconditionFailed("0 has no unit part")
        v = self.vp(x)
        return v, x / Fraction(self.p) ** v

    def unit_residue(self, x, k: int = 1) -> int:
        """Residue mod p^k of the unit part of x."""
        _, u = self.unit_part(x)
        return rational_mod_pk(u, self.p, k)

    def least_nonresidue(self) -> int:
        """Smallest positive quadratic nonresidue mod p (odd p only)."""
        if self.p == 2:
            raise PreconditionFailed("no canonical nonresidue for p = 2")
        n = 2
        while legendre_int(n, self.p) == 1:
            n += 1
        return n

    def scalar(self, x) -> "PadicScalar":
        return PadicScalar(Fraction(x), self)


def valuation(x):
    """Normalized valuation of a scalar (v(pi) = 1); +infinity at 0.

    Accepts a :class:`PadicScalar` or a field element from an extension
    (anything exposing a ``valuation`` attribute or property).
    """
    if isinstance(x, PadicScalar):
        return x.valuation
    v = getattr(x, "valuation", None)
    if v is None:
        raise TypeError(f"no valuation defined for {type(x).__name__}")
    return v


class PadicScalar:
    """An exact rational viewed as an element of Q_p.

    Thin immutable wrapper pairing a Fraction with its context; arithmetic
    is exact and returns new scalars.
    """

    __slots__ = ("value", "context")

    def __init__(self, value, context: PadicContext):
        object.__setattr__(self, "value", Fraction(value))
        object.__setattr__(self, "context", context)

    def __setattr__(self, *a):  # pragma: no cover - immutability guard
        raise AttributeError("PadicScalar is immutable")

    def _coerce(self, other):
        if isinstance(other, PadicScalar):
            if other.context != self.context:
                raise ValueError("mixed contexts")
            return other.value
        if isinstance(other, _RAT):
            return Fraction(other)
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else PadicScalar(self.value + v, self.context)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else PadicScalar(self.value - v, self.context)

    def __rsub__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else PadicScalar(v - self.value, self.context)

    def __mul__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else PadicScalar(self.value * v, self.context)

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else PadicScalar(self.value / v, self.context)

    def __rtruediv__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else PadicScalar(v / self.value, self.context)

    def __pow__(self, n: int):
        return PadicScalar(self.value ** n, self.context)

    def __neg__(self):
        return PadicScalar(-self.value, self.context)

    def __eq__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else self.value == v

    def __hash__(self):
        return hash((self.value, self.context.p))

    def __repr__(self):
        return f"PadicScalar({self.value} in Q_{self.context.p})"

    @property
    def valuation(self):
        return self.context.vp(self.value)

    def is_square(self) -> bool:
        return is_square_rational(self.value, self.context)

    def square_class(self) -> Fraction:
        return square_class_rational(self.value, self.context)


def is_square_rational(x, ctx: PadicContext) -> bool:
    """Exact squareness test in Q_p.

    Strips the even-valuation part, then certifies the unit part by a
    Hensel-conclusive residue test: a unit u is a square iff some residue
    a mod p^(v(4)+1) has v(a^2 - u) > v(4).  For odd p that is the residue
    being a square mod p; for p = 2 it is u = 1 mod 8.
    """
    x = Fraction(x)
    if x == 0:
        raise PreconditionFailed("is_square is undefined at 0")
    v, u = ctx.unit_part(x)
    if v % 2 != 0:
        return False
    k = ctx.v4 + 1
    target = rational_mod_pk(u, ctx.p, k)
    return any((a * a - target) % ctx.p ** k == 0 for a in range(1, ctx.p ** k) if a % ctx.p)


def square_class_rational(x, ctx: PadicContext) -> Fraction:
    """Canonical square-class representative of x in Q_p*.

    Odd p: {1, u, p, u p} with u the least positive nonresidue mod p.
    p = 2: {1, 5, -1, -5, 2, 10, -2, -10}.
    The sets are fixed so that emitted certificates are byte-stable.
    """
    x = Fraction(x)
    if x == 0:
        raise PreconditionFailed("square_class is undefined at 0")
    v, u = ctx.unit_part(x)
    p = ctx.p
    if p != 2:
        un = ctx.least_nonresidue()
        unit_rep = 1 if legendre_int(rational_mod_pk(u, p, 1), p) == 1 else un
    else:
        unit_rep = {1: 1, 3: -5, 5: 5, 7: -1}[rational_mod_pk(u, 2, 3)]
    return Fraction(unit_rep * (p if v % 2 else 1))


def hilbert_symbol_qp(a, b, ctx: PadicContext) -> int:
    """Hilbert symbol (a, b) over Q_p, in {-1, +1}.

    (a, b) = 1 iff z^2 = a x^2 + b y^2 has a nontrivial solution.
    Classical case formulas: for odd p with a = p^alpha u, b = p^beta w,
        (a, b) = (-1|p)^(alpha beta) (u|p)^beta (w|p)^alpha ;
    for p = 2 the epsilon/omega exponent formula on units mod 8.
    """
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise PreconditionFailed("hilbert symbol needs nonzero arguments")
    p = ctx.p
    al, u = ctx.unit_part(a)
    be, w = ctx.unit_part(b)
    if p != 2:
        um = rational_mod_pk(u, p, 1)
        wm = rational_mod_pk(w, p, 1)
        s = legendre_int(-1, p) ** (al * be) * legendre_int(um, p) ** be * legendre_int(wm, p) ** al
        return 1 if s == 1 else -1
    um = rational_mod_pk(u, 2, 3)
    wm = rational_mod_pk(w, 2, 3)
    eps_u, eps_w = (um - 1) // 2 % 2, (wm - 1) // 2 % 2
    om_u, om_w = (um * um - 1) // 8 % 2, (wm * wm - 1) // 8 % 2
    return -1 if (eps_u * eps_w + al * om_w + be * om_u) % 2 else 1


def square_class_representatives(ctx: PadicContext) -> list[Fraction]:
    """The canonical representatives of Q_p*/(Q_p*)^2, in fixed order."""
    if ctx.p == 2:
        return [Fraction(r) for r in (1, 5, -1, -5, 2, 10, -2, -10)]
    u = ctx.least_nonresidue()
    return [Fraction(r) for r in (1, u, ctx.p, u * ctx.p)]
