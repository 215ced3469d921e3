"""Exact polynomial and rational-function arithmetic in one variable t.

Coefficients are either rationals (elements of the base field Q_p,
carried as `Fraction`) or elements of a finite extension; the coefficient
domain is described by a field handle exposing ``zero``, ``one``,
``coerce``, ``inv``, ``valuation`` and ``is_zero``.  All arithmetic
(addition, multiplication, Euclidean division, gcd, evaluation,
composition) is exact.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import PreconditionFailed
from .padics import INFINITY, PadicContext


class BaseField:
    """Coefficient handle for Q_p itself: coefficients are Fractions."""

    is_extension = False

    def __init__(self, context: PadicContext):
        self.context = context
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        raise TypeError(f"cannot coerce {type(x).__name__} into Q_{self.context.p}")

    def inv(self, c):
        return 1 / c

    def is_zero(self, c):
        return c == 0

    def valuation(self, c):
        return self.context.vp(c)

    def __eq__(self, other):
        return isinstance(other, BaseField) and other.context == self.context

    def __hash__(self):
        return hash(("QP", self.context))

    def __repr__(self):
        return f"Q_{self.context.p}"


class PadicPolynomial:
    """A polynomial in t over Q_p or an extension, stored exactly.

    Invariant: the last stored coefficient is nonzero unless the
    polynomial is zero (empty coefficient tuple).
    """

    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs, field):
        cs = [field.coerce(c) if not _is_element(c, field) else c for c in coeffs]
        while cs and field.is_zero(cs[-1]):
            cs.pop()
        self.coeffs = tuple(cs)
        self.field = field

    # -- construction -------------------------------------------------

    @classmethod
    def from_rationals(cls, coeffs, context: PadicContext):
        return cls([Fraction(c) for c in coeffs], BaseField(context))

    @classmethod
    def zero(cls, field):
        return cls((), field)

    @classmethod
    def one(cls, field):
        return cls((field.one,), field)

    @classmethod
    def x(cls, field):
        return cls((field.zero, field.one), field)

    @classmethod
    def monomial(cls, c, k, field):
        return cls((field.zero,) * k + (c,), field)

    # -- basic queries -------------------------------------------------

    @property
    def degree(self):
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def is_constant(self):
        return len(self.coeffs) <= 1

    def __getitem__(self, k):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return self.field.zero

    def leading_coefficient(self):
        if self.is_zero():
            raise PreconditionFailed("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def constant_coefficient(self):
        return self[0]

    def is_monic(self):
        return not self.is_zero() and self.leading_coefficient() == self.field.one

    def ord_t(self):
        """Order of vanishing at t = 0; +infinity for the zero polynomial."""
        if self.is_zero():
            return INFINITY
        for k, c in enumerate(self.coeffs):
            if not self.field.is_zero(c):
                return k
        raise AssertionError("unreachable")

    # -- arithmetic ----------------------------------------------------

    def _check(self, other):
        if isinstance(other, PadicPolynomial):
            if other.field != self.field:
                raise ValueError("mixed coefficient fields")
            return other
        return PadicPolynomial((self.field.coerce(other),), self.field)

    def __add__(self, other):
        other = self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return PadicPolynomial([self[k] + other[k] for k in range(n)], self.field)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return PadicPolynomial([self[k] - other[k] for k in range(n)], self.field)

    def __rsub__(self, other):
        return self._check(other) - self

    def __neg__(self):
        return PadicPolynomial([-c for c in self.coeffs], self.field)

    def __mul__(self, other):
        if not isinstance(other, PadicPolynomial):
            c = self.field.coerce(other) if not _is_element(other, self.field) else other
            return PadicPolynomial([a * c for a in self.coeffs], self.field)
        other = self._check(other)
        if self.is_zero() or other.is_zero():
            return PadicPolynomial.zero(self.field)
        out = [self.field.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if self.field.is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return PadicPolynomial(out, self.field)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial power")
        out = PadicPolynomial.one(self.field)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __divmod__(self, other):
        other = self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q = [self.field.zero] * max(0, self.degree - other.degree + 1)
        r = list(self.coeffs)
        inv_lc = self.field.inv(other.leading_coefficient())
        while len(r) - 1 >= other.degree and r:
            k = len(r) - 1 - other.degree
            c = r[-1] * inv_lc
            q[k] = c
            for j, b in enumerate(other.coeffs):
                r[k + j] = r[k + j] - c * b
            while r and self.field.is_zero(r[-1]):
                r.pop()
        return (PadicPolynomial(q, self.field), PadicPolynomial(r, self.field))

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __eq__(self, other):
        if not isinstance(other, PadicPolynomial):
            if self.degree > 0:
                return False
            try:
                other = self._check(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.coeffs, self.field))

    # -- calculus and evaluation ----------------------------------------

    def derivative(self):
        return PadicPolynomial(
            [k * c for k, c in enumerate(self.coeffs)][1:], self.field
        )

    def evaluate(self, point):
        """Horner evaluation; the point may live in a larger field."""
        pfield = getattr(point, "field", None)
        if pfield is not None and pfield != self.field:
            acc = pfield.zero
            for c in reversed(self.coeffs):
                acc = acc * point + pfield.coerce(c)
            return acc
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * point + c
        return acc

    def compose(self, inner: "PadicPolynomial") -> "PadicPolynomial":
        acc = PadicPolynomial.zero(self.field)
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def shift(self, k: int) -> "PadicPolynomial":
        """Multiply by t^k (k >= 0), or divide exactly by t^-k."""
        if k >= 0:
            return PadicPolynomial((self.field.zero,) * k + self.coeffs, self.field)
        if self.ord_t() < -k:
            raise PreconditionFailed("shift would truncate nonzero terms")
        return PadicPolynomial(self.coeffs[-k:], self.field)

    def monic(self) -> "PadicPolynomial":
        if self.is_zero():
            raise PreconditionFailed("zero polynomial cannot be made monic")
        return self * self.field.inv(self.leading_coefficient())

    # -- gcd and squarefree machinery -----------------------------------

    def gcd(self, other: "PadicPolynomial") -> "PadicPolynomial":
        """Monic gcd by the Euclidean algorithm (exact)."""
        a, b = self, self._check(other)
        while not b.is_zero():
            a, b = b, a % b
        if a.is_zero():
            return a
        return a.monic()

    def squarefree_decomposition(self):
        """Yun's algorithm: returns [(g_k, k)] with self = lc * prod g_k^k.

        Valid in characteristic zero; the g_k are monic, squarefree and
        pairwise coprime.
        """
        if self.is_zero():
            raise PreconditionFailed("zero polynomial")
        f = self.monic()
        out = []
        d = f.derivative()
        a = f.gcd(d)
        b = f // a
        c = d // a
        k = 1
        while b.degree > 0:
            d2 = c - b.derivative()
            g = b.gcd(d2)
            if g.degree > 0:
                out.append((g, k))
            b = b // g
            c = d2 // g
            k += 1
        return out

    def squarefree_odd_part(self) -> "PadicPolynomial":
        """Product of the odd-multiplicity squarefree factors (monic).

        This is self divided by its largest square divisor, so they differ
        by a square; multiplying a form entry by it preserves the entry's
        square class in K(t).
        """
        out = PadicPolynomial.one(self.field)
        for g, k in self.squarefree_decomposition():
            if k % 2:
                out = out * g
        return out

    # -- rendering -------------------------------------------------------

    def to_text(self) -> str:
        """Canonical text: descending powers, reduced fractions.

        Parsing this text with :func:`padicforms.parsing.parse_poly`
        returns an equal polynomial.
        """
        if self.is_zero():
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self[k]
            if self.field.is_zero(c):
                continue
            neg = c < 0
            mag = -c if neg else c
            if k == 0:
                body = str(mag)
            elif mag == 1:
                body = "t" if k == 1 else f"t^{k}"
            else:
                body = f"{mag}*t" if k == 1 else f"{mag}*t^{k}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        return " ".join(parts)

    def __repr__(self):
        if isinstance(self.field, BaseField):
            return f"PadicPolynomial({self.to_text()!r} over {self.field!r})"
        return f"PadicPolynomial(deg {self.degree} over {self.field!r})"


def _is_element(c, field):
    if isinstance(c, Fraction) and not field.is_extension:
        return True
    return getattr(c, "field", None) == field


class RationalFunction:
    """A quotient of polynomials over Q_p, kept as an exact pair.

    The pair is not reduced; orders at t and at infinity are differences
    of exact orders so no cancellation issues arise.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: PadicPolynomial, den: PadicPolynomial):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.field != den.field:
            raise ValueError("mixed coefficient fields")
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, p: PadicPolynomial):
        return cls(p, PadicPolynomial.one(p.field))

    @property
    def field(self):
        return self.num.field

    def is_zero(self):
        return self.num.is_zero()

    def __add__(self, other):
        other = self._coerce(other)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other):
        other = self._coerce(other)
        return RationalFunction(self.num * other.den - other.num * self.den, self.den * other.den)

    def __mul__(self, other):
        other = self._coerce(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, PadicPolynomial):
            return RationalFunction.from_poly(other)
        return RationalFunction.from_poly(
            PadicPolynomial((self.field.coerce(other),), self.field)
        )

    def __pow__(self, n: int):
        if n < 0:
            return RationalFunction(self.den, self.num) ** (-n)
        return RationalFunction(self.num ** n, self.den ** n)

    def ord_t(self):
        """Order at t = 0 (can be negative); +infinity for 0."""
        if self.is_zero():
            return INFINITY
        return self.num.ord_t() - self.den.ord_t()

    def ord_infinity(self):
        """Order at infinity: deg(den) - deg(num); +infinity for 0."""
        if self.is_zero():
            return INFINITY
        return self.den.degree - self.num.degree

    def leading_coefficient_at_t(self):
        """Coefficient of t^ord in the Laurent expansion at t = 0."""
        if self.is_zero():
            raise PreconditionFailed("zero function")
        n = self.num.shift(-self.num.ord_t())
        d = self.den.shift(-self.den.ord_t())
        return n.constant_coefficient() / d.constant_coefficient()

    def equals(self, other) -> bool:
        other = self._coerce(other)
        return (self.num * other.den) == (other.num * self.den)

    def to_text(self) -> str:
        if self.den.is_constant():
            return (self.num * self.field.inv(self.den.constant_coefficient())).to_text()
        return f"({self.num.to_text()})/({self.den.to_text()})"

    def __repr__(self):
        return f"RationalFunction({self.to_text()!r})"
