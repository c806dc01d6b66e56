"""Univariate polynomials and reduced rational functions over GF(q).

Polynomials are stored little-endian (coeffs[i] multiplies x**i) with the
leading zero stripped, so representations are unique; deg(0) is the -inf
marker NEG_INF.  Rational functions are always kept fully reduced with a
monic denominator, which makes equality testing and valuation bookkeeping
exact.  Root finding and irreducibility testing are exhaustive over GF(q),
which is small by design.
"""

from __future__ import annotations

import itertools
import math

from .errors import BothZero, DivisionByZero, ZeroDenominator, ZeroPolynomial
from .gf import Field, FieldElement

NEG_INF = float("-inf")
INF = math.inf


class Poly:
    """Polynomial over a :class:`Field`, normalized (no leading zero)."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs=()):
        self.field = field
        cs = [field.element(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls, field):
        return cls(field, ())

    @classmethod
    def one(cls, field):
        return cls(field, (1,))

    @classmethod
    def x(cls, field):
        return cls(field, (0, 1))

    @classmethod
    def constant(cls, field, c):
        return cls(field, (c,))

    @classmethod
    def monomial(cls, field, c, i: int):
        return cls(field, (0,) * i + (c,))

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> FieldElement:
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def _coerce(self, other):
        if isinstance(other, Poly):
            return other if other.field == self.field else None
        if isinstance(other, (int, FieldElement)):
            return Poly(self.field, (self.field.element(other),))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.field, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            c = self.field.element(other)
            return Poly(self.field, tuple(x * c for x in self.coeffs))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.coeffs or not o.coeffs:
            return Poly.zero(self.field)
        out = [self.field.zero()] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(o.coeffs):
                    out[i + j] = out[i + j] + x * y
        return Poly(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.one(self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise DivisionByZero("polynomial division by zero")
        rem = list(self.coeffs)
        deg_b = len(o.coeffs) - 1
        inv_lead = o.leading().inverse()
        quot = [self.field.zero()] * max(0, len(rem) - deg_b)
        while rem and len(rem) - 1 >= deg_b:
            shift = len(rem) - 1 - deg_b
            factor = rem[-1] * inv_lead
            quot[shift] = factor
            for j, y in enumerate(o.coeffs):
                rem[shift + j] = rem[shift + j] - factor * y
            while rem and not rem[-1]:
                rem.pop()
        return Poly(self.field, quot), Poly(self.field, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "Poly":
        if self.is_zero():
            raise ZeroPolynomial("zero polynomial cannot be made monic")
        return self * self.leading().inverse()

    def derivative(self) -> "Poly":
        return Poly(self.field, tuple(c * i for i, c in enumerate(self.coeffs) if i >= 1))

    def evaluate(self, a) -> FieldElement:
        """Horner evaluation at a field element."""
        a = self.field.element(a)
        acc = self.field.zero()
        for c in reversed(self.coeffs):
            acc = acc * a + c
        return acc

    def shift(self, a) -> "Poly":
        """Taylor shift: the polynomial f(x + a)."""
        a = self.field.element(a)
        acc = Poly.zero(self.field)
        xa = Poly(self.field, (a, 1))
        for c in reversed(self.coeffs):
            acc = acc * xa + c
        return acc

    def gcd(self, other: "Poly") -> "Poly":
        """Monic gcd by the Euclidean algorithm."""
        o = self._coerce(other)
        if o is None:
            raise TypeError("gcd operand must be a polynomial over the same field")
        a, b = self, o
        if a.is_zero() and b.is_zero():
            raise BothZero("gcd(0, 0) is undefined")
        while b:
            a, b = b, a % b
        return a.monic()

    def is_squarefree(self) -> bool:
        """True iff gcd(f, f') = 1; characteristic-p powers come out False."""
        if self.degree < 1:
            raise ZeroPolynomial("square-freeness needs degree >= 1")
        return self.gcd(self.derivative()).degree == 0

    def roots(self):
        """All a in GF(q) with f(a) = 0, by exhaustive scan, in enumeration order."""
        if self.is_zero():
            raise ZeroPolynomial("the zero polynomial vanishes everywhere")
        return [a for a in self.field.elements() if not self.evaluate(a)]

    def root_multiplicity(self, a) -> int:
        a = self.field.element(a)
        if self.is_zero():
            return INF
        lin = Poly(self.field, (-a, 1))
        mult, f = 0, self
        while True:
            q, r = divmod(f, lin)
            if r:
                return mult
            mult, f = mult + 1, q

    def is_irreducible(self) -> bool:
        """Degree <= 3: no roots; otherwise trial division up to degree deg/2."""
        deg = self.degree
        if deg < 1:
            return False
        if deg == 1:
            return True
        if self.roots():
            return False
        if deg <= 3:
            return True
        for d in range(2, deg // 2 + 1):
            for tail in itertools.product(self.field.elements(), repeat=d):
                div = Poly(self.field, tail + (self.field.one(),))
                if (self % div).is_zero():
                    return False
        return True

    def __repr__(self):
        return poly_to_text(self)


class RationalFunction:
    """Quotient of polynomials, stored fully reduced with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly):
        if den.is_zero():
            raise ZeroDenominator("rational function with zero denominator")
        if num.is_zero():
            self.num = Poly.zero(num.field)
            self.den = Poly.one(num.field)
            return
        g = num.gcd(den)
        if g.degree > 0:
            num, den = num // g, den // g
        lead_inv = den.leading().inverse()
        self.num = num * lead_inv
        self.den = den * lead_inv

    @classmethod
    def from_poly(cls, p: Poly) -> "RationalFunction":
        return cls(p, Poly.one(p.field))

    @classmethod
    def zero(cls, field) -> "RationalFunction":
        return cls(Poly.zero(field), Poly.one(field))

    @classmethod
    def one(cls, field) -> "RationalFunction":
        return cls(Poly.one(field), Poly.one(field))

    @property
    def field(self):
        return self.num.field

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other if other.field == self.field else None
        if isinstance(other, Poly):
            return RationalFunction.from_poly(other) if other.field == self.field else None
        if isinstance(other, (int, FieldElement)):
            return RationalFunction.from_poly(Poly.constant(self.field, other))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise DivisionByZero("division by the zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n: int):
        if n < 0:
            if self.is_zero():
                raise DivisionByZero("negative power of zero")
            return RationalFunction(self.den**-n, self.num**-n)
        return RationalFunction(self.num**n, self.den**n)

    def evaluate(self, a) -> FieldElement:
        d = self.den.evaluate(a)
        if not d:
            raise DivisionByZero(f"pole at x = {a!r}")
        return self.num.evaluate(a) * d.inverse()

    def has_pole_at(self, a) -> bool:
        return not self.den.evaluate(a)

    def ord_at(self, a):
        """Order of vanishing at x = a (negative for poles, INF for 0)."""
        if self.is_zero():
            return INF
        return self.num.root_multiplicity(a) - self.den.root_multiplicity(a)

    def ord_at_infinity(self):
        """Valuation at the infinite place of GF(q)(x): deg(den) - deg(num)."""
        if self.is_zero():
            return INF
        return self.den.degree - self.num.degree

    def degree_bound(self) -> int:
        return int(max(self.num.degree, self.den.degree, 0))

    def __repr__(self):
        if self.is_polynomial():
            return poly_to_text(self.num)
        return f"({poly_to_text(self.num)})/({poly_to_text(self.den)})"


# -- text format: "c0 + c1*x + c2*x^2" style and compact "[c0,c1,...]" lists --

def poly_to_text(p: Poly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for i in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[i]
        if not c:
            continue
        if i == 0:
            parts.append(repr(c))
        else:
            xpow = "x" if i == 1 else f"x^{i}"
            if c == p.field.one():
                parts.append(xpow)
            else:
                parts.append(f"{c!r}*{xpow}")
    return " + ".join(parts)


def parse_poly(field: Field, text: str) -> Poly:
    """Parse "x^3+3", "3 + 2*x^2", or compact "[c0,c1,...]" into a Poly.

    Integer coefficients are mapped through Z -> GF(q); for extension fields
    the compact form may carry per-coefficient lists, e.g. "[[0,1],[1,0]]".
    """
    text = text.strip()
    if text.startswith("["):
        import json as _json

        data = _json.loads(text)
        return Poly(field, [field.element_from_json(c) for c in data])
    cleaned = text.replace(" ", "").replace("-", "+-")
    if cleaned.startswith("+"):
        cleaned = cleaned[1:]
    coeffs: dict[int, int] = {}
    for term in cleaned.split("+"):
        if not term:
            continue
        sign = 1
        if term.startswith("-"):
            sign, term = -1, term[1:]
        if "x" in term:
            base, _, exp = term.partition("x")
            base = base.rstrip("*")
            coeff = int(base) if base else 1
            power = int(exp[1:]) if exp.startswith("^") else 1
        else:
            coeff = int(term)
            power = 0
        coeffs[power] = coeffs.get(power, 0) + sign * coeff
    if not coeffs:
        return Poly.zero(field)
    out = [0] * (max(coeffs) + 1)
    for power, c in coeffs.items():
        out[power] = c
    return Poly(field, out)
