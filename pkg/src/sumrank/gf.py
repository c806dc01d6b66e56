"""Exact arithmetic in GF(q) for odd prime powers q.

An element of GF(p**m) = GF(p)[t]/(modulus) is stored as its canonical
coefficient tuple (c0, ..., c_{m-1}) with each residue in [0, p); prime
fields are the m = 1 case.  Element enumeration, square roots and place
labels downstream all rely on the lexicographic order of these tuples, so
the representation is kept canonical at all times.  Arithmetic is table-free
modular/polynomial arithmetic, exact by construction, with the field order
capped (default 2**16) to keep everything at desk scale.
"""

from __future__ import annotations

import itertools

from .errors import (
    DivisionByZero,
    EvenCharacteristic,
    FieldTooLarge,
    NotPrime,
    ReducibleModulus,
)

DEFAULT_MAX_ORDER = 1 << 16


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# -- helpers on raw int coefficient lists over GF(p) (used only for the
#    modulus search and element reduction; richer polynomial arithmetic over
#    arbitrary fields lives in upoly) --

def _trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _raw_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _raw_divmod(a, b, p):
    a = list(a)
    deg_b = len(b) - 1
    inv_lead = pow(b[-1], p - 2, p)
    quot = [0] * max(0, len(a) - deg_b)
    while len(a) - 1 >= deg_b and a:
        shift = len(a) - 1 - deg_b
        factor = (a[-1] * inv_lead) % p
        quot[shift] = factor
        for j, y in enumerate(b):
            a[shift + j] = (a[shift + j] - factor * y) % p
        _trim(a)
    return quot, a


def _raw_is_irreducible(c, p):
    """Trial division of a monic polynomial by all monic polynomials of degree <= deg/2."""
    deg = len(c) - 1
    if deg <= 0:
        return False
    for d in range(1, deg // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            div = list(tail) + [1]
            _, rem = _raw_divmod(c, div, p)
            if not rem:
                return False
    return True


class Field:
    """GF(p**m) for an odd prime p, with deterministic element enumeration.

    Enumeration is lexicographic on coefficient tuples.  When m > 1 and no
    modulus is given, monic candidates are scanned in lexicographic order and
    the first irreducible one is used, so equal parameters always give equal
    fields.
    """

    __slots__ = ("p", "m", "q", "modulus", "_elements")

    def __init__(self, p: int, m: int = 1, modulus=None, max_order: int = DEFAULT_MAX_ORDER):
        if not isinstance(p, int) or not _is_prime(p):
            raise NotPrime(f"characteristic {p!r} is not prime")
        if p == 2:
            raise EvenCharacteristic("only odd characteristic is supported")
        if not isinstance(m, int) or m < 1:
            raise ValueError(f"extension degree must be a positive integer, got {m!r}")
        q = p**m
        if q > max_order:
            raise FieldTooLarge(f"q = {q} exceeds the cap {max_order}")
        self.p = p
        self.m = m
        self.q = q
        if m == 1:
            self.modulus = None
        elif modulus is None:
            self.modulus = self._find_modulus(p, m)
        else:
            mod = tuple(int(c) % p for c in modulus)
            if len(mod) != m + 1 or mod[-1] != 1:
                raise ReducibleModulus(
                    f"modulus must be monic of degree {m}, got coefficients {tuple(modulus)!r}"
                )
            if not _raw_is_irreducible(list(mod), p):
                raise ReducibleModulus(f"modulus {mod} is reducible over GF({p})")
            self.modulus = mod
        self._elements = None

    @staticmethod
    def _find_modulus(p, m):
        for tail in itertools.product(range(p), repeat=m):
            cand = list(tail) + [1]
            if _raw_is_irreducible(cand, p):
                return tuple(cand)
        raise ReducibleModulus(f"no irreducible monic degree-{m} polynomial found over GF({p})")

    # -- equality is structural: same (p, m, modulus) means the same field --
    def __eq__(self, other):
        return (
            isinstance(other, Field)
            and self.p == other.p
            and self.m == other.m
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.p, self.m, self.modulus))

    def __repr__(self):
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m})"

    def spec_string(self) -> str:
        return str(self.p) if self.m == 1 else f"{self.p}^{self.m}"

    # -- element construction --
    def element(self, value) -> "FieldElement":
        """Coerce an int (via Z -> GF(q)), coefficient sequence, or element."""
        if isinstance(value, FieldElement):
            if value.field != self:
                raise ValueError("element belongs to a different field")
            return value
        if isinstance(value, int):
            coeffs = (value % self.p,) + (0,) * (self.m - 1)
            return FieldElement(self, coeffs)
        coeffs = tuple(int(c) % self.p for c in value)
        if len(coeffs) != self.m:
            raise ValueError(f"expected {self.m} coefficients, got {len(coeffs)}")
        return FieldElement(self, coeffs)

    def zero(self) -> "FieldElement":
        return FieldElement(self, (0,) * self.m)

    def one(self) -> "FieldElement":
        return self.element(1)

    def elements(self):
        """All q elements, lexicographic on coefficient tuples; cached once."""
        if self._elements is None:
            self._elements = tuple(
                FieldElement(self, coeffs) for coeffs in itertools.product(range(self.p), repeat=self.m)
            )
        return self._elements

    def random_element(self, rng) -> "FieldElement":
        return FieldElement(self, tuple(rng.randrange(self.p) for _ in range(self.m)))

    def random_nonzero(self, rng) -> "FieldElement":
        while True:
            e = self.random_element(rng)
            if e:
                return e

    # -- JSON helpers: ints for prime fields, coefficient lists otherwise --
    def element_to_json(self, e: "FieldElement"):
        return e.coeffs[0] if self.m == 1 else list(e.coeffs)

    def element_from_json(self, obj) -> "FieldElement":
        if isinstance(obj, int):
            return self.element(obj)
        return self.element(list(obj))


class FieldElement:
    """Immutable element of a :class:`Field`; supports int operands on either side."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: tuple):
        self.field = field
        self.coeffs = coeffs

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                return None
            return other
        if isinstance(other, int):
            return self.field.element(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.field.p
        return FieldElement(self.field, tuple((a + b) % p for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.field.p
        return FieldElement(self.field, tuple((a - b) % p for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        p = self.field.p
        return FieldElement(self.field, tuple((-a) % p for a in self.coeffs))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        f = self.field
        if f.m == 1:
            return FieldElement(f, ((self.coeffs[0] * o.coeffs[0]) % f.p,))
        prod = _raw_mul(list(self.coeffs), list(o.coeffs), f.p)
        _, rem = _raw_divmod(prod, list(f.modulus), f.p) if len(prod) > f.m else (None, prod)
        rem = rem + [0] * (f.m - len(rem))
        return FieldElement(f, tuple(rem))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, FieldElement) else other
        if not isinstance(o, FieldElement):
            return NotImplemented
        return self.field == o.field and self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __lt__(self, other):
        # canonical (lexicographic) order; used for sqrt choice and place labels
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs < o.coeffs

    def __le__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs <= o.coeffs

    def __repr__(self):
        if self.field.m == 1:
            return str(self.coeffs[0])
        return str(self.coeffs)

    def inverse(self) -> "FieldElement":
        """Multiplicative inverse; a * a.inverse() == 1."""
        if not self:
            raise DivisionByZero("0 has no multiplicative inverse")
        f = self.field
        if f.m == 1:
            return FieldElement(f, (pow(self.coeffs[0], f.p - 2, f.p),))
        return self ** (f.q - 2)

    def is_square(self) -> bool:
        """Whether some b satisfies b*b == self (0 counts as a square)."""
        if not self:
            return True
        return self ** ((self.field.q - 1) // 2) == self.field.one()

    def sqrt(self):
        """Canonical square root (lexicographically smaller of the pair), or None.

        Tonelli-Shanks in the multiplicative group of GF(q); the needed
        non-residue is the first one in enumeration order, so the result is
        deterministic.
        """
        if not self:
            return self
        if not self.is_square():
            return None
        f = self.field
        q = f.q
        s, e = q - 1, 0
        while s % 2 == 0:
            s //= 2
            e += 1
        if e == 1:
            r = self ** ((q + 1) // 4)
        else:
            z = next(el for el in f.elements() if el and not el.is_square())
            c = z**s
            r = self ** ((s + 1) // 2)
            t = self**s
            while t != f.one():
                t2, i = t, 0
                while t2 != f.one():
                    t2 = t2 * t2
                    i += 1
                b = c ** (1 << (e - i - 1))
                r = r * b
                c = b * b
                t = t * c
                e = i
        return min(r, -r)
