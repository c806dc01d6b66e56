"""sympy-backed function-field arithmetic for cross-validation.

Everything here is recomputed from scratch on top of sympy polynomials over
GF(p) (prime base fields only); in particular the valuation algorithm is
norm/residue based and shares no code or method with the artifact under test,
which expands truncated Laurent series instead.
"""

from __future__ import annotations

from dataclasses import dataclass

import sympy
from sympy import GF, Poly, symbols

X = symbols("x")

INF = float("inf")


def poly_from_coeffs(coeffs, p):
    """Little-endian int list -> sympy Poly over GF(p)."""
    if not coeffs:
        return Poly([0], X, domain=GF(p))
    return Poly(list(reversed([c % p for c in coeffs])), X, domain=GF(p))


def poly_eval(f: Poly, x0: int, p: int) -> int:
    return int(f.eval(x0)) % p


def poly_deg(f: Poly) -> int:
    return -1 if f.is_zero else f.degree()


def poly_ord_at(f: Poly, x0: int, p: int) -> int:
    """Multiplicity of the root x0 (0 if not a root)."""
    if f.is_zero:
        raise ValueError("zero polynomial")
    lin = Poly([1, (-x0) % p], X, domain=GF(p))
    mult = 0
    while True:
        q, r = sympy.div(f, lin, domain=GF(p))
        if not r.is_zero:
            return mult
        f = Poly(q, X, domain=GF(p))
        mult += 1


def sqrt_mod(a: int, p: int):
    """Smallest square root of a modulo p, or None (brute scan; p is small)."""
    a %= p
    for r in range(p):
        if (r * r) % p == a:
            return r
    return None


@dataclass
class Rat:
    """Reduced rational function over GF(p)."""

    num: Poly
    den: Poly
    p: int

    @classmethod
    def make(cls, num: Poly, den: Poly, p: int) -> "Rat":
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        if num.is_zero:
            return cls(Poly([0], X, domain=GF(p)), Poly([1], X, domain=GF(p)), p)
        g = sympy.gcd(num, den)
        if poly_deg(Poly(g, X, domain=GF(p))) > 0:
            num = Poly(sympy.div(num, g, domain=GF(p))[0], X, domain=GF(p))
            den = Poly(sympy.div(den, g, domain=GF(p))[0], X, domain=GF(p))
        lead = int(den.LC()) % p
        inv = pow(lead, p - 2, p)
        num = Poly(num * inv, X, domain=GF(p))
        den = Poly(den * inv, X, domain=GF(p))
        return cls(num, den, p)

    @classmethod
    def from_coeffs(cls, num_coeffs, den_coeffs, p) -> "Rat":
        return cls.make(poly_from_coeffs(num_coeffs, p), poly_from_coeffs(den_coeffs or [1], p), p)

    def is_zero(self) -> bool:
        return self.num.is_zero

    def ord_at(self, x0: int):
        if self.is_zero():
            return INF
        return poly_ord_at(self.num, x0, self.p) - poly_ord_at(self.den, x0, self.p)

    def ord_at_infinity(self):
        if self.is_zero():
            return INF
        return poly_deg(self.den) - poly_deg(self.num)

    def eval(self, x0: int) -> int:
        d = poly_eval(self.den, x0, self.p)
        if d == 0:
            raise ZeroDivisionError(f"pole at {x0}")
        return (poly_eval(self.num, x0, self.p) * pow(d, self.p - 2, self.p)) % self.p

    def shift_down(self, x0: int, m: int) -> "Rat":
        """Divide by (x - x0)^m (m may be negative)."""
        lin = Poly([1, (-x0) % self.p], X, domain=GF(self.p))
        if m >= 0:
            return Rat.make(self.num, Poly(self.den * lin**m, X, domain=GF(self.p)), self.p)
        return Rat.make(Poly(self.num * lin ** (-m), X, domain=GF(self.p)), self.den, self.p)

    def mul(self, other: "Rat") -> "Rat":
        return Rat.make(
            Poly(self.num * other.num, X, domain=GF(self.p)),
            Poly(self.den * other.den, X, domain=GF(self.p)),
            self.p,
        )

    def sub(self, other: "Rat") -> "Rat":
        num = Poly(self.num * other.den - other.num * self.den, X, domain=GF(self.p))
        return Rat.make(num, Poly(self.den * other.den, X, domain=GF(self.p)), self.p)

    def den_is_power_of(self, x0: int) -> bool:
        d = poly_deg(self.den)
        return d == poly_ord_at(self.den, x0, self.p) if d > 0 else True

    def den_is_constant(self) -> bool:
        return poly_deg(self.den) <= 0


@dataclass
class CurveData:
    p: int
    cubic: Poly

    @classmethod
    def from_json(cls, curve_json) -> "CurveData":
        qspec = str(curve_json["q"])
        if "^" in qspec:
            raise ValueError("oracle supports prime base fields only")
        p = int(qspec)
        if not sympy.isprime(p) or p == 2:
            raise ValueError(f"unsupported field order {p}")
        cubic = poly_from_coeffs(curve_json["f"], p)
        if poly_deg(cubic) != 3:
            raise ValueError("curve right-hand side must be cubic")
        if poly_deg(Poly(sympy.gcd(cubic, cubic.diff()), X, domain=GF(p))) != 0:
            raise ValueError("curve right-hand side must be square-free")
        return cls(p, cubic)

    def genus(self) -> int:
        # quadratic extension with a square-free cubic, odd characteristic
        return 1

    def classify(self, x0: int):
        """("split", y0) | ("ramified", 0) | ("inert", None) at x = x0."""
        v = poly_eval(self.cubic, x0, self.p)
        if v == 0:
            return "ramified", 0
        r = sqrt_mod(v, self.p)
        return ("split", r) if r is not None else ("inert", None)

    def rational_points(self):
        out = []
        for x0 in range(self.p):
            kind, y0 = self.classify(x0)
            if kind == "split":
                out.append((x0, y0))
                out.append((x0, (-y0) % self.p))
            elif kind == "ramified":
                out.append((x0, 0))
        return out

    # -- independent valuation algorithm (norm/residue based, no series) --

    def valuation_affine(self, x0: int, y0: int, a: Rat, b: Rat):
        """v at the place (x0, y0) of a + b*y."""
        p = self.p
        if a.is_zero() and b.is_zero():
            return INF
        if y0 == 0:
            # ramified place, uniformizer y: v(a) is even, v(b*y) is odd, no cancellation
            cands = []
            if not a.is_zero():
                cands.append(2 * a.ord_at(x0))
            if not b.is_zero():
                cands.append(2 * b.ord_at(x0) + 1)
            return min(cands)
        # split place: strip the common (x - x0) power, then read the residue
        orders = [r.ord_at(x0) for r in (a, b) if not r.is_zero()]
        m = min(orders)
        a2 = a.shift_down(x0, m) if not a.is_zero() else a
        b2 = b.shift_down(x0, m) if not b.is_zero() else b
        a_val = a2.eval(x0) if not a2.is_zero() else 0
        b_val = b2.eval(x0) if not b2.is_zero() else 0
        if (a_val + b_val * y0) % p != 0:
            return m
        # residue vanished; the conjugate residue cannot, so v = m + ord of the norm
        norm = a2.mul(a2).sub(b2.mul(b2).mul(Rat.make(self.cubic, Poly([1], X, domain=GF(p)), p)))
        return m + norm.ord_at(x0)

    def valuation_infinity(self, a: Rat, b: Rat):
        """v at the place over infinity: v(a) = 2*v_inf(a), v(b*y) = 2*v_inf(b) - 3."""
        if a.is_zero() and b.is_zero():
            return INF
        cands = []
        if not a.is_zero():
            cands.append(2 * a.ord_at_infinity())
        if not b.is_zero():
            cands.append(2 * b.ord_at_infinity() - 3)
        return min(cands)

    def valuation(self, place, a: Rat, b: Rat):
        if place == "inf":
            return self.valuation_infinity(a, b)
        x0, y0 = place
        return self.valuation_affine(x0, y0, a, b)
