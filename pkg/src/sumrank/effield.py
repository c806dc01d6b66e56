"""The elliptic function field E = GF(q)(x, y) with y^2 = cubic(x).

Provides place enumeration and classification, valuations via truncated
Laurent expansions in fixed uniformizers, and Riemann-Roch bases for
divisors k*Q_inf and k*P with P an affine rational place, including the
pole-order slice bases the code constructions need.

Uniformizer conventions (fixed once so coefficients are reproducible):

* affine place over a split x0:     t = x - x0
* affine place over a ramified x0:  t = y
* the place at infinity:            t = x / y, so v(x) = -2 and v(y) = -3

Series for y (split), x (ramified) and the unit part of x (infinity) are
produced by explicit coefficient recursions seeded by the curve equation;
everything else is rational-function arithmetic on truncated series with
honest precision tracking.  Valuations use adaptive precision: start from a
degree-based window and double until the leading term resolves, with a hard
cap that turns bookkeeping bugs into loud PrecisionExhausted errors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    EvenCharacteristic,
    InvalidK,
    InvalidRange,
    NotCubic,
    NotSplit,
    NotSquareFree,
    PrecisionExhausted,
)
from .gf import Field, FieldElement
from .upoly import INF, Poly, RationalFunction

__all__ = [
    "BasePlace",
    "Curve",
    "CurveFunction",
    "CurvePlace",
    "LocalExpansion",
    "Splitting",
]


@dataclass(frozen=True)
class BasePlace:
    """Rational place of GF(q)(x): finite x = x0, or the place at infinity (x0 is None)."""

    x0: FieldElement | None

    @classmethod
    def finite(cls, x0):
        return cls(x0)

    @classmethod
    def infinity(cls):
        return cls(None)

    @property
    def is_infinity(self):
        return self.x0 is None

    def __repr__(self):
        return "P_inf" if self.is_infinity else f"P({self.x0!r})"


@dataclass(frozen=True)
class CurvePlace:
    """Rational place of the elliptic field: affine (x0, y0) or the place over P_inf."""

    x0: FieldElement | None
    y0: FieldElement | None

    @classmethod
    def affine(cls, x0, y0):
        return cls(x0, y0)

    @classmethod
    def at_infinity(cls):
        return cls(None, None)

    @property
    def is_infinity(self):
        return self.x0 is None

    @property
    def is_ramified(self):
        return self.x0 is not None and not self.y0

    def conjugate(self):
        if self.is_infinity:
            return self
        return CurvePlace(self.x0, -self.y0)

    def base(self) -> BasePlace:
        return BasePlace(self.x0)

    def __repr__(self):
        return "Q_inf" if self.is_infinity else f"Q({self.x0!r},{self.y0!r})"


@dataclass(frozen=True)
class Splitting:
    """How a finite base place behaves in the quadratic extension."""

    kind: str  # "split" | "ramified" | "inert"
    y_roots: tuple

    @property
    def is_split(self):
        return self.kind == "split"

    @property
    def is_ramified(self):
        return self.kind == "ramified"

    @property
    def is_inert(self):
        return self.kind == "inert"


@dataclass(frozen=True)
class LocalExpansion:
    """Truncated Laurent expansion at a place: `precision` terms past the leading one.

    `valuation` is None for the zero function (the zero-series marker).
    """

    place: CurvePlace
    valuation: int | None
    coeffs: tuple
    precision: int

    @property
    def is_zero(self):
        return self.valuation is None

    @property
    def leading(self) -> FieldElement:
        if self.is_zero:
            raise ValueError("zero series has no leading coefficient")
        return self.coeffs[0]


class CurveFunction:
    """Element a(x) + b(x)*y of the elliptic function field, components reduced."""

    __slots__ = ("curve", "a", "b")

    def __init__(self, curve: "Curve", a: RationalFunction, b: RationalFunction):
        self.curve = curve
        self.a = a
        self.b = b

    def is_zero(self) -> bool:
        return self.a.is_zero() and self.b.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if not isinstance(other, CurveFunction):
            return NotImplemented
        return self.curve == other.curve and self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.curve, self.a, self.b))

    def _coerce(self, other):
        if isinstance(other, CurveFunction):
            return other if other.curve == self.curve else None
        if isinstance(other, (int, FieldElement, Poly, RationalFunction)):
            return self.curve.fn(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CurveFunction(self.curve, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return CurveFunction(self.curve, -self.a, -self.b)

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
        # scalar (rational-function) multiples avoid the y^2 reduction
        if isinstance(other, (int, FieldElement, Poly, RationalFunction)):
            r = self.a._coerce(other)
            if r is None:
                return NotImplemented
            return CurveFunction(self.curve, self.a * r, self.b * r)
        if not isinstance(other, CurveFunction) or other.curve != self.curve:
            return NotImplemented
        fe = self.curve.cubic_rat
        a1, b1, a2, b2 = self.a, self.b, other.a, other.b
        return CurveFunction(self.curve, a1 * a2 + b1 * b2 * fe, a1 * b2 + a2 * b1)

    __rmul__ = __mul__

    def conjugate(self) -> "CurveFunction":
        """Image under the involution y -> -y."""
        return CurveFunction(self.curve, self.a, -self.b)

    def norm(self) -> RationalFunction:
        """Product with the conjugate: a^2 - b^2 * cubic, an element of GF(q)(x)."""
        return self.a * self.a - self.b * self.b * self.curve.cubic_rat

    def inverse(self) -> "CurveFunction":
        n = self.norm()
        conj = self.conjugate()
        return CurveFunction(self.curve, conj.a / n, conj.b / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def degree_bound(self) -> int:
        return self.a.degree_bound() + self.b.degree_bound() + 3

    def __repr__(self):
        if self.b.is_zero():
            return repr(self.a)
        if self.a.is_zero():
            return f"({self.b!r})*y"
        return f"{self.a!r} + ({self.b!r})*y"


# -- truncated Laurent series (internal) --

class _Series:
    """Coefficients of t**(start+i) for i < len(coeffs); exponents >= prec unknown."""

    __slots__ = ("field", "start", "coeffs", "prec")

    def __init__(self, field, start, coeffs, prec):
        # strip known leading zeros so `start` is as tight as possible
        i = 0
        while i < len(coeffs) and not coeffs[i]:
            i += 1
        self.field = field
        self.start = start + i
        self.coeffs = list(coeffs[i:])
        self.prec = prec
        # keep the invariant start + len(coeffs) == prec
        want = prec - self.start
        if want <= 0:
            self.start = prec
            self.coeffs = []
        elif len(self.coeffs) < want:
            z = field.zero()
            self.coeffs.extend([z] * (want - len(self.coeffs)))
        else:
            del self.coeffs[want:]

    def valuation(self):
        for i, c in enumerate(self.coeffs):
            if c:
                return self.start + i
        return None  # zero to this precision

    def __add__(self, other):
        prec = min(self.prec, other.prec)
        start = min(self.start, other.start, prec)
        z = self.field.zero()
        out = [z] * (prec - start)
        for i, c in enumerate(self.coeffs):
            e = self.start + i
            if e < prec:
                out[e - start] = out[e - start] + c
        for i, c in enumerate(other.coeffs):
            e = other.start + i
            if e < prec:
                out[e - start] = out[e - start] + c
        return _Series(self.field, start, out, prec)

    def __neg__(self):
        return _Series(self.field, self.start, [-c for c in self.coeffs], self.prec)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        prec = min(self.start + other.prec, other.start + self.prec)
        start = self.start + other.start
        z = self.field.zero()
        out = [z] * max(0, prec - start)
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            for j, d in enumerate(other.coeffs):
                k = i + j
                if start + k >= prec:
                    break
                if d:
                    out[k] = out[k] + c * d
        return _Series(self.field, start, out, prec)

    def scale(self, c):
        return _Series(self.field, self.start, [c * x for x in self.coeffs], self.prec)

    def shift_exponent(self, n):
        return _Series(self.field, self.start + n, self.coeffs, self.prec + n)

    def inverse(self):
        v = self.valuation()
        if v is None:
            raise PrecisionExhausted("cannot invert a series that is zero to working precision")
        u = self.coeffs[v - self.start :]
        n = len(u)
        inv0 = u[0].inverse()
        w = [inv0]
        for k in range(1, n):
            acc = self.field.zero()
            for i in range(1, k + 1):
                if i < len(u) and u[i]:
                    acc = acc + u[i] * w[k - i]
            w.append(-acc * inv0)
        return _Series(self.field, -v, w, -v + n)


def _const_series(field, c, prec):
    return _Series(field, 0, [field.element(c)], prec)


def _nullspace(rows, ncols, field):
    """Right-kernel basis of the matrix over the field, by exact Gauss-Jordan."""
    mat = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = mat[r][c].inverse()
        mat[r] = [inv * x for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    zero, one = field.zero(), field.one()
    for fc in free:
        vec = [zero] * ncols
        vec[fc] = one
        for row_idx, pc in enumerate(pivots):
            vec[pc] = -mat[row_idx][fc]
        basis.append(vec)
    return basis


class Curve:
    """y^2 = cubic(x) over an odd GF(q); genus 1, with the single place Q_inf over P_inf."""

    __slots__ = ("field", "cubic", "cubic_rat", "genus", "_gen_cache")

    def __init__(self, field: Field, cubic):
        if isinstance(cubic, (list, tuple)):
            cubic = Poly(field, cubic)
        if not isinstance(cubic, Poly) or cubic.field != field:
            raise TypeError("cubic must be a Poly over the same field")
        if field.p == 2:
            raise EvenCharacteristic("only odd characteristic is supported")
        if cubic.degree != 3:
            raise NotCubic(f"right-hand side must have degree 3, got degree {cubic.degree}")
        if not cubic.is_squarefree():
            raise NotSquareFree("right-hand side must be square-free")
        self.field = field
        self.cubic = cubic
        self.cubic_rat = RationalFunction.from_poly(cubic)
        self.genus = 1
        self._gen_cache = {}

    def __eq__(self, other):
        return isinstance(other, Curve) and self.field == other.field and self.cubic == other.cubic

    def __hash__(self):
        return hash((self.field, self.cubic))

    def __repr__(self):
        return f"Curve(y^2 = {self.cubic!r} over {self.field!r})"

    # -- places --

    def base_places(self):
        """All q + 1 rational places of GF(q)(x), ascending x0 then infinity."""
        return [BasePlace(x0) for x0 in self.field.elements()] + [BasePlace.infinity()]

    def finite_base_places(self):
        return [BasePlace(x0) for x0 in self.field.elements()]

    def classify(self, x0) -> Splitting:
        """Split/ramified/inert behaviour of the base place x = x0."""
        x0 = self.field.element(x0)
        v = self.cubic.evaluate(x0)
        if not v:
            return Splitting("ramified", (self.field.zero(),))
        r = v.sqrt()
        if r is None:
            return Splitting("inert", ())
        return Splitting("split", (r, -r))

    def places_over(self, base: BasePlace):
        """Rational places of the curve above a base place (canonical root first)."""
        if base.is_infinity:
            return (CurvePlace.at_infinity(),)
        s = self.classify(base.x0)
        return tuple(CurvePlace(base.x0, y0) for y0 in s.y_roots)

    def rational_places(self):
        out = []
        for x0 in self.field.elements():
            out.extend(self.places_over(BasePlace(x0)))
        out.append(CurvePlace.at_infinity())
        return out

    # -- function constructors --

    def fn(self, a=0, b=0) -> CurveFunction:
        """Build a(x) + b(x)*y from ints, field elements, Polys, or rational functions."""

        def to_rat(v):
            if isinstance(v, RationalFunction):
                return v
            if isinstance(v, Poly):
                return RationalFunction.from_poly(v)
            return RationalFunction.from_poly(Poly.constant(self.field, v))

        return CurveFunction(self, to_rat(a), to_rat(b))

    def x(self) -> CurveFunction:
        return self.fn(Poly.x(self.field))

    def y(self) -> CurveFunction:
        return self.fn(0, 1)

    def zero_fn(self) -> CurveFunction:
        return self.fn(0, 0)

    # -- generator series at each place kind --

    def _generator_coeffs(self, place: CurvePlace, n: int):
        """Coefficient list (length >= n) of the place's lifted generator.

        split:    y(t) with t = x - x0, constant term place.y0
        ramified: u(t) with x = x0 + u and t = y
        infinity: unit w(t) with x = w/t^2 and y = w/t^3
        """
        key = place
        cached = self._gen_cache.get(key)
        if cached is not None and len(cached) >= n:
            return cached
        f = self.field
        if place.is_infinity:
            c3, c2, c1, c0 = (
                self.cubic.coeffs[3],
                self.cubic.coeffs[2],
                self.cubic.coeffs[1],
                self.cubic.coeffs[0],
            )
            w = [c3.inverse()]
            # coefficient recursion for c3*w^3 - w^2 + c2*t^2*w^2 + c1*t^4*w + c0*t^6 = 0
            neg_c3 = -c3
            for m in range(1, n):
                t3 = f.zero()  # [t^m] w^3 without the w_m terms
                for i in range(0, m + 1):
                    for j in range(0, m - i + 1):
                        k = m - i - j
                        if i == m or j == m or k == m:
                            continue
                        if i < len(w) and j < len(w) and k < len(w):
                            t3 = t3 + w[i] * w[j] * w[k]
                t2_m = f.zero()  # [t^m] w^2 without the w_m terms
                for i in range(1, m):
                    t2_m = t2_m + w[i] * w[m - i]
                lower = c3 * t3 - t2_m
                if m >= 2:
                    s = f.zero()
                    for i in range(0, m - 1):
                        if m - 2 - i < len(w):
                            s = s + w[i] * w[m - 2 - i]
                    lower = lower + c2 * s
                if m >= 4:
                    lower = lower + c1 * w[m - 4]
                if m == 6:
                    lower = lower + c0
                # the w_m coefficient multiplies 3*c3*w0^2 - 2*w0 = 1/c3
                w.append(neg_c3 * lower)
            coeffs = w
        elif place.is_ramified:
            shifted = self.cubic.shift(place.x0).coeffs
            s1 = shifted[1]
            s2 = shifted[2] if len(shifted) > 2 else f.zero()
            s3 = shifted[3] if len(shifted) > 3 else f.zero()
            inv_s1 = s1.inverse()
            u = [f.zero(), f.zero()]
            # solve s1*u + s2*u^2 + s3*u^3 = t^2 coefficient by coefficient
            for m in range(2, n):
                acc = f.one() if m == 2 else f.zero()
                q2 = f.zero()
                for i in range(2, m - 1):
                    if m - i < len(u):
                        q2 = q2 + u[i] * u[m - i]
                acc = acc - s2 * q2
                q3 = f.zero()
                for i in range(2, m - 3):
                    for j in range(2, m - i - 1):
                        k = m - i - j
                        if 2 <= k < len(u):
                            q3 = q3 + u[i] * u[j] * u[k]
                acc = acc - s3 * q3
                u.append(acc * inv_s1)
            coeffs = u
        else:
            shifted = self.cubic.shift(place.x0).coeffs
            pad = list(shifted) + [f.zero()] * 4
            y0 = place.y0
            inv2y0 = (y0 + y0).inverse()
            c = [y0]
            for m in range(1, n):
                acc = pad[m] if m <= 3 else f.zero()
                for i in range(1, m):
                    acc = acc - c[i] * c[m - i]
                c.append(acc * inv2y0)
            coeffs = c
        self._gen_cache[key] = coeffs
        return coeffs

    def _xy_series(self, place: CurvePlace, prec: int):
        f = self.field
        if place.is_infinity:
            w = self._generator_coeffs(place, prec + 3)
            x_s = _Series(f, -2, w, -2 + len(w))
            y_s = _Series(f, -3, w, -3 + len(w))
            return x_s, y_s
        if place.is_ramified:
            u = self._generator_coeffs(place, prec)
            x_s = _Series(f, 0, [place.x0] + u[1:], len(u))
            y_s = _Series(f, 1, [f.one()], prec)
            return x_s, y_s
        c = self._generator_coeffs(place, prec)
        x_coeffs = [place.x0, f.one()]
        x_s = _Series(f, 0, x_coeffs, prec)
        y_s = _Series(f, 0, c, len(c))
        return x_s, y_s

    def _poly_series(self, p: Poly, x_s: _Series, prec: int) -> _Series:
        acc = _const_series(self.field, 0, prec)
        for c in reversed(p.coeffs):
            acc = acc * x_s + _const_series(self.field, c, prec)
        if not p.coeffs:
            return _const_series(self.field, 0, prec)
        return acc

    def _rat_series(self, r: RationalFunction, x_s: _Series, prec: int) -> _Series:
        num = self._poly_series(r.num, x_s, prec)
        if r.is_polynomial():
            return num
        den = self._poly_series(r.den, x_s, prec)
        return num * den.inverse()

    def _function_series(self, place: CurvePlace, h: CurveFunction, prec: int) -> _Series:
        x_s, y_s = self._xy_series(place, prec)
        out = self._rat_series(h.a, x_s, prec)
        if h.b:
            out = out + self._rat_series(h.b, x_s, prec) * y_s
        return out

    # -- valuations and expansions --

    def valuation(self, place: CurvePlace, h: CurveFunction):
        """v_place(h), or the +infinity marker for the zero function."""
        if h.is_zero():
            return INF
        bound = 2 * h.degree_bound() + 8
        window = 16
        cap = 4 * bound + 64
        while True:
            try:
                s = self._function_series(place, h, window)
            except PrecisionExhausted:
                s = None
            if s is not None:
                v = s.valuation()
                if v is not None:
                    return v
            window *= 2
            if window > cap:
                raise PrecisionExhausted(
                    f"valuation of {h!r} at {place!r} unresolved at window {window // 2}"
                )

    def local_expansion(self, place: CurvePlace, h: CurveFunction, prec: int) -> LocalExpansion:
        """Expansion with `prec` coefficients starting at the leading valuation."""
        if prec < 1:
            raise ValueError("precision must be >= 1")
        if h.is_zero():
            return LocalExpansion(place, None, (), prec)
        v = self.valuation(place, h)
        window = max(v + prec + 4, 8)
        cap = 16 * (abs(v) + prec + h.degree_bound() + 4)
        while True:
            try:
                s = self._function_series(place, h, window)
            except PrecisionExhausted:
                s = None
            if s is not None and s.prec >= v + prec:
                z = self.field.zero()
                out = []
                for e in range(v, v + prec):
                    i = e - s.start
                    out.append(s.coeffs[i] if 0 <= i < len(s.coeffs) else z)
                return LocalExpansion(place, v, tuple(out), prec)
            window = max(window * 2, window + 8)
            if window > cap:
                raise PrecisionExhausted(
                    f"expansion of {h!r} at {place!r} needs more than {cap} terms"
                )

    # -- Riemann-Roch bases --

    def rr_basis_at_infinity(self, k: int):
        """Monomial basis of L(k*Q_inf): x^i*y^j with 2i+3j <= k, increasing pole order."""
        if not isinstance(k, int) or k < 1:
            raise InvalidK(f"pole bound must be a positive integer, got {k!r}")
        one = Poly.one(self.field)
        monos = []
        for j in (0, 1):
            i = 0
            while 2 * i + 3 * j <= k:
                monos.append((2 * i + 3 * j, i, j))
                i += 1
        monos.sort()
        out = []
        for _, i, j in monos:
            xi = Poly.monomial(self.field, one.coeffs[0], i)
            out.append(self.fn(xi, 0) if j == 0 else self.fn(0, xi))
        return out

    def rr_basis_at_affine(self, place: CurvePlace, k: int):
        """Basis of L(k*place) for an affine place over a split x0, decreasing pole order.

        Works inside the ansatz (A(x) + B(x)*y) / (x - x0)^k with deg A <= k and
        deg B <= k - 2 (those bounds are exactly regularity at Q_inf), imposing
        valuation >= k at the conjugate place through the first k series
        coefficients, then grading the kernel to strictly decreasing pole order.
        """
        if not isinstance(k, int) or k < 1:
            raise InvalidK(f"pole bound must be a positive integer, got {k!r}")
        if place.is_infinity or place.is_ramified:
            raise NotSplit(f"{place!r} is not an affine place over a split base place")
        if not self.classify(place.x0).is_split:
            raise NotSplit(f"base place x = {place.x0!r} is not split")
        f = self.field
        x0 = place.x0
        conj = place.conjugate()
        ys = self._generator_coeffs(conj, k + 1)
        n_a = k + 1
        n_b = max(0, k - 1)
        # powers of x0 and binomial columns for (x0 + t)^i
        powers = [f.one()]
        for _ in range(k):
            powers.append(powers[-1] * x0)
        rows = []
        for n in range(k):
            row = []
            for i in range(n_a):
                row.append(f.element(math.comb(i, n)) * powers[i - n] if n <= i else f.zero())
            for i in range(n_b):
                acc = f.zero()
                for j in range(0, min(i, n) + 1):
                    acc = acc + f.element(math.comb(i, j)) * powers[i - j] * ys[n - j]
                row.append(acc)
            rows.append(row)
        kernel = _nullspace(rows, n_a + n_b, f)
        if len(kernel) != k:
            raise PrecisionExhausted(
                f"expected a {k}-dimensional solution space, got {len(kernel)}"
            )
        den = Poly(f, (-x0, f.one())) ** k
        elems = []
        for vec in kernel:
            a_poly = Poly(f, vec[:n_a])
            b_poly = Poly(f, vec[n_a:])
            elems.append(
                CurveFunction(self, RationalFunction(a_poly, den), RationalFunction(b_poly, den))
            )
        return self._grade_by_pole_order(place, elems, kernel, n_a, k)

    def _grade_by_pole_order(self, place: CurvePlace, elems, kernel, n_a, k):
        """Valuation-graded echelon form: pairwise distinct, decreasing pole orders.

        At the split place itself the denominator (x - x0)^k is exactly t^k, so
        the expansion window [-k, 1) of each element is a Taylor shift of A plus
        the convolution of the shifted B with the y-series; row echelon on those
        windows (eliminating from the lowest valuation upward, pivots normalized
        to 1) grades the basis without any series probing.
        """
        f = self.field
        x0 = place.x0
        ys = self._generator_coeffs(place, k + 1)
        width = k + 1  # window columns for exponents -k .. 0
        rows = []
        for vec in kernel:
            sa = Poly(f, vec[:n_a]).shift(x0).coeffs
            sb = Poly(f, vec[n_a:]).shift(x0).coeffs
            row = []
            for j in range(width):
                acc = sa[j] if j < len(sa) else f.zero()
                for l in range(min(j, len(sb) - 1) + 1):
                    if sb[l]:
                        acc = acc + sb[l] * ys[j - l]
                row.append(acc)
            rows.append(row)
        pool = list(zip(rows, elems))
        out = []
        for col in range(width):
            pivot = next((i for i, (r, _) in enumerate(pool) if r[col]), None)
            if pivot is None:
                continue
            row, elem = pool.pop(pivot)
            inv = row[col].inverse()
            row = [inv * c for c in row]
            elem = elem * inv
            pool = [
                ([c - r[col] * rc for c, rc in zip(r, row)], e - elem * r[col]) if r[col] else (r, e)
                for r, e in pool
            ]
            out.append(elem)
        if pool:
            raise PrecisionExhausted("graded reduction left unresolved basis elements")
        return out

    def rr_basis(self, place: CurvePlace, k: int):
        """Dispatch on the place kind."""
        if place.is_infinity:
            return self.rr_basis_at_infinity(k)
        return self.rr_basis_at_affine(place, k)

    def rr_basis_slice(self, place: CurvePlace, k: int, k1: int):
        """Sub-basis of the graded L(k*place) basis with pole order in (k1, k].

        Spans the dimension-(k - k1) complement of L(k1*place) inside L(k*place);
        every nonzero combination keeps pole order above k1 because the graded
        pole orders are pairwise distinct.
        """
        if not (isinstance(k, int) and isinstance(k1, int) and 1 <= k1 < k):
            raise InvalidRange(f"need 1 <= k1 < k, got k1={k1!r}, k={k!r}")
        basis = self.rr_basis(place, k)
        out = []
        for h in basis:
            if place.is_infinity:
                v = self.infinity_valuation(h)
            else:
                v = self.valuation(place, h)
            if k1 < -v <= k:
                out.append(h)
        if len(out) != k - k1:
            raise PrecisionExhausted("pole-order slice has unexpected dimension")
        return out

    def infinity_valuation(self, h: CurveFunction):
        """Exact parity formula at Q_inf: v(a(x)) = 2*v_inf(a), v(b(x)*y) = 2*v_inf(b) - 3.

        The two parities never collide, so no cancellation is possible and no
        series is needed; this doubles as an independent check on the series
        path in the tests.
        """
        va = h.a.ord_at_infinity()
        vb = h.b.ord_at_infinity()
        cand = []
        if va is not INF:
            cand.append(2 * va)
        if vb is not INF:
            cand.append(2 * vb - 3)
        return min(cand) if cand else INF
