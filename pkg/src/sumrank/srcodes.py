"""Twisted operators on the elliptic field, their 2x2 matrices, and the two code families.

An operator (f1, f2) acts by g -> f1*g + f2*conj(g) where conj is the
involution y -> -y.  With row-vector coordinates w.r.t. the integral basis
{1, y} (valid at every finite place), the operator is represented by the
2x2 rational-function matrix

    B(f1) + S * B(f2)   with   S = diag(1, -1),

whose entry-wise evaluation at a finite base place x = x0 gives one matrix
block of a codeword.  Construction 1 takes message functions with poles only
at the place over infinity (totally ramified); construction 2 takes them at
the two places over a completely split x0.
"""

from __future__ import annotations

from dataclasses import dataclass

from .effield import BasePlace, Curve, CurveFunction, CurvePlace
from .errors import (
    LengthMismatch,
    NotSplitPlace,
    ParameterViolation,
    PlaceCollision,
    PoleAtEvaluationPlace,
)
from .gf import FieldElement
from .upoly import Poly, RationalFunction


@dataclass(frozen=True)
class Operator:
    """Pair (f1, f2) acting by g -> f1*g + f2*conj(g)."""

    f1: CurveFunction
    f2: CurveFunction

    def apply(self, g: CurveFunction) -> CurveFunction:
        return self.f1 * g + self.f2 * g.conjugate()


class FunctionMatrix:
    """2x2 matrix of rational functions in x."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        self.entries = tuple(tuple(row) for row in entries)

    def __getitem__(self, idx):
        return self.entries[idx]

    def __eq__(self, other):
        if not isinstance(other, FunctionMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __add__(self, other):
        return FunctionMatrix(
            tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.entries, other.entries)
        )

    def __mul__(self, other):
        if not isinstance(other, FunctionMatrix):
            return NotImplemented
        a, b = self.entries, other.entries
        return FunctionMatrix(
            (
                (a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
                (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]),
            )
        )

    def det(self) -> RationalFunction:
        e = self.entries
        return e[0][0] * e[1][1] - e[0][1] * e[1][0]

    def act_row(self, row):
        """Row-vector action (r0, r1) -> (r0, r1) * M."""
        r0, r1 = row
        e = self.entries
        return (r0 * e[0][0] + r1 * e[1][0], r0 * e[0][1] + r1 * e[1][1])

    def __repr__(self):
        e = self.entries
        return f"[[{e[0][0]!r}, {e[0][1]!r}], [{e[1][0]!r}, {e[1][1]!r}]]"


@dataclass(frozen=True)
class EvaluatedMatrix:
    """2x2 block over GF(q), evaluated at a finite base place."""

    place: BasePlace
    entries: tuple  # ((e00, e01), (e10, e11))

    def __getitem__(self, idx):
        return self.entries[idx]

    def rank(self) -> int:
        (a, b), (c, d) = self.entries
        if not (a or b or c or d):
            return 0
        return 2 if (a * d - b * c) else 1

    def is_zero(self) -> bool:
        (a, b), (c, d) = self.entries
        return not (a or b or c or d)

    def __add__(self, other):
        if self.place != other.place:
            raise ValueError("blocks evaluated at different places")
        return EvaluatedMatrix(
            self.place,
            tuple(tuple(x + y for x, y in zip(r1, r2)) for r1, r2 in zip(self.entries, other.entries)),
        )

    def scale(self, c) -> "EvaluatedMatrix":
        return EvaluatedMatrix(self.place, tuple(tuple(c * x for x in row) for row in self.entries))


Codeword = tuple  # of EvaluatedMatrix, one per evaluation place


def add_codewords(cw1, cw2):
    return tuple(b1 + b2 for b1, b2 in zip(cw1, cw2))


def scale_codeword(c, cw):
    return tuple(b.scale(c) for b in cw)


def involution_matrix(curve: Curve) -> FunctionMatrix:
    """Matrix of the involution y -> -y w.r.t. {1, y}: diag(1, -1)."""
    one = RationalFunction.one(curve.field)
    zero = RationalFunction.zero(curve.field)
    return FunctionMatrix(((one, zero), (zero, -one)))


def multiplication_matrix(curve: Curve, h: CurveFunction) -> FunctionMatrix:
    """Matrix of multiplication by h = a + b*y w.r.t. {1, y}, row-vector convention."""
    fe = curve.cubic_rat
    return FunctionMatrix(((h.a, h.b), (h.b * fe, h.a)))


def operator_matrix(curve: Curve, op: Operator) -> FunctionMatrix:
    """Matrix of g -> f1*g + f2*conj(g): B(f1) + S*B(f2)."""
    return multiplication_matrix(curve, op.f1) + involution_matrix(curve) * multiplication_matrix(
        curve, op.f2
    )


def operator_det(curve: Curve, op: Operator) -> RationalFunction:
    """Closed-form determinant: norm(f1) - norm(f2)."""
    f11, f12 = op.f1.a, op.f1.b
    f21, f22 = op.f2.a, op.f2.b
    fe = curve.cubic_rat
    return f11 * f11 - f21 * f21 - (f12 * f12 - f22 * f22) * fe


def operator_matrix_at(curve: Curve, op: Operator, place: BasePlace) -> EvaluatedMatrix:
    """Entry-wise evaluation of the operator matrix at a finite base place."""
    if place.is_infinity:
        raise PoleAtEvaluationPlace("{1, y} is not an integral basis at infinity")
    x0 = place.x0
    m = operator_matrix(curve, op)
    rows = []
    for r in m.entries:
        row = []
        for entry in r:
            if entry.has_pole_at(x0):
                raise PoleAtEvaluationPlace(f"entry {entry!r} has a pole at x = {x0!r}")
            row.append(entry.evaluate(x0))
        rows.append(tuple(row))
    return EvaluatedMatrix(place, tuple(rows))


def evaluate_operator(curve: Curve, op: Operator, places) -> Codeword:
    """The codeword of an arbitrary operator over an ordered list of finite places."""
    return tuple(operator_matrix_at(curve, op, p) for p in places)


@dataclass(frozen=True)
class PoleData:
    """Where the message functions are allowed poles."""

    kind: str  # "infinity" | "split"
    x0: FieldElement | None = None
    swapped: bool = False

    def places(self, curve: Curve):
        """(slot-1 pole place, slot-2 pole place)."""
        if self.kind == "infinity":
            q = CurvePlace.at_infinity()
            return q, q
        first, second = curve.places_over(BasePlace(self.x0))
        if self.swapped:
            first, second = second, first
        return first, second


@dataclass(frozen=True)
class CodeSpec:
    """A constructed code: message basis, evaluation places, construction metadata.

    message_basis holds (slot, function) pairs: slot-1 functions with pole
    order in (k1, k] at the first pole place, then slot-2 functions from
    L(k1 * second pole place).
    """

    curve: Curve
    construction: int
    k: int
    k1: int
    pole: PoleData
    eval_places: tuple
    message_basis: tuple

    @property
    def s(self) -> int:
        return len(self.eval_places)

    @property
    def length(self) -> int:
        return 4 * self.s

    @property
    def dimension(self) -> int:
        return len(self.message_basis)

    @property
    def distance_bound(self) -> int:
        return 2 * self.s - self.k

    def operator_from_message(self, message) -> Operator:
        if len(message) != self.dimension:
            raise LengthMismatch(f"expected {self.dimension} symbols, got {len(message)}")
        f1 = self.curve.zero_fn()
        f2 = self.curve.zero_fn()
        for coeff, (slot, h) in zip(message, self.message_basis):
            c = self.curve.field.element(coeff)
            if slot == 1:
                f1 = f1 + h * c
            else:
                f2 = f2 + h * c
        return Operator(f1, f2)

    def encode(self, message) -> Codeword:
        op = self.operator_from_message(message)
        return evaluate_operator(self.curve, op, self.eval_places)

    # -- JSON round-trip (canonical machine format) --

    def to_json_dict(self) -> dict:
        field = self.curve.field

        def rat_dict(r: RationalFunction):
            return {
                "num": [field.element_to_json(c) for c in r.num.coeffs],
                "den": [field.element_to_json(c) for c in r.den.coeffs],
            }

        curve_dict = {
            "q": field.spec_string(),
            "f": [field.element_to_json(c) for c in self.curve.cubic.coeffs],
        }
        if field.modulus is not None:
            curve_dict["mod"] = list(field.modulus)
        pole: dict = {"kind": self.pole.kind}
        if self.pole.kind == "split":
            pole["x0"] = field.element_to_json(self.pole.x0)
            pole["swapped"] = self.pole.swapped
        return {
            "curve": curve_dict,
            "construction": self.construction,
            "k": self.k,
            "k1": self.k1,
            "pole": pole,
            "eval_places": [field.element_to_json(p.x0) for p in self.eval_places],
            "message_basis": [
                {"slot": slot, "a": rat_dict(h.a), "b": rat_dict(h.b)}
                for slot, h in self.message_basis
            ],
            "derived": {
                "s": self.s,
                "length": self.length,
                "dimension": self.dimension,
                "distance_bound": self.distance_bound,
            },
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "CodeSpec":
        from .gf import Field

        qspec = data["curve"]["q"]
        if "^" in qspec:
            p_str, m_str = qspec.split("^")
            field = Field(int(p_str), int(m_str), modulus=data["curve"].get("mod"))
        else:
            field = Field(int(qspec))
        cubic = Poly(field, [field.element_from_json(c) for c in data["curve"]["f"]])
        curve = Curve(field, cubic)

        def rat_from(d):
            num = Poly(field, [field.element_from_json(c) for c in d["num"]])
            den = Poly(field, [field.element_from_json(c) for c in d["den"]])
            return RationalFunction(num, den)

        pole_d = data["pole"]
        if pole_d["kind"] == "split":
            pole = PoleData("split", field.element_from_json(pole_d["x0"]), pole_d.get("swapped", False))
        else:
            pole = PoleData("infinity")
        eval_places = tuple(BasePlace(field.element_from_json(v)) for v in data["eval_places"])
        basis = tuple(
            (entry["slot"], CurveFunction(curve, rat_from(entry["a"]), rat_from(entry["b"])))
            for entry in data["message_basis"]
        )
        return cls(
            curve=curve,
            construction=data["construction"],
            k=data["k"],
            k1=data["k1"],
            pole=pole,
            eval_places=eval_places,
            message_basis=basis,
        )


def _validate_parameters(k: int, k1: int, places) -> None:
    s = len(places)
    if s < 2:
        raise ParameterViolation(f"s >= 2 violated (got s = {s})")
    if len(set(places)) != s:
        raise ParameterViolation("evaluation places must be distinct")
    for p in places:
        if not isinstance(p, BasePlace) or p.is_infinity:
            raise ParameterViolation("evaluation places must be finite base places")
    if not isinstance(k1, int) or k1 < 1:
        raise ParameterViolation(f"k1 >= 1 violated (got k1 = {k1})")
    if not isinstance(k, int) or not k1 < k:
        raise ParameterViolation(f"k1 < k violated (got k1 = {k1}, k = {k})")
    if not k < 2 * s:
        raise ParameterViolation(f"k < 2*s violated (got k = {k}, s = {s})")


def construct_code_at_infinity(curve: Curve, k: int, k1: int, places) -> CodeSpec:
    """Construction 1: message poles at the place over infinity (totally ramified).

    Slot 1 runs over the pole-order slice (k1, k] of L(k*Q_inf); slot 2 over
    L(k1*Q_inf).  Dimension (k - k1) + k1 = k; every nonzero codeword has
    sum-rank weight >= 2s - k.
    """
    places = tuple(places)
    _validate_parameters(k, k1, places)
    q_inf = CurvePlace.at_infinity()
    slot1 = curve.rr_basis_slice(q_inf, k, k1)
    slot2 = curve.rr_basis_at_infinity(k1)
    basis = tuple((1, h) for h in reversed(slot1)) + tuple((2, h) for h in slot2)
    return CodeSpec(
        curve=curve,
        construction=1,
        k=k,
        k1=k1,
        pole=PoleData("infinity"),
        eval_places=places,
        message_basis=basis,
    )


def construct_code_at_split(
    curve: Curve, k: int, k1: int, split_x0, places, swap_labeling: bool = False
) -> CodeSpec:
    """Construction 2: message poles at the two places over a completely split x0.

    Slot 1 runs over the pole-order slice (k1, k] of L(k * Q_{0,1}); slot 2
    over L(k1 * Q_{0,2}), with Q_{0,1} = (x0, canonical sqrt) unless swapped.
    """
    split_x0 = curve.field.element(split_x0)
    places = tuple(places)
    splitting = curve.classify(split_x0)
    if not splitting.is_split:
        raise NotSplitPlace(f"x = {split_x0!r} is {splitting.kind}, not completely split")
    for p in places:
        if not p.is_infinity and p.x0 == split_x0:
            raise PlaceCollision(f"evaluation places must avoid the pole place x = {split_x0!r}")
    _validate_parameters(k, k1, places)
    pole = PoleData("split", split_x0, swap_labeling)
    q1, q2 = pole.places(curve)
    slot1 = curve.rr_basis_slice(q1, k, k1)
    slot2 = curve.rr_basis_at_affine(q2, k1)
    basis = tuple((1, h) for h in slot1) + tuple((2, h) for h in slot2)
    return CodeSpec(
        curve=curve,
        construction=2,
        k=k,
        k1=k1,
        pole=pole,
        eval_places=places,
        message_basis=basis,
    )
