import numpy as np
import pytest

from sumrank.effield import BasePlace, CurvePlace
from sumrank.errors import (
    LengthMismatch,
    NotSplitPlace,
    ParameterViolation,
    PlaceCollision,
    PoleAtEvaluationPlace,
)
from sumrank.srcodes import (
    CodeSpec,
    Operator,
    add_codewords,
    construct_code_at_infinity,
    construct_code_at_split,
    evaluate_operator,
    involution_matrix,
    multiplication_matrix,
    operator_det,
    operator_matrix,
    operator_matrix_at,
    scale_codeword,
)
from sumrank.srmetric import sum_rank_weight
from sumrank.upoly import Poly, RationalFunction, parse_poly
from sumrank.verify import check_structural_identity, random_curve_function


def ints(mat):
    return [[c.coeffs[0] for c in row] for row in mat.entries]


# -- matrices --

def test_involution_matrix_is_diag_1_minus1(curve7, f7):
    m = involution_matrix(curve7)
    one = RationalFunction.one(f7)
    assert m.entries == ((one, RationalFunction.zero(f7)), (RationalFunction.zero(f7), -one))
    ident = m * m
    assert ident.entries[0][0] == one and ident.entries[1][1] == one
    assert ident.entries[0][1].is_zero() and ident.entries[1][0].is_zero()


def test_multiplication_matrix_examples(curve7, f7):
    m = multiplication_matrix(curve7, curve7.y())
    assert m.entries[0][0].is_zero() and m.entries[0][1] == RationalFunction.one(f7)
    assert m.entries[1][0] == curve7.cubic_rat and m.entries[1][1].is_zero()
    c = multiplication_matrix(curve7, curve7.fn(5))
    assert c.entries[0][0] == RationalFunction.from_poly(Poly.constant(f7, 5))
    assert c.entries[0][1].is_zero() and c.entries[1][0].is_zero()


def test_multiplication_matrix_is_multiplicative(curve7, rng):
    for _ in range(60):
        f = random_curve_function(curve7, rng)
        g = random_curve_function(curve7, rng)
        assert multiplication_matrix(curve7, f) * multiplication_matrix(curve7, g) == multiplication_matrix(curve7, f * g)


def test_operator_matrix_examples(curve7, f7):
    op = Operator(curve7.fn(3), curve7.y())
    m = operator_matrix(curve7, op)
    assert m.entries[0][0] == RationalFunction.from_poly(Poly.constant(f7, 3))
    assert m.entries[0][1] == RationalFunction.one(f7)
    assert m.entries[1][0] == -curve7.cubic_rat
    assert m.entries[1][1] == RationalFunction.from_poly(Poly.constant(f7, 3))

    op2 = Operator(curve7.fn(1), curve7.fn(parse_poly(f7, "x^3")))
    m2 = operator_matrix(curve7, op2)
    x = Poly.x(f7)
    assert m2.entries[0][0] == RationalFunction.from_poly(x**3 + 1)
    assert m2.entries[0][1].is_zero() and m2.entries[1][0].is_zero()
    assert m2.entries[1][1] == RationalFunction.from_poly(1 - x**3)

    zero_m = operator_matrix(curve7, Operator(curve7.zero_fn(), curve7.zero_fn()))
    assert all(e.is_zero() for row in zero_m.entries for e in row)


def test_operator_det_examples(curve7, f7):
    x = Poly.x(f7)
    assert operator_det(curve7, Operator(curve7.fn(3), curve7.y())) == RationalFunction.from_poly(x**3 + 5)
    assert operator_det(curve7, Operator(curve7.fn(1), curve7.fn(x**3))) == RationalFunction.from_poly(1 - x**6)
    assert operator_det(curve7, Operator(curve7.zero_fn(), curve7.zero_fn())).is_zero()


def test_operator_matrix_at_examples(curve7, f7):
    places = curve7.finite_base_places()
    op = Operator(curve7.fn(3), curve7.y())
    assert ints(operator_matrix_at(curve7, op, places[0])) == [[3, 1], [4, 3]]
    assert ints(operator_matrix_at(curve7, op, places[6])) == [[3, 1], [5, 3]]
    op2 = Operator(curve7.fn(1), curve7.fn(parse_poly(f7, "x^3")))
    assert ints(operator_matrix_at(curve7, op2, places[0])) == [[1, 0], [0, 1]]


def test_operator_matrix_at_pole_raises(curve7, f7):
    x = Poly.x(f7)
    bad = Operator(curve7.fn(RationalFunction(Poly.one(f7), x - 2)), curve7.zero_fn())
    with pytest.raises(PoleAtEvaluationPlace):
        operator_matrix_at(curve7, bad, BasePlace(f7.element(2)))
    operator_matrix_at(curve7, bad, BasePlace(f7.element(3)))  # fine elsewhere
    with pytest.raises(PoleAtEvaluationPlace):
        operator_matrix_at(curve7, bad, BasePlace.infinity())


def test_structural_identity_suite(curve7, rng):
    res = check_structural_identity(curve7, rng, cases=300)
    assert res.passed, res.failures[:3]


# -- constructions --

def test_construct1_example_dimensions(curve7):
    places = curve7.finite_base_places()
    code = construct_code_at_infinity(curve7, 6, 3, places)
    assert code.s == 7 and code.length == 28 and code.dimension == 6
    assert code.distance_bound == 8
    slots = [slot for slot, _ in code.message_basis]
    assert slots == [1, 1, 1, 2, 2, 2]
    # slot-1 in decreasing pole order: x^3, x*y, x^2
    x = Poly.x(curve7.field)
    assert [h for _, h in code.message_basis[:3]] == [curve7.fn(x**3), curve7.fn(0, x), curve7.fn(x**2)]


def test_construct1_parameter_violations(curve7, f7):
    places3 = [BasePlace(f7.element(i)) for i in range(3)]
    with pytest.raises(ParameterViolation, match="k < 2\\*s"):
        construct_code_at_infinity(curve7, 6, 3, places3)
    with pytest.raises(ParameterViolation, match="k1 >= 1"):
        construct_code_at_infinity(curve7, 6, 0, curve7.finite_base_places())
    with pytest.raises(ParameterViolation, match="k1 < k"):
        construct_code_at_infinity(curve7, 6, 6, curve7.finite_base_places())
    with pytest.raises(ParameterViolation, match="s >= 2"):
        construct_code_at_infinity(curve7, 1, 1, [BasePlace(f7.element(0))])
    with pytest.raises(ParameterViolation, match="distinct"):
        construct_code_at_infinity(curve7, 3, 1, [BasePlace(f7.element(0))] * 4)


def test_construct2_example_and_violations(curve7, f7, example2_code):
    assert example2_code.s == 6 and example2_code.length == 24 and example2_code.dimension == 6
    assert example2_code.distance_bound == 6
    with pytest.raises(NotSplitPlace):
        construct_code_at_split(curve7, 6, 3, 0, [BasePlace(f7.element(i)) for i in (2, 3, 4, 5)])
    with pytest.raises(PlaceCollision):
        construct_code_at_split(curve7, 6, 3, 1, [BasePlace(f7.element(i)) for i in (1, 2, 3, 4)])


def test_construct2_swap_labeling(curve7, f7):
    places = [p for p in curve7.finite_base_places() if p.x0 != f7.element(1)]
    code = construct_code_at_split(curve7, 6, 3, 1, places, swap_labeling=True)
    q1, q2 = code.pole.places(curve7)
    assert q1 == CurvePlace.affine(f7.element(1), f7.element(5))
    assert q2 == CurvePlace.affine(f7.element(1), f7.element(2))
    for slot, h in code.message_basis:
        pl = q1 if slot == 1 else q2
        v = curve7.valuation(pl, h)
        assert (3 < -v <= 6) if slot == 1 else (-v <= 3)


def test_message_space_pole_orders(example2_code, curve7):
    q1, q2 = example2_code.pole.places(curve7)
    for slot, h in example2_code.message_basis:
        if slot == 1:
            assert 3 < -curve7.valuation(q1, h) <= 6
            assert curve7.valuation(q2, h) >= 0
        else:
            assert -curve7.valuation(q2, h) <= 3
            assert curve7.valuation(q1, h) >= 0


# -- encoding --

def test_encode_zero_message(example2_code):
    cw = example2_code.encode([0] * 6)
    assert all(b.is_zero() for b in cw)


def test_encode_monomial_messages_weight(curve7, f7):
    places = curve7.finite_base_places()
    code = construct_code_at_infinity(curve7, 6, 3, places)
    # message selecting f1 = x^3 (slot-1 basis is [x^3, x*y, x^2])
    cw = code.encode([1, 0, 0, 0, 0, 0])
    # oracle: blocks are diag(x0^3, x0^3): rank 0 at x0 = 0, rank 2 at the six others
    assert ints(cw[0]) == [[0, 0], [0, 0]]
    assert all(ints(cw[i]) == [[pow(i, 3, 7), 0], [0, pow(i, 3, 7)]] for i in range(1, 7))
    assert sum_rank_weight(cw) == 12
    # message selecting f1 = x^2
    cw2 = code.encode([0, 0, 1, 0, 0, 0])
    assert all(ints(cw2[i]) == [[pow(i, 2, 7), 0], [0, pow(i, 2, 7)]] for i in range(7))
    assert sum_rank_weight(cw2) == 12


def test_encode_linearity(example2_code, f7, rng):
    for _ in range(20):
        m1 = [f7.random_element(rng) for _ in range(6)]
        m2 = [f7.random_element(rng) for _ in range(6)]
        c = f7.random_element(rng)
        lhs = example2_code.encode([a + b for a, b in zip(m1, m2)])
        assert lhs == add_codewords(example2_code.encode(m1), example2_code.encode(m2))
        assert example2_code.encode([c * a for a in m1]) == scale_codeword(c, example2_code.encode(m1))


def test_encode_length_mismatch(example2_code):
    with pytest.raises(LengthMismatch):
        example2_code.encode([0] * 5)


def test_codespec_json_round_trip(curve7, example2_code):
    code1 = construct_code_at_infinity(curve7, 4, 2, curve7.finite_base_places()[:5])
    for code in (code1, example2_code):
        d = code.to_json_dict()
        back = CodeSpec.from_json_dict(d)
        assert back == code
        assert back.to_json_dict() == d


# -- determinant membership / nonvanishing / rank-drop, exhaustive over the example codes --

def _batch_components(code):
    """Common-denominator numerator coefficient matrices for f11, f12, f21, f22.

    Returns (den_power, comps) where each component maps messages to numerator
    coefficients relative to the common denominator (x - x0)^den_power per slot
    function; construction 1 uses denominator 1.
    """
    field = code.curve.field
    p = field.p
    kdim = code.dimension
    if code.construction == 1:
        target_pow = 0
        lift = {1: Poly.one(field), 2: Poly.one(field)}
    else:
        x0 = code.pole.x0
        lin = Poly(field, (-x0, field.one()))
        target_pow = code.k
        lift = {}  # per-slot multiplier to reach the common denominator power
    comps = {name: [] for name in ("f11", "f12", "f21", "f22")}
    for slot, h in code.message_basis:
        rows = {"f11": None, "f12": None, "f21": None, "f22": None}
        for comp, r in (("1", h.a), ("2", h.b)):
            if code.construction == 2:
                den_pow = int(r.den.degree) if not r.den.is_zero() else 0
                mult = lin ** (target_pow - den_pow)
                num = r.num * mult
            else:
                assert r.is_polynomial()
                num = r.num
            key = ("f1" if slot == 1 else "f2") + comp
            rows[key] = num
        zero = Poly.zero(field)
        for key in comps:
            num = rows[key] if rows[key] is not None else zero
            comps[key].append([int(c.coeffs[0]) for c in num.coeffs])
    # pad to uniform width per component
    out = {}
    for key, rows_list in comps.items():
        width = max((len(r) for r in rows_list), default=1) or 1
        mat = np.zeros((kdim, width), dtype=np.int64)
        for i, r in enumerate(rows_list):
            mat[i, : len(r)] = r
        out[key] = mat
    return out


def _batch_conv_square(u, p):
    n = u.shape[1]
    out = np.zeros((u.shape[0], 2 * n - 1), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            out[:, i + j] += u[:, i] * u[:, j]
    return out % p


def _batch_conv_fixed(u, poly_ints, p):
    n = u.shape[1]
    out = np.zeros((u.shape[0], n + len(poly_ints) - 1), dtype=np.int64)
    for j, c in enumerate(poly_ints):
        if c:
            out[:, j : j + n] += c * u
    return out % p


@pytest.mark.parametrize("which", ["ex1", "ex2"])
def test_det_nonvanishing_and_rank_drop_exhaustive(which, curve7, f7, example2_code):
    """det != 0 for every nonzero message; block rank < 2 iff the det numerator vanishes there."""
    if which == "ex1":
        code = construct_code_at_infinity(curve7, 6, 3, curve7.finite_base_places())
    else:
        code = example2_code
    p = 7
    kdim = code.dimension
    total = p**kdim
    comps = _batch_components(code)
    n = np.arange(total, dtype=np.int64)
    powers = p ** np.arange(kdim - 1, -1, -1, dtype=np.int64)
    digits = (n[:, None] // powers) % p
    vals = {key: (digits @ mat) % p for key, mat in comps.items()}
    sq = {key: _batch_conv_square(v, p) for key, v in vals.items()}
    width = max(m.shape[1] for m in sq.values()) + 3
    det = np.zeros((total, width), dtype=np.int64)
    det[:, : sq["f11"].shape[1]] += sq["f11"]
    det[:, : sq["f21"].shape[1]] -= sq["f21"]
    fe_ints = [int(c.coeffs[0]) for c in curve7.cubic.coeffs]
    for key, sign in (("f12", -1), ("f22", 1)):
        term = _batch_conv_fixed(sq[key], fe_ints, p)
        det[:, : term.shape[1]] += sign * term
    det %= p
    nonzero_det = (det != 0).any(axis=1)
    assert nonzero_det[0] == False  # noqa: E712  (zero message)
    assert nonzero_det[1:].all(), "a nonzero message produced the zero determinant"
    # rank drop <=> root of the det numerator at the evaluation point
    from sumrank.srmetric import _basis_blocks

    blocks = _basis_blocks(code)
    basis_flat = np.array(
        [[int(e.coeffs[0]) for blk in row for r in blk.entries for e in r] for row in blocks],
        dtype=np.int64,
    )
    v = ((digits @ basis_flat) % p).reshape(total, code.s, 4)
    block_det = (v[..., 0] * v[..., 3] - v[..., 1] * v[..., 2]) % p
    xs = np.array([int(pl.x0.coeffs[0]) for pl in code.eval_places], dtype=np.int64)
    vander = np.array([[pow(int(x), e, p) for x in xs] for e in range(width)], dtype=np.int64)
    det_at_places = (det @ vander) % p
    assert ((block_det == 0) == (det_at_places == 0))[1:].all()


def test_det_membership_construction1(curve7, rng, f7):
    """Construction-1 determinants are polynomials of degree <= k (pole only over infinity)."""
    code = construct_code_at_infinity(curve7, 6, 3, curve7.finite_base_places())
    for _ in range(60):
        msg = [f7.random_element(rng) for _ in range(6)]
        op = code.operator_from_message(msg)
        det = operator_det(curve7, op)
        if det.is_zero():
            continue
        assert det.is_polynomial()
        assert det.num.degree <= 6
        # stated in valuation terms: v at the base infinity place >= -k
        assert det.ord_at_infinity() >= -6


def test_det_membership_construction2(example2_code, curve7, f7, rng):
    """Construction-2 determinants lie in L(k * P_{x0}): poles only at x0, order <= k."""
    x0 = f7.element(1)
    for _ in range(60):
        msg = [f7.random_element(rng) for _ in range(6)]
        det = operator_det(curve7, example2_code.operator_from_message(msg))
        if det.is_zero():
            continue
        assert det.ord_at(x0) >= -6
        assert det.ord_at_infinity() >= 0
        if det.den.degree > 0:
            assert det.den == Poly(f7, (-x0, f7.one())) ** int(det.den.degree)
        for a in f7.elements():
            if a != x0:
                assert det.ord_at(a) >= 0


def test_nonvanishing_condition_via_valuations(example2_code, curve7, f7, rng):
    """When v(f1) at its pole place is smaller than v(f2) at its place, det != 0."""
    q1, q2 = example2_code.pole.places(curve7)
    for _ in range(40):
        msg = [f7.random_element(rng) for _ in range(6)]
        op = example2_code.operator_from_message(msg)
        if op.f1.is_zero():
            continue
        v1 = curve7.valuation(q1, op.f1)
        v2 = curve7.valuation(q2, op.f2)
        assert v1 < v2  # slot-1 pole orders exceed k1 >= slot-2 pole orders
        assert not operator_det(curve7, op).is_zero()


def test_evaluate_operator_outside_message_space(curve7):
    """Operators outside the constructions' message spaces still evaluate fine (mirrored case)."""
    x = Poly.x(curve7.field)
    op = Operator(curve7.fn(1), curve7.fn(x**3))
    cw = evaluate_operator(curve7, op, curve7.finite_base_places())
    assert sum_rank_weight(cw) == 8
