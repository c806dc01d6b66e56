import itertools

import pytest

from sumrank.errors import (
    DivisionByZero,
    EvenCharacteristic,
    FieldTooLarge,
    NotPrime,
    ReducibleModulus,
)
from sumrank.gf import Field

SMALL_FIELDS = [(7, 1), (11, 1), (13, 1), (3, 2), (5, 2), (11, 2)]


def brute_squares(field):
    """Independent oracle: the set of squares by exhaustive squaring."""
    return {e * e for e in field.elements()}


def test_prime_field_construction():
    f = Field(7)
    assert f.q == 7 and f.p == 7 and f.m == 1
    assert len(list(f.elements())) == 7


def test_gf9_modulus_is_irreducible_by_root_scan():
    f = Field(3, 2, modulus=[1, 0, 1])  # t^2 + 1
    # oracle: t^2 + 1 has no root over GF(3)
    assert all((r * r + 1) % 3 != 0 for r in range(3))
    assert f.q == 9
    assert len(set(f.elements())) == 9


def test_even_characteristic_rejected():
    with pytest.raises(EvenCharacteristic):
        Field(2, 3)


def test_not_prime_rejected():
    with pytest.raises(NotPrime):
        Field(9)
    with pytest.raises(NotPrime):
        Field(1)


def test_reducible_modulus_rejected():
    # t^2 - 1 = (t-1)(t+1) over GF(3)
    with pytest.raises(ReducibleModulus):
        Field(3, 2, modulus=[2, 0, 1])
    # non-monic
    with pytest.raises(ReducibleModulus):
        Field(3, 2, modulus=[1, 0, 2])


def test_field_order_cap():
    with pytest.raises(FieldTooLarge):
        Field(65537)
    Field(65537, max_order=1 << 17)


def test_auto_modulus_search_is_deterministic():
    f1 = Field(3, 2)
    f2 = Field(3, 2)
    assert f1.modulus == f2.modulus
    assert f1 == f2
    # lexicographic scan: t^2, t^2+t, t^2+2t are reducible, t^2+1 is first
    assert f1.modulus == (1, 0, 1)


def test_inverse_examples():
    f = Field(7)
    assert f.element(3).inverse() == f.element(5)
    assert f.element(6).inverse() == f.element(6)
    with pytest.raises(DivisionByZero):
        f.zero().inverse()


@pytest.mark.parametrize("p,m", SMALL_FIELDS)
def test_inverse_exhaustive(p, m):
    f = Field(p, m)
    one = f.one()
    for e in f.elements():
        if e:
            assert e * e.inverse() == one


def test_is_square_examples():
    f = Field(7)
    # oracle: squares mod 7 are {0, 1, 2, 4}
    assert brute_squares(f) == {f.element(v) for v in (0, 1, 2, 4)}
    assert f.element(2).is_square()
    assert not f.element(3).is_square()
    assert f.zero().is_square()


@pytest.mark.parametrize("p,m", SMALL_FIELDS)
def test_is_square_matches_brute_force(p, m):
    f = Field(p, m)
    squares = brute_squares(f)
    for e in f.elements():
        assert e.is_square() == (e in squares)


@pytest.mark.parametrize("p,m", SMALL_FIELDS)
def test_nonzero_square_count(p, m):
    f = Field(p, m)
    squares = {e for e in brute_squares(f) if e}
    assert len(squares) == (f.q - 1) // 2


def test_sqrt_examples():
    f = Field(7)
    assert f.element(4).sqrt() == f.element(2)  # canonical: 2, not 5
    assert f.element(3).sqrt() is None
    assert f.zero().sqrt() == f.zero()


@pytest.mark.parametrize("p,m", SMALL_FIELDS)
def test_sqrt_squares_back_and_is_canonical(p, m):
    f = Field(p, m)
    for e in f.elements():
        r = e.sqrt()
        if e.is_square():
            assert r is not None and r * r == e
            assert r <= -r  # lexicographically smaller representative
        else:
            assert r is None


def test_square_multiplicativity(rng):
    f = Field(11, 2)
    for _ in range(200):
        a = f.random_nonzero(rng)
        b = f.random_nonzero(rng)
        assert (a * b).is_square() == (a.is_square() == b.is_square())


@pytest.mark.parametrize("p,m", [(7, 1), (3, 2), (13, 1)])
def test_field_axioms_random(p, m, rng):
    f = Field(p, m)
    for _ in range(300):
        a, b, c = (f.random_element(rng) for _ in range(3))
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


def test_enumeration_is_lexicographic():
    f = Field(3, 2)
    coeff_lists = [e.coeffs for e in f.elements()]
    assert coeff_lists == sorted(coeff_lists)
    assert coeff_lists == list(itertools.product(range(3), repeat=2))


def test_int_coercion_and_power():
    f = Field(7)
    assert f.element(3) + 5 == f.element(1)
    assert 2 * f.element(4) == f.element(1)
    assert f.element(3) ** -1 == f.element(5)
    assert f.element(5) / f.element(5) == f.one()


def test_element_json_round_trip():
    f = Field(7)
    assert f.element_from_json(f.element_to_json(f.element(5))) == f.element(5)
    g = Field(3, 2)
    e = g.element([1, 2])
    assert g.element_to_json(e) == [1, 2]
    assert g.element_from_json([1, 2]) == e
