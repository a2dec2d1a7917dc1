import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pg2q.gfq import (
    GF,
    FieldSpec,
    NotPrime,
    QuadChar,
    ReducibleModulus,
    field_for_order,
    field_new,
    is_prime,
)

SMALL_PRIME_POWERS = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 49, 64, 81]


def prime_powers_upto(n):
    out = []
    for q in range(2, n + 1):
        for p in range(2, q + 1):
            if is_prime(p) and q % p == 0:
                h, m = 0, q
                while m % p == 0:
                    m //= p
                    h += 1
                if m == 1:
                    out.append(q)
                break
    return out


def test_field_new_examples():
    g5 = field_new(5, 1)
    assert g5.q == 5 and g5.modulus == (0, 1)
    g9 = field_new(3, 2, [1, 0, 1])
    assert g9.q == 9
    with pytest.raises(ReducibleModulus):
        field_new(3, 2, [2, 0, 1])  # t^2 + 2 has the root t = 1
    with pytest.raises(NotPrime):
        field_new(6, 1)


def test_auto_modulus_deterministic():
    a = field_new(3, 2).modulus
    b = GF(3, 2).modulus
    assert a == b == (1, 0, 1)
    assert field_new(3, 3).modulus == (1, 2, 0, 1)


def test_mul_examples():
    assert field_new(5).mul(2, 3) == 1
    g9 = field_new(3, 2, [1, 0, 1])
    assert g9.mul(3, 3) == 2  # t * t = -1 = 2
    assert field_new(7).inv(3) == 5


def test_quad_char_examples():
    g5 = field_new(5)
    assert g5.quad_char(4) is QuadChar.SQUARE
    assert g5.quad_char(2) is QuadChar.NONSQUARE
    assert g5.quad_char(0) is QuadChar.ZERO
    assert sorted(g5.squares()) == [1, 4]
    g9 = field_new(3, 2)
    # nonzero prime-subfield elements are squares in GF(9)
    squares = g9.squares()
    assert {1, 2} <= squares


def test_quad_char_euler_criterion():
    for q in [3, 5, 7, 9, 11, 13, 25, 27]:
        gf = field_for_order(q)
        for x in range(1, q):
            euler = gf.pow_(x, (q - 1) // 2)
            expected = QuadChar.SQUARE if euler == 1 else QuadChar.NONSQUARE
            assert gf.quad_char(x) is expected


def test_square_counts_odd_q():
    for q in [3, 5, 7, 9, 11, 13, 25, 27, 31]:
        gf = field_for_order(q)
        sq = sum(1 for x in range(1, q) if gf.quad_char(x) is QuadChar.SQUARE)
        ns = sum(1 for x in range(1, q) if gf.quad_char(x) is QuadChar.NONSQUARE)
        assert sq == ns == (q - 1) // 2


def test_character_multiplicativity():
    table = {
        (QuadChar.SQUARE, QuadChar.SQUARE): QuadChar.SQUARE,
        (QuadChar.SQUARE, QuadChar.NONSQUARE): QuadChar.NONSQUARE,
        (QuadChar.NONSQUARE, QuadChar.SQUARE): QuadChar.NONSQUARE,
        (QuadChar.NONSQUARE, QuadChar.NONSQUARE): QuadChar.SQUARE,
    }
    for q in [5, 7, 9, 27]:
        gf = field_for_order(q)
        for x in range(1, q):
            for y in range(1, q):
                got = gf.quad_char(gf.mul(x, y))
                assert got is table[(gf.quad_char(x), gf.quad_char(y))]


def test_trace_examples():
    g9 = field_new(3, 2, [1, 0, 1])
    assert g9.trace(1) == 2  # h * 1 mod p
    assert g9.trace(3) == 0  # Tr(t) = t + t^3 = 0
    g5 = field_new(5)
    assert all(g5.trace(x) == x for x in range(5))


def test_trace_lands_in_prime_subfield():
    for q in [9, 27, 25, 8, 16]:
        gf = field_for_order(q)
        for x in range(q):
            t = gf.trace(x)
            assert gf.frobenius(t) == t


def test_frobenius_examples():
    g9 = field_new(3, 2, [1, 0, 1])
    assert g9.frobenius(3) == 6  # t^3 = -t = 2t
    g7 = field_new(7)
    assert all(g7.frobenius(x) == x for x in range(7))
    g27 = field_for_order(27)
    for x in range(27):
        y = x
        for _ in range(3):
            y = g27.frobenius(y)
        assert y == x


@pytest.mark.parametrize("q", prime_powers_upto(81))
def test_field_axioms_exhaustive(q):
    import numpy as np

    gf = field_for_order(q)
    els = range(q)
    for a in els:
        assert gf.add(a, 0) == a and gf.mul(a, 1) == a and gf.mul(a, 0) == 0
        assert gf.add(a, gf.neg(a)) == 0
        if a:
            assert gf.mul(a, gf.inv(a)) == 1
    add = np.array([[gf.add(a, b) for b in els] for a in els])
    mul = np.array([[gf.mul(a, b) for b in els] for a in els])
    assert (add == add.T).all() and (mul == mul.T).all()
    # associativity and distributivity over all q^3 triples at once:
    # [a,b,c] -> op(op(a,b),c) versus op(a,op(b,c))
    assert (add[add, :] == add[:, add]).all()
    assert (mul[mul, :] == mul[:, mul]).all()
    assert (mul[:, add] == add[mul[:, :, None], mul[:, None, :]]).all()


@given(st.sampled_from([3, 5, 9, 27, 8]), st.data())
@settings(max_examples=60, deadline=None)
def test_frobenius_is_automorphism(q, data):
    gf = field_for_order(q)
    a = data.draw(st.integers(0, q - 1))
    b = data.draw(st.integers(0, q - 1))
    assert gf.frobenius(gf.add(a, b)) == gf.add(gf.frobenius(a), gf.frobenius(b))
    assert gf.frobenius(gf.mul(a, b)) == gf.mul(gf.frobenius(a), gf.frobenius(b))


def test_spec_serialization_roundtrip():
    spec = field_new(3, 2).spec
    assert spec.to_json() == {"p": 3, "h": 2, "modulus": [1, 0, 1]}
    assert FieldSpec.from_json(spec.to_json()) == spec


def test_even_q_squares():
    g4 = field_for_order(4)
    assert all(g4.quad_char(x) is QuadChar.SQUARE for x in range(1, 4))
    assert g4.quad_char(0) is QuadChar.ZERO
