import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from symend.gf import (
    GF,
    FieldError,
    FieldSpec,
    embed,
    embedding,
    field_make,
    is_irreducible,
    parse_field,
)

FIELDS = [(2, 1), (2, 2), (2, 4), (3, 1), (3, 2), (5, 2), (7, 1), (2, 16), (3, 10), (2, 32)]


def _brute_irreducible(f, p):
    """Irreducible iff no monic factor of degree 1..deg/2 divides f (trial division)."""
    deg = len(f) - 1
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            g = list(low) + [1]
            r = list(f)
            for shift in range(deg - d, -1, -1):
                c = r[shift + d]
                if c:
                    for i, gi in enumerate(g):
                        r[shift + i] = (r[shift + i] - c * gi) % p
            if not any(r):
                return False
    return True


def test_gf4_modulus():
    assert field_make(2, 2).modulus == (1, 1, 1)


def test_prime_fields():
    for p in (2, 3, 5, 7):
        F = GF(p)
        assert F.q == p
        assert F.mul(p - 1, p - 1) == 1


def test_modulus_choice_is_first_irreducible():
    # smallest integer encoding among monic irreducibles of the given degree
    for p, e in [(2, 3), (2, 4), (2, 5), (3, 2), (3, 3), (5, 2)]:
        spec = field_make(p, e)
        cands = []
        for low in itertools.product(range(p), repeat=e):
            f = list(low) + [1]
            if _brute_irreducible(f, p):
                cands.append(sum(c * p ** i for i, c in enumerate(f)))
        assert sum(c * p ** i for i, c in enumerate(spec.modulus)) == min(cands)


@pytest.mark.parametrize("p,e", [(2, 3), (2, 4), (2, 6), (3, 2), (3, 3), (5, 2), (7, 2)])
def test_rabin_matches_trial_division(p, e):
    for low in itertools.product(range(p), repeat=e):
        f = list(low) + [1]
        assert is_irreducible(f, p) == _brute_irreducible(f, p)


def test_spec_serialization_roundtrip():
    for p, e in FIELDS:
        spec = field_make(p, e)
        assert FieldSpec.parse(spec.serialize()) == spec


def test_parse_field_forms():
    assert parse_field("2^16").q == 2 ** 16
    assert parse_field("GF(4)").q == 4
    assert parse_field("GF(2^4)").q == 16
    assert parse_field("3").q == 3
    assert parse_field(GF(3, 2).spec.serialize()).q == 9
    with pytest.raises(FieldError):
        parse_field("6")


@pytest.mark.parametrize("p,e", FIELDS)
def test_generator_has_full_order(p, e):
    F = GF(p, e)
    if F.q > 2 ** 20:
        # no tables: check g^((q-1)/r) != 1 for the prime divisors r
        from symend.gf import prime_factors

        for r in prime_factors(F.q - 1):
            assert F.pow(F.generator, (F.q - 1) // r) != 1
    else:
        assert F.order(F.generator) == F.q - 1


@pytest.mark.parametrize("p,e", FIELDS)
@given(data=st.data())
def test_field_axioms(p, e, data):
    F = GF(p, e)
    el = st.integers(0, F.q - 1)
    a, b, c = data.draw(el), data.draw(el), data.draw(el)
    assert F.add(a, F.add(b, c)) == F.add(F.add(a, b), c)
    assert F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.sub(F.add(a, b), b) == a
    assert F.add(a, F.neg(a)) == 0
    if a:
        assert F.mul(a, F.inv(a)) == 1
        assert F.div(F.mul(a, b), a) == b
    # Frobenius is additive and multiplicative
    assert F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b))
    assert F.frobenius(F.mul(a, b)) == F.mul(F.frobenius(a), F.frobenius(b))
    assert F.pow(a, F.q) == a


@pytest.mark.parametrize("p,e", [(2, 16), (3, 10), (5, 2), (2, 32)])
def test_vector_ops_match_scalar(p, e):
    F = GF(p, e)
    rng = np.random.default_rng(3)
    a = F.random(rng, 300)
    b = F.random(rng, 300)
    a[:20] = 0
    b[10:30] = 0
    b[40:60] = a[40:60]
    b[60:80] = F.vneg(a[60:80])
    assert F.vadd(a, b).tolist() == [F.add(int(x), int(y)) for x, y in zip(a, b)]
    assert F.vsub(a, b).tolist() == [F.sub(int(x), int(y)) for x, y in zip(a, b)]
    assert F.vmul(a, b).tolist() == [F.mul(int(x), int(y)) for x, y in zip(a, b)]
    assert F.vpow(a, 5).tolist() == [F.pow(int(x), 5) for x in a]
    assert F.vfrob(a).tolist() == [F.frobenius(int(x)) for x in a]


def test_hex_roundtrip():
    for p, e in FIELDS:
        F = GF(p, e)
        rng = np.random.default_rng(0)
        for a in F.random(rng, 20):
            assert F.from_hex(F.to_hex(int(a))) == int(a)


def test_embedding_gf4_into_gf16(F4, F16):
    w = embed(F4, F16, 2)
    assert F16.order(w) == 3


@pytest.mark.parametrize("src,dst", [((2, 2), (2, 4)), ((2, 4), (2, 16)), ((2, 2), (2, 16)),
                                     ((2, 8), (2, 16)), ((3, 2), (3, 10)), ((2, 16), (2, 32)),
                                     ((2, 4), (2, 32))])
def test_embedding_is_a_ring_map(src, dst):
    S, D = GF(*src), GF(*dst)
    emb = embedding(S, D)
    rng = np.random.default_rng(1)
    for a, b in zip(S.random(rng, 40), S.random(rng, 40)):
        a, b = int(a), int(b)
        assert emb(S.add(a, b)) == D.add(emb(a), emb(b))
        assert emb(S.mul(a, b)) == D.mul(emb(a), emb(b))
    assert emb(1) == 1 and emb(0) == 0


def test_embedding_composes():
    a, b, c = GF(2, 2), GF(2, 4), GF(2, 16)
    # images of GF(4) through GF(16) and directly land in the same subfield
    direct = {embed(a, c, x) for x in range(4)}
    via = {embed(b, c, embed(a, b, x)) for x in range(4)}
    assert direct == via


def test_embedding_rejects_non_subfield():
    with pytest.raises(FieldError):
        embedding(GF(2, 3), GF(2, 4))
