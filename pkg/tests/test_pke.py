import random

import pytest

from nodaljac import nodal, pke
from nodaljac.arith import FactorFound, random_prime
from nodaljac.nodal import IDENTITY, Twist, add, group_order, is_valid_element, scalar_mul
from nodaljac.pke import (
    Ciphertext,
    DecodeError,
    KeyGenerationError,
    MessageTooLong,
    break_with_factors,
    decode,
    decrypt,
    encode,
    encrypt,
    keygen,
    keygen_from_primes,
    recover_private_key,
)
from nodaljac.poly import Poly, is_irreducible, random_irreducible

from oracles import twist_is_split


@pytest.fixture(scope="module")
def keys32():
    rng = random.Random(77)
    return {r: keygen(32, r, rng=rng) for r in (2, 3, 4, 5)}


def test_toy_key():
    pk, sk = keygen_from_primes(7, 11, Poly([1, 0, 1], 77), 7)
    assert sk.K == 48 * 120 == 5760
    assert sk.d == 823 and sk.e * sk.d % sk.K == 1
    assert pk.n == 77 and pk.f == Poly([1, 0, 1], 77)


def test_toy_key_inverse_maps():
    pk, sk = keygen_from_primes(7, 11, Poly([1, 0, 1], 77), 7)
    rng = random.Random(1)
    hit = 0
    for _ in range(200):
        try:
            c = nodal.random_element(pk.curve, rng)
            assert scalar_mul(pk.curve, 7, scalar_mul(pk.curve, 823, c)) == c
            hit += 1
        except FactorFound as exc:
            assert exc.factor in (7, 11)
    assert hit


def test_keygen_rejects_bad_exponent():
    f = Poly([1, 0, 1], 77)
    with pytest.raises(KeyGenerationError, match="gcd"):
        keygen_from_primes(7, 11, f, 3)
    with pytest.raises(KeyGenerationError):
        keygen_from_primes(7, 11, f, 1)


def test_keygen_rejects_reducible_f():
    with pytest.raises(KeyGenerationError, match="reducible"):
        keygen_from_primes(5, 11, Poly([1, 0, 1], 55), 7)


def test_keygen_contract(keys32):
    for r, (pk, sk) in keys32.items():
        assert sk.p * sk.q == pk.n == sk.n
        assert sk.p.bit_length() == sk.q.bit_length() == 32
        assert pk.r == r and pk.e == 65537
        assert pk.e * sk.d % sk.K == 1
        assert is_irreducible(pk.f.reduce(sk.p)) and is_irreducible(pk.f.reduce(sk.q))
        assert sk.K == group_order(sk.p, pk.f).value * group_order(sk.q, pk.f).value


def test_keygen_is_seeded():
    assert keygen(24, 3, rng=random.Random(5)) == keygen(24, 3, rng=random.Random(5))


def test_keygen_preconditions():
    with pytest.raises(ValueError, match="degree"):
        keygen(32, 1)
    with pytest.raises(ValueError):
        keygen(8, 2)


def test_encode_shape(keys32):
    pk, _ = keys32[2]
    rng = random.Random(2)
    t = encode(pk, b"", rng)
    assert t.h.degree == 1
    pk, _ = keys32[4]
    msg = bytes(range(1, pk.capacity + 1))
    t = encode(pk, msg, rng)
    payload = b"".join(t.h[i].to_bytes(pk.blocksize, "big") for i in range(pk.r - 1))
    assert payload[:3] == bytes([1]) + len(msg).to_bytes(2, "big")
    assert payload[3:3 + len(msg)] == msg
    assert decode(pk, t) == msg
    assert 1 <= t.h[pk.r - 1] < pk.n


def test_capacity_error(keys32):
    pk, _ = keys32[3]
    with pytest.raises(MessageTooLong) as info:
        encrypt(pk, bytes(pk.capacity + 1), random.Random(0))
    assert info.value.capacity == pk.capacity
    assert str(pk.capacity) in str(info.value)


def test_round_trip_every_length(keys32):
    rng = random.Random(3)
    for pk, sk in keys32.values():
        for length in range(pk.capacity + 1):
            msg = rng.randbytes(length)
            assert decrypt(sk, encrypt(pk, msg, rng)) == msg


@pytest.mark.parametrize("bits", [64, 256])
def test_round_trip_random_messages(bits):
    rng = random.Random(bits)
    for r in (2, 5):
        pk, sk = keygen(bits, r, rng=rng)
        for _ in range(10):
            msg = rng.randbytes(rng.randrange(pk.capacity + 1))
            assert decrypt(sk, encrypt(pk, msg, rng)) == msg


def test_ciphertexts_are_distinct(keys32):
    pk, sk = keys32[3]
    rng = random.Random(4)
    cts = [encrypt(pk, b"same", rng) for _ in range(100)]
    assert len(set(cts)) == 100
    assert {decrypt(sk, c) for c in cts} == {b"same"}


def test_identity_ciphertext_rejected(keys32):
    _, sk = keys32[2]
    with pytest.raises(DecodeError):
        decrypt(sk, Ciphertext(IDENTITY))


def test_wrong_modulus_ciphertext_rejected(keys32):
    pk2, _ = keys32[2]
    _, sk3 = keys32[3]
    c = encrypt(pk2, b"x", random.Random(0))
    with pytest.raises(DecodeError):
        decrypt(sk3, c)


def test_perturbed_ciphertexts_fail_padding(keys32):
    pk, sk = keys32[3]
    rng = random.Random(5)
    rejected = 0
    trials = 1000
    for _ in range(trials):
        c = encrypt(pk, b"hi", rng)
        coeffs = list(c.element.h.coeffs)
        i = rng.randrange(len(coeffs))
        coeffs[i] = (coeffs[i] + rng.randrange(1, pk.n)) % pk.n
        try:
            out = decrypt(sk, Ciphertext(nodal.JacElement(Poly(coeffs, pk.n))))
        except DecodeError:
            rejected += 1
        else:
            assert out != b"hi"
    assert rejected >= 0.99 * trials


def test_e_then_d_is_identity_on_random_elements(keys32):
    rng = random.Random(6)
    for pk, sk in keys32.values():
        for _ in range(25):
            x = nodal.random_element(pk.curve, rng)
            assert scalar_mul(pk.curve, sk.d, scalar_mul(pk.curve, pk.e, x)) == x


def test_ciphertexts_are_malleable(keys32):
    """The scheme is homomorphic: the sum of two ciphertexts decrypts to the sum of the encodings."""
    pk, sk = keys32[3]
    rng = random.Random(7)
    curve = pk.curve
    t1, t2 = encode(pk, b"a", rng), encode(pk, b"b", rng)
    c1, c2 = scalar_mul(curve, pk.e, t1), scalar_mul(curve, pk.e, t2)
    assert scalar_mul(curve, sk.d, add(curve, c1, c2)) == add(curve, t1, t2)


def test_reducible_f_surfaces_factor():
    """With f split modulo p, inversions modulo f fail at the roots and expose p."""
    rng = random.Random(8)
    p, q = 1009, 1013
    n = p * q
    fq = random_irreducible(2, q, rng)
    fp = Poly([2, 3, 1], p)  # (x+1)(x+2)
    coeffs = [(a * q * pow(q, -1, p) + b * p * pow(p, -1, q)) % n for a, b in zip(fp.coeffs, fq.coeffs)]
    f = Poly(coeffs, n)
    curve = nodal.NodalCurve(f)
    factors = set()
    for _ in range(200):
        try:
            e = nodal.random_element(curve, rng)
            scalar_mul(curve, rng.getrandbits(40), e)
        except FactorFound as exc:
            assert n % exc.factor == 0 and 1 < exc.factor < n
            factors.add(exc.factor)
    assert p in factors


def find_key_with_twists(twist_p, twist_q, rng, bits=24, r=3):
    while True:
        p, q = random_prime(bits, rng), random_prime(bits, rng)
        if p == q:
            continue
        f = pke.lift_irreducible(r, p, q, rng)
        if (twist_is_split(p, f.reduce(p)), twist_is_split(q, f.reduce(q))) != (twist_p, twist_q):
            continue
        try:
            return keygen_from_primes(p, q, f, 65537)
        except KeyGenerationError:
            continue


@pytest.mark.parametrize("twist_p", [True, False])
@pytest.mark.parametrize("twist_q", [True, False])
def test_break_with_factors_all_twists(twist_p, twist_q):
    rng = random.Random(int(twist_p) * 2 + int(twist_q))
    pk, sk = find_key_with_twists(twist_p, twist_q, rng)
    expect = (Twist.SPLIT if twist_p else Twist.NONSPLIT, Twist.SPLIT if twist_q else Twist.NONSPLIT)
    assert (group_order(sk.p, pk.f).twist, group_order(sk.q, pk.f).twist) == expect
    for _ in range(5):
        msg = rng.randbytes(rng.randrange(pk.capacity + 1))
        c = encrypt(pk, msg, rng)
        assert break_with_factors(pk, sk.p, sk.q, c) == msg
    assert recover_private_key(pk, sk.q, sk.p).d % sk.K == sk.d % sk.K


def test_break_with_factors_on_toy_and_bad_factors(keys32):
    pk, sk = keys32[2]
    c = encrypt(pk, b"ab", random.Random(9))
    assert break_with_factors(pk, sk.p, sk.q, c) == b"ab"
    with pytest.raises(ValueError):
        break_with_factors(pk, sk.p, sk.q + 2, c)
