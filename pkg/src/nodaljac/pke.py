"""Probabilistic public-key encryption in the Jacobian of y^2 = x*f(x)^2 over Z/nZ.

The group Jac(N) over Z/nZ splits as Jac(N_p) + Jac(N_q) and has order
``K = ord_p * ord_q`` where each factor is ``p^r - 1`` or ``p^r + 1``.
With ``e*d = 1 mod K`` the maps ``t -> e*t`` and ``c -> d*c`` are inverse.

A message is laid out in ``k = r - 1`` blocks of ``blocksize`` bytes
(``blocksize = (bitlen(n) - 1) // 8`` so every block is below ``n``)::

    [0x01][len: 2 bytes big-endian][message][random filler]

Block ``m_i`` becomes the coefficient of ``x^(i-1)`` and a random
``a in [1, n)`` is put on ``x^k``, so two encryptions of one message differ.

A :class:`~nodaljac.arith.FactorFound` escaping from any operation here means
a non-unit was hit during group arithmetic and its ``factor`` divides ``n``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import gcd

from .arith import inverse_or_factor, random_prime
from .nodal import JacElement, NodalCurve, group_order, is_valid_element, scalar_mul
from .poly import Poly, is_irreducible, lift_irreducible

__all__ = [
    "PublicKey",
    "PrivateKey",
    "Ciphertext",
    "KeyGenerationError",
    "MessageTooLong",
    "DecodeError",
    "DEFAULT_E",
    "keygen",
    "keygen_from_primes",
    "encode",
    "decode",
    "encrypt",
    "decrypt",
    "break_with_factors",
]

DEFAULT_E = 65537
FORMAT_TAG = 0x01
HEADER_LEN = 3
MAX_ENCODE_ATTEMPTS = 64


class KeyGenerationError(ValueError):
    pass


class MessageTooLong(ValueError):
    def __init__(self, length: int, capacity: int):
        super().__init__(f"message of {length} bytes exceeds capacity of {capacity} bytes")
        self.length = length
        self.capacity = capacity


class DecodeError(ValueError):
    """The decrypted element does not carry a well-formed payload."""


@dataclass(frozen=True)
class PublicKey:
    n: int
    f: Poly
    e: int

    @property
    def r(self) -> int:
        return self.f.degree

    @property
    def curve(self) -> NodalCurve:
        return NodalCurve(self.f, check=False)

    @property
    def blocksize(self) -> int:
        return (self.n.bit_length() - 1) // 8

    @property
    def capacity(self) -> int:
        """Largest message length in bytes."""
        return min((self.r - 1) * self.blocksize - HEADER_LEN, 0xFFFF)


@dataclass(frozen=True)
class PrivateKey:
    n: int
    p: int
    q: int
    f: Poly
    e: int
    d: int
    K: int

    def public_key(self) -> PublicKey:
        return PublicKey(self.n, self.f, self.e)


@dataclass(frozen=True)
class Ciphertext:
    element: JacElement


def keygen_from_primes(p: int, q: int, f: Poly, e: int = DEFAULT_E, rng: random.Random | None = None):
    """Derive the key pair for fixed ``p``, ``q`` and ``f`` over Z/pqZ."""
    if p == q:
        raise KeyGenerationError("p and q must be distinct")
    n = p * q
    if f.modulus != n:
        f = Poly(f.coeffs, n)
    if f.degree < 2 or f.lc != 1:
        raise KeyGenerationError("f must be monic of degree >= 2")
    for prime in (p, q):
        if not is_irreducible(f.reduce(prime)):
            raise KeyGenerationError(f"f is reducible modulo {prime}")
    order_p = group_order(p, f.reduce(p), rng)
    order_q = group_order(q, f.reduce(q), rng)
    K = order_p.value * order_q.value
    if not 1 < e < K:
        raise KeyGenerationError(f"e = {e} must lie in (1, K)")
    g = gcd(e, K)
    if g != 1:
        raise KeyGenerationError(f"gcd(e, K) = {g}: e = {e} is not invertible modulo the group order")
    d = inverse_or_factor(e, K)
    return PublicKey(n, f, e), PrivateKey(n, p, q, f, e, d, K)


def keygen(bits: int, degree: int, e: int | None = None, rng: random.Random | None = None):
    """Fresh key pair with two ``bits``-bit primes and ``deg f = degree``.

    With ``e=None`` the exponent is 65537 and the primes are redrawn until it
    is coprime to ``K``; an explicit ``e`` that fails raises
    :class:`KeyGenerationError`.
    """
    if bits < 16:
        raise ValueError("bits must be >= 16")
    if degree < 2:
        raise ValueError("degree must be >= 2")
    rng = rng or random.Random()
    while True:
        p = random_prime(bits, rng)
        q = random_prime(bits, rng)
        if p == q or (p * q).bit_length() != 2 * bits:
            continue
        f = lift_irreducible(degree, p, q, rng)
        try:
            return keygen_from_primes(p, q, f, DEFAULT_E if e is None else e, rng)
        except KeyGenerationError:
            if e is not None:
                raise


def encode(pk: PublicKey, message: bytes, rng: random.Random) -> JacElement:
    """Embed ``message`` in a valid element ``t`` of degree ``r - 1``."""
    k, bs = pk.r - 1, pk.blocksize
    if len(message) > pk.capacity:
        raise MessageTooLong(len(message), max(pk.capacity, 0))
    filler = rng.randbytes(k * bs - HEADER_LEN - len(message))
    payload = bytes([FORMAT_TAG]) + len(message).to_bytes(2, "big") + message + filler
    blocks = [int.from_bytes(payload[i * bs:(i + 1) * bs], "big") for i in range(k)]
    curve = pk.curve
    for _ in range(MAX_ENCODE_ATTEMPTS):
        a = rng.randrange(1, pk.n)
        t = Poly(blocks + [a], pk.n)
        if is_valid_element(curve, t):
            return JacElement(t)
    raise RuntimeError("no valid leading coefficient found for the message polynomial")


def decode(pk: PublicKey, t: JacElement) -> bytes:
    if t.h is None:
        raise DecodeError("identity element carries no message")
    k, bs = pk.r - 1, pk.blocksize
    limit = 1 << (8 * bs)
    payload = bytearray()
    for i in range(k):
        block = t.h[i]
        if block >= limit:
            raise DecodeError(f"block {i + 1} exceeds {bs} bytes")
        payload += block.to_bytes(bs, "big")
    if payload[0] != FORMAT_TAG:
        raise DecodeError("bad payload tag")
    length = int.from_bytes(payload[1:3], "big")
    if length > pk.capacity:
        raise DecodeError("payload length out of range")
    return bytes(payload[HEADER_LEN:HEADER_LEN + length])


def encrypt(pk: PublicKey, message: bytes, rng: random.Random) -> Ciphertext:
    t = encode(pk, message, rng)
    return Ciphertext(scalar_mul(pk.curve, pk.e, t))


def decrypt(sk: PrivateKey, c: Ciphertext) -> bytes:
    if c.element.is_identity():
        raise DecodeError("identity is not a valid ciphertext")
    pk = sk.public_key()
    h = c.element.h
    if h.modulus != pk.n or h.degree >= pk.r or not is_valid_element(pk.curve, h):
        raise DecodeError("ciphertext is not an element of the key's group")
    return decode(pk, scalar_mul(pk.curve, sk.d, c.element))


def recover_private_key(pk: PublicKey, p: int, q: int) -> PrivateKey:
    """Rebuild the private key from the public key and the factors of n."""
    if p * q != pk.n:
        raise ValueError("p*q does not equal the public modulus")
    return keygen_from_primes(p, q, pk.f, pk.e)[1]


def break_with_factors(pk: PublicKey, p: int, q: int, c: Ciphertext) -> bytes:
    """Decrypt using only public data plus the factorization of n."""
    return decrypt(recover_private_key(pk, p, q), c)
