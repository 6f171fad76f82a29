"""Textbook RSA, kept deliberately plain as a timing baseline.

Uses phi(n) = (p-1)(q-1) and no padding or CRT.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import gcd

from .arith import inverse_or_factor, random_prime

__all__ = [
    "RsaPublicKey",
    "RsaKeyPair",
    "rsa_keygen",
    "rsa_keypair_from_primes",
    "rsa_encrypt",
    "rsa_decrypt",
    "rsa_encrypt_bytes",
    "rsa_decrypt_bytes",
]

DEFAULT_E = 65537
_AUTO_EXPONENTS = (DEFAULT_E, 257, 17, 5, 3)


@dataclass(frozen=True)
class RsaPublicKey:
    n: int
    e: int

    @property
    def capacity(self) -> int:
        """Largest byte message accepted by :func:`rsa_encrypt_bytes`."""
        return (self.n.bit_length() - 1) // 8 - 1


@dataclass(frozen=True)
class RsaKeyPair:
    n: int
    e: int
    d: int
    p: int
    q: int

    def public_key(self) -> RsaPublicKey:
        return RsaPublicKey(self.n, self.e)


def rsa_keypair_from_primes(p: int, q: int, e: int = DEFAULT_E) -> RsaKeyPair:
    phi = (p - 1) * (q - 1)
    if not 1 < e < phi or gcd(e, phi) != 1:
        raise ValueError(f"e = {e} is not a unit modulo phi(n) = {phi}")
    return RsaKeyPair(p * q, e, inverse_or_factor(e, phi), p, q)


def rsa_keygen(bits: int, e: int | None = None, rng: random.Random | None = None) -> RsaKeyPair:
    """Key pair with two ``bits``-bit primes.

    The automatic exponent is 65537; keys too small for it (phi(n) <= 65537)
    fall back to the largest smaller Fermat prime that works.
    """
    if bits < 8:
        raise ValueError("bits must be >= 8")
    rng = rng or random.Random()
    while True:
        p, q = random_prime(bits, rng), random_prime(bits, rng)
        if p == q or (p * q).bit_length() != 2 * bits:
            continue
        phi = (p - 1) * (q - 1)
        if e is not None:
            if gcd(e, phi) == 1 and 1 < e < phi:
                return rsa_keypair_from_primes(p, q, e)
            raise ValueError(f"e = {e} is not a unit modulo phi(n)")
        for exp in _AUTO_EXPONENTS:
            if exp < phi and gcd(exp, phi) == 1:
                return rsa_keypair_from_primes(p, q, exp)


def rsa_encrypt(key: RsaPublicKey | RsaKeyPair, m: int) -> int:
    if not 0 <= m < key.n:
        raise ValueError("message must satisfy 0 <= m < n")
    return pow(m, key.e, key.n)


def rsa_decrypt(key: RsaKeyPair, c: int) -> int:
    if not 0 <= c < key.n:
        raise ValueError("ciphertext must satisfy 0 <= c < n")
    return pow(c, key.d, key.n)


def rsa_encrypt_bytes(key: RsaPublicKey | RsaKeyPair, data: bytes) -> int:
    # a 0x01 prefix keeps leading zero bytes through the integer round trip
    cap = RsaPublicKey(key.n, key.e).capacity
    if len(data) > cap:
        raise ValueError(f"message of {len(data)} bytes exceeds capacity of {cap} bytes")
    return rsa_encrypt(key, int.from_bytes(b"\x01" + data, "big"))


def rsa_decrypt_bytes(key: RsaKeyPair, c: int) -> bytes:
    m = rsa_decrypt(key, c)
    raw = m.to_bytes((m.bit_length() + 7) // 8, "big")
    if not raw or raw[0] != 1:
        raise ValueError("malformed RSA plaintext")
    return raw[1:]
