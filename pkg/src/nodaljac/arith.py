"""Integer and modular arithmetic: powers, inverses, primality, prime generation.

Residues are plain Python ints kept in ``[0, m)``; the modulus travels
alongside them as a separate argument.
"""

from __future__ import annotations

import random
from math import gcd

from gmpy2 import invert as _gmp_invert
from gmpy2 import mpz

__all__ = [
    "FactorFound",
    "mod_pow",
    "inverse_or_factor",
    "is_probable_prime",
    "random_prime",
    "DEFAULT_MR_ROUNDS",
]

DEFAULT_MR_ROUNDS = 40

_SMALL_LIMIT = 1 << 16


class FactorFound(ArithmeticError):
    """Raised when an inversion modulo ``modulus`` hits a non-unit.

    ``factor`` is ``gcd(value, modulus)``; for an RSA-style modulus this is
    one of its prime factors.
    """

    def __init__(self, factor: int, modulus: int):
        super().__init__(f"non-invertible element exposes factor {factor} of {modulus}")
        self.factor = factor
        self.modulus = modulus


def mod_pow(base: int, exponent: int, modulus: int) -> int:
    if modulus < 2:
        raise ValueError("modulus must be >= 2")
    if exponent < 0:
        raise ValueError("exponent must be non-negative")
    return pow(base % modulus, exponent, modulus)


def inverse_or_factor(a: int, modulus: int) -> int:
    """Return ``a^-1 mod modulus`` in ``[0, modulus)`` or raise :class:`FactorFound`.

    When ``a`` is not a unit the gcd ``g`` (with ``1 < g <= modulus``) is
    reported through the exception.
    """
    if modulus < 2:
        raise ValueError("modulus must be >= 2")
    try:
        return int(_gmp_invert(a, modulus))
    except ZeroDivisionError:
        raise FactorFound(int(gcd(a, modulus)), int(modulus)) from None


def to_mpz(values) -> list:
    """Coefficient list as gmpy2 integers, for the inner loops of long ladders."""
    return [mpz(v) for v in values]


def to_int(values) -> list:
    return [int(v) for v in values]


def _small_is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


_SMALL_PRIMES = [p for p in range(3, 1000, 2) if _small_is_prime(p)]


def is_probable_prime(n: int, rounds: int = DEFAULT_MR_ROUNDS, rng: random.Random | None = None) -> bool:
    """Miller-Rabin with ``rounds`` random bases.

    Inputs below 2**16 are settled by trial division, so the answer there is
    exact. A composite verdict is always correct; a prime verdict is wrong
    with probability at most ``4**-rounds``.
    """
    if rounds < 1:
        raise ValueError("rounds must be >= 1")
    if n < _SMALL_LIMIT:
        return _small_is_prime(n)
    if n % 2 == 0:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return False
    rng = rng or random.Random()
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for _ in range(rounds):
        a = rng.randrange(2, n - 1)
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def random_prime(bits: int, rng: random.Random, rounds: int = DEFAULT_MR_ROUNDS) -> int:
    """Odd probable prime with exactly ``bits`` bits (top bit forced)."""
    if bits < 3:
        raise ValueError("bits must be >= 3")
    top = 1 << (bits - 1)
    while True:
        candidate = rng.getrandbits(bits) | top | 1
        if is_probable_prime(candidate, rounds, rng):
            return candidate
