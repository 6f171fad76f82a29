"""Dense univariate polynomials over Z/mZ.

A polynomial a_0 + a_1 x + ... + a_n x^n is stored as the list
[a_0, a_1, ..., a_n] of ints in [0, m) with a_n != 0; the zero polynomial is
the empty list and has degree -1.

The underscore functions work directly on such lists and are what the group
arithmetic in :mod:`nodaljac.nodal` and :mod:`nodaljac.mumford` calls in its
inner loops. :class:`Poly` wraps a list together with its modulus for
everything else.

Over a composite modulus every inversion of a leading coefficient goes through
:func:`nodaljac.arith.inverse_or_factor`, so a non-unit surfaces as
:class:`~nodaljac.arith.FactorFound` instead of a wrong answer.
"""

from __future__ import annotations

import random
from typing import Iterable, Sequence

from .arith import inverse_or_factor, is_probable_prime, mpz, to_mpz

__all__ = [
    "Poly",
    "NotInvertible",
    "add",
    "sub",
    "mul",
    "divrem",
    "xgcd",
    "powmod",
    "is_irreducible",
    "random_irreducible",
    "lift_irreducible",
]


class NotInvertible(ArithmeticError):
    """The polynomial shares a non-constant factor with the modulus polynomial."""


# -- list-level kernels -------------------------------------------------------


def _trim(a: list) -> list:
    while a and not a[-1]:
        a.pop()
    return a


def _add(a: Sequence[int], b: Sequence[int], m: int) -> list:
    if len(a) < len(b):
        a, b = b, a
    out = [(x + y) % m for x, y in zip(a, b)]
    out.extend(a[len(b):])
    return _trim(out)


def _sub(a: Sequence[int], b: Sequence[int], m: int) -> list:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % m for i in range(n)]
    return _trim(out)


def _neg(a: Sequence[int], m: int) -> list:
    return [(m - c) % m for c in a]


def _scale(a: Sequence[int], c: int, m: int) -> list:
    c %= m
    if not c:
        return []
    return _trim([x * c % m for x in a])


def _mul(a: Sequence[int], b: Sequence[int], m: int) -> list:
    if not a or not b:
        return []
    lb = len(b)
    out = [0] * (len(a) + lb - 1)
    for i, ai in enumerate(a):
        if ai:
            out[i:i + lb] = [o + ai * bj for o, bj in zip(out[i:i + lb], b)]
    return _trim([c % m for c in out])


def _sqr(a: Sequence[int], m: int) -> list:
    # cross terms a_i*a_j (i < j) are computed once and doubled
    n = len(a)
    if not n:
        return []
    out = [0] * (2 * n - 1)
    for i, ai in enumerate(a):
        if ai:
            out[2 * i] += ai * ai
            k = 2 * ai
            out[2 * i + 1:i + n] = [o + k * aj for o, aj in zip(out[2 * i + 1:i + n], a[i + 1:])]
    return _trim([c % m for c in out])


def _lc_inverse(b: Sequence[int], m: int) -> int:
    lc = b[-1]
    return 1 if lc == 1 else inverse_or_factor(lc, m)


def _divrem(a: Sequence[int], b: Sequence[int], m: int) -> tuple[list, list]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    db = len(b) - 1
    if len(a) <= db:
        return [], list(a)
    inv = _lc_inverse(b, m)
    r = list(a)
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = r[i] % m
        if not c:
            continue
        c = c * inv % m
        q[i - db] = c
        k = i - db
        r[k:i] = [x - c * y for x, y in zip(r[k:i], b)]
    return _trim(q), _trim([x % m for x in r[:db]])


def _rem(a: Sequence[int], b: Sequence[int], m: int) -> list:
    db = len(b) - 1
    if len(a) <= db:
        return list(a)
    inv = _lc_inverse(b, m)
    r = list(a)
    for i in range(len(a) - 1, db - 1, -1):
        c = r[i] % m
        if not c:
            continue
        c = c * inv % m
        k = i - db
        r[k:i] = [x - c * y for x, y in zip(r[k:i], b)]
    return _trim([x % m for x in r[:db]])


def _exact_div(a: Sequence[int], b: Sequence[int], m: int) -> list:
    q, r = _divrem(a, b, m)
    if r:
        raise ArithmeticError("division is not exact")
    return q


def _monic(a: Sequence[int], m: int) -> list:
    if not a or a[-1] == 1:
        return list(a)
    return _scale(a, inverse_or_factor(a[-1], m), m)


def _xgcd(a: Sequence[int], b: Sequence[int], m: int) -> tuple[list, list, list]:
    """Monic g with g = s*a + t*b (Euclid with factor escape)."""
    r0, r1 = list(a), list(b)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = _divrem(r0, r1, m)
        r0, r1 = r1, r
        s0, s1 = s1, _sub(s0, _mul(q, s1, m), m)
        t0, t1 = t1, _sub(t0, _mul(q, t1, m), m)
    if not r0:
        raise ValueError("xgcd of two zero polynomials")
    inv = _lc_inverse(r0, m)
    if inv == 1:
        return r0, s0, t0
    return _scale(r0, inv, m), _scale(s0, inv, m), _scale(t0, inv, m)


def _gcd(a: Sequence[int], b: Sequence[int], m: int) -> list:
    r0, r1 = list(a), list(b)
    while r1:
        r0, r1 = r1, _rem(r0, r1, m)
    return _monic(r0, m)


def _invmod(a: Sequence[int], f: Sequence[int], m: int) -> list:
    """Inverse of a modulo f, tracking only the cofactor of a."""
    r0, r1 = list(f), _rem(a, f, m)
    t0, t1 = [], [1]
    while len(r1) > 1:
        # long division r0 / r1 with each quotient term folded straight into t
        db = len(r1) - 1
        inv = _lc_inverse(r1, m)
        r = list(r0)
        lt = len(t1)
        t = list(t0) + [0] * (len(r0) - db + lt - len(t0))
        for i in range(len(r0) - 1, db - 1, -1):
            c = r[i] % m
            if not c:
                continue
            c = c * inv % m
            k = i - db
            r[k:i] = [x - c * y for x, y in zip(r[k:i], r1)]
            t[k:k + lt] = [x - c * y for x, y in zip(t[k:k + lt], t1)]
        r0, r1 = r1, _trim([x % m for x in r[:db]])
        t0, t1 = t1, _trim([x % m for x in t])
    if not r1:
        raise NotInvertible("polynomial is not invertible modulo f")
    c = inverse_or_factor(r1[0], m)
    return [x * c % m for x in t1]


def _mulmod(a: Sequence[int], b: Sequence[int], f: Sequence[int], m: int) -> list:
    return _rem(_mul(a, b, m), f, m)


def _powmod(a: Sequence[int], e: int, f: Sequence[int], m: int) -> list:
    a, f, m = to_mpz(a), to_mpz(f), mpz(m)
    result = _rem([mpz(1)], f, m)
    base = _rem(a, f, m)
    for bit in bin(e)[2:] if e else "":
        result = _mulmod(result, result, f, m)
        if bit == "1":
            result = _mulmod(result, base, f, m)
    return [int(c) for c in result]


def _x_powmod(e: int, f: Sequence[int], m: int) -> list:
    # multiplying by x is a shift, so only the squarings cost a full product
    f, m = to_mpz(f), mpz(m)
    result = _rem([mpz(1)], f, m)
    for bit in bin(e)[2:] if e else "":
        result = _rem(_sqr(result, m), f, m)
        if bit == "1":
            result = _rem([0] + result, f, m) if result else []
    return [int(c) for c in result]


def _eval(a: Sequence[int], x: int, m: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % m
    return acc


# -- the Poly value type ------------------------------------------------------


class Poly:
    """Immutable polynomial over Z/mZ with coefficients in ascending degree."""

    __slots__ = ("coeffs", "modulus")

    def __init__(self, coeffs: Iterable[int], modulus: int):
        if modulus < 2:
            raise ValueError("modulus must be >= 2")
        self.coeffs = tuple(_trim([c % modulus for c in coeffs]))
        self.modulus = modulus

    @classmethod
    def _wrap(cls, coeffs: list, modulus: int) -> "Poly":
        p = object.__new__(cls)
        p.coeffs = tuple(map(int, coeffs))
        p.modulus = modulus
        return p

    @classmethod
    def x(cls, modulus: int) -> "Poly":
        return cls((0, 1), modulus)

    @classmethod
    def const(cls, c: int, modulus: int) -> "Poly":
        return cls((c,), modulus)

    @property
    def degree(self) -> int:
        """Degree, with -1 standing in for minus infinity on the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def _check(self, other: "Poly") -> None:
        if not isinstance(other, Poly):
            raise TypeError(f"expected Poly, got {type(other).__name__}")
        if other.modulus != self.modulus:
            raise ValueError(f"modulus mismatch: {self.modulus} != {other.modulus}")

    def _coerce(self, other):
        if isinstance(other, int):
            return Poly.const(other, self.modulus)
        self._check(other)
        return other

    def __add__(self, other):
        other = self._coerce(other)
        return Poly._wrap(_add(self.coeffs, other.coeffs, self.modulus), self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return Poly._wrap(_sub(self.coeffs, other.coeffs, self.modulus), self.modulus)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return Poly._wrap(_neg(self.coeffs, self.modulus), self.modulus)

    def __mul__(self, other):
        other = self._coerce(other)
        return Poly._wrap(_mul(self.coeffs, other.coeffs, self.modulus), self.modulus)

    __rmul__ = __mul__

    def __divmod__(self, other):
        q, r = divrem(self, self._coerce(other))
        return q, r

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        other = self._coerce(other)
        return Poly._wrap(_rem(self.coeffs, other.coeffs, self.modulus), self.modulus)

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result = Poly.const(1, self.modulus)
        for bit in bin(e)[2:]:
            result = result * result
            if bit == "1":
                result = result * self
        return result

    def __call__(self, x: int) -> int:
        return _eval(self.coeffs, x, self.modulus)

    def __eq__(self, other):
        if isinstance(other, int):
            return self.coeffs == tuple(_trim([other % self.modulus]))
        if not isinstance(other, Poly):
            return NotImplemented
        return self.modulus == other.modulus and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.coeffs, self.modulus))

    def monic(self) -> "Poly":
        return Poly._wrap(_monic(self.coeffs, self.modulus), self.modulus)

    def reduce(self, modulus: int) -> "Poly":
        """Image of this polynomial under Z/mZ -> Z/modulus Z (modulus must divide m)."""
        if self.modulus % modulus:
            raise ValueError(f"{modulus} does not divide {self.modulus}")
        return Poly(self.coeffs, modulus)

    def __repr__(self):
        return f"Poly({list(self.coeffs)}, {self.modulus})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms)


# -- public operations --------------------------------------------------------


def _same(a: Poly, b: Poly) -> int:
    a._check(b)
    return a.modulus


def add(a: Poly, b: Poly) -> Poly:
    return a + b


def sub(a: Poly, b: Poly) -> Poly:
    return a - b


def mul(a: Poly, b: Poly) -> Poly:
    return a * b


def divrem(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    """Long division ``a = q*b + r`` with ``deg r < deg b``.

    Raises :class:`FactorFound` if the leading coefficient of ``b`` is not a
    unit modulo the modulus.
    """
    m = _same(a, b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q, r = _divrem(a.coeffs, b.coeffs, m)
    return Poly._wrap(q, m), Poly._wrap(r, m)


def xgcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Return ``(g, s, t)`` with ``g = s*a + t*b`` and ``g`` monic.

    Over a prime modulus ``g`` is the gcd. Over a composite modulus the same
    Euclidean loop runs and any failed inversion raises :class:`FactorFound`.
    """
    m = _same(a, b)
    if not a and not b:
        raise ValueError("xgcd of two zero polynomials")
    g, s, t = _xgcd(a.coeffs, b.coeffs, m)
    return Poly._wrap(g, m), Poly._wrap(s, m), Poly._wrap(t, m)


def gcd(a: Poly, b: Poly) -> Poly:
    m = _same(a, b)
    return Poly._wrap(_gcd(a.coeffs, b.coeffs, m), m)


def powmod(base: Poly, exponent: int, modpoly: Poly) -> Poly:
    m = _same(base, modpoly)
    if modpoly.degree < 1:
        raise ValueError("modulus polynomial must have degree >= 1")
    if exponent < 0:
        raise ValueError("negative exponent")
    return Poly._wrap(_powmod(base.coeffs, exponent, modpoly.coeffs, m), m)


def _prime_divisors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _frobenius_rows(f: Sequence[int], p: int) -> list[list]:
    # row i is x^(i*p) mod f, so a(x)^p = sum a_i * row_i over F_p
    xp = _x_powmod(p, f, p)
    rows = [[1]]
    for _ in range(1, len(f) - 1):
        rows.append(_mulmod(rows[-1], xp, f, p))
    return rows


def _apply_frobenius(a: Sequence[int], rows: list[list], p: int) -> list:
    acc = [0] * (len(rows))
    for ai, row in zip(a, rows):
        if ai:
            for j, c in enumerate(row):
                acc[j] += ai * c
    return _trim([c % p for c in acc])


def _is_irreducible(f: Sequence[int], p: int) -> bool:
    r = len(f) - 1
    if r == 1:
        return True
    if not f[0]:
        return False
    rows = _frobenius_rows(f, p)
    x = [0, 1]
    powers = {0: x}
    cur = rows[1] if r > 1 else x
    powers[1] = cur
    for k in range(2, r + 1):
        cur = _apply_frobenius(cur, rows, p)
        powers[k] = cur
    if powers[r] != x:
        return False
    for ell in _prime_divisors(r):
        g = _gcd(f, _sub(powers[r // ell], x, p), p)
        if len(g) > 1:
            return False
    return True


def is_irreducible(f: Poly) -> bool:
    """Rabin's irreducibility test over a prime field.

    Checks ``x^(p^r) = x mod f`` and ``gcd(x^(p^(r/l)) - x, f) = 1`` for every
    prime ``l | r``. Frobenius powers are applied as a linear map on the
    basis ``x^(i*p) mod f`` so only one exponentiation by ``p`` is needed.
    """
    p = f.modulus
    if not is_probable_prime(p):
        raise ValueError("irreducibility test needs a prime modulus")
    if f.degree < 1:
        raise ValueError("polynomial must have degree >= 1")
    if f.lc != 1:
        raise ValueError("polynomial must be monic")
    return _is_irreducible(f.coeffs, p)


def random_irreducible(degree: int, p: int, rng: random.Random) -> Poly:
    """Uniformly sampled monic irreducible of the given degree over F_p.

    The polynomial ``x`` itself is never returned, so the constant term is
    always nonzero.
    """
    if degree < 1:
        raise ValueError("degree must be >= 1")
    if p < 3 or not is_probable_prime(p):
        raise ValueError("p must be an odd prime")
    while True:
        coeffs = [rng.randrange(p) for _ in range(degree)] + [1]
        if coeffs[0] and _is_irreducible(coeffs, p):
            return Poly._wrap(coeffs, p)


def lift_irreducible(degree: int, p: int, q: int, rng: random.Random) -> Poly:
    """Monic polynomial over Z/pqZ that is irreducible modulo both p and q.

    Coefficients are drawn uniformly from [0, pq) and the two reductions are
    tested independently until both pass.
    """
    if degree < 1:
        raise ValueError("degree must be >= 1")
    n = p * q
    while True:
        coeffs = [rng.randrange(n) for _ in range(degree)] + [1]
        if coeffs[0] % p == 0 or coeffs[0] % q == 0:
            continue
        if _is_irreducible([c % p for c in coeffs], p) and _is_irreducible([c % q for c in coeffs], q):
            return Poly._wrap(coeffs, n)


def _deriv(a: Sequence[int], m: int) -> list:
    return _trim([i * c % m for i, c in enumerate(a)][1:])

