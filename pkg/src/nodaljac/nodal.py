"""Jacobian of the nodal curve y^2 = x*f(x)^2 with f irreducible.

Every class other than the identity is the Mumford pair ``(f^2, h*f)`` for a
unique ``h`` with ``deg h < deg f`` and ``gcd(f, x - h^2) = 1``, so elements
are stored as that single polynomial. Adding ``h1`` and ``h2`` reduces to one
inversion modulo ``f``::

    h3 = (h1*h2 + x) / (h1 + h2)  mod f

and ``h1 + h2 = 0`` gives the identity.

The same code runs over Z/nZ for n = pq, where a non-unit met during the
inversion raises :class:`~nodaljac.arith.FactorFound`.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass

from . import checks, ladder
from .arith import is_probable_prime, mpz, to_mpz
from .mumford import MumfordDivisor, SingularCurve
from .poly import (
    Poly,
    _add,
    _gcd,
    _invmod,
    _is_irreducible,
    _mul,
    _neg,
    _rem,
    _sub,
    _trim,
    _x_powmod,
)

__all__ = [
    "NodalCurve",
    "JacElement",
    "IDENTITY",
    "Twist",
    "GroupOrder",
    "InvariantViolation",
    "is_valid_element",
    "to_mumford",
    "add",
    "negate",
    "scalar_mul",
    "group_order",
    "random_element",
]

_X = [0, 1]


class InvariantViolation(RuntimeError):
    """An arithmetic identity that must hold did not; indicates a bug."""


@dataclass(frozen=True)
class NodalCurve:
    """y^2 = x*f(x)^2 over Z/mZ, m an odd prime or a product of two.

    ``f`` must be monic with nonzero constant term. With ``check=True`` and a
    prime modulus the constructor also runs the irreducibility test.
    """

    f: Poly
    check: bool = True

    def __post_init__(self):
        f = self.f
        if f.modulus % 2 == 0:
            raise ValueError("modulus must be odd")
        if f.degree < 1 or f.lc != 1:
            raise ValueError("f must be monic of degree >= 1")
        if f[0] == 0:
            raise ValueError("f(0) must be nonzero")
        if self.check and is_probable_prime(f.modulus) and not _is_irreducible(f.coeffs, f.modulus):
            raise ValueError(f"f = {f} is reducible over F_{f.modulus}")

    @property
    def modulus(self) -> int:
        return self.f.modulus

    @property
    def r(self) -> int:
        return self.f.degree

    def mumford_curve(self) -> SingularCurve:
        m = self.modulus
        return SingularCurve(Poly._wrap(_mul(_X, _mul(self.f.coeffs, self.f.coeffs, m), m), m))

    def reduce(self, p: int) -> "NodalCurve":
        """The same curve over Z/pZ for a divisor p of the modulus."""
        return NodalCurve(self.f.reduce(p), check=self.check)

    def element(self, coeffs) -> "JacElement":
        h = coeffs if isinstance(coeffs, Poly) else Poly(coeffs, self.modulus)
        if h.modulus != self.modulus:
            raise ValueError("element modulus does not match the curve")
        if h.degree >= self.r:
            raise ValueError(f"deg h = {h.degree} must be < {self.r}")
        return JacElement(h)


@dataclass(frozen=True)
class JacElement:
    """A class in Jac(N): ``h`` is the representing polynomial, None for the identity."""

    h: Poly | None = None

    def is_identity(self) -> bool:
        return self.h is None

    def reduce(self, p: int) -> "JacElement":
        return self if self.h is None else JacElement(self.h.reduce(p))

    def __repr__(self):
        return "JacElement(identity)" if self.h is None else f"JacElement({self.h!r})"


IDENTITY = JacElement()


class Twist(enum.Enum):
    SPLIT = "split"
    NONSPLIT = "nonsplit"


@dataclass(frozen=True)
class GroupOrder:
    value: int
    twist: Twist


def _is_valid(h, f, m) -> bool:
    # x - h^2 is already of degree < deg f after reduction, so one gcd suffices
    t = _rem(_sub(_X, _mul(h, h, m), m), f, m)
    return len(_gcd(f, t, m)) == 1


def is_valid_element(curve: NodalCurve, h: Poly) -> bool:
    """True iff ``deg h < r`` and ``gcd(f, x - h^2) = 1``.

    Over a composite modulus the gcd may raise
    :class:`~nodaljac.arith.FactorFound`.
    """
    if h.modulus != curve.modulus:
        raise ValueError("modulus mismatch")
    if h.degree >= curve.r:
        raise ValueError(f"deg h = {h.degree} must be < {curve.r}")
    return _is_valid(h.coeffs, curve.f.coeffs, curve.modulus)


def to_mumford(curve: NodalCurve, e: JacElement) -> MumfordDivisor:
    m = curve.modulus
    if e.h is None:
        return MumfordDivisor(Poly.const(1, m), Poly((), m))
    f = curve.f.coeffs
    return MumfordDivisor(Poly._wrap(_mul(f, f, m), m), Poly._wrap(_mul(e.h.coeffs, f, m), m))


def _add_h(h1, h2, f, m):
    """Add two representatives given as coefficient lists; None is the identity."""
    if h1 is None:
        return h2
    if h2 is None:
        return h1
    s = _add(h1, h2, m)
    if not s:
        return None
    inv = _invmod(s, f, m)
    num = _rem(_add(_mul(h1, h2, m), _X, m), f, m)
    return _rem(_mul(inv, num, m), f, m)


def _double_h(h, f, m):
    # h3 = (h^2 + x) / (2h) = (h + x/h) / 2, so one inverse and O(r) extra work
    if not h:
        return None
    xi = [0] + _invmod(h, f, m)
    r = len(f) - 1
    if len(xi) > r:
        top = xi.pop()
        xi = [a - top * b for a, b in zip(xi, f)]
    half = (m + 1) // 2
    if len(xi) < len(h):
        xi += [0] * (len(h) - len(xi))
    out = [(a + b) * half % m for a, b in zip(xi, h)] + [c * half % m for c in xi[len(h):]]
    return _trim(out)


def _ladder(k, h, f, m):
    if h is None:
        return None
    h, f, m = to_mpz(h), to_mpz(f), mpz(m)
    acc = ladder.multiply(
        k,
        h,
        lambda a, b: _add_h(a, b, f, m),
        lambda a: None if a is None else _double_h(a, f, m),
        None,
    )
    return acc if acc is None else [int(c) for c in acc]


def _wrap(h, m) -> JacElement:
    return IDENTITY if h is None else JacElement(Poly._wrap(h, m))


def _raw(e: JacElement):
    return None if e.h is None else list(e.h.coeffs)


def add(curve: NodalCurve, e1: JacElement, e2: JacElement) -> JacElement:
    m = curve.modulus
    if checks.ENABLED:
        for e in (e1, e2):
            if e.h is not None and not is_valid_element(curve, e.h):
                raise ValueError(f"invalid element {e}")
    return _wrap(_add_h(_raw(e1), _raw(e2), curve.f.coeffs, m), m)


def negate(curve: NodalCurve, e: JacElement) -> JacElement:
    if e.h is None:
        return e
    return JacElement(Poly._wrap(_neg(e.h.coeffs, curve.modulus), curve.modulus))


def scalar_mul(curve: NodalCurve, k: int, e: JacElement) -> JacElement:
    """k*e by sliding-window double-and-add; 0*e is the identity."""
    if k < 0:
        raise ValueError("scalar must be non-negative")
    if checks.ENABLED and e.h is not None and not is_valid_element(curve, e.h):
        raise ValueError(f"invalid element {e}")
    m = curve.modulus
    return _wrap(_ladder(k, _raw(e), curve.f.coeffs, m), m)


def random_element(curve: NodalCurve, rng: random.Random) -> JacElement:
    """Uniform h of degree < r, redrawn until valid. Never the identity."""
    m, r, f = curve.modulus, curve.r, curve.f.coeffs
    while True:
        h = [rng.randrange(m) for _ in range(r)]
        while h and not h[-1]:
            h.pop()
        if _is_valid(h, f, m):
            return JacElement(Poly._wrap(h, m))


def group_order(p: int, f: Poly, rng: random.Random | None = None, samples: int = 5) -> GroupOrder:
    """Order of Jac(N) over F_p: p^r - 1 if x is a square in F_p[x]/(f), else p^r + 1.

    The Euler-criterion guess is confirmed by annihilating ``samples`` random
    elements; if that fails the other candidate is tried.
    """
    if f.modulus != p:
        f = f.reduce(p)
    curve = NodalCurve(f, check=False)
    r = curve.r
    q = p**r
    split = _x_powmod((q - 1) // 2, f.coeffs, p) == [1]
    candidates = [GroupOrder(q - 1, Twist.SPLIT), GroupOrder(q + 1, Twist.NONSPLIT)]
    if not split:
        candidates.reverse()
    rng = rng or random.Random(p)
    elements = [random_element(curve, rng) for _ in range(samples)]
    for cand in candidates:
        if all(_ladder(cand.value, _raw(e), f.coeffs, p) is None for e in elements):
            return cand
    raise InvariantViolation(f"neither p^r - 1 nor p^r + 1 annihilates Jac(N) for p={p}, f={f}")
