"""Mumford pairs and Cantor's algorithm on y^2 = g(x), singular g allowed.

A divisor class is a pair ``(u, v)`` with ``deg v < deg u``, ``u | v^2 - g``
and, at every multiple root ``a`` of ``g`` dividing both ``u`` and ``v``,
``(x - a)`` not dividing ``(g - v^2)/u``. This module is used as the
independent reference for :mod:`nodaljac.nodal` and as the slow side of the
group-operation benchmark.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import checks, ladder
from .arith import mpz, to_mpz
from .poly import (
    Poly,
    _add,
    _deriv,
    _divrem,
    _exact_div,
    _gcd,
    _monic,
    _mul,
    _neg,
    _rem,
    _sub,
    _xgcd,
)

__all__ = [
    "SingularCurve",
    "MumfordDivisor",
    "is_valid",
    "cantor_add",
    "cantor_reduce",
    "cantor_negate",
    "cantor_scalar_mul",
]


@dataclass(frozen=True)
class SingularCurve:
    """The curve y^2 = g(x) with g monic of odd degree 2*genus + 1 >= 3."""

    g: Poly

    def __post_init__(self):
        if self.g.lc != 1:
            raise ValueError("g must be monic")
        if self.g.degree < 3 or self.g.degree % 2 == 0:
            raise ValueError("g must have odd degree >= 3")

    @property
    def modulus(self) -> int:
        return self.g.modulus

    @property
    def genus(self) -> int:
        return (self.g.degree - 1) // 2

    def identity(self) -> "MumfordDivisor":
        return MumfordDivisor(Poly.const(1, self.modulus), Poly((), self.modulus))


@dataclass(frozen=True)
class MumfordDivisor:
    u: Poly
    v: Poly

    def is_identity(self) -> bool:
        return self.u.coeffs == (1,) and not self.v


def is_valid(curve: SingularCurve, D: MumfordDivisor) -> bool:
    """Check the three Mumford conditions over a prime field.

    The singular-point condition is tested without root finding: the common
    singular part of ``u`` and ``v`` is ``c = gcd(u, v, g, g')`` and the pair
    is rejected when ``c`` shares a root with ``(g - v^2)/u``.
    """
    m = curve.modulus
    u, v, g = D.u.coeffs, D.v.coeffs, curve.g.coeffs
    if D.u.modulus != m or D.v.modulus != m:
        return False
    if not u:
        return False
    if len(v) >= len(u):
        return False
    quotient, remainder = _divrem(_sub(g, _mul(v, v, m), m), u, m)
    if remainder:
        return False
    c = _gcd(_gcd(u, v, m), _gcd(g, _deriv(g, m), m), m)
    if len(c) > 1 and len(_gcd(c, quotient, m)) > 1:
        return False
    return True


def _compose(g, u1, v1, u2, v2, m):
    if u1 == [1]:
        return list(u2), list(v2)
    if u2 == [1]:
        return list(u1), list(v1)
    d1, e1, e2 = _xgcd(u1, u2, m)
    d, c1, c2 = _xgcd(d1, _add(v1, v2, m), m)
    h1, h2 = _mul(c1, e1, m), _mul(c1, e2, m)
    u = _exact_div(_mul(u1, u2, m), _mul(d, d, m), m)
    num = _add(
        _add(_mul(_mul(h1, u1, m), v2, m), _mul(_mul(h2, u2, m), v1, m), m),
        _mul(c2, _add(_mul(v1, v2, m), g, m), m),
        m,
    )
    v = _rem(_exact_div(num, d, m), u, m)
    return u, v


def _reduce(g, genus, u, v, m):
    while len(u) - 1 > genus:
        u_next = _exact_div(_sub(g, _mul(v, v, m), m), u, m)
        if len(u_next) >= len(u):
            raise ArithmeticError("reduction step failed to lower deg u")
        u = _monic(u_next, m)
        v = _rem(_neg(v, m), u, m)
    u = _monic(u, m)
    return u, _rem(v, u, m)


def _cantor_add(g, genus, u1, v1, u2, v2, m, reduce=True):
    u, v = _compose(g, u1, v1, u2, v2, m)
    if reduce:
        return _reduce(g, genus, u, v, m)
    u = _monic(u, m)
    return u, _rem(v, u, m)


def _wrap(u, v, m) -> MumfordDivisor:
    return MumfordDivisor(Poly._wrap(u, m), Poly._wrap(v, m))


def cantor_add(
    curve: SingularCurve, D1: MumfordDivisor, D2: MumfordDivisor, reduce: bool = True
) -> MumfordDivisor:
    """Add two classes with Cantor's algorithm.

    Composition: ``h = gcd(u1, u2, v1 + v2) = h1*u1 + h2*u2 + h3*(v1 + v2)``,
    ``u = u1*u2/h^2`` and
    ``v = (h1*u1*v2 + h2*u2*v1 + h3*(v1*v2 + g))/h mod u``.
    Reduction then replaces ``(u, v)`` by ``((g - v^2)/u, -v mod that)`` while
    ``deg u > genus``. With ``reduce=False`` only the composition runs, which
    is what the single-polynomial addition formula is derived from.

    Over a composite modulus a failed inversion raises
    :class:`~nodaljac.arith.FactorFound`.
    """
    m = curve.modulus
    if checks.ENABLED:
        for D in (D1, D2):
            if not is_valid(curve, D):
                raise ValueError(f"invalid divisor {D}")
    u, v = _cantor_add(
        curve.g.coeffs, curve.genus, D1.u.coeffs, D1.v.coeffs, D2.u.coeffs, D2.v.coeffs, m, reduce
    )
    return _wrap(u, v, m)


def cantor_reduce(curve: SingularCurve, D: MumfordDivisor) -> MumfordDivisor:
    """Reduced representative (monic u, deg u <= genus) of the class of D."""
    m = curve.modulus
    u, v = _reduce(curve.g.coeffs, curve.genus, list(D.u.coeffs), list(D.v.coeffs), m)
    return _wrap(u, v, m)


def cantor_negate(curve: SingularCurve, D: MumfordDivisor) -> MumfordDivisor:
    m = curve.modulus
    return _wrap(list(D.u.coeffs), _rem(_neg(D.v.coeffs, m), D.u.coeffs, m), m)


def cantor_scalar_mul(curve: SingularCurve, k: int, D: MumfordDivisor) -> MumfordDivisor:
    """k*D by sliding-window double-and-add over :func:`cantor_add`."""
    if k < 0:
        raise ValueError("scalar must be non-negative")
    m = mpz(curve.modulus)
    g, genus = to_mpz(curve.g.coeffs), curve.genus
    # reduce first so that 1*D is already canonical
    u0, v0 = _reduce(g, genus, to_mpz(D.u.coeffs), to_mpz(D.v.coeffs), m)

    def add(a, b):
        return _cantor_add(g, genus, a[0], a[1], b[0], b[1], m)

    u, v = ladder.multiply(
        k, (u0, v0), add, lambda a: add(a, a), ([mpz(1)], [])
    )
    return _wrap(u, v, m)
