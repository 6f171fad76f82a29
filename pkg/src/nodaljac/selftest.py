"""Desk-scale brute-force checks, runnable from the command line."""

from __future__ import annotations

import itertools
import random
import time
from typing import Callable, TextIO

from . import mumford, nodal, pke, rsa
from .arith import FactorFound
from .poly import Poly, random_irreducible

__all__ = ["SUITES", "run"]


def _p7_elements():
    curve = nodal.NodalCurve(Poly([1, 0, 1], 7))
    valid = []
    for a, b in itertools.product(range(7), repeat=2):
        h = Poly([a, b], 7)
        if nodal.is_valid_element(curve, h):
            valid.append(nodal.JacElement(h))
    return curve, valid


def group_count() -> str:
    curve, valid = _p7_elements()
    order = nodal.group_order(7, curve.f)
    assert len(valid) == 47, f"{len(valid)} valid h, expected 47"
    assert order.value == len(valid) + 1 == 48, f"group_order = {order.value}"
    assert order.twist is nodal.Twist.SPLIT
    return "47 valid h + identity = 48 (split)"


def cayley_table() -> str:
    curve, valid = _p7_elements()
    elements = [nodal.IDENTITY] + valid
    members = set(elements)
    for a in elements:
        inverses = 0
        for b in elements:
            s = nodal.add(curve, a, b)
            assert s in members, f"{a} + {b} = {s} not in the group"
            assert s == nodal.add(curve, b, a), "not commutative"
            inverses += s.is_identity()
        assert inverses == 1, f"{a} has {inverses} inverses"
        assert nodal.scalar_mul(curve, 48, a).is_identity()
    return "48x48 table closed, commutative, unique inverses, 48*e = 0"


def oracle_equivalence(pairs: int = 200, seed: int = 1) -> str:
    rng = random.Random(seed)
    checked = 0
    for p in (7, 11, 101):
        for r in (1, 2, 3):
            curve = nodal.NodalCurve(random_irreducible(r, p, rng))
            mc = curve.mumford_curve()
            for _ in range(pairs):
                e1, e2 = nodal.random_element(curve, rng), nodal.random_element(curve, rng)
                d1, d2 = nodal.to_mumford(curve, e1), nodal.to_mumford(curve, e2)
                s = nodal.add(curve, e1, e2)
                assert mumford.cantor_add(mc, d1, d2, reduce=False) == nodal.to_mumford(curve, s)
                assert mumford.cantor_add(mc, d1, d2) == mumford.cantor_reduce(mc, nodal.to_mumford(curve, s))
                checked += 1
    return f"{checked} random sums agree with Cantor composition and reduction"


def twist_coverage() -> str:
    rng = random.Random(2)
    seen = set()
    for p, f in ((7, [1, 0, 1]), (3, [1, 1])):
        curve = nodal.NodalCurve(Poly(f, p))
        order = nodal.group_order(p, curve.f)
        seen.add(order.twist)
        for _ in range(100):
            assert nodal.scalar_mul(curve, order.value, nodal.random_element(curve, rng)).is_identity()
    assert seen == {nodal.Twist.SPLIT, nodal.Twist.NONSPLIT}
    return "split (7, x^2+1) and nonsplit (3, x+1) both annihilated"


def toy_key() -> str:
    pk, sk = pke.keygen_from_primes(7, 11, Poly([1, 0, 1], 77), 7)
    assert (sk.K, sk.d) == (5760, 823), (sk.K, sk.d)
    curve = pk.curve
    ok = factored = 0
    for a, b in itertools.product(range(77), repeat=2):
        h = Poly([a, b], 77)
        try:
            if not nodal.is_valid_element(curve, h):
                continue
            c = nodal.JacElement(h)
            assert nodal.scalar_mul(curve, pk.e, nodal.scalar_mul(curve, sk.d, c)) == c
            ok += 1
        except FactorFound as exc:
            assert exc.factor in (7, 11)
            factored += 1
    return f"K=5760 d=823; e*(d*C) = C for {ok} elements, {factored} exposed a factor of 77"


def pke_roundtrip(seed: int = 3) -> str:
    rng = random.Random(seed)
    count = 0
    for degree in (2, 3):
        pk, sk = pke.keygen(32, degree, rng=rng)
        for _ in range(20):
            msg = rng.randbytes(rng.randrange(pk.capacity + 1))
            assert pke.decrypt(sk, pke.encrypt(pk, msg, rng)) == msg
            count += 1
    return f"{count} messages round-tripped at 32-bit primes"


def rsa_roundtrip() -> str:
    key = rsa.rsa_keypair_from_primes(3, 11, 3)
    assert key.d == 7
    for m in range(33):
        assert rsa.rsa_decrypt(key, rsa.rsa_encrypt(key, m)) == m
    return "n=33, e=3, d=7 exhaustive"


SUITES: list[tuple[str, Callable[[], str]]] = [
    ("group-count", group_count),
    ("cayley-table", cayley_table),
    ("cantor-oracle-equivalence", oracle_equivalence),
    ("twist-coverage", twist_coverage),
    ("toy-key", toy_key),
    ("pke-roundtrip", pke_roundtrip),
    ("rsa-roundtrip", rsa_roundtrip),
]


def run(out: TextIO) -> list[str]:
    """Run every suite, print one line each, return the names that failed."""
    failed = []
    for name, fn in SUITES:
        start = time.perf_counter()
        try:
            detail = fn()
            status = "PASS"
        except Exception as exc:  # report and keep going
            detail = f"{type(exc).__name__}: {exc}"
            status = "FAIL"
            failed.append(name)
        print(f"{status} {name} ({time.perf_counter() - start:.2f}s): {detail}", file=out)
    return failed
