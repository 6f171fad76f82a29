"""Timing harness for the group-operation and encryption comparisons."""

from __future__ import annotations

import csv
import random
import sys
import time
from dataclasses import astuple, dataclass, fields
from typing import Callable, Iterable, TextIO

from . import mumford, nodal, pke, rsa
from .arith import random_prime
from .poly import lift_irreducible, random_irreducible

__all__ = ["BenchRecord", "time_mean", "bench_add", "bench_pke", "write_csv", "CSV_COLUMNS"]

MIN_TRIALS = 3


@dataclass(frozen=True)
class BenchRecord:
    scheme: str
    prime_bits: int
    degree: int
    operation: str
    seconds: float
    trials: int
    seed: int


CSV_COLUMNS = tuple(f.name for f in fields(BenchRecord))


def time_mean(fn: Callable[[], object], trials: int) -> float:
    """Mean wall time of ``fn`` over ``trials`` runs after one discarded warm-up."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    fn()
    total = 0.0
    for _ in range(trials):
        start = time.perf_counter()
        fn()
        total += time.perf_counter() - start
    return total / trials


def bench_add(
    bits: int,
    deg_g: Iterable[int],
    trials: int = MIN_TRIALS,
    seed: int = 0,
    log: Callable[[str], None] | None = None,
) -> list[BenchRecord]:
    """Time p*Q with the single-polynomial law and with Cantor's algorithm.

    One prime p of ``bits`` bits is drawn per call and reused for every
    degree. For ``y^2 = g(x)`` with ``deg g = 2r + 1`` the nodal curve uses
    ``deg f = r``; the Cantor side starts from the reduced Mumford image of
    the same Q, so both ladders compute the same class.
    """
    rng = random.Random(seed)
    p = random_prime(bits, rng)
    out = []
    for dg in deg_g:
        if dg < 3 or dg % 2 == 0:
            raise ValueError(f"deg g must be odd and >= 3, got {dg}")
        r = (dg - 1) // 2
        curve = nodal.NodalCurve(random_irreducible(r, p, rng), check=False)
        mcurve = curve.mumford_curve()
        Q = nodal.random_element(curve, rng)
        D = mumford.cantor_reduce(mcurve, nodal.to_mumford(curve, Q))

        pQ = nodal.scalar_mul(curve, p, Q)
        if mumford.cantor_reduce(mcurve, nodal.to_mumford(curve, pQ)) != mumford.cantor_scalar_mul(mcurve, p, D):
            raise RuntimeError(f"nodal and Cantor ladders disagree at deg g = {dg}")

        t_nodal = time_mean(lambda: nodal.scalar_mul(curve, p, Q), trials)
        t_cantor = time_mean(lambda: mumford.cantor_scalar_mul(mcurve, p, D), trials)
        out.append(BenchRecord("nodal", bits, dg, "scalar_mul", t_nodal, trials, seed))
        out.append(BenchRecord("cantor", bits, dg, "scalar_mul", t_cantor, trials, seed))
        if log:
            log(f"bits={bits} deg_g={dg}: nodal {t_nodal:.4f}s cantor {t_cantor:.4f}s ({t_cantor / t_nodal:.1f}x)")
    return out


def _shared_primes(bits: int, e: int, rng: random.Random) -> tuple[int, int]:
    # primes usable for textbook RSA with this e; the nodal side retries f instead
    while True:
        p, q = random_prime(bits, rng), random_prime(bits, rng)
        if p != q and (p * q).bit_length() == 2 * bits and (p - 1) % e and (q - 1) % e:
            return p, q


def _nodal_key(p: int, q: int, degree: int, e: int, rng: random.Random):
    for _ in range(64):
        f = lift_irreducible(degree, p, q, rng)
        try:
            return pke.keygen_from_primes(p, q, f, e, rng)
        except pke.KeyGenerationError:
            continue
    raise RuntimeError(f"no f of degree {degree} gives a group order coprime to e = {e}")


def bench_pke(
    key_bits: int,
    degrees: Iterable[int],
    trials: int = MIN_TRIALS,
    seed: int = 0,
    e: int = pke.DEFAULT_E,
    log: Callable[[str], None] | None = None,
) -> list[BenchRecord]:
    """Encryption/decryption timings for the nodal scheme against textbook RSA.

    ``key_bits`` is the size of n; both schemes share the same two primes of
    ``key_bits // 2`` bits and the same public exponent. RSA rows carry
    degree 0. RSA decryption is a plain exponentiation without CRT.
    """
    rng = random.Random(seed)
    bits = key_bits // 2
    p, q = _shared_primes(bits, e, rng)
    out = []

    rkey = rsa.rsa_keypair_from_primes(p, q, e)
    m = rng.randrange(rkey.n)
    c = rsa.rsa_encrypt(rkey, m)
    t_enc = time_mean(lambda: rsa.rsa_encrypt(rkey, m), trials)
    t_dec = time_mean(lambda: rsa.rsa_decrypt(rkey, c), trials)
    out.append(BenchRecord("rsa", bits, 0, "encrypt", t_enc, trials, seed))
    out.append(BenchRecord("rsa", bits, 0, "decrypt", t_dec, trials, seed))
    if log:
        log(f"key={key_bits} rsa: encrypt {t_enc:.6f}s decrypt {t_dec:.6f}s (no CRT)")

    for degree in degrees:
        pk, sk = _nodal_key(p, q, degree, e, rng)
        message = rng.randbytes(pk.capacity)
        ct = pke.encrypt(pk, message, rng)
        if pke.decrypt(sk, ct) != message:
            raise RuntimeError(f"round trip failed at degree {degree}")
        t_enc = time_mean(lambda: pke.encrypt(pk, message, rng), trials)
        t_dec = time_mean(lambda: pke.decrypt(sk, ct), trials)
        out.append(BenchRecord("nodal", bits, degree, "encrypt", t_enc, trials, seed))
        out.append(BenchRecord("nodal", bits, degree, "decrypt", t_dec, trials, seed))
        if log:
            log(f"key={key_bits} deg_f={degree}: encrypt {t_enc:.6f}s decrypt {t_dec:.6f}s")
    return out


def write_csv(records: Iterable[BenchRecord], stream: TextIO | None = None) -> None:
    writer = csv.writer(stream or sys.stdout)
    writer.writerow(CSV_COLUMNS)
    for rec in records:
        row = list(astuple(rec))
        row[4] = f"{rec.seconds:.6g}"
        writer.writerow(row)
