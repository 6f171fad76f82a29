"""Command-line front end: key generation, encryption, benchmarks, self-test."""

from __future__ import annotations

import argparse
import random
import sys

from . import bench, formats, pke, rsa, selftest
from .arith import FactorFound

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_CRYPTO = 3
EXIT_SELFTEST = 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int(text: str) -> int:
    return int(text, 0)


def _int_list(text: str) -> list[int]:
    out = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    if not out:
        raise argparse.ArgumentTypeError("empty list")
    return out


def _read_text(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _rng(seed):
    return random.Random(seed) if seed is not None else random.SystemRandom()


def cmd_keygen(args) -> int:
    rng = _rng(args.seed)
    if args.scheme == "nodal":
        if args.degree is None:
            raise UsageError("--degree is required for the nodal scheme")
        if args.degree < 2:
            raise UsageError("degree must be ≥ 2")
        if args.bits < 16:
            raise UsageError("bits must be >= 16")
        pk, sk = pke.keygen(args.bits, args.degree, args.e, rng)
        pub, priv = pk, sk
    else:
        if args.degree is not None:
            raise UsageError("--degree only applies to the nodal scheme")
        if args.bits < 8:
            raise UsageError("bits must be >= 8")
        priv = rsa.rsa_keygen(args.bits, args.e, rng)
        pub = priv.public_key()
    _write_text(args.pub, formats.dumps(pub))
    _write_text(args.priv, formats.dumps(priv))
    return EXIT_OK


def cmd_encrypt(args) -> int:
    key = formats.loads(_read_text(args.key))
    with open(args.input, "rb") as fh:
        data = fh.read()
    if isinstance(key, pke.PrivateKey):
        key = key.public_key()
    if isinstance(key, pke.PublicKey):
        out = pke.encrypt(key, data, _rng(args.seed))
    elif isinstance(key, (rsa.RsaPublicKey, rsa.RsaKeyPair)):
        out = formats.RsaCiphertext(rsa.rsa_encrypt_bytes(key, data))
    else:
        raise formats.FormatError("--key must be a key file")
    _write_text(args.output, formats.dumps(out))
    return EXIT_OK


def cmd_decrypt(args) -> int:
    key = formats.loads(_read_text(args.key))
    ct = formats.loads(_read_text(args.input))
    if isinstance(key, pke.PrivateKey):
        if not isinstance(ct, pke.Ciphertext):
            raise pke.DecodeError("input is not a nodal-pke ciphertext")
        if ct.element.h is not None and ct.element.h.modulus != key.n:
            raise pke.DecodeError("ciphertext was produced under a different modulus")
        data = pke.decrypt(key, ct)
    elif isinstance(key, rsa.RsaKeyPair):
        if not isinstance(ct, formats.RsaCiphertext):
            raise pke.DecodeError("input is not an rsa ciphertext")
        if ct >= key.n:
            raise pke.DecodeError("ciphertext is out of range for this key")
        data = rsa.rsa_decrypt_bytes(key, int(ct))
    else:
        raise UsageError("--key must be a private key file")
    with open(args.output, "wb") as fh:
        fh.write(data)
    return EXIT_OK


def _open_csv(path):
    return sys.stdout if path in (None, "-") else open(path, "w", newline="", encoding="utf-8")


def _log(msg: str) -> None:
    print(msg, file=sys.stderr)


def cmd_bench_add(args) -> int:
    if args.deg_f:
        degrees = [2 * r + 1 for r in args.deg_f]
    else:
        degrees = args.degrees
    for d in degrees:
        if d < 3 or d % 2 == 0:
            raise UsageError(f"deg g must be odd and >= 3, got {d}")
    if args.trials < bench.MIN_TRIALS:
        raise UsageError(f"trials must be >= {bench.MIN_TRIALS}")
    records = bench.bench_add(args.bits, degrees, args.trials, args.seed, log=_log)
    stream = _open_csv(args.csv)
    try:
        bench.write_csv(records, stream)
    finally:
        if stream is not sys.stdout:
            stream.close()
    return EXIT_OK


def cmd_bench_pke(args) -> int:
    if any(d < 2 for d in args.degrees):
        raise UsageError("degree must be ≥ 2")
    if args.trials < bench.MIN_TRIALS:
        raise UsageError(f"trials must be >= {bench.MIN_TRIALS}")
    records = bench.bench_pke(args.bits, args.degrees, args.trials, args.seed, log=_log)
    _log("note: RSA decryption uses plain exponentiation (no CRT)")
    stream = _open_csv(args.csv)
    try:
        bench.write_csv(records, stream)
    finally:
        if stream is not sys.stdout:
            stream.close()
    return EXIT_OK


def cmd_selftest(args) -> int:
    failed = selftest.run(sys.stdout)
    if failed:
        print(f"self-test failed: {', '.join(failed)}", file=sys.stderr)
        return EXIT_SELFTEST
    print(f"all {len(selftest.SUITES)} suites passed")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nodaljac", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("keygen", help="generate a key pair")
    p.add_argument("--scheme", choices=("nodal", "rsa"), required=True)
    p.add_argument("--bits", type=int, required=True, help="bit size of each prime")
    p.add_argument("--degree", type=int, help="deg f (nodal only)")
    p.add_argument("--e", type=_int, help="public exponent (default 65537)")
    p.add_argument("--seed", type=int, help="seed for reproducible keys")
    p.add_argument("--pub", required=True)
    p.add_argument("--priv", required=True)
    p.set_defaults(func=cmd_keygen)

    for name, func, key_help in (
        ("encrypt", cmd_encrypt, "public key file"),
        ("decrypt", cmd_decrypt, "private key file"),
    ):
        p = sub.add_parser(name, help=f"{name} a file")
        p.add_argument("--key", required=True, help=key_help)
        p.add_argument("--in", dest="input", required=True)
        p.add_argument("--out", dest="output", required=True)
        if name == "encrypt":
            p.add_argument("--seed", type=int, help="seed for reproducible ciphertexts")
        p.set_defaults(func=func)

    p = sub.add_parser("bench-add", help="nodal addition vs Cantor's algorithm")
    p.add_argument("--bits", type=int, default=512, help="size of the prime p (and of the scalar)")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--degrees", type=_int_list, default=[11, 23, 47], help="odd deg g values")
    group.add_argument("--deg-f", type=_int_list, help="deg f values instead of deg g")
    p.add_argument("--trials", type=int, default=bench.MIN_TRIALS)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv", help="output path, '-' for stdout")
    p.set_defaults(func=cmd_bench_add)

    p = sub.add_parser("bench-pke", help="nodal PKE vs textbook RSA")
    p.add_argument("--bits", type=int, default=1024, help="size of the public modulus n")
    p.add_argument("--degrees", type=_int_list, default=[2, 3, 4, 5], help="deg f values, e.g. 2..5")
    p.add_argument("--trials", type=int, default=bench.MIN_TRIALS)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv", help="output path, '-' for stdout")
    p.set_defaults(func=cmd_bench_pke)

    p = sub.add_parser("selftest", help="run the brute-force property suites")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"nodaljac: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"nodaljac: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except formats.FormatError as exc:
        print(f"nodaljac: malformed file: {exc}", file=sys.stderr)
        return EXIT_IO
    except pke.MessageTooLong as exc:
        print(f"nodaljac: {exc}", file=sys.stderr)
        return EXIT_CRYPTO
    except (pke.DecodeError, pke.KeyGenerationError, ValueError) as exc:
        print(f"nodaljac: {exc}", file=sys.stderr)
        return EXIT_CRYPTO
    except FactorFound as exc:
        print(f"nodaljac: modulus factored during group arithmetic: {exc.factor}", file=sys.stderr)
        return EXIT_CRYPTO


if __name__ == "__main__":
    sys.exit(main())
