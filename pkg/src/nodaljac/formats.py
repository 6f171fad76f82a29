"""Text formats for keys and ciphertexts.

Line 1 is a header such as ``nodal-pke public v1``; every following line is
``name = value``. Integers are lowercase hex, polynomials are comma-separated
hex coefficients in ascending degree, and the identity element is the literal
``identity``.
"""

from __future__ import annotations

from .nodal import IDENTITY, JacElement
from .pke import Ciphertext, PrivateKey, PublicKey
from .poly import Poly
from .rsa import RsaKeyPair, RsaPublicKey

__all__ = ["FormatError", "dumps", "loads", "RsaCiphertext"]

NODAL_PUBLIC = "nodal-pke public v1"
NODAL_PRIVATE = "nodal-pke private v1"
NODAL_CIPHERTEXT = "nodal-pke ciphertext v1"
RSA_PUBLIC = "rsa public v1"
RSA_PRIVATE = "rsa private v1"
RSA_CIPHERTEXT = "rsa ciphertext v1"


class FormatError(ValueError):
    pass


class RsaCiphertext(int):
    """An RSA ciphertext, tagged so it serializes under its own header."""


def _hex(n: int) -> str:
    return format(n, "x")


def _poly_str(coeffs) -> str:
    return ",".join(_hex(c) for c in coeffs) if coeffs else "0"


def _parse_int(text: str, name: str) -> int:
    try:
        return int(text, 16)
    except ValueError:
        raise FormatError(f"field {name!r} is not a hex integer: {text!r}") from None


def _parse_coeffs(text: str, name: str) -> list[int]:
    return [_parse_int(part.strip(), name) for part in text.split(",")]


def dumps(obj) -> str:
    if isinstance(obj, PrivateKey):
        header = NODAL_PRIVATE
        fields = [
            ("n", _hex(obj.n)),
            ("f", _poly_str(obj.f.coeffs)),
            ("e", _hex(obj.e)),
            ("p", _hex(obj.p)),
            ("q", _hex(obj.q)),
            ("d", _hex(obj.d)),
            ("K", _hex(obj.K)),
        ]
    elif isinstance(obj, PublicKey):
        header = NODAL_PUBLIC
        fields = [("n", _hex(obj.n)), ("f", _poly_str(obj.f.coeffs)), ("e", _hex(obj.e))]
    elif isinstance(obj, Ciphertext):
        header = NODAL_CIPHERTEXT
        h = obj.element.h
        if h is None:
            fields = [("element", "identity")]
        else:
            fields = [("n", _hex(h.modulus)), ("element", _poly_str(h.coeffs))]
    elif isinstance(obj, RsaKeyPair):
        header = RSA_PRIVATE
        fields = [(k, _hex(getattr(obj, k))) for k in ("n", "e", "d", "p", "q")]
    elif isinstance(obj, RsaPublicKey):
        header = RSA_PUBLIC
        fields = [("n", _hex(obj.n)), ("e", _hex(obj.e))]
    elif isinstance(obj, RsaCiphertext):
        header = RSA_CIPHERTEXT
        fields = [("c", _hex(obj))]
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    return "\n".join([header] + [f"{k} = {v}" for k, v in fields]) + "\n"


def _fields(lines: list[str]) -> dict[str, str]:
    out = {}
    for lineno, line in enumerate(lines, start=2):
        line = line.strip()
        if not line:
            continue
        name, sep, value = line.partition("=")
        if not sep:
            raise FormatError(f"line {lineno}: expected 'name = value'")
        out[name.strip()] = value.strip()
    return out


def _require(fields: dict, names: tuple[str, ...]) -> None:
    missing = [n for n in names if n not in fields]
    if missing:
        raise FormatError(f"missing field(s): {', '.join(missing)}")


def loads(text: str):
    """Parse any of the six formats; the header decides the type."""
    lines = text.splitlines()
    if not lines:
        raise FormatError("empty input")
    header = lines[0].strip()
    fields = _fields(lines[1:])

    def num(name):
        return _parse_int(fields[name], name)

    if header in (NODAL_PUBLIC, NODAL_PRIVATE):
        _require(fields, ("n", "f", "e"))
        n = num("n")
        if n < 3:
            raise FormatError("modulus too small")
        f = Poly(_parse_coeffs(fields["f"], "f"), n)
        if header == NODAL_PUBLIC:
            return PublicKey(n, f, num("e"))
        _require(fields, ("p", "q", "d", "K"))
        return PrivateKey(n, num("p"), num("q"), f, num("e"), num("d"), num("K"))
    if header == NODAL_CIPHERTEXT:
        _require(fields, ("element",))
        if fields["element"] == "identity":
            return Ciphertext(IDENTITY)
        _require(fields, ("n",))
        n = num("n")
        coeffs = _parse_coeffs(fields["element"], "element")
        if n < 3 or any(c >= n for c in coeffs):
            raise FormatError("ciphertext coefficients must lie in [0, n)")
        return Ciphertext(JacElement(Poly(coeffs, n)))
    if header == RSA_PUBLIC:
        _require(fields, ("n", "e"))
        return RsaPublicKey(num("n"), num("e"))
    if header == RSA_PRIVATE:
        _require(fields, ("n", "e", "d", "p", "q"))
        return RsaKeyPair(num("n"), num("e"), num("d"), num("p"), num("q"))
    if header == RSA_CIPHERTEXT:
        _require(fields, ("c",))
        return RsaCiphertext(num("c"))
    raise FormatError(f"unknown header {header!r}")
