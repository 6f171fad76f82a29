import csv
import io
import random
import subprocess
import sys

import pytest

from nodaljac import cli, formats, pke, rsa, selftest
from nodaljac.nodal import IDENTITY
from nodaljac.pke import Ciphertext


def run(*args):
    return cli.main([str(a) for a in args])


def test_key_files_round_trip():
    rng = random.Random(1)
    for r in (2, 3, 5):
        pk, sk = pke.keygen(32, r, rng=rng)
        assert formats.loads(formats.dumps(pk)) == pk
        assert formats.loads(formats.dumps(sk)) == sk
        c = pke.encrypt(pk, b"hey", rng)
        assert formats.loads(formats.dumps(c)) == c
    key = rsa.rsa_keygen(128, rng=rng)
    assert formats.loads(formats.dumps(key)) == key
    assert formats.loads(formats.dumps(key.public_key())) == key.public_key()
    assert formats.loads(formats.dumps(Ciphertext(IDENTITY))) == Ciphertext(IDENTITY)


def test_format_layout():
    pk, sk = pke.keygen_from_primes(7, 11, pke.Poly([1, 0, 1], 77), 7)
    assert formats.dumps(pk) == "nodal-pke public v1\nn = 4d\nf = 1,0,1\ne = 7\n"
    lines = formats.dumps(sk).splitlines()
    assert lines[0] == "nodal-pke private v1"
    assert [l.split(" = ")[0] for l in lines[1:]] == ["n", "f", "e", "p", "q", "d", "K"]
    assert "K = 1680" in lines and "d = 337" in lines
    assert formats.dumps(Ciphertext(IDENTITY)).splitlines()[-1] == "element = identity"
    assert formats.dumps(rsa.rsa_keypair_from_primes(3, 11, 3)).startswith("rsa private v1\nn = 21\n")


@pytest.mark.parametrize(
    "text",
    ["", "bogus v1\n", "nodal-pke public v1\nn = 4d\n", "rsa public v1\nn = zz\ne = 3\n", "rsa public v1\nn 4d\n"],
)
def test_malformed_files(text):
    with pytest.raises(formats.FormatError):
        formats.loads(text)


def test_keygen_seeded_is_reproducible(tmp_path):
    paths = []
    for tag in "ab":
        pub, priv = tmp_path / f"{tag}.pub", tmp_path / f"{tag}.priv"
        assert run("keygen", "--scheme", "nodal", "--bits", 32, "--degree", 3, "--seed", 1, "--pub", pub, "--priv", priv) == 0
        paths.append((pub.read_text(), priv.read_text()))
    assert paths[0] == paths[1]
    assert paths[0][0].startswith("nodal-pke public v1\n")
    msg = tmp_path / "m"
    msg.write_bytes(b"abc")
    outs = []
    for tag in "xy":
        out = tmp_path / tag
        assert run("encrypt", "--key", tmp_path / "a.pub", "--in", msg, "--out", out, "--seed", 9) == 0
        outs.append(out.read_text())
    assert outs[0] == outs[1]


@pytest.mark.parametrize("scheme,bits,extra", [("nodal", 32, ["--degree", 4]), ("rsa", 256, [])])
def test_encrypt_decrypt_commands(tmp_path, scheme, bits, extra):
    pub, priv = tmp_path / "k.pub", tmp_path / "k.priv"
    assert run("keygen", "--scheme", scheme, "--bits", bits, *extra, "--seed", 2, "--pub", pub, "--priv", priv) == 0
    key = formats.loads(pub.read_text())
    data = bytes([0, 255, 7]) + bytes(range(key.capacity - 3))
    src, ct, back = tmp_path / "in", tmp_path / "ct", tmp_path / "out"
    src.write_bytes(data)
    assert run("encrypt", "--key", pub, "--in", src, "--out", ct) == 0
    assert run("decrypt", "--key", priv, "--in", ct, "--out", back) == 0
    assert back.read_bytes() == data


def test_rsa_keygen_512(tmp_path):
    pub, priv = tmp_path / "r.pub", tmp_path / "r.priv"
    assert run("keygen", "--scheme", "rsa", "--bits", 512, "--pub", pub, "--priv", priv) == 0
    key = formats.loads(priv.read_text())
    assert isinstance(key, rsa.RsaKeyPair)
    assert key.n == key.p * key.q and key.e * key.d % ((key.p - 1) * (key.q - 1)) == 1


def test_exit_codes(tmp_path, capsys):
    pub, priv = tmp_path / "k.pub", tmp_path / "k.priv"
    assert run("keygen", "--scheme", "nodal", "--bits", 32, "--degree", 1, "--pub", pub, "--priv", priv) == 1
    assert "degree must be ≥ 2" in capsys.readouterr().err
    with pytest.raises(SystemExit) as info:
        run("keygen", "--scheme", "nodal")
    assert info.value.code == 1
    assert run("keygen", "--scheme", "rsa", "--bits", 64, "--degree", 2, "--pub", pub, "--priv", priv) == 1

    assert run("keygen", "--scheme", "nodal", "--bits", 32, "--degree", 2, "--seed", 3, "--pub", pub, "--priv", priv) == 0
    assert run("keygen", "--scheme", "nodal", "--bits", 32, "--degree", 2, "--pub", tmp_path / "no" / "x", "--priv", priv) == 2
    assert run("encrypt", "--key", tmp_path / "missing", "--in", pub, "--out", tmp_path / "c") == 2

    big = tmp_path / "big"
    big.write_bytes(bytes(1000))
    capsys.readouterr()
    assert run("encrypt", "--key", pub, "--in", big, "--out", tmp_path / "c") == 3
    cap = formats.loads(pub.read_text()).capacity
    assert f"capacity of {cap} bytes" in capsys.readouterr().err

    garbage = tmp_path / "garbage"
    garbage.write_text("not a key\n")
    assert run("encrypt", "--key", garbage, "--in", big, "--out", tmp_path / "c") == 2


def test_wrong_key_gives_decode_error(tmp_path):
    """Decrypting under any other key exits with the decode-failure code."""
    msg = tmp_path / "m"
    msg.write_bytes(b"payload")
    codes = []
    for seed in range(10):
        a_pub, a_priv = tmp_path / "a.pub", tmp_path / "a.priv"
        b_pub, b_priv = tmp_path / "b.pub", tmp_path / "b.priv"
        run("keygen", "--scheme", "nodal", "--bits", 32, "--degree", 3, "--seed", seed, "--pub", a_pub, "--priv", a_priv)
        run("keygen", "--scheme", "nodal", "--bits", 32, "--degree", 3, "--seed", seed + 100, "--pub", b_pub, "--priv", b_priv)
        # forge a key that shares the modulus and f of `a` but carries b's exponent
        a, b = formats.loads(a_priv.read_text()), formats.loads(b_priv.read_text())
        forged = pke.PrivateKey(a.n, a.p, a.q, a.f, a.e, b.d, a.K)
        (tmp_path / "forged").write_text(formats.dumps(forged))
        ct = tmp_path / "ct"
        run("encrypt", "--key", a_pub, "--in", msg, "--out", ct, "--seed", seed)
        codes.append(run("decrypt", "--key", tmp_path / "forged", "--in", ct, "--out", tmp_path / "o"))
        codes.append(run("decrypt", "--key", b_priv, "--in", ct, "--out", tmp_path / "o"))
    assert set(codes) == {3}


def test_bench_add_csv(tmp_path, capsys):
    out = tmp_path / "add.csv"
    assert run("bench-add", "--bits", 64, "--degrees", "3,5,7", "--trials", 3, "--seed", 1, "--csv", out) == 0
    rows = list(csv.DictReader(out.open()))
    assert list(rows[0]) == ["scheme", "prime_bits", "degree", "operation", "seconds", "trials", "seed"]
    assert [(r["scheme"], r["degree"]) for r in rows] == [
        (s, d) for d in ("3", "5", "7") for s in ("nodal", "cantor")
    ]
    assert all(float(r["seconds"]) >= 0 and r["trials"] == "3" and r["seed"] == "1" for r in rows)
    assert run("bench-add", "--bits", 64, "--deg-f", "1,2", "--seed", 1) == 0
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert sorted({r["degree"] for r in rows}) == ["3", "5"]
    assert run("bench-add", "--degrees", "4") == 1
    assert run("bench-add", "--trials", 2) == 1


def test_bench_pke_csv(tmp_path):
    out = tmp_path / "pke.csv"
    assert run("bench-pke", "--bits", 128, "--degrees", "2..4", "--trials", 3, "--csv", out) == 0
    rows = list(csv.DictReader(out.open()))
    got = {(r["scheme"], r["degree"], r["operation"]) for r in rows}
    assert got == {("rsa", "0", "encrypt"), ("rsa", "0", "decrypt")} | {
        ("nodal", str(d), op) for d in (2, 3, 4) for op in ("encrypt", "decrypt")
    }
    assert len(rows) == len(got)
    assert {r["prime_bits"] for r in rows} == {"64"}


def test_selftest_command(capsys):
    assert [name for name, _ in selftest.SUITES].count("cantor-oracle-equivalence") == 1
    assert run("selftest") == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == len(selftest.SUITES) + 1
    assert all(l.startswith("PASS ") for l in lines[:-1])


def test_selftest_reports_failures(monkeypatch, capsys):
    def broken():
        raise AssertionError("boom")

    monkeypatch.setattr(selftest, "SUITES", selftest.SUITES + [("broken", broken)])
    assert run("selftest") == 4
    captured = capsys.readouterr()
    assert "FAIL broken" in captured.out and "broken" in captured.err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "nodaljac", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0 and "bench-pke" in proc.stdout
