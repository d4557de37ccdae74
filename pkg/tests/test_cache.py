"""Binary sieve cache: round trip, corruption handling, CLI fallback."""

import struct

import numpy as np
import pytest

import fraclab
from fraclab import cli
from fraclab.arithmetic import CACHE_MAGIC


def test_round_trip(tmp_path):
    table = fraclab.build_tables(5000)
    path = tmp_path / "sieve.muv"
    fraclab.save_cache(table, path)
    loaded = fraclab.load_cache(path)
    assert loaded.limit == table.limit
    assert np.array_equal(loaded.mu, table.mu)
    assert np.array_equal(loaded.mertens, table.mertens)
    assert np.array_equal(loaded.squarefree, table.squarefree)
    assert loaded.omega is None  # the file carries mu only


def test_file_layout(tmp_path):
    table = fraclab.build_tables(10)
    path = tmp_path / "sieve.muv"
    fraclab.save_cache(table, path)
    raw = path.read_bytes()
    assert raw[:4] == CACHE_MAGIC
    assert struct.unpack("<Q", raw[4:12]) == (10,)
    assert len(raw) == 12 + 10


def test_bad_magic_rejected(tmp_path):
    path = tmp_path / "bad.muv"
    path.write_bytes(b"NOPE" + b"\x00" * 20)
    with pytest.raises(ValueError, match="magic"):
        fraclab.load_cache(path)


def test_truncated_body_rejected(tmp_path):
    path = tmp_path / "short.muv"
    path.write_bytes(CACHE_MAGIC + struct.pack("<Q", 100) + b"\x01" * 10)
    with pytest.raises(ValueError, match="truncated"):
        fraclab.load_cache(path)


def test_out_of_range_values_rejected(tmp_path):
    path = tmp_path / "junk.muv"
    path.write_bytes(CACHE_MAGIC + struct.pack("<Q", 3) + bytes([1, 5, 0]))
    with pytest.raises(ValueError):
        fraclab.load_cache(path)


def test_cli_uses_cache(tmp_path, capsys):
    path = tmp_path / "sieve.muv"
    assert cli.main(["sieve", "--limit", "2000", "--cache", str(path)]) == 0
    assert path.exists()
    first = capsys.readouterr().out
    assert cli.main(["sieve", "--limit", "2000", "--cache", str(path)]) == 0
    assert capsys.readouterr().out == first


def test_cli_corrupt_cache_rebuilds_with_warning(tmp_path, capsys):
    path = tmp_path / "sieve.muv"
    path.write_bytes(b"XXXX" + b"\x00" * 30)
    rc = cli.main(["sieve", "--limit", "1000", "--cache", str(path)])
    captured = capsys.readouterr()
    assert rc == 0
    assert "warning" in captured.err
    assert "mertens,2" in captured.out  # M(1000) = 2 from the rebuilt sieve
    # the repaired cache is valid now
    assert fraclab.load_cache(path).limit == 1000


def test_cli_undersized_cache_rebuilds(tmp_path, capsys):
    small = fraclab.build_tables(50)
    path = tmp_path / "sieve.muv"
    fraclab.save_cache(small, path)
    rc = cli.main(["sieve", "--limit", "500", "--cache", str(path)])
    captured = capsys.readouterr()
    assert rc == 0
    assert "only reaches 50" in captured.err
    assert fraclab.load_cache(path).limit == 500


def test_env_var_supplies_cache_path(tmp_path, monkeypatch, capsys):
    env_path = tmp_path / "env.muv"
    monkeypatch.setenv(cli.CACHE_ENV_VAR, str(env_path))
    assert cli.main(["sieve", "--limit", "300"]) == 0
    capsys.readouterr()
    assert env_path.exists()
    # an explicit flag wins over the environment
    flag_path = tmp_path / "flag.muv"
    assert cli.main(["sieve", "--limit", "300", "--cache", str(flag_path)]) == 0
    capsys.readouterr()
    assert flag_path.exists()
