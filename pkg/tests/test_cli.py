import json
import os

import pytest

from sp4ps.cli import main
from sp4ps.intertwine import block_from_json


def test_ktypes_table(capsys):
    assert main(["ktypes", "--delta", "0,0", "--jmax", "2", "--nmax", "2"]) == 0
    out = capsys.readouterr().out
    assert "multiplicity" in out
    lines = [l.split() for l in out.strip().split("\n")[1:]]
    table = {(l[0], l[1]): int(l[2]) for l in lines}
    assert table[("2", "0")] == 3
    assert table[("2", "1")] == 2


def test_compute_roundtrip(tmp_path):
    out = str(tmp_path / "blocks")
    rc = main(["compute", "--kind", "LONG", "--delta", "0,0", "--lambda", "9/2,5/2",
               "--jmax", "1", "--nmax", "1", "--out", out, "--format", "json"])
    assert rc == 0
    files = sorted(os.listdir(out))
    assert files
    for name in files:
        bm, doc = block_from_json(open(os.path.join(out, name)).read())
        assert doc["lambda"] == ["9/2", "5/2"]
        back, _ = block_from_json(open(os.path.join(out, name)).read())
        assert back.entries == bm.entries


def test_compute_genfun_matches_long(tmp_path):
    a = str(tmp_path / "a")
    b = str(tmp_path / "b")
    args = ["--delta", "0,0", "--lambda", "9/2,5/2", "--jmax", "1", "--nmax", "1"]
    assert main(["compute", "--kind", "LONG", "--out", a] + args) == 0
    assert main(["compute", "--kind", "LONG_GENFUN", "--out", b] + args) == 0
    for name in sorted(os.listdir(a)):
        da = json.load(open(os.path.join(a, name)))
        db = json.load(open(os.path.join(b, name)))
        assert da["entries"] == db["entries"]


def test_pole_exit_code(capsys):
    rc = main(["compute", "--kind", "LONG", "--delta", "0,0", "--lambda", "1/2,3/2",
               "--jmax", "1", "--nmax", "1"])
    assert rc == 2
    assert "pole" in capsys.readouterr().err.lower()


def test_config_error_exit_code():
    with pytest.raises(SystemExit):
        main(["compute", "--delta", "3,0"])


def test_mellin_command():
    assert main(["mellin-check"]) == 0


def test_complex_lambda_float_path(tmp_path):
    out = str(tmp_path / "c")
    rc = main(["compute", "--kind", "A1", "--delta", "0,0", "--lambda", "2.5+0.25i,1.5+0i",
               "--jmax", "1", "--nmax", "1", "--out", out])
    assert rc == 0
    name = sorted(os.listdir(out))[0]
    bm, doc = block_from_json(open(os.path.join(out, name)).read())
    assert isinstance(bm.entries[0][0], complex)
