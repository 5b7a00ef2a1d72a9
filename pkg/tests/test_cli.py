from __future__ import annotations

import json
import subprocess
import sys

import pytest

from qhomology.cli import main, parse_grid
from qhomology.homology import HomologyResult


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_betti_table(capsys):
    code, out, _ = run(capsys, "betti", "-q", "2", "-p", "7", "-n", "4")
    assert code == 0
    rows = [ln.split() for ln in out.splitlines()[2:]]
    assert rows == [["1", "0", "0", "19*", "0", "0"], ["2", "0", "0", "19*", "0", "0"]]


def test_betti_engine_json(capsys):
    code, out, _ = run(capsys, "betti", "-q", "3", "-p", "2", "-n", "2", "--engine", "--json")
    assert code == 0
    d = json.loads(out)
    assert [(e["k"], e["betti"], e["engine"]) for e in d["entries"]] == [(0, 0, 0), (1, 2, 2), (2, 0, 0)]


def test_betti_odd_m2_is_zero(capsys):
    code, out, _ = run(capsys, "betti", "-q", "2", "-p", "3", "-n", "3", "--csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "n,k,i,betti,middle"
    assert all(ln.split(",")[3] == "0" for ln in lines[1:])


@pytest.mark.parametrize("q,p,n", [(2, 5, 4), (3, 7, 3), (4, 3, 3)])
def test_engine_matches_closed_form(capsys, q, p, n):
    code, out, _ = run(capsys, "betti", "-q", str(q), "-p", str(p), "-n", str(n), "--engine")
    assert code == 0 and "agrees" in out


def test_homology_basis(capsys):
    code, out, _ = run(capsys, "homology", "-q", "3", "-p", "2", "-n", "2", "-k", "1", "-i", "1", "--basis")
    assert code == 0
    assert "betti      2" in out and "v0:" in out and "v1:" in out


def test_homology_json_round_trip(capsys):
    code, out, _ = run(capsys, "homology", "-q", "2", "-p", "7", "-n", "3", "-k", "1", "-i", "1",
                       "--basis", "--json")
    res = HomologyResult.from_dict(json.loads(out))
    assert code == 0 and res.betti == 5 and len(res.basis) == 5
    assert json.loads(json.dumps(res.to_dict(), sort_keys=True, indent=2)) == json.loads(out)


def test_homology_non_middle(capsys):
    code, out, _ = run(capsys, "homology", "-q", "2", "-p", "7", "-n", "3", "-k", "1", "-i", "2",
                       "--basis", "--json")
    d = json.loads(out)
    assert code == 0 and d["betti"] == 0 and d["basis"] == []


@pytest.mark.parametrize("argv", [
    ["betti", "-q", "4", "-p", "2", "-n", "3"],
    ["betti", "-q", "6", "-p", "5", "-n", "3"],
    ["betti", "-q", "2", "-p", "9", "-n", "3"],
    ["betti", "-q", "2", "-p", "3"],
    ["betti", "-q", "2", "-p", "3", "-n", "3", "--cap", "0"],
    ["homology", "-q", "2", "-p", "3", "-n", "6", "-k", "3", "-i", "1", "--cap", "100"],
    ["verify", "bogus"],
    ["verify", "all", "--grid", "q=2;p=4"],
    ["character", "-q", "3", "-p", "2", "-n", "2", "-k", "1", "-i", "1", "--matrix", "1 1; 1 1"],
    ["nosuchcommand"],
])
def test_invalid_parameters(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 3


def test_verify_examples(capsys):
    code, out, _ = run(capsys, "verify", "all", "-q", "2", "-p", "7", "--nmax", "4")
    assert code == 0 and "all checks passed" in out
    code, out, _ = run(capsys, "verify", "duality", "-q", "3", "-p", "2", "--nmax", "4")
    assert code == 0


def test_verify_grid_json(capsys):
    code, out, _ = run(capsys, "verify", "closed-form", "--grid", "q=2,3;p=5,7;n=0..3", "--json")
    d = json.loads(out)
    assert code == 0 and d["status"] == "pass" and len(d["reports"]) == 4


def test_parse_grid():
    assert parse_grid("q=2;p=3,7;n=2..4") == [(2, 3, 2, 4), (2, 7, 2, 4)]
    assert parse_grid("q=3 p=3,5 n=4") == [(3, 5, 4, 4)]


def test_corrupted_cache_exit_2(capsys, tmp_path):
    code, _, _ = run(capsys, "homology", "-q", "2", "-p", "7", "-n", "3", "-k", "2", "-i", "2",
                     "--cache", str(tmp_path))
    assert code == 0
    files = sorted(tmp_path.glob("*.qhm"))
    assert files
    text = files[0].read_text().splitlines(keepends=True)
    text[2] = text[2].replace(" 1\n", " 2\n")
    files[0].write_text("".join(text))
    code, _, err = run(capsys, "homology", "-q", "2", "-p", "7", "-n", "3", "-k", "2", "-i", "2",
                       "--cache", str(tmp_path))
    assert code == 2 and "checksum" in err
    code, _, _ = run(capsys, "verify", "closed-form", "-q", "2", "-p", "7", "--nmax", "3",
                     "--cache", str(tmp_path))
    assert code == 2


def test_env_cache_and_flag_precedence(capsys, tmp_path, monkeypatch):
    env_dir, flag_dir = tmp_path / "env", tmp_path / "flag"
    monkeypatch.setenv("QHOM_CACHE", str(env_dir))
    run(capsys, "homology", "-q", "2", "-p", "5", "-n", "3", "-k", "1", "-i", "1")
    assert list(env_dir.glob("*.qhm"))
    run(capsys, "homology", "-q", "2", "-p", "3", "-n", "2", "-k", "1", "-i", "1", "--cache", str(flag_dir))
    assert list(flag_dir.glob("*.qhm")) and not list(env_dir.glob("*p3.qhm"))


def test_poset_boolean(capsys):
    code, out, _ = run(capsys, "poset", "--boolean", "4", "-p", "2", "--json")
    d = json.loads(out)
    assert code == 0 and d["nilpotency"] == 2 and d["level_sizes"] == [1, 4, 6, 4, 1]
    # the Boolean complex over GF(2) is exact
    assert all(e["dim"] == 0 for e in d["entries"])
    code, out, _ = run(capsys, "poset", "--boolean", "4", "-p", "3")
    assert code == 0 and "nilpotency exponent 3" in out


def test_poset_chain_and_m(capsys):
    code, out, _ = run(capsys, "poset", "--chain", "4", "-p", "3", "-m", "6", "--csv")
    vals = {ln.split(",")[2] for ln in out.strip().splitlines()[1:]}
    assert code == 0 and vals == {"0", "1"}
    code, _, err = run(capsys, "poset", "--boolean", "3", "-p", "5", "-m", "2")
    assert code == 3 and "not zero" in err


def test_poset_files(capsys, tmp_path):
    empty = tmp_path / "empty.poset"
    empty.write_text("")
    code, _, err = run(capsys, "poset", str(empty), "-p", "2")
    assert code == 2 and "elements" in err
    bad = tmp_path / "bad.poset"
    bad.write_text("elements 2\nrank 0 0\nrank 1 1\ncover 1 7\n")
    code, _, err = run(capsys, "poset", str(bad), "-p", "2")
    assert code == 2 and "line 4" in err
    code, _, _ = run(capsys, "poset", str(tmp_path / "missing.poset"), "-p", "2")
    assert code == 2


def test_character(capsys):
    code, out, _ = run(capsys, "character", "-q", "3", "-p", "2", "-n", "2", "-k", "1", "-i", "1",
                       "--matrix", "1 0; 0 2", "--json")
    d = json.loads(out)
    assert code == 0 and d["agree"] and d["fixed_counts"] == {"0": 1, "1": 2, "2": 1}
    code, out, _ = run(capsys, "character", "-q", "2", "-p", "7", "-n", "4", "-k", "2", "-i", "1", "--seed", "5")
    assert code == 0 and "agree" in out


def test_rank(capsys):
    code, out, _ = run(capsys, "rank", "-q", "3", "-p", "2", "-n", "2", "-k", "1", "--json")
    assert code == 0 and json.loads(out)["rank"] == 1
    code, out, _ = run(capsys, "rank", "-q", "2", "-p", "5", "-n", "3", "-k", "1", "--lower", "1")
    assert code == 0 and out.split(":")[-1].split()[0] == "7"


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "qhomology", "betti", "-q", "3", "-p", "2", "-n", "2"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and "2*" in r.stdout
