import json
import subprocess
import sys

import pytest

from hlmackey import __version__
from hlmackey.cache import Cache, CacheCorruption, digest
from hlmackey.cli import recompute, run


@pytest.fixture
def cache_dir(tmp_path, monkeypatch):
    d = tmp_path / "cache"
    monkeypatch.setenv("HLMACKEY_CACHE_DIR", str(d))
    return d


def _run(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


# -- cache ------------------------------------------------------------------------

def test_cache_roundtrip(tmp_path):
    c = Cache(tmp_path)
    key = c.make_key("demo", {"q": 3})
    assert key["version"] == __version__
    assert c.get(key) is None
    c.put(key, {"x": "1/3"})
    assert c.get(key) == {"x": "1/3"}
    assert c.path_for(key).name == digest(key) + ".json"
    assert not list(tmp_path.glob(".tmp-*"))


def test_cache_detects_corruption(tmp_path):
    c = Cache(tmp_path)
    key = c.make_key("demo", {"q": 3})
    p = c.put(key, {"x": "1/3"})
    doc = json.loads(p.read_text())
    doc["payload"]["x"] = "1/4"
    p.write_text(json.dumps(doc))
    with pytest.raises(CacheCorruption):
        c.get(key)


def test_cache_verify_finds_mismatch(tmp_path):
    c = Cache(tmp_path)
    for i in range(5):
        c.put(c.make_key("k", {"i": i}), {"v": i})
    rep = c.verify(lambda kind, p: {"v": p["i"]}, fraction=1.0, seed=0)
    assert rep["checked"] == 5 and not rep["mismatches"]
    rep = c.verify(lambda kind, p: {"v": -1}, fraction=1.0, seed=0)
    assert len(rep["mismatches"]) == 5


# -- CLI ------------------------------------------------------------------------------

def test_orbits_command(capsys, cache_dir):
    code, doc = _run(capsys, "orbits", "--kind", "gl", "--q", "3", "--n", "1")
    assert code == 0 and doc["result"]["count"] == 3
    code, doc = _run(capsys, "orbits", "--kind", "u", "--q", "3", "--n", "1", "--mode", "exhaustive")
    assert code == 0 and sum(o["size"] for o in doc["result"]["orbits"]) == 81


def test_infeasible_exit_code(capsys, cache_dir):
    code, doc = _run(capsys, "orbits", "--kind", "u", "--q", "3", "--n", "3", "--mode", "exhaustive")
    assert code == 2 and "exceeds" in doc["message"]


def test_malformed_rational(capsys, cache_dir):
    code, doc = _run(capsys, "mix", "--q", "3", "--s", "one/third", "--levels", "1")
    assert code == 4


def test_even_q_rejected_for_unitary(capsys, cache_dir):
    code, _ = _run(capsys, "mix", "--q", "2", "--s", "0", "--levels", "1")
    assert code == 4


def test_mackey_command(capsys, cache_dir):
    code, doc = _run(capsys, "mackey", "--setting", "gl", "--q", "2", "--n", "3", "--l", "1,2", "--lprime", "2,1")
    assert code == 0 and doc["result"]["equal"] is True


def test_mix_command(capsys, cache_dir):
    code, doc = _run(capsys, "mix", "--q", "3", "--s", "1/4", "--levels", "2")
    assert code == 0
    row = doc["result"]["sweep"][0]
    assert row["cone"]["ok"] and row["closed_form"]["ok"]
    assert row["values"][1]["values"]["nilp:[1,1]"] == "5/24"


def test_graph_command(capsys, cache_dir):
    code, doc = _run(capsys, "graph", "--which", "glb0", "--q", "3", "--levels", "4", "--gauge", "yhl")
    assert code == 0 and doc["result"]["gauge"]["formula_match"]


def test_harmonic_failure_exit_code(capsys, cache_dir, tmp_path):
    bad = {"schema": "functional/1", "side": "A", "q": 3, "N": 1,
           "levels": [{"n": 0, "values": {"nilp:[]": "1"}}, {"n": 1, "values": {"nilp:[1]": "2"}}]}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    code, doc = _run(capsys, "harmonic", "--phi", str(path), "--cone", "F0", "--q", "3", "--levels", "1")
    assert code == 3 and not doc["result"]["ok"]


def test_missing_file_is_io_error(capsys, cache_dir, tmp_path):
    code, _ = _run(capsys, "harmonic", "--phi", str(tmp_path / "nope.json"), "--cone", "F0", "--q", "3",
                   "--levels", "1")
    assert code == 4


def test_determinism_and_cache_hit(capsys, cache_dir):
    argv = ["axioms", "--which", "bialgebra", "--q", "2", "--maxdeg", "2"]
    _, a = _run(capsys, *argv)
    _, b = _run(capsys, *argv)
    _, c = _run(capsys, "--no-cache", *argv)
    for d in (a, b, c):
        d.pop("generated")
    assert a == b == c
    assert len(list(cache_dir.glob("*.json"))) == 1


def test_verify_cache(capsys, cache_dir):
    _run(capsys, "orbits", "--kind", "gl", "--q", "2", "--n", "2")
    _run(capsys, "graph", "--which", "yhl", "--q", "3", "--levels", "3")
    code, doc = _run(capsys, "--verify-cache", "--seed", "0")
    assert code == 0 and doc["checked"] >= 1 and not doc["mismatches"]
    # tamper with a payload: checksum catches it
    p = next(cache_dir.glob("*.json"))
    entry = json.loads(p.read_text())
    entry["payload"]["tampered"] = True
    p.write_text(json.dumps(entry))
    code, doc = _run(capsys, "--verify-cache")
    assert code == 4 and doc["corrupt"]


def test_recompute_matches_cached_payload(capsys, cache_dir):
    _run(capsys, "orbits", "--kind", "gl", "--q", "2", "--n", "2")
    entry = json.loads(next(cache_dir.glob("*.json")).read_text())
    assert recompute(entry["key"]["kind"], entry["key"]["params"]) == entry["payload"]


def test_console_entry_point(cache_dir):
    out = subprocess.run([sys.executable, "-m", "hlmackey.cli", "orbits", "--kind", "gl", "--q", "2", "--n", "1"],
                         capture_output=True, text=True, check=False)
    assert out.returncode == 0
    assert json.loads(out.stdout)["result"]["count"] == 2
