import json
import re

import pytest
from hypothesis import given, strategies as st

from klschur.cli import main, record_from_json, record_to_json

from strategies import polys


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_decomp_json_example(capsys):
    code, out, _ = run(capsys, "decomp", "--e", "2", "--s", "0", "--n", "2", "--format", "json")
    assert code == 0
    recs = json.loads(out)
    labels = [lab for r in recs for lab in r["labels"]]
    assert sorted(map(str, labels)) == sorted(map(str, [[[2]], [[1, 1]]]))
    assert recs == [{"e": 2, "s": [0], "block": "0:1,1:1", "m": [2],
                     "labels": [[[2]], [[1, 1]]], "D": [["1", "0"], ["q", "1"]],
                     "C": [["1+q^2", "q"], ["q", "1"]]}]


def test_decomp_text_example(capsys):
    code, out, _ = run(capsys, "decomp", "--e", "2", "--s", "0,0", "--block", "0:1",
                       "--format", "text")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "e=2 s=0,0 block=0:1 m=2,2"
    assert "D:" in lines and "C:" in lines
    table = lines[lines.index("D:") + 1:lines.index("C:")]
    assert len(table) == 3
    starts = [[m.start() for m in re.finditer(r"\S+", row)] for row in table]
    assert starts[1] == starts[2] == [2] + starts[0]


def test_decomp_csv(capsys):
    code, out, _ = run(capsys, "decomp", "--e", "2", "--s", "0", "--n", "2", "--format", "csv")
    assert code == 0
    rows = out.splitlines()
    assert rows[0] == "e,s,block,m,matrix,row,col,entry"
    assert len(rows) == 1 + 2 * 4


def test_bad_m_is_a_usage_error(capsys):
    code, _, err = run(capsys, "decomp", "--e", "2", "--s", "0", "--n", "2", "--m", "3")
    assert code == 2
    assert "mod 2" in err


@pytest.mark.parametrize("argv", [
    ["decomp", "--e", "1", "--s", "0", "--n", "2"],
    ["decomp", "--e", "2", "--s", "0", "--n", "2", "--block", "0:1"],
    ["decomp", "--e", "2", "--s", "", "--n", "2"],
    ["decomp", "--e", "2", "--s", "0", "--block", "1:1"],
    ["decomp", "--e", "2", "--s", "x", "--n", "1"],
    ["kl", "--rank", "3", "--x", "1,9", "--y", "1", "--family", "h"],
    ["kl", "--rank", "3", "--x", "1", "--y", "1,2", "--family", "n", "--f", "1"],
    ["kl", "--rank", "3", "--x", "", "--y", "1", "--family", "n", "--f", "0,1,2"],
    ["nonsense"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err


@pytest.mark.parametrize("argv,want", [
    (["--rank", "2", "--x", "", "--y", "1", "--family", "h"], "q"),
    (["--rank", "3", "--x", "1", "--y", "1", "--family", "hinv"], "1"),
    (["--rank", "3", "--x", "", "--y", "2", "--family", "n", "--f", "1"], "q"),
    (["--rank", "2", "--x", "1", "--y", "", "--family", "hinv"], "q"),
    (["--rank", "3", "--x", "2", "--y", "", "--family", "ninv", "--f", "1"], "q"),
])
def test_kl_examples(capsys, argv, want):
    code, out, _ = run(capsys, "kl", *argv)
    assert code == 0 and out.strip() == want


def test_workers_do_not_change_output(capsys, tmp_path):
    outs = []
    for w in ("1", "3"):
        path = tmp_path / ("out%s.json" % w)
        code, _, _ = run(capsys, "decomp", "--e", "3", "--s", "0,1", "--n", "3",
                         "--workers", w, "--output", str(path))
        assert code == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_cache_dir_persists(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("KL_CACHE_DIR", str(tmp_path))
    args = ("decomp", "--e", "2", "--s", "0", "--n", "4", "--workers", "2")
    code, first, _ = run(capsys, *args)
    assert code == 0
    files = sorted(tmp_path.iterdir())
    assert files
    sizes = [f.stat().st_size for f in files]
    code, second, _ = run(capsys, *args)
    assert code == 0 and first == second
    for f in files:
        for line in f.read_text().splitlines():
            a, b, p = line.split("|")
            assert a.startswith("[") and b.startswith("[")
    assert [f.stat().st_size for f in files] >= sizes


def test_selftest_small(capsys):
    code, out, _ = run(capsys, "selftest", "--depth", "small")
    report = json.loads(out)
    assert code == 0 and report["ok"]
    names = {s["name"] for s in report["suites"]}
    assert {"degree_parity", "parabolic_inverse", "descent_shift", "orthogonality", "kl_oracle"} <= names
    assert all(s["counterexamples"] == [] for s in report["suites"])


def test_json_round_trip_of_real_records(capsys):
    code, out, _ = run(capsys, "decomp", "--e", "3", "--s", "0,2", "--n", "3")
    for rec in json.loads(out):
        assert record_from_json(record_to_json(rec)) == rec


@given(st.lists(st.lists(polys, min_size=2, max_size=2), min_size=2, max_size=2))
def test_json_round_trip_property(rows):
    rec = {"e": 3, "s": [0, 2], "block": "0:1", "m": [1, 3], "labels": [[[1], []], [[], [1]]],
           "D": [[str(p) for p in r] for r in rows], "C": [[str(p) for p in r] for r in rows]}
    back = record_from_json(record_to_json(rec))
    assert back == rec
    assert all(isinstance(p, str) for r in back["D"] for p in r)
