import json
import subprocess
import sys

import pytest

from oospc import pipelines as P
from oospc.cli import run
from oospc.design import dumps, read_design


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_bound(capsys):
    code, out, _ = call(capsys, "bound", "6", "6")
    assert code == 0
    assert json.loads(out) == {"johnson": 49, "improved": 48, "rule": "lemma-2.4"}


def test_inversive_then_verify(capsys, tmp_path):
    f = tmp_path / "d.json"
    code, out, _ = call(capsys, "construct", "inversive", "--p", "3", "--out", str(f))
    assert code == 0 and json.loads(out)["valid"]
    code, out, _ = call(capsys, "verify", str(f))
    rep = json.loads(out)
    assert code == 0 and rep["base_block_count"] == 2


def test_verify_builtin_optimal(capsys, tmp_path):
    f = tmp_path / "ex.json"
    assert call(capsys, "data", "ex-2.3", "--out", str(f))[0] == 0
    code, out, _ = call(capsys, "verify", str(f))
    assert code == 0 and json.loads(out)["optimal"]["meets_bound"]


def test_verify_failure_exit_2(capsys, tmp_path):
    f = tmp_path / "bad.json"
    f.write_text(json.dumps({"m": 4, "n": 4, "kind": "packing", "t": 3, "k": [4],
                             "base_blocks": [[[0, 0], [0, 1], [1, 0], [1, 1]],
                                             [[0, 1], [0, 2], [1, 1], [1, 2]]]}))
    assert call(capsys, "verify", str(f))[0] == 2


@pytest.mark.parametrize("argv", [["bound", "1", "2"], ["verify", "/nonexistent.json"],
                                  ["construct", "gstar-cols"], ["bound", "x", "2"],
                                  ["construct", "fill", "--in", "a.json"],
                                  ["data", "nope"], ["--jobs", "0", "bound", "6", "6"]])
def test_invalid_input_exit_1(capsys, argv):
    assert call(capsys, *argv)[0] == 1


def test_parse_error_exit_1(capsys, tmp_path):
    f = tmp_path / "x.json"
    f.write_text('{"m": 2}')
    code, _, err = call(capsys, "verify", str(f))
    assert code == 1 and "/n" in err


def test_search_outcomes(capsys):
    code, out, err = call(capsys, "search", "--m", "1", "--n", "9", "--target", "2")
    assert code == 3 and json.loads(out)["search"]["exhausted"]
    code, out, _ = call(capsys, "search", "--m", "2", "--n", "8", "--target", "8",
                        "--max-nodes", "2")
    assert code == 3 and not json.loads(out)["search"]["exhausted"]
    code, out, _ = call(capsys, "search", "--m", "2", "--n", "8", "--target", "8")
    assert code == 0 and json.loads(out)["report"]["valid"]


def test_export_matrix(capsys, tmp_path):
    f = tmp_path / "d.json"
    call(capsys, "construct", "inversive", "--p", "3", "--out", str(f))
    code, out, _ = call(capsys, "export-matrix", str(f))
    chunks = out.strip("\n").split("\n\n")
    assert code == 0 and len(chunks) == 2
    assert all(c.count("1") == 4 and len(c.split("\n")) == 3 for c in chunks)


def test_file_pipeline_matches_library(capsys, tmp_path):
    sqs = tmp_path / "sqs4.json"
    sqs.write_text(dumps(P.trivial_sqs4()))
    g28, g, sub, out = (tmp_path / x for x in ("g28.json", "g.json", "sub.json", "p.json"))
    assert call(capsys, "data", "ex-3.5-g28", "--out", str(g28))[0] == 0
    assert call(capsys, "construct", "csqs-g-product", "--in", str(sqs), str(g28),
                "--out", str(g))[0] == 0
    assert call(capsys, "search", "--m", "2", "--n", "8", "--target", "8",
                "--out", str(sub))[0] == 0
    assert call(capsys, "construct", "fill", "--in", str(g), str(sub), "--out", str(out))[0] == 0
    lib = P.pqs32_from_sqs4()
    assert out.read_text() == dumps(lib.stages["packing"])
    assert g.read_text() == dumps(lib.stages["g-design"])


def test_cyclic_gstar_via_files(capsys, tmp_path):
    sqs, out = tmp_path / "sqs.json", tmp_path / "out.json"
    assert call(capsys, "search", "--m", "1", "--n", "10", "--kind", "steiner", "--non-strict",
                "--s-cyclic", "--target", "3", "--out", str(sqs))[0] == 0
    code, rep, _ = call(capsys, "construct", "cyclic-gstar", "--in", str(sqs), "--groups", "5",
                        "--g", "3", "--out", str(out))
    assert code == 0 and json.loads(rep)["base_block_count"] == 33


def test_gstar_and_fan_constructs(capsys, tmp_path):
    ex = tmp_path / "ex31.json"
    call(capsys, "data", "ex-3.1", "--out", str(ex))
    code, rep, _ = call(capsys, "construct", "gstar-rows", "--in", str(ex), "--g", "3",
                        "--out", str(tmp_path / "r.json"))
    assert code == 0 and json.loads(rep)["base_block_count"] == 138
    fg, g28 = tmp_path / "fg.json", tmp_path / "g28.json"
    assert call(capsys, "construct", "g-to-1fg", "--in", str(ex), "--out", str(fg))[0] == 0
    call(capsys, "data", "ex-3.5-g28", "--out", str(g28))
    code, rep, _ = call(capsys, "construct", "fan-product", "--in", str(fg), str(g28),
                        "--g", "8", "--rows", "--out", str(tmp_path / "fp.json"))
    assert code == 0 and json.loads(rep)["base_block_count"] == 1008
    d = read_design(tmp_path / "fp.json")
    assert (d.m, d.n) == (80, 2)


def test_semicyclic_h4_to_stdout(capsys):
    code, out, _ = call(capsys, "construct", "semicyclic-h4", "--n", "3")
    assert code == 0 and len(json.loads(out)["base_blocks"]) == 9


def test_rosqs_and_leave(capsys, tmp_path):
    ro, inv = tmp_path / "ro.json", tmp_path / "inv.json"
    assert call(capsys, "search", "--m", "1", "--n", "7", "--kind", "rosqs", "--target", "2",
                "--out", str(ro))[0] == 0
    assert call(capsys, "construct", "rosqs-to-1fg", "--in", str(ro))[0] == 0
    call(capsys, "construct", "inversive", "--p", "3", "--out", str(inv))
    # leave extraction needs the packing view; an OOSPC file is rejected
    assert call(capsys, "construct", "leave-to-1fg", "--in", str(inv))[0] == 1


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "oospc", "bound", "10", "10"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["johnson"] == 404
