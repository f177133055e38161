"""CLI subcommands, exit codes and deterministic output."""

import io
import json

import numpy as np
import pytest

from qng.cli import run
from qng.graphs import graph6_encode, path_graph
from qng.spectra import save_matrix


def invoke(argv):
    buf = io.StringIO()
    code = run(argv, out=buf)
    return code, buf.getvalue()


def test_analyze_p4_exception():
    code, out = invoke(["analyze", "--graph6", graph6_encode(path_graph(4))])
    assert code == 0
    payload = json.loads(out)
    assert payload["verdict"]["status"] == "KnownException"
    assert payload["verdict"]["sum_bound"] == 8


def test_analyze_requires_input():
    code, _ = invoke(["analyze"])
    assert code == 2


def test_analyze_rejects_bad_graph6():
    code, _ = invoke(["analyze", "--graph6", "\x01bad"])
    assert code == 2


def test_analyze_file_input(tmp_path):
    f = tmp_path / "graphs.g6"
    f.write_text("C~\nCF\n")
    code, out = invoke(["analyze", "--file", str(f)])
    assert code == 0
    assert len(json.loads(out)) == 2


def test_certify_tree_complement():
    code, out = invoke(["certify", "tree-complement",
                        "--graph6", graph6_encode(path_graph(6))])
    assert code == 0
    payload = json.loads(out)
    assert payload["q"] == 2
    assert payload["certificate"]["verified"]


def test_certify_tree_complement_closed_form_3():
    code, out = invoke(["certify", "tree-complement",
                        "--graph6", graph6_encode(path_graph(5))])
    assert code == 0
    payload = json.loads(out)
    assert payload["q"] == 3 and payload["certificate"] is None


def test_certify_tmn():
    code, out = invoke(["certify", "tmn", "--m", "4", "--n", "2"])
    assert code == 0
    payload = json.loads(out)
    assert payload["property_level"] == "SSP" and payload["verified"]


def test_certify_tmn_missing_args():
    code, _ = invoke(["certify", "tmn", "--m", "4"])
    assert code == 2


def test_ssp_and_lift_roundtrip(tmp_path):
    mfile = tmp_path / "diag.mat"
    save_matrix(mfile, np.diag([0.0, 2.0]))
    code, out = invoke(["ssp", "--matrix", str(mfile)])
    assert code == 0 and json.loads(out)["holds"]

    code, out = invoke(["lift", "--matrix", str(mfile), "--graph6", "A_"])
    assert code == 0
    assert "matrix" in json.loads(out)

    bad = tmp_path / "eye.mat"
    save_matrix(bad, np.eye(2))
    code, out = invoke(["ssp", "--matrix", str(bad)])
    assert code == 1
    payload = json.loads(out)
    assert not payload["holds"] and "witness" in payload


def test_survey_order7_json_and_csv():
    code, out = invoke(["survey", "--order", "7"])
    assert code == 0
    payload = json.loads(out)
    assert ["pairs_after_cycle_filter", 24] in payload["stage_counts"]
    code, out = invoke(["--output", "csv", "survey", "--order", "7"])
    assert code == 0
    assert out.startswith("graph6,status,rule")


def test_bank_commands():
    code, out = invoke(["bank", "list"])
    assert code == 0
    names = json.loads(out)
    assert "H7_complement" in names
    code, out = invoke(["bank", "verify"])
    assert code == 0
    payload = json.loads(out)
    assert payload["failures"] == {}
    assert set(payload["entries"]) == set(names)


def test_output_is_deterministic():
    argv = ["--seed", "3", "certify", "tmn", "--m", "4", "--n", "2"]
    assert invoke(argv) == invoke(argv)


def test_tolerance_and_thread_validation():
    code, _ = invoke(["--eig-tol", "-1", "bank", "list"])
    assert code == 2
    code, _ = invoke(["--threads", "0", "bank", "list"])
    assert code == 2


def test_unknown_subcommand_is_usage_error():
    code, _ = invoke(["frobnicate"])
    assert code == 2
