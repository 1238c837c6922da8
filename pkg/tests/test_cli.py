import json
import os

import pytest

from grpdlim.cli import main
from grpdlim.examples import write_example_corpus


@pytest.fixture(scope="module")
def corpus(tmp_path_factory):
    out = tmp_path_factory.mktemp("corpus")
    paths = write_example_corpus(str(out), seed=0)
    return {os.path.basename(p): p for p in paths}


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def test_validate_lists_declarations(corpus, capsys):
    code, payload = run_json(capsys, "validate", corpus["basics.gpd"])
    assert code == 0
    assert payload["schema"] == 1
    kinds = {d["name"]: d["kind"] for d in payload["declarations"]}
    assert kinds["C2"] == "group"
    assert kinds["PD"] == "pdiagram"


def test_output_is_byte_deterministic(corpus, capsys):
    runs = [run(capsys, "h1", corpus["demo.gpd"], "demo")[1] for _ in range(3)]
    assert runs[0] == runs[1] == runs[2]
    runs = [run(capsys, "holim", corpus["basics.gpd"], "DG")[1] for _ in range(2)]
    assert runs[0] == runs[1]


def test_print_round_trip_fixpoint(corpus, capsys, tmp_path):
    code, once = run(capsys, "print", corpus["basics.gpd"])
    assert code == 0
    rt = tmp_path / "rt.gpd"
    rt.write_text(once)
    code, twice = run(capsys, "print", str(rt))
    assert code == 0
    assert once == twice


def test_h1_demo_ground_truth(corpus, capsys):
    code, payload = run_json(capsys, "h1", corpus["demo.gpd"], "demo")
    assert code == 0
    assert payload["cocycles"] == 3
    assert payload["classes"] == 1
    assert payload["stabilizer_orders"] == [1]


def test_decompose_demo(corpus, capsys):
    code, payload = run_json(capsys, "decompose", corpus["demo.gpd"], "demo")
    assert code == 0
    assert payload["equivalence"] is True
    assert payload["blocks"] == [1]


def test_loop_of_bs3(corpus, capsys):
    code, payload = run_json(capsys, "loop", corpus["loop.gpd"], "B_S3")
    assert code == 0
    assert payload["objects"] == 6
    assert payload["iso_classes"] == 3
    assert sorted(payload["aut_orders"]) == [2, 3, 6]


def test_colim_idempotent_collapse(corpus, capsys):
    code, payload = run_json(capsys, "colim", corpus["colim.gpd"], "CD")
    assert code == 0
    assert payload["objects"] == 1
    assert payload["morphisms"] == 1


def test_compare_fubini(corpus, capsys):
    code, payload = run_json(capsys, "compare-fubini", corpus["colim.gpd"], "FD")
    assert code == 0
    assert payload["isomorphism"] is True


def test_hfp_and_pullback_commands(corpus, capsys):
    code, payload = run_json(capsys, "hfp", corpus["basics.gpd"], "SWAP")
    assert code == 0
    assert payload["holim_iso"] is True
    code, payload = run_json(capsys, "pullback", corpus["basics.gpd"], "toB", "toB")
    assert code == 0
    assert payload["holim_iso"] is True
    assert payload["models_equivalent"] is True


def test_check_equiv_and_fib(corpus, capsys):
    code, payload = run_json(capsys, "check-equiv", corpus["basics.gpd"], "collapse")
    assert code == 0
    # W is contractible, B C2 is not: the collapse cannot be full
    assert payload["equivalence"] is False
    assert payload["certificate"]["full"] is False
    code, payload = run_json(capsys, "check-equiv", corpus["basics.gpd"], "idB")
    assert code == 0
    assert payload["equivalence"] is True
    code, payload = run_json(capsys, "check-fib", corpus["basics.gpd"], "toB")
    assert code == 0
    assert payload["fibration"] is False


def test_stalk_and_check_lwe(corpus, capsys):
    code, payload = run_json(capsys, "stalk", corpus["basics.gpd"], "X", "p")
    assert code == 0
    assert payload["objects"] == 1
    code, payload = run_json(capsys, "check-lwe", corpus["basics.gpd"], "PM")
    assert code == 0
    assert payload["local_weak_equivalence"] is True


def test_dot_output(corpus, capsys):
    code, out = run(capsys, "--format", "dot", "skeleton", corpus["loop.gpd"], "B_S3")
    assert code == 0
    assert out.startswith("digraph")
    assert out == run(capsys, "--format", "dot", "skeleton", corpus["loop.gpd"], "B_S3")[1]


def test_exit_codes(corpus, capsys, tmp_path):
    bad = tmp_path / "bad.gpd"
    bad.write_text("group X {\n")
    code, out = run(capsys, "validate", str(bad))
    assert code == 2
    assert json.loads(out)["error"] == "syntax"

    unres = tmp_path / "unres.gpd"
    unres.write_text("groupoid B { delooping NOPE }\n")
    code, out = run(capsys, "validate", str(unres))
    assert code == 3

    invalid = tmp_path / "invalid.gpd"
    invalid.write_text("group G {\n  row 0 1\n  row 1 1\n}\n")
    code, out = run(capsys, "validate", str(invalid))
    assert code == 4

    code, out = run(capsys, "pullback", corpus["basics.gpd"], "toB", "idT")
    assert code == 5

    code, out = run(capsys, "--budget", "2", "holim", corpus["basics.gpd"], "DG")
    assert code == 6
    assert json.loads(out)["error"] == "budget"


def test_budget_env_fallback(corpus, capsys, monkeypatch):
    monkeypatch.setenv("GRPDLIM_BUDGET", "2")
    code, out = run(capsys, "holim", corpus["basics.gpd"], "DG")
    assert code == 6


def test_report_writes_csv_and_figures(corpus, capsys, tmp_path):
    out_dir = tmp_path / "report"
    code, payload = run_json(capsys, "report", corpus["basics.gpd"], str(out_dir))
    assert code == 0
    csv_path = out_dir / "summary.csv"
    assert csv_path.exists()
    header = csv_path.read_text().splitlines()[0]
    assert "iso_classes" in header
    assert (out_dir / "sizes.png").exists()
    assert (out_dir / "loops.png").exists()


def test_gen_corpus_round_trips(capsys, tmp_path):
    out_dir = tmp_path / "gen"
    code, payload = run_json(capsys, "gen-corpus", str(out_dir))
    assert code == 0
    for fname in payload["files"]:
        path = out_dir / fname
        code, once = run(capsys, "print", str(path))
        assert code == 0, fname
        rt = tmp_path / ("rt_" + fname)
        rt.write_text(once)
        code, twice = run(capsys, "print", str(rt))
        assert once == twice
