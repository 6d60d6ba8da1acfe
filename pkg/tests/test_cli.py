import json
import subprocess
import sys

import pytest

from p3pack.cli import EXIT_FAILS, EXIT_OK, EXIT_SKIPPED, EXIT_USAGE, main
from p3pack.graph import graph6_decode


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_solve_prism(capsys):
    code, out, _ = run(capsys, "solve", "--graph", "prism", "--format", "json")
    rows = json.loads(out)
    assert code == EXIT_OK and rows[0]["lambda"] == 2 and len(rows[0]["witness"]) == 2


def test_solve_graph6_and_file(capsys, tmp_path):
    p = tmp_path / "g.g6"
    p.write_text("C~\nbroken\n")
    code, out, err = run(capsys, "solve", "--input", str(p))
    assert code == EXIT_OK and "lambda=1" in out and ":2:" in err


def test_construct_y_of_k4s(capsys, tmp_path):
    k4 = {"graph": "K4", "at": 0}
    recipe = json.dumps({"op": "y", "args": {"gadgets": [k4, k4, k4]}})
    code, out, _ = run(capsys, "construct", "--recipe", recipe, "--format", "json")
    first, rest = out.split("\n", 1)
    meta = json.loads(rest)
    assert code == EXIT_OK and graph6_decode(first).n == 12
    assert meta["n"] == 12 and meta["cubic"] and meta["three_connected"]
    f = tmp_path / "r.json"
    f.write_text(recipe)
    code, out, _ = run(capsys, "construct", "--recipe", str(f), "--format", "graph6")
    assert out.strip() == first


def test_factor_queries(capsys):
    code, out, _ = run(capsys, "factor", "--graph", "prism", "--require", "0-3")
    assert code == EXIT_OK and json.loads(out)["factor"]
    code, out, _ = run(capsys, "factor", "--graph", "Y_base")
    assert code == EXIT_FAILS and json.loads(out)["factor"] is None
    code, out, _ = run(capsys, "factor", "--graph", "prism", "--enum-limit", "20")
    data = json.loads(out)
    assert len(data["factors"]) == 15 and data["exhausted"]


def test_usage_errors(capsys):
    assert run(capsys, "factor", "--graph", "prism", "--require", "0-4")[0] == EXIT_USAGE
    assert run(capsys, "solve")[0] == EXIT_USAGE
    assert run(capsys, "construct", "--recipe", "{bad")[0] == EXIT_USAGE
    assert run(capsys, "claims", "--graph", "K}KGGKA?O@_F", "--claims", "z2")[0] == EXIT_USAGE
    with pytest.raises(SystemExit):
        main(["claims", "--workers", "0"])


def test_budget_skip(capsys, monkeypatch):
    import p3pack.cli as cli
    from p3pack.packing import BudgetExceeded

    def exhausted(*args, **kwargs):
        raise BudgetExceeded(10, 0.001)

    monkeypatch.setattr(cli, "find_lambda_factor", exhausted)
    monkeypatch.setattr(cli, "max_lambda_packing", exhausted)
    code, _, err = run(capsys, "factor", "--graph", "prism", "--budget-ms", "1")
    assert code == EXIT_SKIPPED and "budget" in err
    assert run(capsys, "solve", "--graph", "prism")[0] == EXIT_SKIPPED


def test_long_inline_recipe(capsys):
    edges = [[i, (i + 1) % 60] for i in range(60)] + [[i, i + 30] for i in range(30)]
    recipe = json.dumps({"op": "edges", "args": {"n": 60, "edges": edges}})
    code, out, _ = run(capsys, "solve", "--recipe", recipe)
    assert code == EXIT_OK and "lambda=20" in out


def test_gen_and_claims_round_trip(capsys, tmp_path):
    corpus = tmp_path / "c.g6"
    code, _, err = run(capsys, "gen", "--n-max", "8", "--three-connected", "--out", str(corpus))
    assert code == EXIT_OK and "7 graphs" in err
    out_file = tmp_path / "m.json"
    code, _, _ = run(capsys, "claims", "--input", str(corpus), "--claims", "all", "--format", "json",
                     "--out", str(out_file))
    data = json.loads(out_file.read_text())
    assert code == EXIT_OK and data["summary"]["graphs"] == 7 and data["counterexamples"] == []
    assert data["summary"]["verdicts"]["fails"] == 0
    code, out, _ = run(capsys, "report", str(out_file), str(out_file))
    assert code == EXIT_OK and "graphs: 14" in out


def test_claims_default_corpus_table(capsys):
    code, out, _ = run(capsys, "claims", "--n-max", "8", "--claims", "z,f")
    assert code == EXIT_OK and "totals:" in out and "FAIL" not in out


def test_report_flags_counterexamples(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"summary": {"graphs": 1, "verdicts": {"fails": 1}}, "counterexamples": [{}]}))
    code, out, _ = run(capsys, "report", str(p))
    assert code == EXIT_FAILS and "counterexamples: 1" in out


def test_lemmas_command(capsys):
    code, out, _ = run(capsys, "lemmas", "--suite", "theta,y-profile")
    assert code == EXIT_OK and out.count("pass") == 2
    assert run(capsys, "lemmas", "--suite", "nope")[0] == EXIT_USAGE


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "p3pack.cli", "solve", "--graph", "K4"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "lambda=1" in proc.stdout
