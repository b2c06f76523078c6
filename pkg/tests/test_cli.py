"""Command line front end: output shapes, exit codes, JSON contracts."""

import json
import subprocess
import sys

from edgeiso.cli import (EXIT_CAPACITY, EXIT_CHECK_FAILED, EXIT_OK,
                         EXIT_USAGE, main)

PETERSEN_DELTA_TEXT = "delta: (0,1,1,1,2,1,2,2,2,3)"


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run_cli(capsys, *argv)
    return code, json.loads(out), err


# ------------------------------------------------------------
# delta
# ------------------------------------------------------------

def test_delta_text(capsys):
    code, out, _ = run_cli(capsys, "delta", "petersen")
    assert code == EXIT_OK
    assert PETERSEN_DELTA_TEXT in out
    assert "segments: 6" in out
    assert "nested solutions: yes" in out


def test_delta_json_round_trip(capsys):
    code, payload, _ = run_json(capsys, "delta", "petersen", "--json")
    assert code == EXIT_OK
    assert payload["delta"] == [0, 1, 1, 1, 2, 1, 2, 2, 2, 3]
    assert payload["starts"] == [0, 1, 1, 1, 2, 2]
    assert payload["symmetric"] is True
    assert payload["regular"] is True
    assert payload["crosscheck_consistent"] is True
    assert json.loads(json.dumps(payload)) == payload


def test_delta_without_ns_mentions_it(capsys):
    code, out, _ = run_cli(capsys, "delta", "union(cycle(4),complete(3))")
    assert code == EXIT_OK
    assert "nested solutions: no" in out
    assert "outside the nested-solution setting" in out


# ------------------------------------------------------------
# solve
# ------------------------------------------------------------

def test_solve_table(capsys):
    code, out, _ = run_cli(capsys, "solve", "petersen")
    assert code == EXIT_OK
    assert "induced" in out and "boundary" in out


def test_solve_csv(capsys):
    code, out, _ = run_cli(capsys, "solve", "complete(3)", "--csv")
    assert code == EXIT_OK
    lines = out.strip().split("\n")
    assert lines[0] == "m,induced,boundary,witness"
    assert lines[1:] == ["0,0,0,0x0", "1,0,2,0x1", "2,1,2,0x3", "3,3,0,0x7"]


def test_solve_json(capsys):
    code, payload, _ = run_json(capsys, "solve", "complete(3)", "--json")
    assert code == EXIT_OK
    assert payload["induced"] == [0, 0, 1, 3]
    assert payload["boundary"] == [0, 2, 2, 0]
    assert payload["induced_witness"] == ["0x0", "0x1", "0x3", "0x7"]


# ------------------------------------------------------------
# ns / orders
# ------------------------------------------------------------

def test_ns_found(capsys):
    code, out, _ = run_cli(capsys, "ns", "petersen")
    assert code == EXIT_OK
    assert "nested solutions found" in out
    assert "every prefix optimal: True" in out


def test_ns_absent_is_a_finding_not_a_failure(capsys):
    code, out, _ = run_cli(capsys, "ns", "union(cycle(4),complete(3))")
    assert code == EXIT_OK
    assert "no nested solutions" in out
    assert "deepest optimal prefix: 3 of 7" in out


def test_ns_json(capsys):
    code, payload, _ = run_json(capsys, "ns", "path(3)", "--json")
    assert code == EXIT_OK
    assert payload["has_ns"] is True
    assert payload["order"] == [0, 1, 2]
    assert payload["verified"] is True


def test_orders(capsys):
    code, out, _ = run_cli(capsys, "orders", "path(3)")
    assert code == EXIT_OK
    assert "4 optimal orders" in out
    code, payload, _ = run_json(capsys, "orders", "path(3)", "--json")
    assert payload["total"] == 4
    assert payload["listed"] == [[0, 1, 2], [1, 0, 2], [1, 2, 0], [2, 1, 0]]


def test_orders_cap(capsys):
    code, payload, _ = run_json(capsys, "orders", "complete(4)", "--cap", "2", "--json")
    assert code == EXIT_OK
    assert payload["total"] == 24 and len(payload["listed"]) == 2


# ------------------------------------------------------------
# uniqueness / lex2 / power-check
# ------------------------------------------------------------

def test_uniqueness_dense(capsys):
    code, out, _ = run_cli(capsys, "uniqueness", "complete(3)")
    assert code == EXIT_OK
    assert "exactly lex and colex: True" in out


def test_uniqueness_exploratory(capsys):
    code, out, _ = run_cli(capsys, "uniqueness", "path(3)")
    assert code == EXIT_OK
    assert "not delta-dense" in out
    assert "exploratory" in out


def test_uniqueness_json(capsys):
    code, payload, _ = run_json(capsys, "uniqueness", "z(2)", "--json")
    assert code == EXIT_OK
    assert payload["delta_dense"] is True
    assert payload["total_chains"] == 2
    assert payload["exactly_lex_and_colex"] is True


def test_lex2_pass_and_fail(capsys):
    code, out, _ = run_cli(capsys, "lex2", "complete(4)")
    assert code == EXIT_OK
    assert "optimal at all sizes" in out
    code, out, _ = run_cli(capsys, "lex2", "path(3)")
    assert code == EXIT_CHECK_FAILED
    assert "first failure: size 4" in out
    assert "witness heights 2,2,0" in out


def test_lex2_requires_ns(capsys):
    code, _, err = run_cli(capsys, "lex2", "union(cycle(4),complete(3))")
    assert code == EXIT_USAGE
    assert "no nested solutions" in err


def test_power_check(capsys):
    code, out, _ = run_cli(capsys, "power-check", "complete(2)", "--d", "3")
    assert code == EXIT_OK
    assert "ok" in out
    code, out, _ = run_cli(capsys, "power-check", "path(3)", "--d", "2")
    assert code == EXIT_CHECK_FAILED
    assert "first failure: size 4" in out


def test_power_check_sampled(capsys):
    code, payload, _ = run_json(capsys, "power-check", "complete(3)", "--d", "2",
                                "--mode", "sampled", "--samples", "4",
                                "--seed", "7", "--json")
    assert code == EXIT_OK
    assert payload["evidence_only"] is True


# ------------------------------------------------------------
# casebook
# ------------------------------------------------------------

def test_casebook_list(capsys):
    code, out, _ = run_cli(capsys, "casebook", "--list")
    assert code == EXIT_OK
    lines = [line for line in out.strip().split("\n") if line]
    assert len(lines) == 16
    assert lines[0].startswith("delta-complete")


def test_casebook_single_claim(capsys):
    code, out, _ = run_cli(capsys, "casebook", "--claim", "delta-petersen")
    assert code == EXIT_OK
    assert "delta-petersen" in out
    assert "1 claims: 1 pass" in out


def test_casebook_unknown_claim(capsys):
    code, _, err = run_cli(capsys, "casebook", "--claim", "delta-petersen",
                           "--claim", "bogus")
    assert code == EXIT_USAGE
    assert "bogus" in err


def test_casebook_budget_skip(capsys):
    code, payload, _ = run_json(capsys, "casebook", "--max-seconds", "0", "--json")
    assert code == EXIT_OK  # skipped is not failed
    assert all(r["status"] == "skipped" for r in payload["results"])


def test_casebook_json(capsys):
    code, payload, _ = run_json(capsys, "casebook", "--claim", "z-construction",
                                "--json")
    assert code == EXIT_OK
    row = payload["results"][0]
    assert row["id"] == "z-construction"
    assert row["status"] == "pass"
    assert row["artifacts"]["matching_reading"] == "join_twice"


def test_casebook_failure_exit_code(capsys, monkeypatch):
    import edgeiso.graphs
    monkeypatch.setattr(edgeiso.graphs, "graph_z",
                        lambda k: edgeiso.graphs.complete(17))
    code, out, _ = run_cli(capsys, "casebook", "--claim", "z2-counterexample")
    assert code == EXIT_CHECK_FAILED
    assert "failed_step" in out


# ------------------------------------------------------------
# errors and exit codes
# ------------------------------------------------------------

def test_usage_errors(capsys):
    assert run_cli(capsys, "delta", "frob(3)")[0] == EXIT_USAGE
    assert run_cli(capsys, "delta", "complete(2,3)")[0] == EXIT_USAGE
    assert run_cli(capsys)[0] == EXIT_USAGE
    assert run_cli(capsys, "no-such-command")[0] == EXIT_USAGE
    assert run_cli(capsys, "power-check", "complete(2)")[0] == EXIT_USAGE


def test_capacity_exit_code(capsys):
    code, _, err = run_cli(capsys, "delta", "empty(29)")
    assert code == EXIT_CAPACITY
    assert "29" in err


def test_help_exits_ok(capsys):
    assert run_cli(capsys, "--help")[0] == EXIT_OK


def test_file_input(tmp_path, capsys):
    target = tmp_path / "triangle.txt"
    target.write_text("n 3\n0 1\n1 2\n0 2\n")
    code, out, _ = run_cli(capsys, "delta", str(target))
    assert code == EXIT_OK
    assert "delta: (0,1,2)" in out
    assert "triangle.txt" in out


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "edgeiso.cli", "delta", "complete(4)"],
        capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0
    assert "delta: (0,1,2,3)" in proc.stdout
