"""The claim catalog: integrity, the runner, and fault injection.

The fault-injection tests patch library functions to return corrupted
results and assert that the recorded pipelines actually notice.  A
casebook that cannot fail is not evidence of anything.
"""

import pytest

import edgeiso.delta
import edgeiso.graphs
from edgeiso.casebook import (CLAIMS, Z2_REFERENCE_DELTA, CasebookResult,
                              claim_ids, run_casebook)
from edgeiso.delta import SymmetryCheck
from edgeiso.errors import InputError
from edgeiso.graphs import Graph, graph_y, join

ALL_IDS = [
    "delta-complete", "delta-trees", "delta-petersen", "segment-structure",
    "dense-classification", "regular-identity", "ns-gap-bound",
    "diagram-weight-formula", "compressed-dp-exact", "uniqueness-complete",
    "uniqueness-z2", "z2-counterexample", "z-construction",
    "symmetry-regularity", "power-lex-spot", "power-lex-cube27",
]


def test_claim_catalog_integrity():
    assert claim_ids() == ALL_IDS
    assert len(set(claim_ids())) == len(CLAIMS)
    for claim in CLAIMS:
        assert claim.statement.strip()
        assert claim.estimated_seconds >= 1
        assert callable(claim.run)


def test_reference_delta_shape():
    assert len(Z2_REFERENCE_DELTA) == 17
    assert sum(Z2_REFERENCE_DELTA) == 111


def test_result_to_dict():
    result = CasebookResult("probe", "statement", "pass", {"k": 1}, 0.12345)
    assert result.to_dict() == {
        "id": "probe", "statement": "statement", "status": "pass",
        "artifacts": {"k": 1}, "elapsed": 0.123}


def test_unknown_ids_rejected():
    with pytest.raises(InputError):
        run_casebook(["delta-petersen", "no-such-claim"])


def test_selected_claims_run_in_given_order():
    results = run_casebook(["z-construction", "delta-petersen"])
    assert [r.id for r in results] == ["z-construction", "delta-petersen"]
    assert all(r.status == "pass" for r in results)


def test_budget_skips_are_reported_not_dropped():
    results = run_casebook(max_seconds=0)
    assert [r.id for r in results] == ALL_IDS
    assert all(r.status == "skipped" for r in results)
    assert all("budget" in r.artifacts["reason"] for r in results)


def test_default_budget_skips_only_the_cube():
    results = run_casebook()
    status = {r.id: r.status for r in results}
    assert status["power-lex-cube27"] == "skipped"
    assert all(s == "pass" for i, s in status.items() if i != "power-lex-cube27")


def test_fast_claims_all_pass():
    ids = [i for i in ALL_IDS if i != "power-lex-cube27"]
    results = run_casebook(ids, max_seconds=600)
    assert all(r.status == "pass" for r in results)
    assert all(r.elapsed >= 0 for r in results)


def test_z2_artifacts():
    result = run_casebook(["z2-counterexample"], max_seconds=600)[0]
    art = result.artifacts
    assert result.status == "pass"
    assert (art["vertices"], art["edges"]) == (17, 111)
    assert art["has_ns"] is True
    assert tuple(art["delta"]) == Z2_REFERENCE_DELTA
    assert art["symmetric"] is False and art["first_asymmetric"] == 9
    assert art["regular"] is False
    assert art["square_sizes_checked"] == 289 and art["square_all_optimal"]


def test_z_construction_artifacts():
    result = run_casebook(["z-construction"], max_seconds=600)[0]
    art = result.artifacts
    assert result.status == "pass"
    assert art["join_once_vertices"] == 11
    assert art["join_twice_vertices"] == 17
    assert art["matching_reading"] == "join_twice"


# ------------------------------------------------------------
# Fault injection
# ------------------------------------------------------------

def _z2_with_wrong_core():
    """Same 17 vertices and 111 edges, but the 5-vertex part is a
    4-path plus an isolated vertex instead of a 3-path and a 2-path."""
    core = Graph(5, [(0, 1), (1, 2), (2, 3)])
    g = core
    for _ in range(2):
        g = join(g, graph_y())
    return Graph(g.n, g.edges(), name="Z(2)")


def test_pipeline_detects_wrong_construction(monkeypatch):
    monkeypatch.setattr(edgeiso.graphs, "graph_z", lambda k: _z2_with_wrong_core())
    result = run_casebook(["z2-counterexample"], max_seconds=600)[0]
    assert result.status == "fail"
    assert result.artifacts["failed_step"] == "delta-match"
    assert tuple(result.artifacts["delta"]) != Z2_REFERENCE_DELTA


def test_pipeline_detects_wrong_size(monkeypatch):
    monkeypatch.setattr(edgeiso.graphs, "graph_z",
                        lambda k: edgeiso.graphs.complete(17))
    result = run_casebook(["z2-counterexample"], max_seconds=600)[0]
    assert result.status == "fail"
    assert result.artifacts["failed_step"] == "construction"


def test_pipeline_detects_corrupted_symmetry_check(monkeypatch):
    real = edgeiso.delta.is_symmetric

    def inverted(d):
        check = real(d)
        return SymmetryCheck(not check.ok, check.first_asymmetric)

    monkeypatch.setattr(edgeiso.delta, "is_symmetric", inverted)
    result = run_casebook(["z2-counterexample"], max_seconds=600)[0]
    assert result.status == "fail"
    assert result.artifacts["failed_step"] == "asymmetry"
    sym = run_casebook(["symmetry-regularity"], max_seconds=600)[0]
    assert sym.status == "fail"
