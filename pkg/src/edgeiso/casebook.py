"""Casebook: every finitely checkable claim the toolkit reproduces.

Claims are data: an id, a one-sentence statement, a rough cost
estimate, and a pipeline that recomputes the claim from scratch and
returns pass or fail with artifacts.  The runner never drops a claim
silently; anything skipped for budget reasons shows up as a skipped
row with the reason attached.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable

from . import compress as compress_mod
from . import delta as delta_mod
from . import graphs as graphs_mod
from . import solver as solver_mod
from .errors import InputError

# Reference delta for the 17-vertex join construction Z(2); the
# z2-counterexample pipeline recomputes it from scratch and compares.
Z2_REFERENCE_DELTA = (0, 1, 2, 3, 4, 5, 6, 7, 7, 6, 7, 8, 9, 10, 11, 12, 13)


@dataclass
class Claim:
    id: str
    statement: str
    estimated_seconds: int
    run: Callable[[], tuple[bool, dict]]
    evidence_only: bool = False


@dataclass
class CasebookResult:
    id: str
    statement: str
    status: str  # pass | fail | evidence-only | skipped
    artifacts: dict = field(default_factory=dict)
    elapsed: float = 0.0

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "statement": self.statement,
            "status": self.status,
            "artifacts": self.artifacts,
            "elapsed": round(self.elapsed, 3),
        }


def _delta_values(g) -> tuple[int, ...]:
    return delta_mod.delta_of(solver_mod.iso_profile(g)).values


def _check_delta_complete() -> tuple[bool, dict]:
    got = {}
    ok = True
    for n in range(2, 7):
        values = _delta_values(graphs_mod.complete(n))
        got[f"complete({n})"] = list(values)
        ok = ok and values == tuple(range(n))
    return ok, {"delta": got}


def _check_delta_trees() -> tuple[bool, dict]:
    got = {}
    ok = True
    for n in range(3, 8):
        for g in (graphs_mod.path(n), graphs_mod.star(n)):
            values = _delta_values(g)
            got[g.display_name()] = list(values)
            ok = ok and values == (0,) + (1,) * (n - 1)
    return ok, {"delta": got}


def _check_delta_petersen() -> tuple[bool, dict]:
    values = _delta_values(graphs_mod.petersen())
    expected = (0, 1, 1, 1, 2, 1, 2, 2, 2, 3)
    return values == expected, {"delta": list(values), "expected": list(expected)}


def _check_segment_structure() -> tuple[bool, dict]:
    ok = True
    detail = {}
    for n in range(2, 7):
        seg = delta_mod.segments_of(
            delta_mod.delta_of(solver_mod.iso_profile(graphs_mod.complete(n))))
        detail[f"complete({n})"] = seg.count
        ok = ok and seg.count == 1
    pet = delta_mod.segments_of(
        delta_mod.delta_of(solver_mod.iso_profile(graphs_mod.petersen())))
    detail["petersen"] = {"count": pet.count, "starts": list(pet.starts)}
    ok = ok and pet.count == 6 and pet.starts == (0, 1, 1, 1, 2, 2)
    for n in range(3, 8):
        for g in (graphs_mod.path(n), graphs_mod.star(n)):
            seg = delta_mod.segments_of(delta_mod.delta_of(solver_mod.iso_profile(g)))
            detail[g.display_name()] = seg.count
            ok = ok and seg.count == n - 1
    return ok, detail


def _check_dense_classification() -> tuple[bool, dict]:
    ok = True
    detail = {}
    for n in range(2, 7):
        dense = delta_mod.is_delta_dense(
            delta_mod.delta_of(solver_mod.iso_profile(graphs_mod.complete(n)))).ok
        detail[f"complete({n})"] = dense
        ok = ok and dense
    for g in [graphs_mod.petersen()] + [graphs_mod.path(n) for n in range(3, 8)] \
            + [graphs_mod.star(n) for n in range(3, 8)]:
        dense = delta_mod.is_delta_dense(delta_mod.delta_of(solver_mod.iso_profile(g))).ok
        detail[g.display_name()] = dense
        ok = ok and not dense
    return ok, detail


def _regular_corpus():
    yield graphs_mod.petersen()
    yield graphs_mod.cartesian_power(graphs_mod.complete(2), 3)
    yield graphs_mod.cycle(5)
    yield graphs_mod.complete(6)


def _check_regular_identity() -> tuple[bool, dict]:
    rng = random.Random(41)
    graphs = list(_regular_corpus())
    while len(graphs) < 54:
        g = _random_regular(rng)
        if g is not None:
            graphs.append(g)
    checked = 0
    for g in graphs:
        reg, r = graphs_mod.is_regular(g)
        if not reg:
            return False, {"error": f"{g.display_name()} is not regular"}
        for _ in range(1000):
            mask = rng.getrandbits(g.n)
            lhs = graphs_mod.boundary_edges(g, mask) + 2 * graphs_mod.induced_edges(g, mask)
            if lhs != r * mask.bit_count():
                return False, {"graph": g.display_name(), "mask": hex(mask)}
            checked += 1
    return True, {"graphs": len(graphs), "subsets": checked}


def _random_regular(rng: random.Random):
    """One attempt at a random simple regular graph on <= 10 vertices."""
    n = rng.randint(4, 10)
    r = rng.choice([2, 3, 4])
    if r >= n or (n * r) % 2:
        return None
    stubs = [v for v in range(n) for _ in range(r)]
    for _ in range(200):
        rng.shuffle(stubs)
        seen = set()
        for u, v in zip(stubs[::2], stubs[1::2]):
            if u == v or (min(u, v), max(u, v)) in seen:
                break
            seen.add((min(u, v), max(u, v)))
        else:
            return graphs_mod.from_edge_list(n, sorted(seen), name=f"regular(n={n},r={r})")
    return None


def _ns_corpus():
    for n in range(2, 7):
        yield graphs_mod.complete(n)
    for n in range(3, 8):
        yield graphs_mod.path(n)
        yield graphs_mod.star(n)
    for n in range(3, 9):
        yield graphs_mod.cycle(n)
    yield graphs_mod.petersen()
    yield graphs_mod.graph_x()
    yield graphs_mod.graph_y()
    yield graphs_mod.graph_z(1)
    yield graphs_mod.graph_z(2)
    yield graphs_mod.cartesian_power(graphs_mod.complete(2), 3)
    yield graphs_mod.cartesian_product(graphs_mod.complete(3), graphs_mod.complete(3))
    yield graphs_mod.graph_union(graphs_mod.cycle(4), graphs_mod.complete(3))


def _check_ns_gap_bound() -> tuple[bool, dict]:
    with_ns = 0
    without = []
    for g in _ns_corpus():
        prof = solver_mod.iso_profile(g)
        search = solver_mod.has_ns(g, prof)
        if search.order is None:
            without.append(g.display_name())
            continue
        with_ns += 1
        check = delta_mod.gap_check(delta_mod.delta_of(prof))
        if not check.ok:
            return False, {"graph": g.display_name(), "violation_at": check.first_violation}
    return True, {"graphs_with_ns": with_ns, "graphs_without_ns": without}


def _diagram_factors():
    pet = graphs_mod.petersen()
    pet_form, _ = delta_mod.nested_solution_form(pet)
    for k in range(2, 6):
        yield graphs_mod.complete(k)
        yield graphs_mod.path(k)
        if k >= 3:
            yield graphs_mod.cycle(k)
        trunc = _prefix_subgraph(pet_form, k)
        yield trunc


def _prefix_subgraph(g, k: int):
    """Induced subgraph on labels 0..k-1 (labels assumed in NS order)."""
    edges = [(u, v) for u, v in g.edges() if u < k and v < k]
    return graphs_mod.from_edge_list(k, edges, name=f"prefix({g.display_name()},{k})")


def _all_diagrams(nh: int, ng: int):
    def rec(x: int, cap: int, heights):
        if x == nh:
            yield tuple(heights)
            return
        for h in range(cap + 1):
            heights.append(h)
            yield from rec(x + 1, h, heights)
            heights.pop()
    yield from rec(0, ng, [])


def _check_diagram_weight() -> tuple[bool, dict]:
    factors = list(_diagram_factors())
    checked = 0
    for h_graph in factors:
        dh = delta_mod.delta_of(solver_mod.iso_profile(h_graph))
        for g_graph in factors:
            dg = delta_mod.delta_of(solver_mod.iso_profile(g_graph))
            product = graphs_mod.cartesian_product(h_graph, g_graph)
            for heights in _all_diagrams(h_graph.n, g_graph.n):
                diagram = compress_mod.Diagram(heights, (h_graph.n, g_graph.n))
                direct = graphs_mod.induced_edges(product, diagram.product_mask())
                if compress_mod.diagram_weight(dh, dg, diagram) != direct:
                    return False, {"factors": (h_graph.display_name(), g_graph.display_name()),
                                   "heights": list(heights)}
                checked += 1
    rng = random.Random(17)
    for big in (graphs_mod.petersen(), graphs_mod.graph_z(2)):
        form, d = delta_mod.nested_solution_form(big)
        product = graphs_mod.cartesian_product(form, form)
        for _ in range(1000):
            heights = sorted((rng.randint(0, big.n) for _ in range(big.n)), reverse=True)
            diagram = compress_mod.Diagram(heights, (big.n, big.n))
            direct = graphs_mod.induced_edges(product, diagram.product_mask())
            if compress_mod.diagram_weight(d, d, diagram) != direct:
                return False, {"factors": big.display_name(), "heights": heights}
            checked += 1
    return True, {"diagrams_checked": checked}


def _check_dp_exact() -> tuple[bool, dict]:
    pairs = [
        (graphs_mod.complete(2), graphs_mod.complete(2)),
        (graphs_mod.complete(2), graphs_mod.complete(3)),
        (graphs_mod.complete(3), graphs_mod.complete(3)),
        (graphs_mod.path(3), graphs_mod.path(3)),
    ]
    detail = {}
    for h_graph, g_graph in pairs:
        dh = delta_mod.delta_of(solver_mod.iso_profile(h_graph))
        dg = delta_mod.delta_of(solver_mod.iso_profile(g_graph))
        product = graphs_mod.cartesian_product(h_graph, g_graph)
        prof = solver_mod.iso_profile(product)
        opt = compress_mod.DiagramOptimizer(dh, dg)
        for m in range(product.n + 1):
            if opt.optimum(m) != prof.induced[m]:
                return False, {"product": product.display_name(), "size": m,
                               "dp": opt.optimum(m), "brute": prof.induced[m]}
        detail[product.display_name()] = list(prof.induced)
    return True, detail


def _uniqueness_of(g) -> tuple[bool, dict]:
    survey = compress_mod.enumerate_compressed_optimal_orders(g, cap=4)
    ok = (survey.exact and survey.total == 2
          and sorted(survey.classifications) == ["colex", "lex"])
    return ok, {"total": survey.total, "classifications": list(survey.classifications)}


def _check_uniqueness_complete() -> tuple[bool, dict]:
    detail = {}
    ok = True
    for n in (3, 4, 5):
        good, info = _uniqueness_of(graphs_mod.complete(n))
        detail[f"complete({n})"] = info
        ok = ok and good
    return ok, detail


def _check_uniqueness_z2() -> tuple[bool, dict]:
    return _uniqueness_of(graphs_mod.graph_z(2))


def _check_z2_counterexample() -> tuple[bool, dict]:
    artifacts: dict = {}

    g = graphs_mod.graph_z(2)
    artifacts["vertices"] = g.n
    artifacts["edges"] = g.edge_count()
    if g.n != 17 or g.edge_count() != 111:
        artifacts["failed_step"] = "construction"
        return False, artifacts

    prof = solver_mod.iso_profile(g)
    search = solver_mod.has_ns(g, prof)
    artifacts["has_ns"] = search.order is not None
    if search.order is None:
        artifacts["failed_step"] = "nested-solutions"
        return False, artifacts

    d = delta_mod.delta_of(prof, ns_order=search.order)
    artifacts["delta"] = list(d.values)
    if d.values != Z2_REFERENCE_DELTA:
        artifacts["failed_step"] = "delta-match"
        return False, artifacts

    sym = delta_mod.is_symmetric(d)
    reg, _ = graphs_mod.is_regular(g)
    artifacts["symmetric"] = sym.ok
    artifacts["first_asymmetric"] = sym.first_asymmetric
    artifacts["regular"] = reg
    if sym.ok or reg or sym.first_asymmetric != 9:
        artifacts["failed_step"] = "asymmetry"
        return False, artifacts
    if not delta_mod.regularity_crosscheck(g, d).consistent:
        artifacts["failed_step"] = "regularity-crosscheck"
        return False, artifacts

    report = compress_mod.verify_lex_square(g, prof)
    artifacts["square_sizes_checked"] = len(report.rows)
    artifacts["square_all_optimal"] = report.ok
    if not report.ok or len(report.rows) != 289:
        artifacts["failed_step"] = "lex-square"
        return False, artifacts

    return True, artifacts


def _check_z_construction() -> tuple[bool, dict]:
    single = graphs_mod.join(graphs_mod.graph_x(), graphs_mod.graph_y())
    double = graphs_mod.graph_z(2)
    d_single = _delta_values(single)
    d_double = _delta_values(double)
    single_matches = d_single == Z2_REFERENCE_DELTA
    double_matches = d_double == Z2_REFERENCE_DELTA
    artifacts = {
        "join_once_vertices": single.n,
        "join_once_delta": list(d_single),
        "join_twice_vertices": double.n,
        "join_twice_delta": list(d_double),
        "matching_reading": "join_twice" if double_matches and not single_matches else "ambiguous",
    }
    return double_matches and not single_matches, artifacts


def _check_symmetry_regularity() -> tuple[bool, dict]:
    corpus = list(_ns_corpus())
    corpus.append(graphs_mod.empty_graph(1))
    corpus.append(graphs_mod.empty_graph(4))
    corpus.append(graphs_mod.join(graphs_mod.empty_graph(2), graphs_mod.empty_graph(3)))
    rng = random.Random(97)
    corpus.extend(_random_connected(rng) for _ in range(100))
    consistent = 0
    for g in corpus:
        verdict = delta_mod.regularity_crosscheck(g)
        if not verdict.consistent:
            return False, {"graph": g.display_name(),
                           "symmetric": verdict.symmetric, "regular": verdict.regular}
        consistent += 1
    return True, {"graphs_checked": consistent}


def _random_connected(rng: random.Random):
    """Random connected graph on 2..9 vertices: random tree plus noise."""
    n = rng.randint(2, 9)
    edges = set()
    for v in range(1, n):
        edges.add((rng.randrange(v), v))
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < 0.3:
                edges.add((u, v))
    return graphs_mod.from_edge_list(n, sorted(edges), name=f"connected(n={n})")


def _check_power_lex_spot() -> tuple[bool, dict]:
    detail = {}
    ok = True
    for d in (3, 4):
        report = compress_mod.power_lex_check(graphs_mod.complete(2), d)
        detail[f"complete(2)^{d}"] = {"sizes": len(report.rows), "ok": report.ok}
        ok = ok and report.ok and not report.evidence_only
    return ok, detail


def _check_power_lex_cube27() -> tuple[bool, dict]:
    report = compress_mod.power_lex_check(graphs_mod.complete(3), 3)
    return report.ok and not report.evidence_only, {
        "sizes": len(report.rows), "ok": report.ok}


CLAIMS: tuple[Claim, ...] = (
    Claim("delta-complete",
          "the delta sequence of complete(n) is (0,1,...,n-1) for n = 2..6",
          1, _check_delta_complete),
    Claim("delta-trees",
          "paths and stars on n vertices have delta (0,1,...,1) for n = 3..7",
          1, _check_delta_trees),
    Claim("delta-petersen",
          "the Petersen graph has delta (0,1,1,1,2,1,2,2,2,3)",
          1, _check_delta_petersen),
    Claim("segment-structure",
          "monotone segment counts: complete(n) has 1, Petersen has 6 with starts "
          "(0,1,1,1,2,2), an n-vertex tree has n-1",
          1, _check_segment_structure),
    Claim("dense-classification",
          "complete graphs are delta-dense; Petersen, paths, and stars are not",
          1, _check_dense_classification),
    Claim("regular-identity",
          "boundary(A) + 2*induced(A) = r*|A| for every subset A of an r-regular graph",
          10, _check_regular_identity),
    Claim("ns-gap-bound",
          "graphs with nested solutions never gain more than one extra delta step",
          15, _check_ns_gap_bound),
    Claim("diagram-weight-formula",
          "for compressed product sets the induced-edge count equals the per-cell "
          "delta sum",
          20, _check_diagram_weight),
    Claim("compressed-dp-exact",
          "the diagram DP matches brute force on small two-factor products",
          5, _check_dp_exact),
    Claim("uniqueness-complete",
          "complete(3..5) squared have exactly two compressed optimal orders, "
          "lex and colex",
          5, _check_uniqueness_complete),
    Claim("uniqueness-z2",
          "Z(2) squared has exactly two compressed optimal orders, lex and colex",
          10, _check_uniqueness_z2),
    Claim("z2-counterexample",
          "Z(2) is irregular with an asymmetric delta, yet the lex chain is optimal "
          "at all 289 sizes of its square",
          30, _check_z2_counterexample),
    Claim("z-construction",
          "only the 17-vertex reading of Z(2), X joined with two copies of Y, "
          "reproduces the reference delta",
          5, _check_z_construction),
    Claim("symmetry-regularity",
          "delta symmetry coincides with degree regularity across the corpus and "
          "100 random connected graphs",
          30, _check_symmetry_regularity),
    Claim("power-lex-spot",
          "numeric prefixes are optimal at every size of complete(2)^3 and "
          "complete(2)^4",
          5, _check_power_lex_spot),
    Claim("power-lex-cube27",
          "numeric prefixes are optimal at every size of complete(3)^3 "
          "(full 2^27 scan)",
          900, _check_power_lex_cube27),
)


def claim_ids() -> list[str]:
    return [c.id for c in CLAIMS]


def run_casebook(ids=None, max_seconds: int = 120) -> list[CasebookResult]:
    """Run the selected claims (all by default) within the time budget.

    Claims whose cost estimate does not fit the remaining budget are
    reported as skipped, never dropped.
    """
    chosen = list(CLAIMS)
    if ids is not None:
        lookup = {c.id: c for c in CLAIMS}
        missing = [i for i in ids if i not in lookup]
        if missing:
            raise InputError(f"unknown claim ids: {', '.join(missing)}")
        chosen = [lookup[i] for i in ids]
    results = []
    spent = 0.0
    for claim in chosen:
        if claim.estimated_seconds > max_seconds - spent:
            results.append(CasebookResult(
                claim.id, claim.statement, "skipped",
                {"reason": f"estimated {claim.estimated_seconds}s exceeds the "
                           f"remaining {max(0, max_seconds - spent):.0f}s budget"}))
            continue
        start = time.perf_counter()
        ok, artifacts = claim.run()
        elapsed = time.perf_counter() - start
        spent += elapsed
        status = "pass" if ok else "fail"
        if ok and claim.evidence_only:
            status = "evidence-only"
        results.append(CasebookResult(claim.id, claim.statement, status, artifacts, elapsed))
    return results
