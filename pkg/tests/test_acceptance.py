"""End-to-end acceptance suite.

Each test covers one acceptance criterion and prints a single
"ACCEPTANCE n: PASS/FAIL" line (bypassing pytest capture) so the gate
can be read off the run log directly.
"""

import random
import sys
import time
from itertools import combinations

import pytest

from conftest import rand_bipgraph, rand_consistent_host, rand_graph
from motifkit.graphs import (
    BipartiteGraph,
    Graph,
    biclique,
    bip_independent,
    clique,
    independent,
    induced_subgraph,
    path_graph,
    star_graph,
    twin_free_quotient,
)
from motifkit.hardness_lab import (
    biclique_coeff_check,
    classify_hereditary,
    hereditary_witness,
    orbit_assignments,
    orbit_decompose,
    random_orbit_assignment,
    reduce_bip_to_indsub,
    sylow_k_subgroup,
    twin_invariant_witness,
)
from motifkit.homomorphisms import count_cp_homs
from motifkit.motif_basis import (
    bip_coefficients,
    edge_order,
    eval_via_bip_basis,
    eval_via_hom_basis,
    mask_to_edges,
    mobius_extract,
    psi_values,
    uncoloured_hom_basis,
)
from motifkit.properties import (
    FORBIDDEN_SETS,
    ForbiddenSet,
    builtin_property,
    count_bip_indsub,
    count_cp_bip_indsub,
    count_indsub,
    eval_hereditary,
    hereditary_oracle,
    implant_graph,
    implant_property,
    minimalize_forbidden_set,
    random_bip_property,
)

SEED = 0x9E3779B97F4A7C15  # explicit 64-bit suite seed

PATH_HOST_3 = BipartiteGraph(2, 2, [(0, 0), (1, 0), (1, 1)])
PATH_HOST_4 = BipartiteGraph(3, 2, [(0, 0), (1, 0), (1, 1), (2, 1)])


def _report(n: int, ok: bool, detail: str, start: float) -> None:
    status = "PASS" if ok else "FAIL"
    elapsed = time.monotonic() - start
    line = f"ACCEPTANCE {n}: {status} — {detail} ({elapsed:.1f}s)"
    import conftest

    conftest.ACCEPTANCE_LINES.append(line)
    print(line, file=sys.__stdout__, flush=True)
    assert ok, f"criterion {n}: {detail}"


def test_acceptance_01_hom_basis_equals_bruteforce():
    start = time.monotonic()
    names = ("edgeless", "complete", "triangle-free", "cluster", "claw-free", "bipartite")
    rng = random.Random(SEED ^ 1)
    checked = mismatches = 0
    for name in names:
        phi = builtin_property(name)
        for k in (1, 2, 3, 4):
            table = uncoloured_hom_basis(phi, k)
            for _ in range(50):
                G = rand_graph(rng, 8)
                via_basis = eval_via_hom_basis(phi, k, G, table=table)
                brute = count_indsub(phi, k, G)
                checked += 1
                if via_basis != brute:
                    mismatches += 1
    _report(
        1,
        mismatches == 0,
        f"hom-basis count equals brute force on {checked}/{checked} "
        f"(property, k, graph) instances, 6 properties, k=1..4",
        start,
    )


def test_acceptance_02_coefficient_identities():
    start = time.monotonic()
    rng = random.Random(SEED ^ 2)
    hosts = (biclique(1), biclique(2), PATH_HOST_3, PATH_HOST_4)
    checked = mismatches = 0
    for Hb in hosts:
        order = edge_order(Hb)
        Hu = Hb.underlying()
        for trial in range(50):
            psi = random_bip_property(rng.getrandbits(63))
            vals = psi_values(psi, Hb)
            B, c = rand_consistent_host(rng, Hb, 3, 3)
            cu = c.underlying()
            # identity 1: property count decomposes over edge subsets
            lhs = count_cp_bip_indsub(psi, c, B)
            rhs = 0
            from motifkit.homomorphisms import count_cp_indsubs

            for A in range(1 << len(order)):
                if vals[A]:
                    edges = [(u, Hb.n1 + v) for u, v in mask_to_edges(A, order)]
                    rhs += count_cp_indsubs(Hu, edges, cu, B.underlying())
            # identity 2: the inverted coefficient form evaluates the same count
            via_basis = eval_via_bip_basis(psi, Hb, c, B)
            checked += 1
            if lhs != rhs or via_basis != lhs:
                mismatches += 1
    _report(
        2,
        mismatches == 0,
        f"edge-subset decomposition and coefficient-form evaluation exact on "
        f"{checked}/{checked} instances over 4 bipartite hosts",
        start,
    )


def test_acceptance_03_extraction():
    start = time.monotonic()
    rng = random.Random(SEED ^ 3)
    hosts = (biclique(1), PATH_HOST_3, biclique(2))
    checked = mismatches = ledger_violations = 0
    trials_per_host = (40, 30, 30)
    for Hb, trials in zip(hosts, trials_per_host):
        order = edge_order(Hb)
        Hu = Hb.underlying()
        for _ in range(trials):
            psi = random_bip_property(rng.getrandbits(63))
            B, c = rand_consistent_host(rng, Hb, 3, 3)
            table = bip_coefficients(psi, Hb)
            oracle = lambda Gq, cq: count_cp_bip_indsub(psi, cq, Gq)
            # divisibility of every recovered value is asserted inside
            rep = mobius_extract(oracle, Hb, c, B, table)
            cu = c.underlying()
            Bu = B.underlying()
            checked += 1
            for mask, got in rep.recovered.items():
                edges = [(u, Hb.n1 + v) for u, v in mask_to_edges(mask, order)]
                if got != count_cp_homs(Hu, edges, cu, Bu):
                    mismatches += 1
            bound = Hu.n * Bu.n
            if any(q["vertices"] > bound for q in rep.ledger):
                ledger_violations += 1
    _report(
        3,
        mismatches == 0 and ledger_violations == 0 and checked == 100,
        f"extraction recovered exact colour-prescribed hom counts on "
        f"{checked}/100 instances; all oracle queries within the "
        f"|V(pattern)|*|V(host)| size bound",
        start,
    )


def test_acceptance_04_biclique_coefficient_congruence():
    start = time.monotonic()
    violations = 0
    # k=2: all 2^7 orbit-respecting 0/1 assignments explicitly
    rep2 = orbit_decompose(sylow_k_subgroup(2), 2)
    n2 = 0
    for values in orbit_assignments(rep2):
        biclique_coeff_check(None, 2, values=values)
        n2 += 1
    # k=3: 2^64 assignments exist, but the coefficient and the congruence
    # right-hand side are both Z-linear in the assignment vector, so checking
    # the 64 single-orbit indicator vectors covers every integer (hence every
    # 0/1) orbit-respecting assignment by linearity; add 500 random spot checks.
    rep3 = orbit_decompose(sylow_k_subgroup(3), 3)
    n3 = 0
    for orbit in rep3.orbits:
        values = [0] * 512
        for mask in orbit:
            values[mask] = 1
        biclique_coeff_check(None, 3, values=values)
        n3 += 1
    rng = random.Random(SEED ^ 4)
    for _ in range(500):
        values = random_orbit_assignment(rep3, rng.getrandbits(63))
        a, res, nz = biclique_coeff_check(None, 3, values=values)
        if values[511] != values[0] and not nz:
            violations += 1
    small_done = time.monotonic() - start
    # k=5: streamed orbit decomposition over 2^25 masks, 50 random assignments
    rep5 = orbit_decompose(sylow_k_subgroup(5), 5)
    n5 = 0
    for seed in range(50):
        values = random_orbit_assignment(rep5, (SEED ^ 5) + seed)
        a, res, nz = biclique_coeff_check(None, 5, values=values)
        if values[(1 << 25) - 1] != values[0] and not nz:
            violations += 1
        n5 += 1
    _report(
        4,
        violations == 0 and n2 == 128 and n3 == 64 and n5 == 50,
        f"mod-k congruence held: k=2 all {n2} assignments, k=3 all {n3} "
        f"orbit indicators (covering every assignment by linearity) + 500 "
        f"random, k=5 {n5} random streamed (small k in {small_done:.1f}s); "
        f"coefficient nonzero whenever the property separates the biclique "
        f"from the edgeless host",
        start,
    )


def test_acceptance_05_sylow_orbit_dichotomy():
    start = time.monotonic()
    ok = True
    for k in (2, 3):
        rep = orbit_decompose(sylow_k_subgroup(k), k)
        full = (1 << (k * k)) - 1
        ok &= rep.fixed_points == (0, full)
        ok &= all(
            size == 1 or size % k == 0 for size in rep.orbit_size_histogram
        )
    rep2 = orbit_decompose(sylow_k_subgroup(2), 2)
    ok &= rep2.num_orbits == 7
    _report(
        5,
        ok,
        "k=2,3 subset actions fix exactly the empty and full edge sets, all "
        "other orbit sizes divisible by k; k=2 has exactly 7 orbits",
        start,
    )


def test_acceptance_06_reduction_to_uncoloured_counting():
    start = time.monotonic()
    rng = random.Random(SEED ^ 6)
    fixtures = {
        "K3": ForbiddenSet((clique(3),)),
        "P3": ForbiddenSet((path_graph(3),)),
        "K4": ForbiddenSet((clique(4),)),
    }
    checked = mismatches = call_violations = 0
    for name, pi in fixtures.items():
        spec = hereditary_witness(pi).spec
        phi = lambda G, pi=pi: eval_hereditary(pi, G)
        for _ in range(34 if name != "K4" else 32):
            n1 = rng.randint(1, 4)
            n2 = rng.randint(1, 8 - n1)
            B = rand_bipgraph(rng, n1, n2)
            k = rng.randint(0, min(3, B.n))
            calls = []

            def oracle(fn, kk, G):
                calls.append(G.n)
                return count_indsub(fn, kk, G)

            got = reduce_bip_to_indsub(phi, spec, B, k, oracle)
            want = count_bip_indsub(
                lambda Bg: phi(implant_graph(spec, Bg)), k, B
            )
            checked += 1
            if got != want:
                mismatches += 1
            if len(calls) != 1 << len(spec.R):
                call_violations += 1
    _report(
        6,
        mismatches == 0 and call_violations == 0 and checked == 100,
        f"bipartite-to-plain reduction exact on {checked}/100 instances over "
        f"3 forbidden sets, each run using exactly 2^|R| oracle calls",
        start,
    )


def test_acceptance_07_hereditary_witness_guarantees():
    start = time.monotonic()
    catalogue = {
        name: pi
        for name, pi in FORBIDDEN_SETS.items()
        if len(pi) > 0 and all(H.edges for H in pi)
    }
    ok = len(catalogue) >= 4
    detail_names = sorted(catalogue)
    for name, pi in catalogue.items():
        w = hereditary_witness(pi)
        he = len(twin_free_quotient(w.host)[0].edges)
        ok &= w.verified_k == tuple(range(w.host.n + 1, w.host.n + 4))
        psi = implant_property(hereditary_oracle(pi, name), w.spec)
        for k in w.verified_k:
            ok &= psi.eval(biclique(k)) == 0
            ok &= psi.eval(bip_independent(k)) == 1
            F = implant_graph(w.spec, bip_independent(k))
            ok &= len(twin_free_quotient(F)[0].edges) < he
    _report(
        7,
        ok,
        f"witnesses for {detail_names} separate bicliques from edgeless "
        f"bipartite hosts for the 3 sizes past |V(host)|, with the edgeless "
        f"implant's quotient strictly smaller each time",
        start,
    )


def _split_twin_host() -> Graph:
    # K4 with one edge's endpoints each duplicated as false twins
    return Graph(6, [(v, w) for v in range(4) for w in (4, 5)] + [(4, 5)])


def test_acceptance_08_classifier_conformance():
    start = time.monotonic()
    claw = star_graph(3)
    fixtures = [
        (ForbiddenSet(()), "constant-true", False),
        (minimalize_forbidden_set([clique(3), independent(3)]), "meagre", False),
        (ForbiddenSet((path_graph(3),)), "forall-cliques-and-independents", False),
        (ForbiddenSet((clique(3),)), "otherwise", False),
        (ForbiddenSet((independent(3),)), "otherwise", True),
        (ForbiddenSet((claw,)), "forall-cliques-and-independents", False),
        (
            minimalize_forbidden_set([clique(4), _split_twin_host()]),
            "otherwise",
            False,
        ),
    ]
    matches = 0
    for pi, row, via_inverse in fixtures:
        rep = classify_hereditary(pi)
        good = rep.row == row
        if row == "meagre":
            good &= rep.ramsey_bound == 6 and (rep.s, rep.t) == (3, 3)
        if row == "otherwise":
            good &= rep.witness is not None and not rep.witness.negative
            good &= rep.witness_via_inverse == via_inverse
        if good:
            matches += 1
    _report(
        8,
        matches == 7,
        f"classifier reproduced the expected row on {matches}/7 fixture "
        f"forbidden sets with populated evidence",
        start,
    )


def test_acceptance_09_twin_invariant_pipeline():
    start = time.monotonic()
    ok = True
    for name in ("disconnected", "chromatic-number-3", "clique-number-2"):
        phi = builtin_property(name)
        w = twin_invariant_witness(phi)
        ok &= not w.negative and w.verified_k == (1, 2, 3, 4)
        psi = implant_property(phi, w.spec)
        for k in (1, 2, 3, 4):
            ok &= psi.eval(biclique(k)) != psi.eval(bip_independent(k))
    _report(
        9,
        ok,
        "twin-invariant witnesses for 3 catalogue properties separate "
        "bicliques from edgeless bipartite hosts for k=1..4 by direct "
        "evaluation",
        start,
    )


def test_acceptance_10_quotient_edge_monotonicity():
    start = time.monotonic()
    rng = random.Random(SEED ^ 10)
    violations = 0
    for _ in range(500):
        H = rand_graph(rng, 8)
        qe = len(twin_free_quotient(H)[0].edges)
        r = rng.randint(0, H.n)
        S = rng.sample(range(H.n), r)
        sub = induced_subgraph(H, sorted(S))
        if len(twin_free_quotient(sub)[0].edges) > qe:
            violations += 1
    _report(
        10,
        violations == 0,
        f"quotient edge count never increased under vertex deletion on "
        f"500 seeded (graph, subset) pairs, {violations} violations",
        start,
    )
