"""Acceptance suite: pinned corpora, tolerances, and runtime budgets.

Each criterion is one test.  A passing test prints a single
``PASS criterion N: ...`` line with the measured numbers (surfaced by
the -rP flag in the project pytest config); a failure shows up as an
ordinary pytest failure instead.
"""

import json
import random
import time
from math import comb

from eulerdel import cli, oracle
from eulerdel.cographic import build_cographic, truncate
from eulerdel.graphs import Graph
from eulerdel.repset import SetFamily, representative_family
from eulerdel.solver import solve_directed, solve_ucoed, solve_ueed
from helpers import (
    connected_after,
    distinct_connected_graphs,
    distinct_digraphs,
    eulerian_directed,
    eulerian_undirected,
    exhaustive_connected_graphs,
    is_dag,
    is_forest,
    random_connected_graph,
    random_weakly_connected_digraph,
    representative_failures,
)

UNDIRECTED_SOLVERS = (("ueed", solve_ueed), ("ucoed", solve_ucoed))


def _check_undirected_solution(mode: str, g: Graph, res) -> None:
    """Structural invariants every returned undirected solution must obey."""
    assert res.mask.bit_count() == res.size
    if mode == "ueed":
        assert g.is_eulerian(deleted=res.mask)
        targets = g.odd_vertices()
    else:
        assert g.is_connected(deleted=res.mask)
        assert len(g.odd_vertices(deleted=res.mask)) == g.n
        targets = tuple(v for v in range(g.n) if v not in set(g.odd_vertices()))
    assert is_forest(g.n, g.edges, res.mask)
    assert 2 * res.size >= len(targets)


def _check_directed_solution(d, res) -> None:
    assert res.mask.bit_count() == res.size
    assert d.is_eulerian(deleted=res.mask)
    assert is_dag(d.n, d.arcs, res.mask)
    plus, _ = d.surplus_terminals()
    assert res.size >= len(plus)


def test_criterion_1_undirected_exact_matches_brute_force():
    start = time.perf_counter()
    corpus = []
    for n in range(2, 6):
        corpus.extend(exhaustive_connected_graphs(n, 9))
    exhaustive = len(corpus)
    corpus.extend(distinct_connected_graphs(5000 - exhaustive, 11, 6, 5, 9))
    assert len(corpus) >= 5000

    comparisons = 0
    for g in corpus:
        for mode, solve in UNDIRECTED_SOLVERS:
            verdict = oracle.brute_force(mode, g, 4)
            for k in range(5):
                res = solve(g, k, truncate="off")
                expected = verdict.found and verdict.min_size <= k
                assert res.found == expected, (mode, g, k, verdict)
                if res.found:
                    assert res.size == verdict.min_size, (mode, g, k)
                    _check_undirected_solution(mode, g, res)
                comparisons += 1
    wall = time.perf_counter() - start
    assert wall < 600.0
    print(f"PASS criterion 1: ueed+ucoed exact vs brute force on "
          f"{len(corpus)} graphs ({exhaustive} exhaustive n<=5, rest distinct "
          f"n=6), k=0..4, {comparisons} comparisons, 0 mismatches, "
          f"{wall:.1f}s")


def test_criterion_2_directed_exact_matches_brute_force():
    start = time.perf_counter()
    corpus = distinct_digraphs(2000, 13, 6, 10)
    assert len(corpus) >= 2000

    comparisons = 0
    for d in corpus:
        verdict = oracle.brute_force("deed", d, 4)
        for k in range(5):
            res = solve_directed(d, k, truncate="off")
            expected = verdict.found and verdict.min_size <= k
            assert res.found == expected, (d, k, verdict)
            if res.found:
                assert res.size == verdict.min_size, (d, k)
                _check_directed_solution(d, res)
            comparisons += 1
    wall = time.perf_counter() - start
    assert wall < 600.0
    print(f"PASS criterion 2: deed exact vs brute force on {len(corpus)} "
          f"digraphs (n<=6, m<=10), k=0..4, {comparisons} comparisons, "
          f"0 mismatches, {wall:.1f}s")


def _indep_memo(rep):
    cache: dict[int, bool] = {}

    def indep(mask: int) -> bool:
        hit = cache.get(mask)
        if hit is None:
            hit = rep.is_coindependent(mask)
            cache[mask] = hit
        return hit

    return indep


def _independent_bsets(rep, b: int) -> SetFamily:
    import itertools

    masks = []
    for combo in itertools.combinations(range(rep.m), b):
        mask = 0
        for e in combo:
            mask |= 1 << e
        if rep.is_coindependent(mask):
            masks.append(mask)
    return SetFamily.from_masks(b, masks)


def _repset_cells(rep):
    for b in range(1, 4):
        for q in range(0, 4):
            if b + q <= rep.corank:
                yield b, q


def test_criterion_3_representative_family_definition():
    start = time.perf_counter()
    rng = random.Random(17)
    k4 = Graph(4, ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)))
    k5 = Graph(5, tuple((i, j) for i in range(5) for j in range(i + 1, 5)))

    # exact computation: the definition must hold with zero failures
    exact_corpus = [k4, k5] + [
        random_connected_graph(rng, rng.randint(5, 7), rng.randint(7, 11))
        for _ in range(23)
    ]
    exact_cells = exact_probes = 0
    for g in exact_corpus:
        rep = build_cographic(g)
        indep = _indep_memo(rep)
        for b, q in _repset_cells(rep):
            fam = _independent_bsets(rep, b)
            out = representative_family(fam, rep, q)
            failures, live, total = representative_failures(
                g.m, indep, fam.masks(), out.masks(), q)
            assert failures == 0, (g, b, q)
            exact_cells += 1
            exact_probes += total

    # randomized truncation at the default 16-bit field: failure rate
    # below 1e-4 over at least 1e4 live probes
    trunc_corpus = [k5] + [
        random_connected_graph(rng, rng.randint(5, 7), rng.randint(8, 12))
        for _ in range(119)
    ]
    failures_total = live_total = probes_total = 0
    for gi, g in enumerate(trunc_corpus):
        rep = build_cographic(g)
        indep = _indep_memo(rep)
        for ci, (b, q) in enumerate(_repset_cells(rep)):
            fam = _independent_bsets(rep, b)
            trep = truncate(rep, b + q, seed=gi * 100 + ci)
            out = representative_family(fam, trep, q)
            failures, live, total = representative_failures(
                g.m, indep, fam.masks(), out.masks(), q)
            failures_total += failures
            live_total += live
            probes_total += total
    assert live_total >= 10_000
    rate = failures_total / live_total
    assert rate < 1e-4, (failures_total, live_total)
    wall = time.perf_counter() - start
    print(f"PASS criterion 3: representative-family definition holds -- "
          f"exact: 0 failures over {exact_probes} probes in {exact_cells} "
          f"(graph,b,q) cells; truncated s=16: {failures_total} failures / "
          f"{live_total} live probes (rate {rate:.2e} < 1e-4), {wall:.1f}s")


def test_criterion_4_coindependence_equals_connectivity():
    start = time.perf_counter()
    corpus = []
    for n in range(2, 6):
        corpus.extend(exhaustive_connected_graphs(n, 10))
    exhaustive = len(corpus)
    corpus.extend(distinct_connected_graphs(150, 19, 6, 6, 10))
    corpus.extend(distinct_connected_graphs(150, 23, 7, 7, 10))

    subsets = 0
    for g in corpus:
        rep = build_cographic(g)
        assert rep.corank == g.m - g.n + 1
        assert rep.base_matrix().rank() == rep.corank
        for mask in range(1 << g.m):
            assert rep.is_coindependent(mask) == connected_after(
                g.n, g.edges, mask), (g, mask)
            subsets += 1
    wall = time.perf_counter() - start
    print(f"PASS criterion 4: co-graphic independence == deletion "
          f"connectivity on all {subsets} edge subsets of {len(corpus)} "
          f"graphs ({exhaustive} exhaustive n<=5), rank == m-n+1 throughout, "
          f"{wall:.1f}s")


def test_criterion_5_solution_structure():
    start = time.perf_counter()
    rng = random.Random(29)
    solutions = 0
    for _ in range(350):
        g = random_connected_graph(rng, rng.randint(4, 7), rng.randint(5, 12))
        for mode, solve in UNDIRECTED_SOLVERS:
            for trunc in ("off", "random"):
                res = solve(g, 4, truncate=trunc, seed=rng.randint(0, 999))
                if res.found:
                    _check_undirected_solution(mode, g, res)
                    solutions += 1
    for _ in range(350):
        d = random_weakly_connected_digraph(
            rng, rng.randint(3, 6), rng.randint(4, 12))
        for trunc in ("off", "random"):
            res = solve_directed(d, 4, truncate=trunc, seed=rng.randint(0, 999))
            if res.found:
                _check_directed_solution(d, res)
                solutions += 1
    assert solutions >= 500
    wall = time.perf_counter() - start
    print(f"PASS criterion 5: every returned solution verified "
          f"(Eulerian/odd-connected after deletion, forest or DAG witness, "
          f"T-join size bound) across {solutions} solutions, {wall:.1f}s")


def test_criterion_6_truncated_family_size_bound():
    start = time.perf_counter()
    rng = random.Random(31)
    rounds_seen = 0
    max_ratio = 0.0

    def scan(res, tag):
        nonlocal rounds_seen, max_ratio
        for rs in res.rounds:
            bound = comb(rs.kappa, rs.round)
            assert rs.max_family_kept <= bound, (tag, rs)
            rounds_seen += 1
            if bound:
                max_ratio = max(max_ratio, rs.max_family_kept / bound)

    for trial in range(300):
        if trial % 2 == 0:
            g = random_connected_graph(rng, rng.randint(6, 10),
                                       rng.randint(9, 18))
            scan(solve_ueed(g, rng.randint(1, 5), truncate="random",
                            seed=trial), trial)
        else:
            d = random_weakly_connected_digraph(
                rng, rng.randint(4, 8), rng.randint(7, 16))
            scan(solve_directed(d, rng.randint(1, 5), truncate="random",
                                seed=trial), trial)
    # planted instances force the budget loop through several rounds
    for trial in range(60):
        mode = "ueed" if trial % 2 == 0 else "deed"
        n = 8 + trial % 5
        inst, k, _ = oracle.gen_yes_instance(mode, n, 3 + trial % 4, trial,
                                             target_m=2 * n)
        solver = solve_ueed if mode == "ueed" else solve_directed
        scan(solver(inst, k, truncate="random", seed=trial), ("gen", trial))
    assert rounds_seen >= 500
    wall = time.perf_counter() - start
    print(f"PASS criterion 6: per-round kept family size <= C(kappa, round) "
          f"in all {rounds_seen} truncated DP rounds (max fill ratio "
          f"{max_ratio:.2f}), {wall:.1f}s")


def test_criterion_7_scales_to_planted_instances():
    walls = []
    for seed in range(10):
        inst, k, _ = oracle.gen_yes_instance("ueed", 50, 6, seed,
                                             target_m=120)
        assert 100 <= inst.m <= 120
        t0 = time.perf_counter()
        res = solve_ueed(inst, k, truncate="random", seed=seed)
        wall = time.perf_counter() - t0
        assert wall < 300.0, (seed, wall)
        assert res.found and res.size <= 6, (seed, res.size)
        assert inst.is_eulerian(deleted=res.mask)
        walls.append(wall)
    print(f"PASS criterion 7: planted ueed instances n=50, m~120, k=6, "
          f"truncated mode, 10 seeds, all YES with size <= 6, max "
          f"{max(walls):.1f}s per solve (limit 300s)")


def test_criterion_8_determinism(tmp_path, capsys):
    start = time.perf_counter()
    compared = 0
    for seed in range(20):
        mode = "ueed" if seed % 2 == 0 else "deed"
        n = 8 + seed % 4
        inst, k, _ = oracle.gen_yes_instance(mode, n, 2 + seed % 3, seed,
                                             target_m=2 * n)
        path = tmp_path / f"inst{seed}.txt"
        path.write_text(inst.serialize())

        payloads = []
        for _ in range(2):
            rc = cli.main(["solve", "--mode", mode, "--input", str(path),
                           "--k", str(k), "--seed", str(seed), "--json"])
            assert rc == 0
            payload = json.loads(capsys.readouterr().out)
            payload.pop("wall_ms")
            payloads.append(payload)
        assert payloads[0] == payloads[1], (seed, payloads)

        solver = solve_ueed if mode == "ueed" else solve_directed
        r1 = solver(inst, k, truncate="random", seed=seed)
        r2 = solver(inst, k, truncate="random", seed=seed)
        assert (r1.mask, r1.size, r1.rounds) == (r2.mask, r2.size, r2.rounds)
        compared += 1
    wall = time.perf_counter() - start
    print(f"PASS criterion 8: identical witnesses and JSON output (modulo "
          f"wall_ms) across repeated runs for {compared} seeded instances, "
          f"{wall:.1f}s")
