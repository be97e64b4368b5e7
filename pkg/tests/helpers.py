"""Shared corpus builders and independent reference checks.

Everything here is deliberately implemented from first principles (BFS,
union-find, subset enumeration) rather than through the library's own
code paths, so tests compare two independent computations.
"""

from __future__ import annotations

import itertools
import random

from eulerdel.graphs import Digraph, Graph, mask_of


# ---------------------------------------------------------------------------
# independent graph predicates


def connected_after(n: int, pairs, mask: int) -> bool:
    """BFS connectivity of the n-vertex graph after dropping masked edges."""
    adj = [[] for _ in range(n)]
    for eid, (u, v) in enumerate(pairs):
        if not mask >> eid & 1:
            adj[u].append(v)
            adj[v].append(u)
    if n <= 1:
        return True
    seen = [False] * n
    seen[0] = True
    stack = [0]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if not seen[v]:
                seen[v] = True
                stack.append(v)
    return all(seen)


def odd_set(n: int, pairs, mask: int) -> frozenset[int]:
    """Vertices of odd degree in the subgraph formed by the masked edges."""
    deg = [0] * n
    for eid, (u, v) in enumerate(pairs):
        if mask >> eid & 1:
            deg[u] += 1
            deg[v] += 1
    return frozenset(v for v in range(n) if deg[v] % 2 == 1)


def is_forest(n: int, pairs, mask: int) -> bool:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for eid, (u, v) in enumerate(pairs):
        if mask >> eid & 1:
            ru, rv = find(u), find(v)
            if ru == rv:
                return False
            parent[ru] = rv
    return True


def is_dag(n: int, arcs, mask: int) -> bool:
    indeg = [0] * n
    out = [[] for _ in range(n)]
    total = 0
    for eid, (u, v) in enumerate(arcs):
        if mask >> eid & 1:
            out[u].append(v)
            indeg[v] += 1
            total += 1
    queue = [v for v in range(n) if indeg[v] == 0]
    removed = 0
    while queue:
        u = queue.pop()
        removed += 1
        for v in out[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                queue.append(v)
    return removed == n


def eulerian_undirected(g: Graph, mask: int) -> bool:
    deg = g.degrees(deleted=mask)
    return connected_after(g.n, g.edges, mask) and all(d % 2 == 0 for d in deg)


def eulerian_directed(d: Digraph, mask: int) -> bool:
    outdeg = [0] * d.n
    indeg = [0] * d.n
    for eid, (u, v) in enumerate(d.arcs):
        if not mask >> eid & 1:
            outdeg[u] += 1
            indeg[v] += 1
    und = [(u, v) for (u, v) in d.arcs]
    return connected_after(d.n, und, mask) and outdeg == indeg


# ---------------------------------------------------------------------------
# corpus builders


def exhaustive_connected_graphs(n: int, m_max: int):
    """All labeled connected graphs on exactly n vertices with m <= m_max."""
    pairs = list(itertools.combinations(range(n), 2))
    cap = min(m_max, len(pairs))
    for size in range(max(0, n - 1), cap + 1):
        for combo in itertools.combinations(pairs, size):
            g = Graph(n, tuple(combo))
            if g.is_connected():
                yield g


def random_connected_graph(rng: random.Random, n: int, m: int) -> Graph:
    """Random spanning tree plus random extra edges; exactly m edges."""
    pairs = list(itertools.combinations(range(n), 2))
    m = min(m, len(pairs))
    perm = list(range(n))
    rng.shuffle(perm)
    edges = set()
    for i in range(1, n):
        j = rng.randrange(i)
        a, b = perm[i], perm[j]
        edges.add((min(a, b), max(a, b)))
    rng.shuffle(pairs)
    for pair in pairs:
        if len(edges) >= m:
            break
        edges.add(pair)
    return Graph(n, tuple(sorted(edges)))


def distinct_connected_graphs(count: int, seed: int, n: int,
                              m_min: int, m_max: int) -> list[Graph]:
    rng = random.Random(seed)
    seen: dict[tuple, Graph] = {}
    while len(seen) < count:
        g = random_connected_graph(rng, n, rng.randint(m_min, m_max))
        seen.setdefault((g.n, g.edges), g)
    return list(seen.values())


def random_weakly_connected_digraph(rng: random.Random, n: int, m: int) -> Digraph:
    """Random orientation of a spanning tree plus random extra arcs."""
    perm = list(range(n))
    rng.shuffle(perm)
    arcs = set()
    for i in range(1, n):
        j = rng.randrange(i)
        a, b = perm[i], perm[j]
        arcs.add((a, b) if rng.random() < 0.5 else (b, a))
    candidates = [(u, v) for u in range(n) for v in range(n) if u != v]
    rng.shuffle(candidates)
    for arc in candidates:
        if len(arcs) >= m:
            break
        arcs.add(arc)
    return Digraph(n, tuple(sorted(arcs)))


def distinct_digraphs(count: int, seed: int, n_max: int, m_max: int) -> list[Digraph]:
    rng = random.Random(seed)
    seen: dict[tuple, Digraph] = {}
    while len(seen) < count:
        n = rng.randint(2, n_max)
        m = rng.randint(n - 1, m_max)
        d = random_weakly_connected_digraph(rng, n, m)
        seen.setdefault((d.n, d.arcs), d)
    return list(seen.values())


# ---------------------------------------------------------------------------
# reference combinatorics


def brute_min_tjoin(g: Graph, T: frozenset[int]) -> int | None:
    """Minimum size of an edge set with odd-degree set exactly T
    (no connectivity constraint), by subset enumeration."""
    best = None
    for mask in range(1 << g.m):
        if odd_set(g.n, g.edges, mask) == T:
            size = bin(mask).count("1")
            if best is None or size < best:
                best = size
    return best


def representative_failures(m: int, indep, fam_masks, out_masks, q: int):
    """Exhaustive check of the q-representative property.

    ``indep(mask)`` must be the exact independence oracle.  Returns
    (failures, live_probes, total_probes) where a probe is one candidate
    extension set Y with |Y| <= q, and a live probe is one for which some
    input member actually extends (only those can fail).
    """
    failures = live = total = 0
    out_list = list(out_masks)
    for ysize in range(q + 1):
        for ycombo in itertools.combinations(range(m), ysize):
            ymask = mask_of(ycombo)
            total += 1
            if any(x & ymask == 0 and indep(x | ymask) for x in fam_masks):
                live += 1
                if not any(x & ymask == 0 and indep(x | ymask)
                           for x in out_list):
                    failures += 1
    return failures, live, total
