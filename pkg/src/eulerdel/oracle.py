"""Ground-truth brute force, the polynomial min T-join utility, and
planted YES-instance generation.

brute_force enumerates edge subsets by increasing size, so its answers
are minimum sizes by construction; everything here is independent of
the DP solver and usable as an oracle against it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .graphs import Digraph, Graph, mask_of

BRUTE_FORCE_EDGE_CEILING = 22
TJOIN_TERMINAL_CEILING = 20

MODES = ("ueed", "ucoed", "deed")


@dataclass(frozen=True)
class OracleVerdict:
    min_size: int | None
    witness: int | None

    @property
    def found(self) -> bool:
        return self.min_size is not None


def _predicate(problem: str, g: Graph | Digraph):
    if problem in ("ueed", "ucoed") and not isinstance(g, Graph):
        raise ValueError(f"{problem} expects an undirected instance")
    if problem == "deed" and not isinstance(g, Digraph):
        raise ValueError("deed expects a directed instance")
    if problem == "ueed":
        return g.is_eulerian
    if problem == "ucoed":
        return lambda mask: g.is_connected(mask) and len(g.odd_vertices(mask)) == g.n
    if problem == "deed":
        return g.is_eulerian
    raise ValueError(f"unknown problem {problem!r}; choose from {MODES}")


def brute_force(problem: str, g: Graph | Digraph, k: int,
                ceiling: int = BRUTE_FORCE_EDGE_CEILING) -> OracleVerdict:
    """Smallest verifying deletion set of size <= k by subset
    enumeration in increasing size; NONE-within-k when there is none."""
    if g.m > ceiling:
        raise ValueError(f"m={g.m} exceeds brute-force ceiling {ceiling}")
    if k < 0:
        raise ValueError("k must be nonnegative")
    ok = _predicate(problem, g)
    for size in range(0, min(k, g.m) + 1):
        for combo in combinations(range(g.m), size):
            mask = mask_of(combo)
            if ok(mask):
                return OracleVerdict(size, mask)
    return OracleVerdict(None, None)


def _bfs_tree(g: Graph, source: int) -> tuple[list[int], list[int]]:
    """(dist, parent_edge) of a BFS from source; -1 where unreachable."""
    dist = [-1] * g.n
    parent_edge = [-1] * g.n
    dist[source] = 0
    queue = [source]
    head = 0
    while head < len(queue):
        x = queue[head]
        head += 1
        for eid, y in g.adj[x]:
            if dist[y] < 0:
                dist[y] = dist[x] + 1
                parent_edge[y] = eid
                queue.append(y)
    return dist, parent_edge


def min_tjoin(g: Graph, T: Sequence[int]) -> int:
    """Minimum-cardinality T-join as an edge mask.

    All-pairs BFS distances among T feed a minimum-cost perfect
    matching by DP over terminal subsets; the matched shortest paths
    are combined by symmetric difference, whose size equals the
    matching cost.
    """
    T = sorted(set(T))
    if len(T) % 2 == 1:
        raise ValueError("|T| must be even")
    if not g.is_connected():
        raise ValueError("graph must be connected")
    if len(T) > TJOIN_TERMINAL_CEILING:
        raise ValueError(f"|T|={len(T)} exceeds ceiling {TJOIN_TERMINAL_CEILING}")
    if not T:
        return 0
    nt = len(T)
    trees = {t: _bfs_tree(g, t) for t in T}
    dist = [[trees[a][0][b] for b in T] for a in T]

    full = (1 << nt) - 1
    INF = 1 << 30
    dp = [INF] * (full + 1)
    choice: list[tuple[int, int] | None] = [None] * (full + 1)
    dp[0] = 0
    for mask in range(1, full + 1):
        if mask.bit_count() % 2 == 1:
            continue
        i = (mask & -mask).bit_length() - 1
        rest = mask ^ (1 << i)
        bits = rest
        while bits:
            low = bits & -bits
            j = low.bit_length() - 1
            bits ^= low
            c = dp[mask ^ (1 << i) ^ (1 << j)] + dist[i][j]
            if c < dp[mask]:
                dp[mask] = c
                choice[mask] = (i, j)

    out = 0
    mask = full
    while mask:
        i, j = choice[mask]  # type: ignore[misc]
        out ^= _path_mask(g, trees[T[i]][1], T[i], T[j])
        mask ^= (1 << i) | (1 << j)
    return out


def _path_mask(g: Graph, parent_edge: list[int], source: int, target: int) -> int:
    """Edge mask of the BFS tree path from target back to source."""
    out = 0
    x = target
    while x != source:
        eid = parent_edge[x]
        out |= 1 << eid
        u, v = g.edges[eid]
        x = u if v == x else v
    return out


def tjoin_lower_bound_prune(g: Graph, T: Sequence[int], k: int) -> bool:
    """True iff the instance can still be YES: the unconstrained
    minimum T-join already fits in k."""
    T = sorted(set(T))
    if len(T) % 2 == 1:
        return False
    if not T:
        return True
    return min_tjoin(g, T).bit_count() <= k


def _add_cycle_edges(rng: random.Random, n: int, present: set[tuple[int, int]],
                     directed: bool) -> list[tuple[int, int]] | None:
    """Try one random simple cycle; None if it collides with ``present``."""
    max_len = min(8, n)
    if max_len < (2 if directed else 3):
        return None
    length = rng.randint(2 if directed else 3, max_len)
    verts = rng.sample(range(n), length)
    cand = []
    for idx in range(length):
        u, v = verts[idx], verts[(idx + 1) % length]
        key = (u, v) if directed else (min(u, v), max(u, v))
        if key in cand or key in present:
            return None
        cand.append(key)
    return cand


def gen_yes_instance(mode: str, n: int, extra: int, seed: int,
                     target_m: int | None = None):
    """Random planted YES instance: a connected Eulerian base (one
    spanning cycle glued with random cycles) plus ``extra`` fresh
    edges/arcs.  Deleting the planted set restores the base, so the
    optimum is at most ``extra``.

    Returns (instance, k=extra, planted edge ids).  ``target_m`` asks
    for roughly that many total edges via extra glued cycles (parity
    and connectivity are preserved; best effort).
    """
    if mode not in ("ueed", "deed"):
        raise ValueError(f"generator supports ueed/deed, not {mode!r}")
    directed = mode == "deed"
    if extra < 0:
        raise ValueError("extra must be nonnegative")
    if n < (2 if directed else 3):
        raise ValueError(f"n={n} too small for a spanning cycle")
    rng = random.Random(seed)
    order = rng.sample(range(n), n)
    present: set[tuple[int, int]] = set()
    pairs: list[tuple[int, int]] = []
    for idx in range(n):
        u, v = order[idx], order[(idx + 1) % n]
        if directed:
            key = (u, v)
        else:
            key = (min(u, v), max(u, v))
        if key in present:  # n=2 undirected would duplicate; guarded above
            continue
        present.add(key)
        pairs.append((u, v) if directed else key)

    if target_m is not None:
        want = max(0, target_m - extra)
        misses = 0
        while len(pairs) < want and misses < 500:
            cand = _add_cycle_edges(rng, n, present, directed)
            if cand is None or len(pairs) + len(cand) > want:
                misses += 1
                continue
            for key in cand:
                present.add(key)
                pairs.append(key)

    limit = n * (n - 1) if directed else n * (n - 1) // 2
    if len(pairs) + extra > limit:
        raise ValueError(f"cannot fit {extra} extra edges on {n} vertices")
    planted = []
    while len(planted) < extra:
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u == v:
            continue
        key = (u, v) if directed else (min(u, v), max(u, v))
        if key in present:
            continue
        present.add(key)
        planted.append(len(pairs))
        pairs.append(key)

    inst: Graph | Digraph
    if directed:
        inst = Digraph(n, tuple(pairs))
    else:
        inst = Graph(n, tuple(pairs))
    return inst, extra, tuple(planted)
