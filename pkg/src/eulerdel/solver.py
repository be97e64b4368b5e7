"""Exact edge-deletion solvers via a path-system dynamic program.

A feasible deletion set for the undirected problems is a parity-fixing
edge set (odd degree exactly at the wrong-parity vertices T) whose
removal keeps the graph connected; a minimum one decomposes into |T|/2
edge-disjoint simple paths pairing up T.  The DP grows such path
systems one edge per round.  A table cell is keyed by (mask of consumed
terminal slots, final vertex of the in-progress path, or EPS when every
started path is complete); after each round the family stored in every
cell is pruned to a representative subfamily in the co-graphic matroid,
which keeps cells single-exponential in the budget while preserving
extendability to some solution.  Directed instances run the same engine
with polarized slots (out-surplus opens a path, in-surplus closes one,
arcs are walked forward only) over the co-graphic matroid of the
underlying undirected multigraph.

Budgets kappa are tried in increasing order; a budget run inspects only
the full-coverage cell after its last round.  Stored edge sets are kept
exactly co-independent throughout, so any returned set is a genuine
solution, and in exact (untruncated) mode the first hit is a minimum
one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from . import cographic
from .cographic import CographicRep, TruncatedRep, build_cographic
from .gf2 import DEFAULT_FIELD_BITS, ExtField
from .graphs import Digraph, Graph, ids_of
from .repset import SetFamily, representative_family

EPS = -1

TRUNCATE_MODES = ("random", "off")

# DpTable: dict[(used_slots, final_vertex)] -> dict[(edges, last_path_vertices)]
#          -> internal entry (edges, last_path_vertices, initial_slot, basis)
# where basis holds pivot-reduced matroid columns of the chosen edges, making
# the co-independence filter one xor-reduction per candidate edge.


class SolverError(RuntimeError):
    """Internal failure: a returned candidate did not verify."""


class TerminalSlots:
    """Numbered terminal slots.

    Undirected terminals get polarity 0 (a slot may open or close a
    path); directed surplus units get +1 (opens) or -1 (closes).  DP
    cells are keyed by the bitmask of consumed slots.
    """

    __slots__ = ("vertices", "polarity", "count", "full_mask", "plus_mask",
                 "directed", "_open_at", "_close_at")

    def __init__(self, vertices: Sequence[int], polarity: Sequence[int]):
        if len(vertices) != len(polarity):
            raise ValueError("vertices and polarity length mismatch")
        self.vertices = tuple(vertices)
        self.polarity = tuple(polarity)
        self.count = len(self.vertices)
        self.full_mask = (1 << self.count) - 1
        self.plus_mask = 0
        self.directed = any(p != 0 for p in self.polarity)
        open_at: dict[int, list[int]] = {}
        close_at: dict[int, list[int]] = {}
        for si, (v, p) in enumerate(zip(self.vertices, self.polarity)):
            if p >= 0:
                open_at.setdefault(v, []).append(si)
                if p > 0:
                    self.plus_mask |= 1 << si
            if p <= 0:
                close_at.setdefault(v, []).append(si)
        self._open_at = {v: tuple(s) for v, s in open_at.items()}
        self._close_at = {v: tuple(s) for v, s in close_at.items()}

    @classmethod
    def for_terminals(cls, terminals: Sequence[int]) -> "TerminalSlots":
        return cls(tuple(terminals), (0,) * len(terminals))

    @classmethod
    def for_surplus(cls, plus: Sequence[int], minus: Sequence[int]) -> "TerminalSlots":
        return cls(tuple(plus) + tuple(minus), (1,) * len(plus) + (-1,) * len(minus))

    def lowest_free_close(self, used: int, v: int) -> int | None:
        for si in self._close_at.get(v, ()):
            if not used >> si & 1:
                return si
        return None

    def free_open_slots(self, used: int) -> list[tuple[int, int]]:
        """(slot, vertex) pairs, lowest free opening slot per vertex."""
        out = []
        seen = 0
        for si in range(self.count):
            if used >> si & 1 or self.polarity[si] < 0:
                continue
            v = self.vertices[si]
            if seen >> v & 1:
                continue
            seen |= 1 << v
            out.append((si, v))
        return out

    def min_rounds_left(self, used: int, final: int) -> int:
        """Lower bound on further edges needed to consume all free slots."""
        if self.directed:
            free_plus = (self.plus_mask & ~used).bit_count()
            return free_plus + (0 if final == EPS else 1)
        free = self.count - (used & self.full_mask).bit_count()
        return free // 2 if final == EPS else (free + 1) // 2


@dataclass(frozen=True)
class PartialSolution:
    """One path system under construction.

    edges and last_path_vertices are bitmasks; final_vertex is None
    when every started path is complete (the in-progress path is empty
    then, and last_path_initial_slot is None as well).  used_slots
    bookkeeping belongs to the DP rounds; compose() never touches it.
    """

    edges: int
    used_slots: int
    final_vertex: int | None
    last_path_vertices: int
    last_path_initial_slot: int | None


def compose(
    p: PartialSolution, u: int, v: int, eid: int, rep: CographicRep
) -> PartialSolution | None:
    """Append the oriented edge (u, v) with id eid to the path system.

    If u is the final vertex of the in-progress path, that path is
    extended (rejected with None when v already lies on it); otherwise
    the current path is finished as-is and a fresh one starts as u-v.
    Also returns None when the grown edge set stops being
    co-independent (deleting it would disconnect the graph).
    """
    if p.edges >> eid & 1:
        raise ValueError(f"edge {eid} already in the partial solution")
    grown = p.edges | 1 << eid
    if not rep.is_coindependent(grown):
        return None
    if p.final_vertex == u:
        if p.last_path_vertices >> v & 1:
            return None
        return PartialSolution(
            grown, p.used_slots, v, p.last_path_vertices | 1 << v,
            p.last_path_initial_slot,
        )
    return PartialSolution(grown, p.used_slots, v, (1 << u) | (1 << v), None)


@dataclass(frozen=True)
class RoundStats:
    kappa: int
    round: int
    cells: int
    max_family_raw: int
    max_family_kept: int


@dataclass
class SolveResult:
    found: bool
    size: int | None
    mask: int | None
    edges: tuple[int, ...] | None
    mode: str
    k: int
    seed: int
    truncated: bool
    field_bits: int
    retries: int
    rounds: list[RoundStats] = field(default_factory=list)


def _reduce(col: int, basis: tuple[tuple[int, int], ...]) -> int:
    for pivot, vec in basis:
        if col >> pivot & 1:
            col ^= vec
    return col


def make_initial_table() -> dict:
    """Round-0 table: the empty path system in the (no slots, EPS) cell."""
    return {(0, EPS): {(0, 0): (0, 0, EPS, ())}}


def _round_index(prev: dict) -> int:
    for cell_members in prev.values():
        for entry in cell_members.values():
            return entry[0].bit_count() + 1
    return 1


def _store(nxt, slots: TerminalSlots, kappa: int, i: int, cell, entry) -> None:
    if i + slots.min_rounds_left(cell[0], cell[1]) > kappa:
        return
    d = nxt.get(cell)
    if d is None:
        d = nxt[cell] = {}
    key = (entry[0], entry[1])
    if key not in d:
        d[key] = entry


def _expand(adj, slots: TerminalSlots, col_bits, kappa: int, i: int,
            cell, entry, nxt) -> None:
    used, fin = cell
    edges, lastpath, init_slot, basis = entry
    if fin == EPS:
        # open a new path at a free slot, optionally closing right away
        for si, u in slots.free_open_slots(used):
            used_open = used | 1 << si
            for eid, w in adj[u]:
                if edges >> eid & 1:
                    continue
                x = _reduce(col_bits[eid], basis)
                if x == 0:
                    continue
                nb = basis + ((x.bit_length() - 1, x),)
                grown = edges | 1 << eid
                _store(nxt, slots, kappa, i, (used_open, w),
                       (grown, (1 << u) | (1 << w), si, nb))
                sj = slots.lowest_free_close(used_open, w)
                if sj is not None:
                    _store(nxt, slots, kappa, i, (used_open | 1 << sj, EPS),
                           (grown, 0, EPS, nb))
    else:
        # extend the in-progress path, optionally closing at the new end
        for eid, w in adj[fin]:
            if edges >> eid & 1 or lastpath >> w & 1:
                continue
            x = _reduce(col_bits[eid], basis)
            if x == 0:
                continue
            nb = basis + ((x.bit_length() - 1, x),)
            grown = edges | 1 << eid
            _store(nxt, slots, kappa, i, (used, w),
                   (grown, lastpath | 1 << w, init_slot, nb))
            sj = slots.lowest_free_close(used, w)
            if sj is not None:
                _store(nxt, slots, kappa, i, (used | 1 << sj, EPS),
                       (grown, 0, EPS, nb))


def _dp_round(prev: dict, adj, slots: TerminalSlots, col_bits, kappa: int,
              prune_rep, prune: bool) -> tuple[dict, int, int, int]:
    """One round; returns (table, cells, max_raw, max_kept)."""
    i = _round_index(prev)
    nxt: dict = {}
    for cell in sorted(prev):
        for entry in prev[cell].values():
            _expand(adj, slots, col_bits, kappa, i, cell, entry, nxt)
    cells = len(nxt)
    max_raw = max((len(d) for d in nxt.values()), default=0)
    if prune:
        q = kappa - i
        # in exact mode a lone member is always kept (it is independent
        # by the compose filter, so its minor vector is nonzero)
        exact = not isinstance(prune_rep, TruncatedRep)
        table: dict = {}
        for cell in sorted(nxt):
            if exact and len(nxt[cell]) == 1:
                table[cell] = nxt[cell]
                continue
            entries = list(nxt[cell].values())
            fam = SetFamily(i, [(e[0], e) for e in entries])
            kept = representative_family(fam, prune_rep, q)
            if kept.members:
                table[cell] = {(e[0], e[1]): e for _, e in kept.members}
    else:
        table = nxt
    max_kept = max((len(d) for d in table.values()), default=0)
    return table, cells, max_raw, max_kept


def dp_round_undirected(prev: dict, g: Graph, slots: TerminalSlots, kappa: int,
                        rep: CographicRep,
                        prune_rep: CographicRep | TruncatedRep | None = None,
                        prune: bool = True) -> dict:
    """Advance the table by one edge.  From an all-paths-complete cell a
    new path opens at a free slot (and may close immediately as a
    single edge); otherwise the in-progress path extends along an
    incident edge and may close at a free slot of its new end.  Each
    resulting cell is then pruned with q = kappa - i."""
    table, _, _, _ = _dp_round(prev, g.adj, slots, rep.col_bits, kappa,
                               prune_rep if prune_rep is not None else rep, prune)
    return table


def dp_round_directed(prev: dict, d: Digraph, slots: TerminalSlots, kappa: int,
                      rep: CographicRep,
                      prune_rep: CographicRep | TruncatedRep | None = None,
                      prune: bool = True) -> dict:
    """Directed variant: arcs are walked forward, paths open only at
    free plus slots and close only at free minus slots."""
    table, _, _, _ = _dp_round(prev, d.out_adj, slots, rep.col_bits, kappa,
                               prune_rep if prune_rep is not None else rep, prune)
    return table


def _run_budget(adj, slots: TerminalSlots, col_bits, prune_rep, kappa: int,
                prune: bool, stats: list[RoundStats]) -> int | None:
    """Run rounds 1..kappa; inspect only the final full-coverage cell."""
    table = make_initial_table()
    target = (slots.full_mask, EPS)
    for i in range(1, kappa + 1):
        table, cells, max_raw, max_kept = _dp_round(
            table, adj, slots, col_bits, kappa, prune_rep, prune)
        stats.append(RoundStats(kappa, i, cells, max_raw, max_kept))
        if not table:
            return None
    hit = table.get(target)
    if hit:
        return next(iter(hit.values()))[0]
    return None


def _solve(matroid_graph: Graph, adj, slots: TerminalSlots, k: int, mode: str,
           verify_fn: Callable[[int], bool], *, truncate: str, seed: int,
           field_bits: int, prune: bool) -> SolveResult:
    if truncate not in TRUNCATE_MODES:
        raise ValueError(f"truncate={truncate!r} not in {TRUNCATE_MODES}")
    use_trunc = truncate == "random"
    fld = ExtField.default(field_bits) if use_trunc else None
    rep = build_cographic(matroid_graph)
    stats: list[RoundStats] = []
    retries = 0

    def finish(mask: int | None) -> SolveResult:
        if mask is None:
            return SolveResult(False, None, None, None, mode, k, seed,
                               use_trunc, field_bits, retries, stats)
        return SolveResult(True, mask.bit_count(), mask, ids_of(mask), mode,
                           k, seed, use_trunc, field_bits, retries, stats)

    kappa_min = max(1, slots.min_rounds_left(0, EPS))
    # a co-independent set never exceeds the matroid rank, so budgets
    # beyond it cannot succeed
    for kappa in range(kappa_min, min(k, rep.corank) + 1):
        prune_rep = (
            cographic.truncate(rep, kappa, [seed, kappa], fld) if use_trunc else rep
        )
        mask = _run_budget(adj, slots, rep.col_bits, prune_rep, kappa, prune, stats)
        if mask is None:
            continue
        if verify_fn(mask):
            return finish(mask)
        if use_trunc:
            retries += 1
            prune_rep = cographic.truncate(rep, kappa, [seed, kappa, 1], fld)
            mask = _run_budget(adj, slots, rep.col_bits, prune_rep, kappa,
                               prune, stats)
            if mask is not None and verify_fn(mask):
                return finish(mask)
        raise SolverError(
            f"budget {kappa} candidate failed verification (mode={mode}, seed={seed})"
        )
    return finish(None)


def _trivial(mode: str, k: int, seed: int, truncate: str, field_bits: int,
             found: bool) -> SolveResult:
    if found:
        return SolveResult(True, 0, 0, (), mode, k, seed,
                           truncate == "random", field_bits, 0)
    return SolveResult(False, None, None, None, mode, k, seed,
                       truncate == "random", field_bits, 0)


def _check_args(k: int, truncate: str) -> None:
    if k < 0:
        raise ValueError(f"budget k={k} must be nonnegative")
    if truncate not in TRUNCATE_MODES:
        raise ValueError(f"truncate={truncate!r} not in {TRUNCATE_MODES}")


def _tjoin_slots(g: Graph, T: Iterable[int]) -> TerminalSlots:
    T = tuple(T)
    if len(set(T)) != len(T):
        raise ValueError("terminal set contains repeats")
    for v in T:
        if not 0 <= v < g.n:
            raise ValueError(f"terminal {v} out of range")
    return TerminalSlots.for_terminals(tuple(sorted(T)))


def solve_co_connected_tjoin(
    g: Graph, T: Iterable[int], k: int, *, truncate: str = "random",
    seed: int = 0, field_bits: int = DEFAULT_FIELD_BITS, prune: bool = True,
    mode: str = "tjoin", verify_fn: Callable[[int], bool] | None = None,
) -> SolveResult:
    """Smallest set S, |S| <= k, with odd degree in (V, S) exactly at T
    and G minus S connected; NO when none exists.

    Raises on a disconnected input graph.  |T| odd is an immediate NO
    (parities cannot work out), as is |T| > 2k.
    """
    _check_args(k, truncate)
    if not g.is_connected():
        raise ValueError("input graph is disconnected")
    slots = _tjoin_slots(g, T)
    if slots.count % 2 == 1:
        return _trivial(mode, k, seed, truncate, field_bits, False)
    if slots.count == 0:
        return _trivial(mode, k, seed, truncate, field_bits, True)
    if slots.count > 2 * k:
        return _trivial(mode, k, seed, truncate, field_bits, False)
    if verify_fn is None:
        T_set = set(slots.vertices)

        def verify_fn(mask: int) -> bool:
            return g.is_connected(mask) and _sub_odd_set(g, mask) == T_set

    return _solve(g, g.adj, slots, k, mode, verify_fn, truncate=truncate,
                  seed=seed, field_bits=field_bits, prune=prune)


def _sub_odd_set(g: Graph, mask: int) -> set[int]:
    """Odd-degree vertices of the spanning subgraph (V, mask)."""
    deg = [0] * g.n
    for eid in ids_of(mask):
        u, v = g.edges[eid]
        deg[u] += 1
        deg[v] += 1
    return {v for v in range(g.n) if deg[v] % 2 == 1}


def solve_ueed(g: Graph, k: int, *, truncate: str = "random", seed: int = 0,
               field_bits: int = DEFAULT_FIELD_BITS, prune: bool = True) -> SolveResult:
    """Delete at most k edges so the rest is connected with all degrees
    even.  Raises on disconnected input."""
    _check_args(k, truncate)
    if not g.is_connected():
        raise ValueError("input graph is disconnected")
    return solve_co_connected_tjoin(
        g, g.odd_vertices(), k, truncate=truncate, seed=seed,
        field_bits=field_bits, prune=prune, mode="ueed",
        verify_fn=g.is_eulerian,
    )


def solve_ucoed(g: Graph, k: int, *, truncate: str = "random", seed: int = 0,
                field_bits: int = DEFAULT_FIELD_BITS, prune: bool = True) -> SolveResult:
    """Delete at most k edges so the rest is connected with all degrees
    odd.  Raises on disconnected input."""
    _check_args(k, truncate)
    if not g.is_connected():
        raise ValueError("input graph is disconnected")
    T = tuple(v for v, d in enumerate(g.degrees()) if d % 2 == 0)

    def verify(mask: int) -> bool:
        return g.is_connected(mask) and len(g.odd_vertices(mask)) == g.n

    return solve_co_connected_tjoin(
        g, T, k, truncate=truncate, seed=seed, field_bits=field_bits,
        prune=prune, mode="ucoed", verify_fn=verify,
    )


def solve_directed(d: Digraph, k: int, *, truncate: str = "random", seed: int = 0,
                   field_bits: int = DEFAULT_FIELD_BITS, prune: bool = True) -> SolveResult:
    """Delete at most k arcs so the rest is weakly connected and
    balanced (equivalently, Eulerian).  Raises on weakly disconnected
    input."""
    _check_args(k, truncate)
    if not d.is_weakly_connected():
        raise ValueError("input digraph is weakly disconnected")
    plus, minus = d.surplus_terminals()
    if not plus:
        return _trivial("deed", k, seed, truncate, field_bits, True)
    if len(plus) > k:
        # each unit of out-surplus costs at least one deleted arc
        return _trivial("deed", k, seed, truncate, field_bits, False)
    slots = TerminalSlots.for_surplus(plus, minus)
    return _solve(d.underlying(), d.out_adj, slots, k, "deed", d.is_eulerian,
                  truncate=truncate, seed=seed, field_bits=field_bits, prune=prune)


solve_deed = solve_directed


def solution_is_forest(g: Graph, mask: int) -> bool:
    """True iff the edge set contains no cycle (union-find)."""
    parent = list(range(g.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for eid in ids_of(mask):
        u, v = g.edges[eid]
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def solution_is_dag(d: Digraph, mask: int) -> bool:
    """True iff the arc set is acyclic (Kahn peeling)."""
    ids = ids_of(mask)
    indeg = [0] * d.n
    out: dict[int, list[int]] = {}
    for aid in ids:
        u, v = d.arcs[aid]
        indeg[v] += 1
        out.setdefault(u, []).append(v)
    queue = [v for v in range(d.n) if indeg[v] == 0]
    seen = 0
    while queue:
        x = queue.pop()
        seen += 1
        for y in out.get(x, ()):
            indeg[y] -= 1
            if indeg[y] == 0:
                queue.append(y)
    return seen == d.n
