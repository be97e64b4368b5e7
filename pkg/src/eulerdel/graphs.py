"""Graph and digraph containers plus the instance text format.

Instances use a DIMACS-like format: a header line ``p edge <n> <m>`` or
``p arc <n> <m>``, followed by exactly ``m`` lines ``e <u> <v>`` (or
``a <u> <v>`` for arcs) with 1-based vertex ids.  Blank lines and lines
starting with ``#`` are ignored.  Vertices are 0-based internally; edge
ids are dense, 0..m-1, in file order.

Edge sets are passed around as integer bitmasks over edge ids.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence


class ParseError(ValueError):
    """Raised for malformed instance text; the message names the line."""


def mask_of(ids: Iterable[int]) -> int:
    """Bitmask over edge ids."""
    out = 0
    for eid in ids:
        out |= 1 << eid
    return out


def ids_of(mask: int) -> tuple[int, ...]:
    """Sorted edge ids present in a bitmask."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


@dataclass(frozen=True)
class Graph:
    """Undirected graph with dense edge ids.

    Parallel edges are permitted only when ``allow_parallel`` is set
    (used for the underlying multigraph of a digraph); the parser never
    produces them.  Self-loops are always rejected.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    allow_parallel: bool = False
    adj: tuple[tuple[tuple[int, int], ...], ...] = field(
        init=False, repr=False, compare=False
    )

    def __post_init__(self) -> None:
        seen: set[tuple[int, int]] = set()
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for eid, (u, v) in enumerate(self.edges):
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {eid}: vertex out of range")
            if u == v:
                raise ValueError(f"edge {eid}: self-loop")
            key = (min(u, v), max(u, v))
            if key in seen and not self.allow_parallel:
                raise ValueError(f"edge {eid}: duplicate of earlier edge")
            seen.add(key)
            adj[u].append((eid, v))
            adj[v].append((eid, u))
        object.__setattr__(self, "adj", tuple(tuple(a) for a in adj))

    @property
    def m(self) -> int:
        return len(self.edges)

    def degrees(self, deleted: int = 0) -> list[int]:
        """Vertex degrees after removing the ``deleted`` edge mask."""
        deg = [0] * self.n
        for eid, (u, v) in enumerate(self.edges):
            if deleted >> eid & 1:
                continue
            deg[u] += 1
            deg[v] += 1
        return deg

    def odd_vertices(self, deleted: int = 0) -> tuple[int, ...]:
        return tuple(v for v, d in enumerate(self.degrees(deleted)) if d % 2 == 1)

    def is_connected(self, deleted: int = 0) -> bool:
        """Connectivity on all ``n`` vertices; an isolated vertex counts
        as disconnected whenever n > 1."""
        if self.n <= 1:
            return True
        seen = [False] * self.n
        seen[0] = True
        stack = [0]
        count = 1
        while stack:
            x = stack.pop()
            for eid, y in self.adj[x]:
                if deleted >> eid & 1 or seen[y]:
                    continue
                seen[y] = True
                count += 1
                stack.append(y)
        return count == self.n

    def is_eulerian(self, deleted: int = 0) -> bool:
        """Connected with every degree even."""
        return self.is_connected(deleted) and not self.odd_vertices(deleted)

    def serialize(self) -> str:
        lines = [f"p edge {self.n} {self.m}"]
        lines += [f"e {u + 1} {v + 1}" for u, v in self.edges]
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Digraph:
    """Simple digraph; antiparallel arc pairs are allowed, self-loops
    and repeated arcs are not."""

    n: int
    arcs: tuple[tuple[int, int], ...]
    out_adj: tuple[tuple[tuple[int, int], ...], ...] = field(
        init=False, repr=False, compare=False
    )
    in_adj: tuple[tuple[tuple[int, int], ...], ...] = field(
        init=False, repr=False, compare=False
    )

    def __post_init__(self) -> None:
        seen: set[tuple[int, int]] = set()
        out_adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        in_adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for aid, (u, v) in enumerate(self.arcs):
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"arc {aid}: vertex out of range")
            if u == v:
                raise ValueError(f"arc {aid}: self-loop")
            if (u, v) in seen:
                raise ValueError(f"arc {aid}: duplicate of earlier arc")
            seen.add((u, v))
            out_adj[u].append((aid, v))
            in_adj[v].append((aid, u))
        object.__setattr__(self, "out_adj", tuple(tuple(a) for a in out_adj))
        object.__setattr__(self, "in_adj", tuple(tuple(a) for a in in_adj))

    @property
    def m(self) -> int:
        return len(self.arcs)

    def out_degrees(self, deleted: int = 0) -> list[int]:
        deg = [0] * self.n
        for aid, (u, _) in enumerate(self.arcs):
            if not deleted >> aid & 1:
                deg[u] += 1
        return deg

    def in_degrees(self, deleted: int = 0) -> list[int]:
        deg = [0] * self.n
        for aid, (_, v) in enumerate(self.arcs):
            if not deleted >> aid & 1:
                deg[v] += 1
        return deg

    def is_balanced(self, deleted: int = 0) -> bool:
        return self.in_degrees(deleted) == self.out_degrees(deleted)

    def underlying(self) -> Graph:
        """Underlying undirected multigraph (antiparallel arcs become
        parallel edges; arc ids carry over as edge ids)."""
        return Graph(self.n, self.arcs, allow_parallel=True)

    def is_weakly_connected(self, deleted: int = 0) -> bool:
        return self.underlying().is_connected(deleted)

    def is_eulerian(self, deleted: int = 0) -> bool:
        """Weakly connected and balanced (this already forces strong
        connectivity)."""
        return self.is_weakly_connected(deleted) and self.is_balanced(deleted)

    def surplus_terminals(self, deleted: int = 0) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Imbalance terminal multisets ``(T_plus, T_minus)``.

        A vertex with out-degree exceeding in-degree by d appears d
        times in T_plus; the in-surplus side goes to T_minus.  Both are
        sorted by vertex id and always have equal total size.
        """
        outd = self.out_degrees(deleted)
        ind = self.in_degrees(deleted)
        plus: list[int] = []
        minus: list[int] = []
        for v in range(self.n):
            d = outd[v] - ind[v]
            if d > 0:
                plus.extend([v] * d)
            elif d < 0:
                minus.extend([v] * (-d))
        return tuple(plus), tuple(minus)

    def serialize(self) -> str:
        lines = [f"p arc {self.n} {self.m}"]
        lines += [f"a {u + 1} {v + 1}" for u, v in self.arcs]
        return "\n".join(lines) + "\n"


def _content_lines(text: str) -> Iterator[tuple[int, str]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line


def parse_instance(text: str) -> Graph | Digraph:
    """Parse instance text into a Graph (``p edge``) or Digraph (``p arc``).

    Raises ParseError naming the offending line number on any defect:
    bad header, unknown line type, vertex out of range, self-loop,
    duplicate edge/arc, or an edge count that disagrees with the header.
    """
    lines = _content_lines(text)
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise ParseError("line 1: missing problem header") from None
    parts = header.split()
    if len(parts) != 4 or parts[0] != "p" or parts[1] not in ("edge", "arc"):
        raise ParseError(f"line {lineno}: expected 'p edge <n> <m>' or 'p arc <n> <m>'")
    try:
        n, m = int(parts[2]), int(parts[3])
    except ValueError:
        raise ParseError(f"line {lineno}: non-integer vertex/edge count") from None
    if n < 0 or m < 0:
        raise ParseError(f"line {lineno}: negative vertex/edge count")
    directed = parts[1] == "arc"
    tag = "a" if directed else "e"

    pairs: list[tuple[int, int]] = []
    seen: dict[tuple[int, int], int] = {}
    for lineno, line in lines:
        parts = line.split()
        if parts[0] == "p":
            raise ParseError(f"line {lineno}: duplicate problem header")
        if parts[0] != tag or len(parts) != 3:
            raise ParseError(f"line {lineno}: expected '{tag} <u> <v>'")
        try:
            u, v = int(parts[1]), int(parts[2])
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer endpoint") from None
        if not (1 <= u <= n and 1 <= v <= n):
            raise ParseError(f"line {lineno}: vertex out of range 1..{n}")
        if u == v:
            raise ParseError(f"line {lineno}: self-loop")
        key = (u, v) if directed else (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(
                f"line {lineno}: duplicate of line {seen[key]}"
            )
        seen[key] = lineno
        if len(pairs) >= m:
            raise ParseError(f"line {lineno}: more than {m} edge lines")
        pairs.append((u - 1, v - 1))
    if len(pairs) != m:
        raise ParseError(f"header announced {m} edges, found {len(pairs)}")
    if directed:
        return Digraph(n, tuple(pairs))
    return Graph(n, tuple(pairs))


def edge_lines(g: Graph | Digraph, mask: int) -> list[str]:
    """1-based text lines for the edges in ``mask``, in id order."""
    tag = "a" if isinstance(g, Digraph) else "e"
    pairs = g.arcs if isinstance(g, Digraph) else g.edges
    return [f"{tag} {pairs[eid][0] + 1} {pairs[eid][1] + 1}" for eid in ids_of(mask)]


# functional aliases for the container methods

def is_connected(g: Graph, deleted: int = 0) -> bool:
    return g.is_connected(deleted)


def is_eulerian_undirected(g: Graph, deleted: int = 0) -> bool:
    return g.is_eulerian(deleted)


def is_eulerian_directed(d: Digraph, deleted: int = 0) -> bool:
    return d.is_eulerian(deleted)


def odd_vertices(g: Graph, deleted: int = 0) -> tuple[int, ...]:
    return g.odd_vertices(deleted)


def degree_surplus_terminals(d: Digraph, deleted: int = 0) -> tuple[tuple[int, ...], tuple[int, ...]]:
    return d.surplus_terminals(deleted)
