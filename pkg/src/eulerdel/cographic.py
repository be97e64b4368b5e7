"""Co-graphic (bond) matroid of a connected graph, over GF(2).

An edge set is independent iff deleting it keeps the graph connected.
The representation assigns one row per non-tree edge of a spanning
tree: row i has a 1 in column e iff e lies on the fundamental cycle of
the i-th non-tree edge (the non-tree edge itself included).  The rows
span the cycle space, whose orthogonal complement is the cut space, so
a column set is dependent exactly when it contains a nonempty cut,
i.e. when deleting it disconnects the graph (rank = m - n + 1).

Truncation multiplies the representation by a random t x (m-n+1)
matrix over GF(2^s), preserving independence of sets of size <= t with
high probability.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import _kernels as K
from .gf2 import BitMatrix, ExtField, ExtMatrix
from .graphs import Graph


@dataclass
class CographicRep:
    """GF(2) representation of the co-graphic matroid of ``graph``."""

    graph: Graph
    tree_mask: int
    row_edges: tuple[int, ...]  # non-tree edge ids, one per row
    col_bits: tuple[int, ...]  # per-edge column over len(row_edges) row bits
    _ext1: ExtMatrix | None = field(default=None, repr=False, compare=False)

    @property
    def m(self) -> int:
        return self.graph.m

    @property
    def corank(self) -> int:
        """Matroid rank m - n + 1 (number of representation rows)."""
        return len(self.row_edges)

    def base_matrix(self) -> BitMatrix:
        mat = BitMatrix(self.corank, self.m)
        for e, col in enumerate(self.col_bits):
            bits = col
            while bits:
                low = bits & -bits
                mat.set(low.bit_length() - 1, e, 1)
                bits ^= low
        return mat

    def ext_matrix(self) -> ExtMatrix:
        """The same matrix viewed over GF(2^1) (for exact-mode minors)."""
        if self._ext1 is None:
            self._ext1 = self.base_matrix().to_ext(ExtField(1, 0b11))
        return self._ext1

    def is_coindependent(self, mask: int) -> bool:
        """True iff the edge set is independent (deletion keeps the
        graph connected)."""
        pivots: list[int] = []
        bits = mask
        while bits:
            low = bits & -bits
            bits ^= low
            v = self.col_bits[low.bit_length() - 1]
            for p in pivots:
                v = min(v, v ^ p)
            if v == 0:
                return False
            pivots.append(v)
        return True


def build_cographic(g: Graph) -> CographicRep:
    """Build the representation from a spanning tree found by BFS from
    vertex 0 (edges scanned in id order).  Requires a connected graph."""
    if not g.is_connected():
        raise ValueError("co-graphic matroid needs a connected graph")
    parent = [-1] * g.n
    parent_edge = [-1] * g.n
    depth = [0] * g.n
    in_tree = [False] * g.n
    tree_mask = 0
    if g.n > 0:
        in_tree[0] = True
        queue = [0]
        head = 0
        while head < len(queue):
            x = queue[head]
            head += 1
            for eid, y in g.adj[x]:
                if not in_tree[y]:
                    in_tree[y] = True
                    parent[y] = x
                    parent_edge[y] = eid
                    depth[y] = depth[x] + 1
                    tree_mask |= 1 << eid
                    queue.append(y)

    def tree_path_mask(u: int, v: int) -> int:
        out = 0
        while depth[u] > depth[v]:
            out |= 1 << parent_edge[u]
            u = parent[u]
        while depth[v] > depth[u]:
            out |= 1 << parent_edge[v]
            v = parent[v]
        while u != v:
            out |= 1 << parent_edge[u]
            out |= 1 << parent_edge[v]
            u = parent[u]
            v = parent[v]
        return out

    row_edges = tuple(e for e in range(g.m) if not tree_mask >> e & 1)
    col_bits = [0] * g.m
    for i, e in enumerate(row_edges):
        u, v = g.edges[e]
        cycle = tree_path_mask(u, v) | (1 << e)
        bits = cycle
        while bits:
            low = bits & -bits
            col_bits[low.bit_length() - 1] |= 1 << i
            bits ^= low
    return CographicRep(g, tree_mask, row_edges, tuple(col_bits))


@dataclass
class TruncatedRep:
    """Random t-truncation of a CographicRep over GF(2^s)."""

    source: CographicRep
    field: ExtField
    t: int
    entries: np.ndarray  # uint32, shape (t, m)

    @property
    def m(self) -> int:
        return self.source.m

    def ext_matrix(self) -> ExtMatrix:
        return ExtMatrix(self.field, self.entries)


def truncate(rep: CographicRep, t: int, seed, fld: ExtField | None = None) -> TruncatedRep:
    """Left-multiply the representation by a random t x corank matrix.

    ``seed`` feeds numpy's default_rng and may be an int or a sequence
    of ints; ``fld`` defaults to GF(2^16).  When t equals the full rank
    the random matrix is redrawn until invertible, so independence is
    preserved exactly.
    """
    if fld is None:
        fld = ExtField.default()
    r = rep.corank
    if t < 0 or t > r:
        raise ValueError(f"truncation rank t={t} outside 0..{r}")
    rng = np.random.default_rng(seed)
    attempts = 0
    while True:
        R = rng.integers(0, fld.order, size=(t, r), dtype=np.uint32)
        if t < r or t == 0 or K.ext_rank(R, fld.poly, fld.s) == t:
            break
        attempts += 1
        if attempts > 64:  # pragma: no cover
            raise RuntimeError("could not draw an invertible truncation matrix")
    entries = np.zeros((t, rep.m), dtype=np.uint32)
    if t:
        for e, col in enumerate(rep.col_bits):
            bits = col
            while bits:
                low = bits & -bits
                entries[:, e] ^= R[:, low.bit_length() - 1]
                bits ^= low
    return TruncatedRep(rep, fld, t, entries)
