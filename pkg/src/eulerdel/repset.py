"""Representative families of equal-size edge sets in a matroid.

A family S of b-sets is pruned to a q-representative subfamily: for
every set Y with |Y| <= q, if some X in S is disjoint from Y with
X u Y independent, then some kept X has the same property.  The
selection computes, per member X, the vector of all b x b minors of
its column block (in colexicographic row-subset order) and keeps a
greedy linear basis of those vectors, scanning members in family
order.  Over a field of characteristic 2 the Laplace expansion of any
(b+q)-minor is a signless linear functional on that vector, which is
what makes the basis survivors representative.

Exact mode runs on the untruncated GF(2) representation (the minor
vector then has C(rank, b) coordinates); truncated mode expects a
TruncatedRep of rank exactly b + q.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterator, Sequence

import numpy as np

from . import _kernels as K
from .cographic import CographicRep, TruncatedRep
from .graphs import ids_of

EXACT_DIM_CEILING = 1 << 24


def colex_subsets(t: int, b: int) -> Iterator[tuple[int, ...]]:
    """All b-subsets of range(t) in colexicographic order."""
    if b == 0:
        yield ()
        return
    if b > t:
        return
    for top in range(b - 1, t):
        for rest in colex_subsets(top, b - 1):
            yield rest + (top,)


@dataclass
class SetFamily:
    """Ordered family of b-element edge sets with attached payloads.

    Members are deduplicated by edge set; the first payload wins.
    """

    b: int
    members: list[tuple[int, object]]

    def __init__(self, b: int, members: Sequence[tuple[int, object]] = ()):
        self.b = b
        seen: set[int] = set()
        kept: list[tuple[int, object]] = []
        for mask, payload in members:
            if mask.bit_count() != b:
                raise ValueError(f"member 0x{mask:x} is not a {b}-set")
            if mask in seen:
                continue
            seen.add(mask)
            kept.append((mask, payload))
        self.members = kept

    @classmethod
    def from_masks(cls, b: int, masks: Sequence[int]) -> "SetFamily":
        return cls(b, [(m, None) for m in masks])

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[tuple[int, object]]:
        return iter(self.members)

    def masks(self) -> list[int]:
        return [m for m, _ in self.members]


def _ext_view(rep: CographicRep | TruncatedRep):
    """(entries uint32 (t, m), poly, s, t, truncated?) for either rep kind."""
    if isinstance(rep, TruncatedRep):
        return rep.entries, rep.field.poly, rep.field.s, rep.t, True
    mat = rep.ext_matrix()
    return mat.entries, mat.field.poly, mat.field.s, rep.corank, False


def wedge(rep: CographicRep | TruncatedRep, mask: int) -> np.ndarray:
    """Vector of all b x b minors of the member's columns, b = |mask|,
    over row subsets in colexicographic order."""
    entries, poly, s, t, _ = _ext_view(rep)
    ids = ids_of(mask)
    b = len(ids)
    subsets = np.array(list(colex_subsets(t, b)), dtype=np.int64).reshape(-1, b)
    cols = entries[:, np.array(ids, dtype=np.int64)][None, :, :] if b else np.zeros(
        (1, t, 0), dtype=np.uint32
    )
    return K.wedge_batch(np.ascontiguousarray(cols), subsets, poly, s)[0]


def representative_family(
    fam: SetFamily, rep: CographicRep | TruncatedRep, q: int
) -> SetFamily:
    """Greedy q-representative subfamily of ``fam`` (order preserved).

    With a CographicRep the computation is exact; the minor-vector
    dimension C(rank, b) must stay below EXACT_DIM_CEILING.  With a
    TruncatedRep the truncation rank must equal b + q.
    """
    if q < 0:
        raise ValueError(f"q={q} must be nonnegative")
    if not fam.members:
        return SetFamily(fam.b, [])
    entries, poly, s, t, truncated = _ext_view(rep)
    b = fam.b
    if truncated and t != b + q:
        raise ValueError(f"truncation rank {t} != b+q = {b + q}")
    if b > t:
        # every b-set is dependent already; nothing can represent anything
        return SetFamily(b, [])
    dim = comb(t, b)
    if not truncated and dim > EXACT_DIM_CEILING:
        raise RuntimeError(
            f"exact minor vector has C({t},{b})={dim} coordinates; "
            f"ceiling is {EXACT_DIM_CEILING} (use truncation)"
        )
    nm = len(fam.members)
    ids_arr = np.empty((nm, b), dtype=np.int64)
    for i, (mask, _) in enumerate(fam.members):
        ids_arr[i] = ids_of(mask)
    subsets = np.array(list(colex_subsets(t, b)), dtype=np.int64).reshape(-1, b)
    if b:
        cols = np.ascontiguousarray(entries[:, ids_arr].transpose(1, 0, 2))
    else:
        cols = np.zeros((nm, t, 0), dtype=np.uint32)
    vecs = K.wedge_batch(cols, subsets, poly, s)  # (nm, dim)
    flags = K.ext_greedy_basis(vecs, poly, s)
    kept = [fam.members[i] for i in range(nm) if flags[i]]
    return SetFamily(b, kept)
