"""Pure-numpy kernels: batched GF(2^s) arithmetic, elimination, and
minor evaluation.  Reference semantics for the jit backend; selected via
EULERDEL_BACKEND=numpy.

Field elements are uint32 bitmasks of polynomials over GF(2); ``poly``
is the reduction polynomial including its degree-s bit.  Intermediate
math runs in uint64 so shifts cannot overflow for s <= 32.
"""

from __future__ import annotations

import numpy as np

NAME = "numpy"

_U1 = np.uint64(1)


def ext_mul_vec(a, b, poly: int, s: int) -> np.ndarray:
    """Elementwise carry-less product mod ``poly``; broadcasts a against b."""
    a = np.broadcast_to(a, np.broadcast_shapes(np.shape(a), np.shape(b)))
    a = np.asarray(a, dtype=np.uint64).copy()
    b = np.asarray(b, dtype=np.uint64).copy()
    res = np.zeros(a.shape, dtype=np.uint64)
    p = np.uint64(poly)
    top = np.uint64(s)
    for _ in range(s):
        np.bitwise_xor(res, np.where(b & _U1, a, _U1 * 0), out=res)
        b >>= _U1
        a <<= _U1
        np.bitwise_xor(a, np.where((a >> top) & _U1, p, _U1 * 0), out=a)
    return res.astype(np.uint32)


def ext_pow_vec(a, e: int, poly: int, s: int) -> np.ndarray:
    """Elementwise a**e by square-and-multiply (e >= 0)."""
    a = np.asarray(a, dtype=np.uint32)
    res = np.ones(a.shape, dtype=np.uint32)
    base = a.copy()
    while e:
        if e & 1:
            res = ext_mul_vec(res, base, poly, s)
        e >>= 1
        if e:
            base = ext_mul_vec(base, base, poly, s)
    return res


def _inv_vec(a: np.ndarray, poly: int, s: int) -> np.ndarray:
    # a^(2^s - 2); maps 0 to 0, nonzero to its inverse
    return ext_pow_vec(a, (1 << s) - 2, poly, s)


def ext_rank(mat: np.ndarray, poly: int, s: int) -> int:
    """Rank of a GF(2^s) matrix (uint32, shape (r, c))."""
    m = np.array(mat, dtype=np.uint32, copy=True)
    r, c = m.shape
    rank = 0
    for col in range(c):
        if rank == r:
            break
        rows = np.nonzero(m[rank:, col])[0]
        if rows.size == 0:
            continue
        piv = rank + int(rows[0])
        if piv != rank:
            m[[rank, piv]] = m[[piv, rank]]
        inv = int(_inv_vec(m[rank, col : col + 1], poly, s)[0])
        m[rank] = ext_mul_vec(m[rank], inv, poly, s)
        below = m[rank + 1 :, col]
        hit = np.nonzero(below)[0]
        if hit.size:
            factors = below[hit]
            m[rank + 1 + hit] ^= ext_mul_vec(factors[:, None], m[rank][None, :], poly, s)
        rank += 1
    return rank


def ext_greedy_basis(vecs: np.ndarray, poly: int, s: int) -> np.ndarray:
    """First-fit linear basis scan over row vectors (uint32, (nm, dim)).

    Returns a uint8 keep-flag per row: 1 iff the row was independent of
    all previously kept rows.  Stops testing once dim rows are kept.
    """
    nm, dim = vecs.shape
    keep = np.zeros(nm, dtype=np.uint8)
    if dim == 0:
        return keep
    echelon = np.zeros((dim, dim), dtype=np.uint32)  # rows normalized to pivot 1
    pivot_row = np.full(dim, -1, dtype=np.int64)
    kept = 0
    for i in range(nm):
        v = vecs[i].astype(np.uint32).copy()
        for p in range(dim):
            if v[p] and pivot_row[p] >= 0:
                v ^= ext_mul_vec(echelon[pivot_row[p]], int(v[p]), poly, s)
        nz = np.nonzero(v)[0]
        if nz.size == 0:
            continue
        p = int(nz[0])
        inv = int(_inv_vec(v[p : p + 1], poly, s)[0])
        echelon[kept] = ext_mul_vec(v, inv, poly, s)
        pivot_row[p] = kept
        keep[i] = 1
        kept += 1
        if kept == dim:
            break
    return keep


def _det_batch(mats: np.ndarray, poly: int, s: int) -> np.ndarray:
    """Determinants of a (N, b, b) uint32 batch by in-place elimination."""
    m = mats.astype(np.uint32, copy=True)
    n, b, _ = m.shape
    det = np.ones(n, dtype=np.uint32)
    alive = np.ones(n, dtype=bool)
    rows = np.arange(n)
    for j in range(b):
        col = m[:, j:, j]
        has = (col != 0).any(axis=1)
        alive &= has
        det[~alive] = 0
        if not alive.any():
            break
        piv = j + np.argmax(col != 0, axis=1)
        # swap row j with the pivot row (sign-free over GF(2^s))
        tmp = m[rows, piv].copy()
        rowj = m[:, j].copy()
        m[rows, piv] = rowj
        m[:, j] = tmp
        pv = m[:, j, j]
        det[alive] = ext_mul_vec(det[alive], pv[alive], poly, s)
        if j + 1 < b:
            inv = _inv_vec(pv, poly, s)
            factor = ext_mul_vec(m[:, j + 1 :, j], inv[:, None], poly, s)
            m[:, j + 1 :, j:] ^= ext_mul_vec(factor[:, :, None], m[:, j, j:][:, None, :], poly, s)
    return det


def wedge_batch(cols: np.ndarray, subsets: np.ndarray, poly: int, s: int) -> np.ndarray:
    """All b x b minors of member column blocks.

    cols: (nm, t, b) uint32, one t x b column block per member.
    subsets: (ns, b) int64 row-index subsets.
    Returns (nm, ns) uint32 with out[i, j] = det(cols[i][subsets[j], :]).
    """
    nm, t, b = cols.shape
    ns = subsets.shape[0]
    out = np.empty((nm, ns), dtype=np.uint32)
    # chunk so each gathered (ci, cj, b, b) block stays near 2^20 cells
    step_j = min(ns, max(1, (1 << 16) // (b * b)))
    step_i = min(nm, max(1, (1 << 20) // (step_j * b * b)))
    for i0 in range(0, nm, step_i):
        i1 = min(nm, i0 + step_i)
        block = cols[i0:i1]
        for j0 in range(0, ns, step_j):
            j1 = min(ns, j0 + step_j)
            gathered = block[:, subsets[j0:j1], :]  # (ci, cj, b, b)
            ci, cj = gathered.shape[0], gathered.shape[1]
            dets = _det_batch(gathered.reshape(ci * cj, b, b), poly, s)
            out[i0:i1, j0:j1] = dets.reshape(ci, cj)
    return out


def gf2_rank(words: np.ndarray) -> int:
    """Rank over GF(2) of bit-packed rows (uint64, shape (r, W))."""
    rows = [int.from_bytes(w.astype("<u8").tobytes(), "little") for w in np.atleast_2d(words)]
    pivots: list[int] = []
    rank = 0
    for row in rows:
        for p in pivots:
            row = min(row, row ^ p)
        if row:
            pivots.append(row)
            pivots.sort(reverse=True)
            rank += 1
    return rank
