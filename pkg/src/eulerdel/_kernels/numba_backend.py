"""Jit-compiled kernels; same surface and results as numpy_backend.

Everything runs as int64 scalar loops under @njit.  Field elements stay
below 2^32, so int64 intermediates never overflow for s <= 32.
"""

from __future__ import annotations

import numpy as np
from numba import njit

NAME = "numba"


@njit(cache=True)
def _mul(a, b, poly, s):
    res = 0
    while b:
        if b & 1:
            res ^= a
        b >>= 1
        a <<= 1
        if (a >> s) & 1:
            a ^= poly
    return res


@njit(cache=True)
def _pow(a, e, poly, s):
    res = 1
    base = a
    while e:
        if e & 1:
            res = _mul(res, base, poly, s)
        e >>= 1
        base = _mul(base, base, poly, s)
    return res


@njit(cache=True)
def _inv(a, poly, s):
    # a^(2^s - 2); maps 0 to 0
    return _pow(a, (1 << s) - 2, poly, s)


@njit(cache=True)
def _ext_mul_flat(a, b, out, poly, s):
    for i in range(a.shape[0]):
        out[i] = _mul(np.int64(a[i]), np.int64(b[i]), poly, s)


def ext_mul_vec(a, b, poly: int, s: int) -> np.ndarray:
    shape = np.broadcast_shapes(np.shape(a), np.shape(b))
    af = np.ascontiguousarray(np.broadcast_to(np.asarray(a, np.uint32), shape)).ravel()
    bf = np.ascontiguousarray(np.broadcast_to(np.asarray(b, np.uint32), shape)).ravel()
    out = np.empty(af.shape[0], dtype=np.uint32)
    _ext_mul_flat(af, bf, out, poly, s)
    return out.reshape(shape)


@njit(cache=True)
def _ext_pow_flat(a, e, out, poly, s):
    for i in range(a.shape[0]):
        out[i] = _pow(np.int64(a[i]), e, poly, s)


def ext_pow_vec(a, e: int, poly: int, s: int) -> np.ndarray:
    af = np.ascontiguousarray(np.asarray(a, np.uint32)).ravel()
    out = np.empty(af.shape[0], dtype=np.uint32)
    _ext_pow_flat(af, e, out, poly, s)
    return out.reshape(np.shape(a))


@njit(cache=True)
def _ext_rank(mat, poly, s):
    r, c = mat.shape
    m = mat.astype(np.int64)
    rank = 0
    for col in range(c):
        if rank == r:
            break
        piv = -1
        for i in range(rank, r):
            if m[i, col] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != rank:
            for j in range(c):
                m[rank, j], m[piv, j] = m[piv, j], m[rank, j]
        inv = _inv(m[rank, col], poly, s)
        for j in range(col, c):
            m[rank, j] = _mul(m[rank, j], inv, poly, s)
        for i in range(rank + 1, r):
            f = m[i, col]
            if f:
                for j in range(col, c):
                    m[i, j] ^= _mul(f, m[rank, j], poly, s)
        rank += 1
    return rank


def ext_rank(mat: np.ndarray, poly: int, s: int) -> int:
    m = np.ascontiguousarray(np.asarray(mat, np.uint32))
    if m.size == 0:
        return 0
    return int(_ext_rank(m, poly, s))


@njit(cache=True)
def _greedy(vecs, keep, poly, s):
    nm, dim = vecs.shape
    echelon = np.zeros((dim, dim), dtype=np.int64)
    pivot_row = np.full(dim, -1, dtype=np.int64)
    v = np.empty(dim, dtype=np.int64)
    kept = 0
    for i in range(nm):
        for p in range(dim):
            v[p] = vecs[i, p]
        for p in range(dim):
            if v[p] != 0 and pivot_row[p] >= 0:
                f = v[p]
                row = pivot_row[p]
                for j in range(p, dim):
                    v[j] ^= _mul(f, echelon[row, j], poly, s)
        lead = -1
        for p in range(dim):
            if v[p] != 0:
                lead = p
                break
        if lead < 0:
            continue
        inv = _inv(v[lead], poly, s)
        for j in range(lead, dim):
            echelon[kept, j] = _mul(v[j], inv, poly, s)
        pivot_row[lead] = kept
        keep[i] = 1
        kept += 1
        if kept == dim:
            break


def ext_greedy_basis(vecs: np.ndarray, poly: int, s: int) -> np.ndarray:
    vecs = np.ascontiguousarray(np.asarray(vecs, np.uint32))
    nm, dim = vecs.shape
    keep = np.zeros(nm, dtype=np.uint8)
    if dim and nm:
        _greedy(vecs, keep, poly, s)
    return keep


@njit(cache=True)
def _det(buf, b, poly, s):
    det = 1
    for j in range(b):
        piv = -1
        for i in range(j, b):
            if buf[i, j] != 0:
                piv = i
                break
        if piv < 0:
            return 0
        if piv != j:
            for col in range(j, b):
                buf[j, col], buf[piv, col] = buf[piv, col], buf[j, col]
        pv = buf[j, j]
        det = _mul(det, pv, poly, s)
        if j + 1 < b:
            inv = _inv(pv, poly, s)
            for i in range(j + 1, b):
                f = _mul(buf[i, j], inv, poly, s)
                if f:
                    for col in range(j, b):
                        buf[i, col] ^= _mul(f, buf[j, col], poly, s)
    return det


@njit(cache=True)
def _wedge(cols, subsets, out, poly, s):
    nm = cols.shape[0]
    b = cols.shape[2]
    ns = subsets.shape[0]
    buf = np.empty((b, b), dtype=np.int64)
    for i in range(nm):
        for j in range(ns):
            for r_ in range(b):
                src = subsets[j, r_]
                for c_ in range(b):
                    buf[r_, c_] = cols[i, src, c_]
            out[i, j] = _det(buf, b, poly, s)


def wedge_batch(cols: np.ndarray, subsets: np.ndarray, poly: int, s: int) -> np.ndarray:
    cols = np.ascontiguousarray(np.asarray(cols, np.uint32))
    subsets = np.ascontiguousarray(np.asarray(subsets, np.int64))
    nm = cols.shape[0]
    ns = subsets.shape[0]
    out = np.empty((nm, ns), dtype=np.uint32)
    if nm and ns:
        _wedge(cols, subsets, out, poly, s)
    return out


@njit(cache=True)
def _gf2_rank(words):
    r, w = words.shape
    rows = words.copy()
    rank = 0
    for i in range(r):
        # reduce against earlier pivot rows, then look for a leading bit
        for p in range(rank):
            # pivot rows are stored compacted in rows[:rank]
            lead_w = -1
            lead_b = -1
            for wi in range(w):
                if rows[p, wi] != 0:
                    lead_w = wi
                    x = rows[p, wi]
                    bit = 0
                    while ((x >> np.uint64(bit)) & np.uint64(1)) == np.uint64(0):
                        bit += 1
                    lead_b = bit
                    break
            if lead_w >= 0 and ((rows[i, lead_w] >> np.uint64(lead_b)) & np.uint64(1)) != 0:
                for wi in range(w):
                    rows[i, wi] ^= rows[p, wi]
        nonzero = False
        for wi in range(w):
            if rows[i, wi] != 0:
                nonzero = True
                break
        if nonzero:
            if i != rank:
                for wi in range(w):
                    rows[rank, wi], rows[i, wi] = rows[i, wi], rows[rank, wi]
            rank += 1
    return rank


def gf2_rank(words: np.ndarray) -> int:
    words = np.ascontiguousarray(np.atleast_2d(np.asarray(words, np.uint64)))
    if words.size == 0:
        return 0
    return int(_gf2_rank(words))
