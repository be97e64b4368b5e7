"""Linear algebra over GF(2) and its extension fields GF(2^s).

Field elements are ints encoding polynomials over GF(2) by their
coefficient bitmask.  BitMatrix packs GF(2) matrices into 64-bit words;
ExtMatrix holds GF(2^s) entries as a uint32 array.  The heavy routines
(rank, greedy basis, minors) run on the selected kernel backend.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import _kernels as K

DEFAULT_FIELD_BITS = 16
# x^16 + x^5 + x^3 + x + 1
DEFAULT_POLY_16 = 0x1002B


def _poly_mod(a: int, b: int) -> int:
    """Remainder of carry-less polynomial division a mod b."""
    db = b.bit_length() - 1
    while a.bit_length() - 1 >= db and a:
        a ^= b << (a.bit_length() - 1 - db)
    return a


@dataclass(frozen=True)
class ExtField:
    """GF(2^s) under a fixed irreducible reduction polynomial.

    ``poly`` includes the degree-s bit, e.g. 0b111 is x^2 + x + 1.
    """

    s: int
    poly: int

    def __post_init__(self) -> None:
        if not 1 <= self.s <= 32:
            raise ValueError(f"field degree s={self.s} outside 1..32")
        if self.poly.bit_length() != self.s + 1:
            raise ValueError(f"reduction poly degree {self.poly.bit_length() - 1} != s={self.s}")
        # trial division by every polynomial of degree 1..s/2
        for d in range(2, 1 << (self.s // 2 + 1)):
            if d.bit_length() - 1 > self.s // 2:
                break
            if _poly_mod(self.poly, d) == 0:
                raise ValueError(f"reduction poly 0x{self.poly:x} divisible by 0x{d:x}")

    @classmethod
    def default(cls, s: int = DEFAULT_FIELD_BITS) -> "ExtField":
        """Field of degree s with a fixed default polynomial."""
        if s == 16:
            return cls(16, DEFAULT_POLY_16)
        return cls(s, _smallest_irreducible(s))

    @property
    def order(self) -> int:
        return 1 << self.s

    def _check(self, a: int) -> None:
        if not 0 <= a < self.order:
            raise ValueError(f"element {a} outside field of order {self.order}")

    def add(self, a: int, b: int) -> int:
        self._check(a)
        self._check(b)
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        self._check(a)
        self._check(b)
        res = 0
        while b:
            if b & 1:
                res ^= a
            b >>= 1
            a <<= 1
            if (a >> self.s) & 1:
                a ^= self.poly
        return res

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            raise ValueError("negative exponent")
        res, base = 1, a
        while e:
            if e & 1:
                res = self.mul(res, base)
            e >>= 1
            base = self.mul(base, base)
        return res

    def inv(self, a: int) -> int:
        self._check(a)
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.pow(a, self.order - 2)


@lru_cache(maxsize=None)
def _smallest_irreducible(s: int) -> int:
    for low in range(1, 1 << s, 2):  # constant term must be 1
        cand = (1 << s) | low
        ok = True
        for d in range(2, 1 << (s // 2 + 1)):
            if d.bit_length() - 1 > s // 2:
                break
            if _poly_mod(cand, d) == 0:
                ok = False
                break
        if ok:
            return cand
    raise ValueError(f"no irreducible polynomial of degree {s}")  # pragma: no cover


class BitMatrix:
    """GF(2) matrix with rows packed into uint64 words."""

    __slots__ = ("r", "c", "words")

    def __init__(self, r: int, c: int, words: np.ndarray | None = None):
        self.r = r
        self.c = c
        w = max(1, (c + 63) // 64)
        if words is None:
            words = np.zeros((r, w), dtype=np.uint64)
        assert words.shape == (r, w)
        self.words = words

    @classmethod
    def from_row_bits(cls, bits: Sequence[int], c: int) -> "BitMatrix":
        m = cls(len(bits), c)
        for i, row in enumerate(bits):
            if row >> c:
                raise ValueError(f"row {i} has bits beyond column {c - 1}")
            for w in range(m.words.shape[1]):
                m.words[i, w] = (row >> (64 * w)) & 0xFFFFFFFFFFFFFFFF
        return m

    def get(self, i: int, j: int) -> int:
        return int(self.words[i, j // 64] >> np.uint64(j % 64)) & 1

    def set(self, i: int, j: int, val: int) -> None:
        bit = np.uint64(1) << np.uint64(j % 64)
        if val:
            self.words[i, j // 64] |= bit
        else:
            self.words[i, j // 64] &= ~bit

    def row_bits(self, i: int) -> int:
        return int.from_bytes(self.words[i].astype("<u8").tobytes(), "little")

    def col_bits(self, j: int) -> int:
        out = 0
        for i in range(self.r):
            out |= self.get(i, j) << i
        return out

    def transpose(self) -> "BitMatrix":
        t = BitMatrix(self.c, self.r)
        for i in range(self.r):
            row = self.row_bits(i)
            while row:
                low = row & -row
                t.set(low.bit_length() - 1, i, 1)
                row ^= low
        return t

    def rank(self) -> int:
        return K.gf2_rank(self.words)

    def to_ext(self, field: ExtField) -> "ExtMatrix":
        """Lift the 0/1 entries into GF(2^s)."""
        ent = np.zeros((self.r, self.c), dtype=np.uint32)
        for i in range(self.r):
            row = self.row_bits(i)
            while row:
                low = row & -row
                ent[i, low.bit_length() - 1] = 1
                row ^= low
        return ExtMatrix(field, ent)


class ExtMatrix:
    """GF(2^s) matrix; entries is a uint32 array of shape (r, c)."""

    __slots__ = ("field", "entries")

    def __init__(self, field: ExtField, entries: np.ndarray):
        entries = np.asarray(entries, dtype=np.uint32)
        if entries.ndim != 2:
            raise ValueError("entries must be 2-dimensional")
        if entries.size and int(entries.max()) >= field.order:
            raise ValueError("entry outside field")
        self.field = field
        self.entries = entries

    @property
    def r(self) -> int:
        return self.entries.shape[0]

    @property
    def c(self) -> int:
        return self.entries.shape[1]

    def rank(self) -> int:
        if self.entries.size == 0:
            return 0
        return K.ext_rank(self.entries, self.field.poly, self.field.s)


def rank(mat: BitMatrix | ExtMatrix) -> int:
    return mat.rank()


def _distinct(idx: Sequence[int], what: str) -> list[int]:
    idx = list(idx)
    if len(set(idx)) != len(idx):
        raise ValueError(f"repeated {what} index")
    return idx


def columns_independent(mat: BitMatrix | ExtMatrix, cols: Sequence[int]) -> bool:
    """True iff the selected columns are linearly independent.

    A repeated index makes the selection dependent by definition.
    """
    cols = list(cols)
    if not cols:
        return True
    if len(set(cols)) != len(cols):
        return False
    if isinstance(mat, BitMatrix):
        if len(cols) > mat.r:
            return False
        packed = np.zeros((len(cols), max(1, (mat.r + 63) // 64)), dtype=np.uint64)
        for k, j in enumerate(cols):
            bits = mat.col_bits(j)
            for w in range(packed.shape[1]):
                packed[k, w] = (bits >> (64 * w)) & 0xFFFFFFFFFFFFFFFF
        return K.gf2_rank(packed) == len(cols)
    sub = mat.entries[:, cols]
    return K.ext_rank(sub, mat.field.poly, mat.field.s) == len(cols)


def column_basis(mat: BitMatrix | ExtMatrix, order: Sequence[int] | None = None) -> list[int]:
    """Greedy first-fit column basis: scan ``order`` (default id order)
    and keep each column independent of those already kept."""
    if order is None:
        order = range(mat.c)
    order = _distinct(order, "column")
    if isinstance(mat, BitMatrix):
        kept: list[int] = []
        pivots: list[int] = []
        for j in order:
            v = mat.col_bits(j)
            for p in pivots:
                v = min(v, v ^ p)
            if v:
                pivots.append(v)
                kept.append(j)
        return kept
    vecs = mat.entries[:, order].T  # (len(order), r) row vectors
    flags = K.ext_greedy_basis(np.ascontiguousarray(vecs), mat.field.poly, mat.field.s)
    return [j for j, f in zip(order, flags) if f]


def det_submatrix(mat: ExtMatrix, rows: Sequence[int], cols: Sequence[int]) -> int:
    """Determinant of the (rows x cols) submatrix; 1 for the empty one."""
    rows = _distinct(rows, "row")
    cols = _distinct(cols, "column")
    if len(rows) != len(cols):
        raise ValueError("submatrix must be square")
    b = len(rows)
    if b == 0:
        return 1
    block = mat.entries[np.ix_(rows, cols)][None, :, :]  # (1, b, b)
    subsets = np.arange(b, dtype=np.int64)[None, :]
    out = K.wedge_batch(block, subsets, mat.field.poly, mat.field.s)
    return int(out[0, 0])
