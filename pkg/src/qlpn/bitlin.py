"""Bit-packed GF(2) vectors and matrices plus the integer Walsh-Hadamard transform.

A length-n vector over GF(2) is a Python integer interpreted LSB-first:
coordinate j (counting from 1) lives at bit position j - 1.  With this
convention the hex form of a vector is directly comparable with printed
generator-row constants such as ``0x89d9fc41``.

Everything here is exact integer arithmetic; there is no floating point
anywhere in the transform path.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np


@dataclass(frozen=True)
class BitVec:
    """Fixed-length vector over GF(2), packed into a Python int (LSB-first)."""

    n: int
    bits: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("length must be non-negative")
        if self.bits < 0 or self.bits >> self.n:
            raise ValueError("bits set above the vector length")

    @classmethod
    def from_bits(cls, values: Iterable[int]) -> "BitVec":
        """Build from an iterable of 0/1 values, first entry = coordinate 1."""
        bits = 0
        n = 0
        for v in values:
            if v not in (0, 1):
                raise ValueError("entries must be 0 or 1")
            bits |= v << n
            n += 1
        return cls(n, bits)

    @classmethod
    def from_hex(cls, n: int, text: str) -> "BitVec":
        return cls(n, int(text, 16))

    @classmethod
    def from_positions(cls, n: int, positions: Iterable[int], one_indexed: bool = False) -> "BitVec":
        bits = 0
        for p in positions:
            bits |= 1 << (p - 1 if one_indexed else p)
        return cls(n, bits)

    @classmethod
    def ones(cls, n: int) -> "BitVec":
        return cls(n, (1 << n) - 1)

    def bit(self, j: int) -> int:
        """Bit at position j (0-indexed)."""
        if not 0 <= j < self.n:
            raise IndexError("bit position out of range")
        return (self.bits >> j) & 1

    def weight(self) -> int:
        return self.bits.bit_count()

    def dot(self, other: "BitVec") -> int:
        """Inner product over GF(2)."""
        if self.n != other.n:
            raise ValueError("length mismatch")
        return (self.bits & other.bits).bit_count() & 1

    def __xor__(self, other: "BitVec") -> "BitVec":
        if self.n != other.n:
            raise ValueError("length mismatch")
        return BitVec(self.n, self.bits ^ other.bits)

    def __and__(self, other: "BitVec") -> "BitVec":
        if self.n != other.n:
            raise ValueError("length mismatch")
        return BitVec(self.n, self.bits & other.bits)

    def to_hex(self) -> str:
        return hex(self.bits)

    def to_bin(self, msb_first: bool = True) -> str:
        s = format(self.bits, f"0{self.n}b") if self.n else ""
        return s if msb_first else s[::-1]

    def __str__(self):
        return self.to_bin()


def weight(x: BitVec) -> int:
    """Hamming weight (population count)."""
    return x.weight()


@dataclass(frozen=True)
class BitMatrix:
    """Row-major matrix over GF(2); all rows share one length."""

    rows: tuple[BitVec, ...]

    def __post_init__(self):
        if not self.rows:
            raise ValueError("matrix needs at least one row")
        ncols = self.rows[0].n
        if any(r.n != ncols for r in self.rows):
            raise ValueError("ragged rows")

    @classmethod
    def from_rows(cls, rows: Sequence[BitVec]) -> "BitMatrix":
        return cls(tuple(rows))

    @classmethod
    def from_row_ints(cls, ncols: int, ints: Iterable[int]) -> "BitMatrix":
        return cls(tuple(BitVec(ncols, v) for v in ints))

    @classmethod
    def identity(cls, k: int) -> "BitMatrix":
        return cls(tuple(BitVec(k, 1 << i) for i in range(k)))

    @classmethod
    def from_text(cls, text: str) -> "BitMatrix":
        """Parse whitespace/bracket rows of 0/1 digits, one row per line.

        Accepts the printed-matrix style ``[1 0 0 ...]`` as well as
        parenthesised, comma-separated tuples.  The first digit of a row is
        coordinate 1 (the LSB of the packed row).
        """
        rows = []
        for line in text.strip().splitlines():
            digits = [c for c in line if c in "01"]
            if not digits:
                continue
            rows.append(BitVec.from_bits(int(c) for c in digits))
        if not rows:
            raise ValueError("no rows found")
        return cls(tuple(rows))

    def to_text(self) -> str:
        return "\n".join("[" + " ".join(str(r.bit(j)) for j in range(self.ncols)) + "]" for r in self.rows)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return self.rows[0].n

    def row_ints(self) -> list[int]:
        return [r.bits for r in self.rows]

    def transpose(self) -> "BitMatrix":
        cols = []
        for j in range(self.ncols):
            bits = 0
            for i, r in enumerate(self.rows):
                bits |= r.bit(j) << i
            cols.append(BitVec(self.nrows, bits))
        return BitMatrix(tuple(cols))


def matvec(mat: BitMatrix, u: BitVec) -> BitVec:
    """Matrix-vector product over GF(2): result bit i is row_i . u."""
    if u.n != mat.ncols:
        raise ValueError("dimension mismatch")
    bits = 0
    for i, r in enumerate(mat.rows):
        bits |= ((r.bits & u.bits).bit_count() & 1) << i
    return BitVec(mat.nrows, bits)


def _rref(row_ints: list[int], ncols: int) -> tuple[list[int], list[int]]:
    """Reduced row echelon form in place; returns (rows, pivot column list)."""
    work = list(row_ints)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(work)) if (work[i] >> c) & 1), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        for i in range(len(work)):
            if i != r and (work[i] >> c) & 1:
                work[i] ^= work[r]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    return work, pivots


def rank(mat: BitMatrix) -> int:
    """Rank over GF(2)."""
    return len(_rref(mat.row_ints(), mat.ncols)[1])


def nullspace(mat: BitMatrix) -> list[BitVec]:
    """Basis of the right nullspace {x : Mx = 0}.

    Returns ncols - rank(M) linearly independent vectors, one per free
    column of the reduced form.
    """
    work, pivots = _rref(mat.row_ints(), mat.ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(mat.ncols):
        if free in pivot_set:
            continue
        x = 1 << free
        for i, c in enumerate(pivots):
            if (work[i] >> free) & 1:
                x |= 1 << c
        basis.append(BitVec(mat.ncols, x))
    return basis


def wht(values: np.ndarray | Sequence[int]) -> np.ndarray:
    """Integer Walsh-Hadamard transform of a length-2^k vector.

    out[w] = sum_x (-1)^{popcount(w & x)} values[x].  Applying the transform
    twice multiplies by 2^k, and Parseval holds exactly: sum(out^2) equals
    2^k * sum(values^2).
    """
    a = np.asarray(values, dtype=np.int64)
    if a.ndim != 1 or a.size == 0 or a.size & (a.size - 1):
        raise ValueError("length must be a power of two")
    peak = int(np.abs(a).max(initial=0))
    if peak and peak > (1 << 62) // a.size:
        raise OverflowError("transform would exceed int64")
    a = a.copy()
    h = 1
    while h < a.size:
        a = a.reshape(-1, 2, h)
        top = a[:, 0, :] + a[:, 1, :]
        bot = a[:, 0, :] - a[:, 1, :]
        a = np.stack((top, bot), axis=1)
        h *= 2
    return a.reshape(-1)


def span_table(generators: Sequence[int], dtype=np.uint64) -> np.ndarray:
    """All 2^m XOR combinations of m generator words, indexed by selector.

    Entry i is the XOR of generators[j] over the set bits j of i, so the
    table doubles once per generator and entry 0 is zero.  Words must fit
    the requested unsigned dtype (64 bits by default).
    """
    out = np.zeros(1 << len(generators), dtype=dtype)
    for j, g in enumerate(generators):
        half = 1 << j
        out[half : 2 * half] = out[:half] ^ dtype(g)
    return out


def popcount_u64(words: np.ndarray) -> np.ndarray:
    """Per-element population count of an unsigned integer array."""
    return np.bitwise_count(words)
