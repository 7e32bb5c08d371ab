"""Covering-code tagging functions over F_2^n.

Two families: the two-word repetition cover (majority bit with a designated
tie-break position, optionally after XOR with a fixed translation word) and
the first-order Reed-Muller cover (index and sign of the strongest affine
approximation when the word is read as a truth table).

Each cover offers a scalar ``tag`` on BitVec plus a ``tags_u64`` kernel on
numpy uint64 arrays for the Monte-Carlo experiments.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .bitlin import BitVec, popcount_u64


@lru_cache(maxsize=None)
def linear_masks(k: int):
    """Truth tables of all 2^k linear maps t -> u.t as packed ints.

    Mask u has bit t equal to popcount(u & t) mod 2, so XOR against a word
    turns correlation with that linear map into a popcount.  Returns the
    masks both as Python ints and (for n <= 64) as a uint64 array.
    """
    n = 1 << k
    ints = []
    for u in range(n):
        bits = 0
        for t in range(n):
            if (u & t).bit_count() & 1:
                bits |= 1 << t
        ints.append(bits)
    arr = np.array(ints, dtype=np.uint64) if n <= 64 else None
    return tuple(ints), arr


@dataclass(frozen=True)
class RepetitionCover:
    """Majority tag after translation, tie broken by one designated bit."""

    n: int
    translation: BitVec | None = None
    tiebreak: int = 0

    def __post_init__(self):
        if self.translation is not None and self.translation.n != self.n:
            raise ValueError("translation length must equal n")
        if not 0 <= self.tiebreak < self.n:
            raise ValueError("tie-break position out of range")

    @property
    def num_tags(self) -> int:
        return 2

    def tag(self, x: BitVec) -> int:
        return repetition_tag(self, x)

    def tags_u64(self, words: np.ndarray) -> np.ndarray:
        z = np.uint64(self.translation.bits if self.translation else 0)
        x = words ^ z
        pc = popcount_u64(x)
        tags = (2 * pc.astype(np.int64) > self.n).astype(np.uint8)
        tie = 2 * pc.astype(np.int64) == self.n
        if tie.any():
            tags[tie] = ((x[tie] >> np.uint64(self.tiebreak)) & np.uint64(1)).astype(np.uint8)
        return tags


def repetition_tag(cover: RepetitionCover, x: BitVec) -> int:
    if x.n != cover.n:
        raise ValueError("length mismatch")
    shifted = x ^ cover.translation if cover.translation else x
    w = shifted.weight()
    if 2 * w > cover.n:
        return 1
    if 2 * w < cover.n:
        return 0
    return shifted.bit(cover.tiebreak)


@dataclass(frozen=True)
class ReedMuller1Cover:
    """Strongest-affine-approximation tag for words of length n = 2^k.

    ``exact`` scans every signed affine codeword; ``greedy`` runs the
    stagewise pair-vote decoder.  With include_sign the tag is
    index | sign << k, giving 2n neighbourhoods.
    """

    n: int
    decoder: str = "exact"
    include_sign: bool = True

    def __post_init__(self):
        if self.n < 2 or self.n & (self.n - 1):
            raise ValueError("n must be a power of two")
        if self.decoder not in ("exact", "greedy"):
            raise ValueError("decoder must be 'exact' or 'greedy'")

    @property
    def k(self) -> int:
        return self.n.bit_length() - 1

    @property
    def num_tags(self) -> int:
        return 2 * self.n if self.include_sign else self.n

    def tag(self, x: BitVec) -> int:
        if self.decoder == "greedy":
            return rm1_tag_greedy(self, x)
        return rm1_tag_exact(self, x)

    def tags_u64(self, words: np.ndarray) -> np.ndarray:
        if self.n > 64:
            raise ValueError("packed kernel supports n <= 64")
        if self.decoder == "greedy":
            return _rm1_tags_greedy_u64(self, words)
        return _rm1_tags_exact_u64(self, words)


def rm1_tag_exact(cover: ReedMuller1Cover, x: BitVec) -> int:
    """Tag by the Walsh coefficient of greatest magnitude.

    Coefficient u is n - 2*dist(x, u.t); ties go to the lowest index, and a
    zero coefficient counts as positive sign.
    """
    if x.n != cover.n:
        raise ValueError("length mismatch")
    masks, _ = linear_masks(cover.k)
    best_mag = -1
    best_u = 0
    best_sign = 0
    for u, mask in enumerate(masks):
        c = cover.n - 2 * ((x.bits ^ mask).bit_count())
        mag = abs(c)
        if mag > best_mag:
            best_mag = mag
            best_u = u
            best_sign = 1 if c < 0 else 0
    if not cover.include_sign:
        return best_u
    return best_u | (best_sign << cover.k)


def _rm1_tags_exact_u64(cover: ReedMuller1Cover, words: np.ndarray) -> np.ndarray:
    _, masks = linear_masks(cover.k)
    best = np.full(words.shape, -1, dtype=np.int16)
    best_u = np.zeros(words.shape, dtype=np.uint8)
    best_sign = np.zeros(words.shape, dtype=np.uint8)
    for u in range(cover.n):
        c = cover.n - 2 * popcount_u64(words ^ masks[u]).astype(np.int16)
        mag = np.abs(c)
        upd = mag > best
        if upd.any():
            best[upd] = mag[upd]
            best_u[upd] = u
            best_sign[upd] = c[upd] < 0
    if not cover.include_sign:
        return best_u
    return best_u | (best_sign << np.uint8(cover.k))


@lru_cache(maxsize=None)
def _stage_mask(k: int, i: int) -> int:
    """Positions whose bit i is clear, as a 2^k-bit mask."""
    mask = 0
    for t in range(1 << k):
        if not (t >> i) & 1:
            mask |= 1 << t
    return mask


def rm1_tag_greedy(cover: ReedMuller1Cover, x: BitVec) -> int:
    """Stagewise pair-vote decoder.

    Stage i pairs each position with its partner across input bit i and
    counts disagreeing pairs; more than half disagreeing sets bit i of the
    cover index.  An exact half vote consults position 2^i of the word.
    The sign bit compares the word against the decided linear map's table.
    """
    if x.n != cover.n:
        raise ValueError("length mismatch")
    k = cover.k
    pairs = cover.n // 2
    cover_idx = 0
    for i in range(k - 1, -1, -1):
        mask = _stage_mask(k, i)
        right = x.bits & mask
        left = (x.bits >> (1 << i)) & mask
        tally = (right ^ left).bit_count()
        if 2 * tally > pairs:
            cover_idx |= 1 << i
        elif 2 * tally == pairs and x.bit(1 << i):
            cover_idx |= 1 << i
    if not cover.include_sign:
        return cover_idx
    masks, _ = linear_masks(k)
    dist = (x.bits ^ masks[cover_idx]).bit_count()
    sign = 1 if 2 * dist > cover.n else 0
    return cover_idx | (sign << k)


def _rm1_tags_greedy_u64(cover: ReedMuller1Cover, words: np.ndarray) -> np.ndarray:
    k = cover.k
    pairs = cover.n // 2
    idx = np.zeros(words.shape, dtype=np.uint8)
    for i in range(k - 1, -1, -1):
        mask = np.uint64(_stage_mask(k, i))
        shift = np.uint64(1 << i)
        tally = popcount_u64((words ^ (words >> shift)) & mask).astype(np.int16)
        setbit = 2 * tally > pairs
        tie = 2 * tally == pairs
        if tie.any():
            tie_bit = ((words >> np.uint64(1 << i)) & np.uint64(1)).astype(bool)
            setbit = setbit | (tie & tie_bit)
        idx |= setbit.astype(np.uint8) << np.uint8(i)
    if not cover.include_sign:
        return idx
    _, masks = linear_masks(k)
    dist = popcount_u64(words ^ masks[idx]).astype(np.int16)
    sign = (2 * dist > cover.n).astype(np.uint8)
    return idx | (sign << np.uint8(k))


CoverSpec = RepetitionCover | ReedMuller1Cover


def nearest_affine_bruteforce(n: int, x: BitVec) -> tuple[int, int, int]:
    """Oracle decoder: scan all 2n signed affine tables by Hamming distance.

    Returns (index, sign, distance); ties resolved lowest index first, then
    positive sign.  Independent of the Walsh path in rm1_tag_exact.
    """
    k = n.bit_length() - 1
    masks, _ = linear_masks(k)
    full = (1 << n) - 1
    best = (n + 1, 0, 0)
    for u in range(n):
        for sign in (0, 1):
            table = masks[u] ^ (full if sign else 0)
            d = (x.bits ^ table).bit_count()
            if d < best[0]:
                best = (d, u, sign)
    return best[1], best[2], best[0]
