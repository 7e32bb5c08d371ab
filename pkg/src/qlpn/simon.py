"""Exact Simon measurement distributions for a tagging function over F_2^{m+1}.

A census tags every (u, v) pair by the cover applied to A*u + v*b; the
measurement law then has integer numerators over 2^{2(m+1)}:

    numerator[w] = sum over tags t of (WHT of the tag-t indicator)[w]^2.

Indices pack u into bits 0..m-1 and v into bit m, so the hidden shift
(s, 1) is the integer s | 1 << m.  Everything is exact; floats appear only
in convenience accessors.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from typing import IO, Callable, Sequence

import numpy as np

from .bitlin import BitVec, popcount_u64, span_table, wht
from .covers import CoverSpec
from .lpn import LpnInstance


def _as_index(c, m: int) -> int:
    """Accept a packed int or an (m+1)-long BitVec as a shift/mask."""
    if isinstance(c, BitVec):
        if c.n != m + 1:
            raise ValueError("expected a vector over m+1 bits")
        return c.bits
    c = int(c)
    if c < 0 or c >> (m + 1):
        raise ValueError("index out of range")
    return c


@dataclass(frozen=True)
class TagCensus:
    """Dense tag code for every index of F_2^{m+1}.

    codes[i] is the tag of index i; the per-tag indicator vectors are the
    rows of a disjoint partition of all 2^{m+1} indices.
    """

    m: int
    codes: np.ndarray
    tag_values: tuple

    def __post_init__(self):
        if self.codes.shape != (1 << (self.m + 1),):
            raise ValueError("census size must be 2^(m+1)")

    @property
    def size(self) -> int:
        return 1 << (self.m + 1)

    @property
    def num_tags(self) -> int:
        return len(self.tag_values)

    def indicator(self, code: int) -> np.ndarray:
        return (self.codes == code).astype(np.int64)

    def counts(self) -> np.ndarray:
        return np.bincount(self.codes, minlength=self.num_tags).astype(np.int64)


def census(inst: LpnInstance, cover: CoverSpec | Callable[[BitVec], int]) -> TagCensus:
    """Tag every (u, v) by the cover applied to the ambient word A*u + v*b."""
    size = 1 << (inst.m + 1)
    if inst.n <= 64 and hasattr(cover, "tags_u64"):
        words = span_table(inst.generators_u64())
        tags = cover.tags_u64(words)
    else:
        tagger = cover.tag if hasattr(cover, "tag") else cover
        tags = np.empty(size, dtype=np.int64)
        for i in range(size):
            u = BitVec(inst.m, i & ((1 << inst.m) - 1))
            tags[i] = tagger(inst.ambient_point(u, i >> inst.m))
    if hasattr(cover, "num_tags"):
        codes = np.ascontiguousarray(tags, dtype=np.int64)
        values = tuple(range(cover.num_tags))
        if codes.min() < 0 or codes.max() >= len(values):
            raise ValueError("cover emitted a tag outside its declared range")
    else:
        uniq, codes = np.unique(np.asarray(tags), return_inverse=True)
        codes = codes.astype(np.int64)
        values = tuple(uniq.tolist())
    return TagCensus(m=inst.m, codes=codes, tag_values=values)


@dataclass(frozen=True)
class PromiseReport:
    """Pair bookkeeping for a shift c: kept indices satisfy F(x) = F(x+c)."""

    m: int
    kept: int
    broken: int
    per_tag_paired: tuple[int, ...]
    per_tag_orphaned: tuple[int, ...]

    @property
    def kept_fraction(self) -> float:
        return self.kept / (1 << (self.m + 1))


def promise_report(cens: TagCensus, c) -> PromiseReport:
    """Count paired vs orphaned indices under translation by c."""
    shift = _as_index(c, cens.m)
    idx = np.arange(cens.size, dtype=np.int64)
    partner = cens.codes[idx ^ shift]
    kept_mask = cens.codes == partner
    kept = int(kept_mask.sum())
    paired = np.bincount(cens.codes[kept_mask], minlength=cens.num_tags)
    orphaned = np.bincount(cens.codes[~kept_mask], minlength=cens.num_tags)
    return PromiseReport(m=cens.m, kept=kept, broken=cens.size - kept,
                         per_tag_paired=tuple(int(x) for x in paired),
                         per_tag_orphaned=tuple(int(x) for x in orphaned))


# Keep per-tag Walsh tables only while they stay comfortably in memory.
_COEFF_TABLE_LIMIT = 1 << 24


@dataclass(frozen=True)
class TagDistribution:
    """Exact measurement law: integer numerators over 2^{2(m+1)}."""

    m: int
    numerators: np.ndarray
    coefficients: np.ndarray | None = field(default=None, repr=False)

    @property
    def size(self) -> int:
        return 1 << (self.m + 1)

    @property
    def total(self) -> int:
        return 1 << (2 * (self.m + 1))

    def probability(self, w: int) -> float:
        return int(self.numerators[w]) / self.total


def distribution(cens: TagCensus) -> TagDistribution:
    """Square-and-sum the per-tag Walsh transforms into exact numerators."""
    if cens.m > 30:
        raise OverflowError("numerators would overflow int64 beyond m = 30")
    numerators = np.zeros(cens.size, dtype=np.int64)
    keep = cens.num_tags * cens.size <= _COEFF_TABLE_LIMIT
    tables = np.zeros((cens.num_tags, cens.size), dtype=np.int64) if keep else None
    counts = cens.counts()
    for t in range(cens.num_tags):
        if counts[t] == 0:
            continue
        co = wht(cens.indicator(t))
        numerators += co * co
        if keep:
            tables[t] = co
    if int(numerators.sum()) != 1 << (2 * (cens.m + 1)):
        raise ArithmeticError("numerators lost normalization; overflow suspected")
    return TagDistribution(m=cens.m, numerators=numerators, coefficients=tables)


@dataclass(frozen=True)
class GoodBadSplit:
    """Probability mass split by w.c parity, with w = 0 held out."""

    good_nonzero: int
    bad: int
    zero: int
    total: int

    @property
    def p_good_nonzero(self) -> float:
        return self.good_nonzero / self.total

    @property
    def p_bad(self) -> float:
        return self.bad / self.total

    @property
    def p_zero(self) -> float:
        return self.zero / self.total

    def conditional_good(self) -> float:
        """P(w.c = 0 | w != 0)."""
        nonzero = self.good_nonzero + self.bad
        return self.good_nonzero / nonzero if nonzero else float("nan")

    def orthogonal_bound_holds(self, kept: int) -> bool:
        """Exact check that P(w.c = 0, including 0) >= kept / 2^{m+1}."""
        size_sq = self.total
        size = 1 << ((size_sq.bit_length() - 1) // 2)
        return (self.good_nonzero + self.zero) * size >= kept * size_sq


def split_good_bad(dist: TagDistribution, c) -> GoodBadSplit:
    shift = _as_index(c, dist.m)
    idx = np.arange(dist.size, dtype=np.uint64)
    parity = popcount_u64(idx & np.uint64(shift)) & 1
    bad = int(dist.numerators[parity == 1].sum())
    zero = int(dist.numerators[0])
    good_nonzero = int(dist.numerators[parity == 0].sum()) - zero
    return GoodBadSplit(good_nonzero=good_nonzero, bad=bad, zero=zero, total=dist.total)


def _admissible_mask(dist: TagDistribution, reject_mask) -> np.ndarray:
    mask = _as_index(reject_mask, dist.m) if reject_mask is not None else 0
    idx = np.arange(dist.size, dtype=np.uint64)
    ok = idx != 0
    if mask:
        ok &= (idx & np.uint64(mask)) == 0
    return ok


def sample_measurement(dist: TagDistribution, rng: np.random.Generator,
                       reject_mask=None, compat16: bool = False) -> BitVec:
    """Draw one measurement, redrawing zero and reject-mask hits.

    The default draw is a uniform integer below the exact total, so the law
    is unbiased for any m.  compat16 instead consumes 16-bit draws against
    the cumulative numerators, which is only well-defined when the total is
    exactly 2^16.
    """
    return draw_measurements(dist, rng, 1, reject_mask, compat16)[0]


def draw_measurements(dist: TagDistribution, rng: np.random.Generator, count: int,
                      reject_mask=None, compat16: bool = False) -> list[BitVec]:
    ok = _admissible_mask(dist, reject_mask)
    if int(dist.numerators[ok].sum()) == 0:
        raise ValueError("no admissible outcome has positive mass")
    if compat16 and dist.total != 1 << 16:
        raise ValueError("compat16 requires the total mass to be 2^16")
    cum = np.cumsum(dist.numerators)
    width = dist.m + 1
    out = []
    while len(out) < count:
        r = int(rng.integers(0, 1 << 16 if compat16 else dist.total))
        w = int(np.searchsorted(cum, r, side="right"))
        if ok[w]:
            out.append(BitVec(width, w))
    return out


def heuristic_success(num_tags: int, kept: int, m: int) -> float:
    """Expected P(w.c = 0 | w != 0) for N even-sized neighbourhoods."""
    if num_tags < 2:
        raise ValueError("need at least two neighbourhoods")
    n = num_tags
    return (n / (n - 1)) * (0.5 + kept / (1 << (m + 2)) - 1.0 / n)


def distribution_to_csv(dist: TagDistribution, out: IO[str], c=None) -> None:
    """Rows of (w, numerator[, w.c parity]) for external analysis."""
    writer = csv.writer(out)
    if c is None:
        writer.writerow(["w", "numerator"])
        for w in range(dist.size):
            writer.writerow([w, int(dist.numerators[w])])
        return
    shift = _as_index(c, dist.m)
    writer.writerow(["w", "numerator", "dot_c"])
    for w in range(dist.size):
        writer.writerow([w, int(dist.numerators[w]), (w & shift).bit_count() & 1])
