"""Binary Goppa code construction and the bundled worked-example instance.

A code is defined by an irreducible polynomial g over GF(2^m_ext) and a
support list of distinct field elements that are not roots of g.  The
parity check has entries L_i^j / g(L_i); expanding each field entry into
m_ext binary rows and taking the nullspace gives the binary generator.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .bitlin import BitMatrix, BitVec, matvec, nullspace, popcount_u64, span_table
from .gf2m import FieldCtx, FieldPoly, finv, fmul, is_irreducible, poly_eval, random_irreducible

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class GoppaCode:
    n: int
    k: int
    m_ext: int
    g: FieldPoly
    support: tuple[int, ...]
    generator: BitMatrix

    @property
    def t(self) -> int:
        return self.g.degree

    def nominal_dimension(self) -> int:
        return self.n - self.m_ext * self.t


def build_goppa(ctx: FieldCtx, g: FieldPoly, support: Sequence[int], n: int | None = None) -> GoppaCode:
    """Construct the binary Goppa code for (g, support).

    Raises if g is reducible, the support repeats, or any support element
    is a root of g.  The generator rows are a nullspace basis of the binary
    parity check; the dimension is usually n - m_ext*deg(g) but can exceed
    it when the parity check loses rank.
    """
    support = tuple(int(s) for s in support)
    if n is None:
        n = len(support)
    if len(support) != n:
        raise ValueError("support length disagrees with n")
    if len(set(support)) != n:
        raise ValueError("support elements must be distinct")
    if not is_irreducible(ctx, g):
        raise ValueError("g must be irreducible")
    g_at = [poly_eval(ctx, g, a) for a in support]
    if any(v == 0 for v in g_at):
        raise ValueError("support element is a root of g")

    inv_g = [finv(ctx, v) for v in g_at]
    t = g.degree
    # Field-valued parity rows L_i^j / g(L_i), then one binary row per basis bit.
    binary_rows = []
    powers = [1] * n
    for _ in range(t):
        entries = [fmul(ctx, powers[i], inv_g[i]) for i in range(n)]
        for b in range(ctx.m_ext):
            bits = 0
            for i, e in enumerate(entries):
                bits |= ((e >> b) & 1) << i
            binary_rows.append(BitVec(n, bits))
        powers = [fmul(ctx, powers[i], support[i]) for i in range(n)]

    basis = nullspace(BitMatrix(tuple(binary_rows)))
    if not basis:
        raise ValueError("code is trivial for these parameters")
    return GoppaCode(n=n, k=len(basis), m_ext=ctx.m_ext, g=g,
                     support=support, generator=BitMatrix(tuple(basis)))


def random_goppa(ctx: FieldCtx, t: int, n: int, rng: np.random.Generator, max_tries: int = 50) -> GoppaCode:
    """Draw codes until one has the nominal dimension n - m_ext*t.

    The support is the full field in index order, so n must be 2^m_ext.
    Off-nominal draws (rank surplus in the parity check) are logged and
    redrawn rather than returned.
    """
    if n != ctx.order:
        raise ValueError("support covers the full field; n must equal 2^m_ext")
    nominal = n - ctx.m_ext * t
    if nominal <= 0:
        raise ValueError("degree too large for this length")
    for _ in range(max_tries):
        g = random_irreducible(ctx, t, rng)
        code = build_goppa(ctx, g, range(n))
        if code.k == nominal:
            return code
        log.warning("goppa draw gave dimension %d (nominal %d); redrawing", code.k, nominal)
    raise RuntimeError("could not hit the nominal dimension")


def min_distance_bruteforce(code: GoppaCode | BitMatrix) -> int:
    """Minimum weight over all nonzero codewords; guarded at k <= 24."""
    gen = code.generator if isinstance(code, GoppaCode) else code
    k, n = gen.nrows, gen.ncols
    if k > 24:
        raise ValueError("k too large for exhaustive enumeration (max 24)")
    rows = gen.row_ints()
    if n <= 64:
        lo = span_table(rows[: k // 2])
        hi = span_table(rows[k // 2 :])
        best = n + 1
        for start in range(0, hi.size, 256):
            block = hi[start : start + 256, None] ^ lo[None, :]
            w = popcount_u64(block)
            if start == 0:
                w[0, 0] = n + 1  # skip the zero word
            best = min(best, int(w.min()))
        return best
    best = n + 1
    word = 0
    for j in range(1, 1 << k):
        word ^= rows[(j & -j).bit_length() - 1]  # Gray-code step
        best = min(best, word.bit_count())
    return best


# Worked-example instance: a (32, 7) code with an added weight-5 error.
# The generator rows, sample vector, error positions and secret are pinned
# constants; load_fixture() revalidates the algebra on every call.
FIXTURE_GENERATOR_TEXT = """
[1 0 0 0 0 0 1 0 0 0 1 1 1 1 1 1 1 0 0 1 1 0 1 1 1 0 0 1 0 0 0 1]
[0 1 0 0 0 0 0 0 1 0 1 0 0 0 0 0 0 1 1 1 1 1 1 1 1 1 1 1 0 1 1 0]
[0 0 1 0 1 0 0 0 1 0 0 1 0 0 1 0 1 0 0 1 0 1 1 1 0 0 0 0 0 1 1 0]
[0 0 0 1 0 0 0 0 0 0 0 0 0 1 1 1 0 0 0 0 1 1 0 0 1 0 1 1 1 1 1 1]
[0 0 0 0 0 1 1 0 0 0 1 0 1 0 1 1 0 1 1 0 1 1 1 1 1 0 1 1 0 1 0 1]
[0 0 0 0 0 0 0 1 1 0 0 0 0 1 0 0 1 1 0 1 0 0 0 1 0 1 0 1 0 1 1 1]
[0 0 0 0 0 0 0 0 0 1 1 0 0 1 1 0 1 1 1 1 0 1 1 0 0 1 0 1 1 0 1 0]
"""

FIXTURE_GENERATOR_HEX = (
    "0x89d9fc41",
    "0x6ffe0502",
    "0x60e94914",
    "0xfd30e008",
    "0xadf6d460",
    "0xea8b2180",
    "0x5a6f6600",
)
FIXTURE_B_HEX = "0x3fba4d6"
FIXTURE_ERROR_POSITIONS = (1, 2, 13, 14, 23)  # 1-indexed
FIXTURE_SECRET_BITS = (1, 0, 1, 0, 0, 1, 0)
# Goppa polynomial of the fixture code over GF(32), coefficients ascending.
FIXTURE_GOPPA_COEFFS = (0b10001, 0b11011, 0b10010, 0b01111, 1, 1)


@dataclass(frozen=True)
class FixtureInstance:
    generator: BitMatrix
    b: BitVec
    secret: BitVec
    error: BitVec
    field: FieldCtx
    goppa_poly: FieldPoly

    @property
    def n(self) -> int:
        return self.generator.ncols

    @property
    def m(self) -> int:
        return self.generator.nrows

    def secret_index(self) -> int:
        """The hidden shift (secret, 1) packed as a census index."""
        return self.secret.bits | (1 << self.m)

    def to_lpn(self):
        from .lpn import LpnInstance  # local import to avoid a cycle

        return LpnInstance(n=self.n, m=self.m, a_columns=self.generator.rows,
                           b=self.b, secret=self.secret, error=self.error)


def load_fixture() -> FixtureInstance:
    """Bundled (32, 7) instance; self-validates secret*G + error == b."""
    gen = BitMatrix.from_text(FIXTURE_GENERATOR_TEXT)
    if tuple(r.to_hex() for r in gen.rows) != FIXTURE_GENERATOR_HEX:
        raise AssertionError("fixture generator text disagrees with hex rows")
    b = BitVec.from_hex(32, FIXTURE_B_HEX)
    secret = BitVec.from_bits(FIXTURE_SECRET_BITS)
    error = BitVec.from_positions(32, FIXTURE_ERROR_POSITIONS, one_indexed=True)
    if error.weight() != 5:
        raise AssertionError("fixture error weight is off")
    encoded = matvec(gen.transpose(), secret)
    if encoded ^ error != b:
        raise AssertionError("fixture self-check failed: secret*G + e != b")
    return FixtureInstance(generator=gen, b=b, secret=secret, error=error,
                           field=FieldCtx.default(5),
                           goppa_poly=FieldPoly(FIXTURE_GOPPA_COEFFS))
