"""LPN instances: A*s + e = b over GF(2), with fixed-weight or Bernoulli noise.

The matrix A is n x m, one sample row a_i per equation a_i . s = b_i + e_i.
Instances are stored column-wise (each column is an n-bit word) because the
ambient-space walk XORs columns; rows are derived on demand.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

from . import goppa as _goppa
from .bitlin import BitMatrix, BitVec
from .gf2m import FieldCtx


@dataclass(frozen=True)
class FixedWeight:
    weight: int

    def __post_init__(self):
        if self.weight < 0:
            raise ValueError("weight must be non-negative")


@dataclass(frozen=True)
class Bernoulli:
    p: float

    def __post_init__(self):
        if not 0 <= self.p < 0.5:
            raise ValueError("p must lie in [0, 1/2)")


ErrorModel = Union[FixedWeight, Bernoulli]


def fixed_weight_error(n: int, k: int, rng: np.random.Generator) -> BitVec:
    """Uniform vector of Hamming weight exactly k."""
    if k > n:
        raise ValueError("weight exceeds length")
    positions = rng.choice(n, size=k, replace=False)
    return BitVec.from_positions(n, (int(p) for p in positions))


def bernoulli_error(n: int, p: float, rng: np.random.Generator) -> BitVec:
    bits = 0
    for j in np.nonzero(rng.random(n) < p)[0]:
        bits |= 1 << int(j)
    return BitVec(n, bits)


def random_bitvec(n: int, rng: np.random.Generator) -> BitVec:
    nbytes = (n + 7) // 8
    value = int.from_bytes(rng.bytes(nbytes), "little") & ((1 << n) - 1)
    return BitVec(n, value)


@dataclass(frozen=True)
class LpnInstance:
    """An LPN problem (A, b) with optional guilty knowledge (s, e)."""

    n: int
    m: int
    a_columns: tuple[BitVec, ...]
    b: BitVec
    secret: BitVec | None = None
    error: BitVec | None = None

    def __post_init__(self):
        if len(self.a_columns) != self.m:
            raise ValueError("need one column per variable")
        if any(c.n != self.n for c in self.a_columns) or self.b.n != self.n:
            raise ValueError("column length disagrees with n")
        if self.secret is not None and self.error is not None:
            if self.matvec(self.secret) ^ self.error != self.b:
                raise ValueError("inconsistent instance: A*s + e != b")

    def matvec(self, u: BitVec) -> BitVec:
        """A*u computed as the XOR of the columns selected by u."""
        if u.n != self.m:
            raise ValueError("dimension mismatch")
        acc = 0
        sel = u.bits
        while sel:
            j = (sel & -sel).bit_length() - 1
            acc ^= self.a_columns[j].bits
            sel &= sel - 1
        return BitVec(self.n, acc)

    def ambient_point(self, u: BitVec, v: int) -> BitVec:
        """A*u + v*b, the ambient word tagged during the Simon walk."""
        p = self.matvec(u)
        return p ^ self.b if v & 1 else p

    def row(self, i: int) -> BitVec:
        bits = 0
        for j, c in enumerate(self.a_columns):
            bits |= c.bit(i) << j
        return BitVec(self.m, bits)

    def matrix(self) -> BitMatrix:
        """A as an n x m row matrix (row i = sample i's coefficients)."""
        return BitMatrix(tuple(self.row(i) for i in range(self.n)))

    def generators_u64(self) -> list[int]:
        """Columns plus b as packed words for the vectorized census walk."""
        if self.n > 64:
            raise ValueError("packed walk only supports n <= 64")
        return [c.bits for c in self.a_columns] + [self.b.bits]

    def noise_weight(self) -> int | None:
        return self.error.weight() if self.error is not None else None

    def to_json(self) -> str:
        payload = {
            "n": self.n,
            "m": self.m,
            "a_columns": [c.to_hex() for c in self.a_columns],
            "b": self.b.to_hex(),
        }
        if self.secret is not None:
            payload["secret"] = self.secret.to_hex()
        if self.error is not None:
            payload["error"] = self.error.to_hex()
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "LpnInstance":
        d = json.loads(text)
        n, m = d["n"], d["m"]
        return cls(
            n=n,
            m=m,
            a_columns=tuple(BitVec.from_hex(n, h) for h in d["a_columns"]),
            b=BitVec.from_hex(n, d["b"]),
            secret=BitVec.from_hex(m, d["secret"]) if "secret" in d else None,
            error=BitVec.from_hex(n, d["error"]) if "error" in d else None,
        )


def ambient_point(inst: LpnInstance, u: BitVec, v: int) -> BitVec:
    return inst.ambient_point(u, v)


def _draw_error(n: int, err: ErrorModel, rng: np.random.Generator) -> BitVec:
    if isinstance(err, FixedWeight):
        return fixed_weight_error(n, err.weight, rng)
    if isinstance(err, Bernoulli):
        return bernoulli_error(n, err.p, rng)
    raise TypeError("unknown error model")


def gen_instance(source: str, n: int, m: int, err: ErrorModel, rng: np.random.Generator) -> LpnInstance:
    """Fresh instance with random secret; source picks the structure of A.

    ``goppa`` uses a random binary Goppa generator (n must be 2^m_ext and
    m the nominal dimension); ``random_linear`` draws m independent
    columns.  ``random_strings`` has no instance matrix at all: experiments
    sample ambient words directly, so asking for an instance is an error.
    """
    if source == "random_strings":
        raise ValueError("random_strings has no matrix; use the analysis experiments directly")
    if n <= 0 or m <= 0 or m > n:
        raise ValueError("need 0 < m <= n")
    if source == "goppa":
        m_ext = n.bit_length() - 1
        if 1 << m_ext != n:
            raise ValueError("goppa source needs n = 2^m_ext")
        t, rem = divmod(n - m, m_ext)
        if rem or t < 1:
            raise ValueError("no Goppa degree gives this dimension")
        code = _goppa.random_goppa(FieldCtx.default(m_ext), t, n, rng)
        columns = code.generator.rows
    elif source == "random_linear":
        columns = tuple(random_bitvec(n, rng) for _ in range(m))
    else:
        raise ValueError(f"unknown source {source!r}")
    secret = random_bitvec(m, rng)
    error = _draw_error(n, err, rng)
    acc = 0
    for j in range(m):
        if secret.bit(j):
            acc ^= columns[j].bits
    b = BitVec(n, acc) ^ error
    return LpnInstance(n=n, m=m, a_columns=tuple(columns), b=b, secret=secret, error=error)


def fixture_instance() -> LpnInstance:
    """The bundled worked-example instance as an LpnInstance."""
    return _goppa.load_fixture().to_lpn()


@dataclass(frozen=True)
class ReducedSample:
    """A sample over surviving variables, packed with the sample bit on top.

    Bit j holds the coefficient of surviving variable j (lowest surviving
    index first); the most significant bit is the right-hand side.  Rendered
    MSB-first, so the sample bit prints leftmost.
    """

    width: int
    value: int

    def __post_init__(self):
        if self.width < 1:
            raise ValueError("width must be at least 1")
        if self.value < 0 or self.value >> self.width:
            raise ValueError("value wider than declared width")

    @property
    def coeffs(self) -> int:
        return self.value & ((1 << (self.width - 1)) - 1)

    @property
    def rhs(self) -> int:
        return self.value >> (self.width - 1)

    @classmethod
    def from_measurement(cls, w: BitVec, surviving: Sequence[int]) -> "ReducedSample":
        """Repack a measurement over F_2^{m+1}; bit m becomes the sample bit."""
        m = w.n - 1
        value = 0
        for j, var in enumerate(surviving):
            value |= w.bit(var) << j
        value |= w.bit(m) << len(surviving)
        return cls(len(surviving) + 1, value)

    @classmethod
    def from_string(cls, text: str) -> "ReducedSample":
        """Parse an MSB-first binary rendering such as ``100001``."""
        return cls(len(text), int(text, 2))

    def to_string(self) -> str:
        return format(self.value, f"0{self.width}b")

    def __str__(self):
        return self.to_string()
