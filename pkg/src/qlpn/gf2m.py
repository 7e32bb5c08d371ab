"""Arithmetic in GF(2^m) and univariate polynomials over it.

Field elements are plain ints holding coefficients of the polynomial basis
(bit k is the coefficient of z^k, where z is a root of the defining
polynomial).  Just enough machinery for binary Goppa code construction:
multiply, invert, evaluate, and test/draw irreducible polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

FieldElem = int

# Defining polynomials per extension degree (bit mask includes the leading
# term).  These are the usual Conway choices; any irreducible works and the
# context accepts a custom modulus.
DEFAULT_MODULI = {
    1: 0b11,
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1011011,
    7: 0b10000011,
    8: 0b100011101,
}


def _gf2x_mulmod(a: int, b: int, mod: int) -> int:
    """Carry-less multiply of GF(2)[x] polynomials, reduced mod ``mod``."""
    deg = mod.bit_length() - 1
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if (a >> deg) & 1:
            a ^= mod
    return r


def _gf2x_is_irreducible(f: int) -> bool:
    """Irreducibility of an int-coded polynomial over GF(2)."""
    deg = f.bit_length() - 1
    if deg < 1:
        return False
    t = 0b10  # the polynomial x
    for _ in range(deg // 2):
        t = _gf2x_mulmod(t, t, f)  # Frobenius: t -> t^2 mod f
        g = _gf2x_gcd(t ^ 0b10, f)
        if g.bit_length() - 1 >= 1:
            return False
    return True


def _gf2x_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, _gf2x_mod(a, b)
    return a


def _gf2x_mod(a: int, b: int) -> int:
    db = b.bit_length()
    while a.bit_length() >= db:
        a ^= b << (a.bit_length() - db)
    return a


@dataclass(frozen=True)
class FieldCtx:
    """GF(2^m_ext) defined by an irreducible polynomial bit mask."""

    m_ext: int
    modulus: int

    def __post_init__(self):
        if self.modulus.bit_length() - 1 != self.m_ext:
            raise ValueError("modulus degree does not match extension degree")
        if not _gf2x_is_irreducible(self.modulus):
            raise ValueError("modulus is reducible")

    @classmethod
    def default(cls, m_ext: int) -> "FieldCtx":
        return cls(m_ext, DEFAULT_MODULI[m_ext])

    @property
    def order(self) -> int:
        return 1 << self.m_ext

    def elements(self) -> range:
        return range(self.order)


def fmul(ctx: FieldCtx, a: FieldElem, b: FieldElem) -> FieldElem:
    return _gf2x_mulmod(a, b, ctx.modulus)


def fpow(ctx: FieldCtx, a: FieldElem, e: int) -> FieldElem:
    r = 1
    while e:
        if e & 1:
            r = fmul(ctx, r, a)
        a = fmul(ctx, a, a)
        e >>= 1
    return r


def finv(ctx: FieldCtx, a: FieldElem) -> FieldElem:
    if a == 0:
        raise ZeroDivisionError("inversion of zero field element")
    return fpow(ctx, a, ctx.order - 2)


class FieldPoly:
    """Polynomial over GF(2^m_ext), coefficients ascending by degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[FieldElem]):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls) -> "FieldPoly":
        return cls(())

    @classmethod
    def x(cls) -> "FieldPoly":
        return cls((0, 1))

    @classmethod
    def constant(cls, c: FieldElem) -> "FieldPoly":
        return cls((c,))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __eq__(self, other):
        return isinstance(other, FieldPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"FieldPoly({list(self.coeffs)})"

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1


def poly_add(a: FieldPoly, b: FieldPoly) -> FieldPoly:
    la, lb = len(a.coeffs), len(b.coeffs)
    return FieldPoly([
        (a.coeffs[i] if i < la else 0) ^ (b.coeffs[i] if i < lb else 0)
        for i in range(max(la, lb))
    ])


def poly_mul(ctx: FieldCtx, a: FieldPoly, b: FieldPoly) -> FieldPoly:
    if not a.coeffs or not b.coeffs:
        return FieldPoly.zero()
    out = [0] * (len(a.coeffs) + len(b.coeffs) - 1)
    for i, ca in enumerate(a.coeffs):
        if ca == 0:
            continue
        for j, cb in enumerate(b.coeffs):
            if cb:
                out[i + j] ^= fmul(ctx, ca, cb)
    return FieldPoly(out)


def poly_divmod(ctx: FieldCtx, a: FieldPoly, b: FieldPoly) -> tuple[FieldPoly, FieldPoly]:
    if b.degree < 0:
        raise ZeroDivisionError("division by zero polynomial")
    rem = list(a.coeffs)
    quo = [0] * max(0, a.degree - b.degree + 1)
    inv_lead = finv(ctx, b.coeffs[-1])
    for shift in range(a.degree - b.degree, -1, -1):
        top = rem[shift + b.degree]
        if top == 0:
            continue
        factor = fmul(ctx, top, inv_lead)
        quo[shift] = factor
        for j, cb in enumerate(b.coeffs):
            rem[shift + j] ^= fmul(ctx, factor, cb)
    return FieldPoly(quo), FieldPoly(rem)


def poly_mod(ctx: FieldCtx, a: FieldPoly, b: FieldPoly) -> FieldPoly:
    return poly_divmod(ctx, a, b)[1]


def poly_gcd(ctx: FieldCtx, a: FieldPoly, b: FieldPoly) -> FieldPoly:
    while b.degree >= 0:
        a, b = b, poly_mod(ctx, a, b)
    if a.degree >= 0 and a.coeffs[-1] != 1:
        inv = finv(ctx, a.coeffs[-1])
        a = FieldPoly([fmul(ctx, c, inv) for c in a.coeffs])
    return a


def poly_eval(ctx: FieldCtx, g: FieldPoly, x: FieldElem) -> FieldElem:
    """Horner evaluation of g at x."""
    acc = 0
    for c in reversed(g.coeffs):
        acc = fmul(ctx, acc, x) ^ c
    return acc


def is_irreducible(ctx: FieldCtx, g: FieldPoly) -> bool:
    """True iff g has no factor of degree <= deg(g)/2.

    Uses the gcd ladder against x^(q^i) - x: any factor of degree i divides
    that polynomial, so a trivial gcd for every i up to deg/2 certifies
    irreducibility over GF(q).
    """
    if g.degree < 1:
        raise ValueError("need degree >= 1")
    if g.degree == 1:
        return True
    t = poly_mod(ctx, FieldPoly.x(), g)
    for _ in range(g.degree // 2):
        for _ in range(ctx.m_ext):  # t -> t^q by m_ext squarings
            t = poly_mod(ctx, poly_mul(ctx, t, t), g)
        probe = poly_add(t, FieldPoly.x())
        if poly_gcd(ctx, probe, g).degree != 0:
            return False
    return True


def random_irreducible(ctx: FieldCtx, degree: int, rng: np.random.Generator) -> FieldPoly:
    """Draw a uniform monic irreducible polynomial of exact degree."""
    if degree < 1:
        raise ValueError("degree must be >= 1")
    while True:
        coeffs = [int(rng.integers(0, ctx.order)) for _ in range(degree)] + [1]
        g = FieldPoly(coeffs)
        if is_irreducible(ctx, g):
            return g


def elem_str(ctx: FieldCtx, a: FieldElem, var: str | None = None) -> str:
    """Render a field element in z-power style, e.g. ``z5^4 + 1``."""
    var = var or f"z{ctx.m_ext}"
    if a == 0:
        return "0"
    terms = []
    for k in range(ctx.m_ext - 1, -1, -1):
        if (a >> k) & 1:
            if k == 0:
                terms.append("1")
            elif k == 1:
                terms.append(var)
            else:
                terms.append(f"{var}^{k}")
    return " + ".join(terms)


def poly_str(ctx: FieldCtx, g: FieldPoly, var: str = "x") -> str:
    """Render a polynomial for logs, parenthesising multi-term coefficients."""
    if g.degree < 0:
        return "0"
    parts = []
    for k in range(g.degree, -1, -1):
        c = g.coeffs[k]
        if c == 0:
            continue
        cs = elem_str(ctx, c)
        if k == 0:
            parts.append(cs)
            continue
        xs = var if k == 1 else f"{var}^{k}"
        if c == 1:
            parts.append(xs)
        elif "+" in cs:
            parts.append(f"({cs})*{xs}")
        else:
            parts.append(f"{cs}*{xs}")
    return " + ".join(parts)
