"""Arithmetic in the binary fields F_{2^a}, elements encoded as ints.

An element is an int whose binary digits are the coefficients of a
polynomial in the canonical generator t, so 0b101 means t^2 + 1.  Every
degree has exactly one canonical modulus: the irreducible polynomial of
that degree whose bit pattern, read as an integer, is smallest.  All
contexts are cached, so elements of equal degree always share a modulus.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

MAX_DEGREE = 40
TABLE_DEGREE_CAP = 22


def _pdeg(p: int) -> int:
    return p.bit_length() - 1


def _pmod(a: int, b: int) -> int:
    """Remainder of carry-less polynomial division of a by b."""
    db = _pdeg(b)
    while a.bit_length() - 1 >= db:
        a ^= b << (a.bit_length() - 1 - db)
    return a


def _pgcd(a: int, b: int) -> int:
    while b:
        a, b = b, _pmod(a, b)
    return a


def _pmulmod(a: int, b: int, mod: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
    return _pmod(r, mod)


def is_irreducible(poly: int) -> bool:
    """Rabin's test for irreducibility over GF(2)."""
    d = _pdeg(poly)
    if d < 1:
        return False
    # x^(2^d) must equal x mod poly
    h = 0b10
    for _ in range(d):
        h = _pmulmod(h, h, poly)
    if h != _pmod(0b10, poly):
        return False
    for r in _prime_divisors(d):
        h = 0b10
        for _ in range(d // r):
            h = _pmulmod(h, h, poly)
        if _pgcd(h ^ _pmod(0b10, poly), poly) != 1:
            return False
    return True


def _prime_divisors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


@lru_cache(maxsize=None)
def smallest_irreducible(a: int) -> int:
    """Canonical modulus: smallest-bits irreducible polynomial of degree a."""
    if not 1 <= a <= MAX_DEGREE:
        raise ValueError(f"degree {a} out of range 1..{MAX_DEGREE}")
    for cand in range(1 << a, 1 << (a + 1)):
        if is_irreducible(cand):
            return cand
    raise AssertionError("unreachable: every degree has an irreducible polynomial")


class FieldCtx:
    """Field context for F_{2^degree}; operations act on plain ints."""

    def __init__(self, degree: int, modulus: int):
        self.degree = degree
        self.modulus = modulus
        self.q = 1 << degree

    def __repr__(self) -> str:
        return f"FieldCtx(2^{self.degree}, mod={bin(self.modulus)})"

    def mul(self, x: int, y: int) -> int:
        m, top = self.modulus, 1 << self.degree
        r = 0
        while y:
            if y & 1:
                r ^= x
            y >>= 1
            x <<= 1
            if x & top:
                x ^= m
        return r

    def sqr(self, x: int) -> int:
        return self.mul(x, x)

    def pow_(self, x: int, e: int) -> int:
        if e < 0:
            raise ValueError("negative exponent")
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, x)
            x = self.mul(x, x)
            e >>= 1
        return r

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("inverse of 0")
        return self.pow_(x, self.q - 2)

    def trace(self, x: int) -> int:
        """Absolute trace down to F_2, returned as 0 or 1."""
        t = x
        cur = x
        for _ in range(self.degree - 1):
            cur = self.mul(cur, cur)
            t ^= cur
        if t not in (0, 1):
            raise AssertionError(f"trace landed outside F_2: {t}")
        return t

    def elements(self) -> range:
        return range(self.q)


@lru_cache(maxsize=None)
def make_ctx(a: int) -> FieldCtx:
    return FieldCtx(a, smallest_irreducible(a))


@dataclass(frozen=True)
class FieldElement:
    """An element of F_{2^degree}; bits encode a polynomial in t."""

    bits: int
    degree: int

    def __post_init__(self):
        if not 0 <= self.bits < (1 << self.degree):
            raise ValueError(f"bits {self.bits} out of range for degree {self.degree}")

    @property
    def ctx(self) -> FieldCtx:
        return make_ctx(self.degree)

    def __add__(self, other: "FieldElement") -> "FieldElement":
        _check_same(self, other)
        return FieldElement(self.bits ^ other.bits, self.degree)

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        _check_same(self, other)
        return FieldElement(self.ctx.mul(self.bits, other.bits), self.degree)

    def __bool__(self) -> bool:
        return self.bits != 0


def _check_same(x: FieldElement, y: FieldElement) -> None:
    if x.degree != y.degree:
        raise ValueError(f"context mismatch: degree {x.degree} vs {y.degree}")


def mul(x: FieldElement, y: FieldElement) -> FieldElement:
    return x * y


def abs_trace(x: FieldElement) -> int:
    return x.ctx.trace(x.bits)


def enumerate_field(ctx: FieldCtx) -> Iterator[FieldElement]:
    """All field elements in ascending bit order."""
    for bits in ctx.elements():
        yield FieldElement(bits, ctx.degree)


@lru_cache(maxsize=None)
def primitive_element(a: int) -> int:
    """Smallest generator of the multiplicative group of F_{2^a}."""
    ctx = make_ctx(a)
    n = ctx.q - 1
    if n == 1:
        return 1
    primes = _prime_divisors(n)
    for g in range(2, ctx.q):
        if all(ctx.pow_(g, n // p) != 1 for p in primes):
            return g
    raise AssertionError("unreachable: the multiplicative group is cyclic")


@lru_cache(maxsize=None)
def embedding_root(a_small: int, a_big: int) -> int:
    """Smallest-bits root of the degree-a_small canonical modulus in F_{2^a_big}.

    Sending the small field's generator t to this root defines the
    canonical embedding F_{2^a_small} -> F_{2^a_big}.
    """
    if a_big % a_small:
        raise ValueError(f"no embedding: {a_small} does not divide {a_big}")
    big = make_ctx(a_big)
    if a_small == 1:
        return 1
    if a_small == a_big:
        return 0b10
    modulus = smallest_irreducible(a_small)
    # The subfield's nonzero elements form the unique multiplicative
    # subgroup of order 2^a_small - 1.
    step = (big.q - 1) // ((1 << a_small) - 1)
    z = big.pow_(primitive_element(a_big), step)
    roots = []
    w = 1
    for _ in range((1 << a_small) - 1):
        if _eval_poly(modulus, w, big) == 0:
            roots.append(w)
        w = big.mul(w, z)
    if not roots:
        raise AssertionError("modulus has no root in the extension")
    return min(roots)


def _eval_poly(poly: int, x: int, ctx: FieldCtx) -> int:
    r = 0
    for i in range(_pdeg(poly), -1, -1):
        r = ctx.mul(r, x)
        if (poly >> i) & 1:
            r ^= 1
    return r


def embed_bits(bits: int, a_small: int, a_big: int) -> int:
    """Image of a small-field element (as bits) in the big field."""
    rho = embedding_root(a_small, a_big)
    big = make_ctx(a_big)
    r = 0
    i = bits.bit_length() - 1
    while i >= 0:
        r = big.mul(r, rho)
        if (bits >> i) & 1:
            r ^= 1
        i -= 1
    return r


class FieldTable:
    """Bulk lookup tables for one field: discrete logs and traces.

    exp[j] = g^j for the canonical primitive element g, log inverts it
    (log[0] = -1), trace[x] is the absolute trace bit of x, and
    trace_of_exp[j] = trace[exp[j]].  Used by the vectorized character
    sum loops.
    """

    def __init__(self, degree: int):
        if degree > TABLE_DEGREE_CAP:
            raise ValueError(f"table for degree {degree} exceeds cap {TABLE_DEGREE_CAP}")
        ctx = make_ctx(degree)
        self.degree = degree
        self.ctx = ctx
        q = ctx.q
        g = primitive_element(degree)
        exp = np.empty(q - 1, dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        v = 1
        for j in range(q - 1):
            exp[j] = v
            log[v] = j
            v = ctx.mul(v, g)
        if v != 1:
            raise AssertionError("generator order mismatch")
        self.exp = exp
        self.log = log
        xs = np.arange(q, dtype=np.int64)
        tr = np.zeros(q, dtype=np.uint8)
        for i in range(degree):
            if ctx.trace(1 << i):
                tr ^= ((xs >> i) & 1).astype(np.uint8)
        self.trace = tr
        self.trace_of_exp = tr[exp]


@lru_cache(maxsize=None)
def field_table(degree: int) -> FieldTable:
    return FieldTable(degree)
