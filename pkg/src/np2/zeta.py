"""Zeta function data for the curves y^2 + y = f(x) over F_{2^a}.

f ranges over polynomials with odd exponents only, so deg f = 2g + 1 and
the curve has genus g and 2-rank zero.  The numerator L(T) of the zeta
function is recovered from the character sums

    S_m = sum over x in F_{2^(am)} of (-1)^Tr(f(x)),

since #C(F_{q^m}) = q^m + 1 + S_m, via the log derivative recurrence
k a_k = sum_{m<=k} S_m a_{k-m} and the functional equation.  The Newton
polygon is the lower convex hull of (k, v(a_k)) with v normalized so
that v(q) = 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

import numpy as np

from .field import TABLE_DEGREE_CAP, FieldCtx, embed_bits, field_table, make_ctx

MAX_EXT_DEGREE = 30


@dataclass(frozen=True)
class CurvePoly:
    """f = sum c_e x^e with odd exponents, defining y^2 + y = f(x).

    field_degree is a with coefficients in F_{2^a}; coeffs holds
    (exponent, bits) pairs sorted by descending exponent, zeros dropped.
    """

    field_degree: int
    coeffs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        q = 1 << self.field_degree
        if not self.coeffs:
            raise ValueError("f must be nonzero")
        seen = set()
        for e, c in self.coeffs:
            if e < 1 or e % 2 == 0:
                raise ValueError(f"exponent {e} is not odd and positive")
            if not 1 <= c < q:
                raise ValueError(f"coefficient {c} out of range for F_{{2^{self.field_degree}}}")
            if e in seen:
                raise ValueError(f"repeated exponent {e}")
            seen.add(e)
        if list(self.coeffs) != sorted(self.coeffs, reverse=True):
            raise ValueError("coeffs must be sorted by descending exponent")

    @classmethod
    def make(cls, field_degree: int, coeffs: dict[int, int]) -> "CurvePoly":
        pairs = tuple(sorted(((e, c) for e, c in coeffs.items() if c), reverse=True))
        return cls(field_degree, pairs)

    @property
    def deg(self) -> int:
        return self.coeffs[0][0]

    @property
    def genus(self) -> int:
        return (self.deg - 1) // 2

    @property
    def q(self) -> int:
        return 1 << self.field_degree

    def support(self) -> tuple[int, ...]:
        return tuple(e for e, _ in self.coeffs)

    def coeff(self, e: int) -> int:
        for ee, c in self.coeffs:
            if ee == e:
                return c
        return 0

    def evaluate(self, x: int) -> int:
        return _eval_sparse(make_ctx(self.field_degree), self.coeffs, x)


def _eval_sparse(ctx: FieldCtx, items, x: int) -> int:
    """Horner evaluation over the gaps of a sparse polynomial."""
    e_prev, r = items[0]
    for e, c in items[1:]:
        r = ctx.mul(r, ctx.pow_(x, e_prev - e)) ^ c
        e_prev = e
    return ctx.mul(r, ctx.pow_(x, e_prev))


def exponential_sum(f: CurvePoly, m: int, method: str = "auto") -> int:
    """S_m = sum over F_{2^(am)} of (-1)^Tr(f(x))."""
    am = f.field_degree * m
    if m < 1 or am > MAX_EXT_DEGREE:
        raise ValueError(f"extension degree {am} out of range 1..{MAX_EXT_DEGREE}")
    if method == "auto":
        method = "table" if am <= TABLE_DEGREE_CAP else "scalar"
    if method == "table":
        return _exponential_sum_table(f, am)
    if method == "scalar":
        return _exponential_sum_scalar(f, am)
    raise ValueError(f"unknown method {method!r}")


def _exponential_sum_scalar(f: CurvePoly, am: int) -> int:
    ctx = make_ctx(am)
    emb = tuple((e, embed_bits(c, f.field_degree, am)) for e, c in f.coeffs)
    s = 0
    for x in ctx.elements():
        s += 1 - 2 * ctx.trace(_eval_sparse(ctx, emb, x))
    return s


@lru_cache(maxsize=None)
def _trace_row(am: int, e: int, cbits: int) -> np.ndarray:
    """Trace bits of c g^(j e) for j = 0..2^am - 2, g the canonical generator."""
    tab = field_table(am)
    n = (1 << am) - 1
    idx = (np.arange(n, dtype=np.int64) * e + int(tab.log[cbits])) % n
    row = tab.trace_of_exp[idx]
    row.setflags(write=False)
    return row


def _exponential_sum_table(f: CurvePoly, am: int) -> int:
    n = (1 << am) - 1
    acc = np.zeros(n, dtype=np.uint8)
    for e, c in f.coeffs:
        cb = embed_bits(c, f.field_degree, am)
        acc ^= _trace_row(am, e % n if e % n else n, cb)
    # x = 0 contributes +1 since f(0) = 0
    return (1 << am) - 2 * int(acc.sum())


def point_count(f: CurvePoly, m: int = 1, method: str = "auto") -> int:
    """#C(F_{q^m}) including the one point at infinity."""
    return f.q ** m + 1 + exponential_sum(f, m, method)


def l_polynomial(f: CurvePoly, full: bool = False, method: str = "auto") -> list[int]:
    """Coefficients [a_0, ..., a_2g] of the zeta numerator L(T).

    With full=False the sums S_1..S_g are computed and the upper half is
    filled in from the functional equation a_(2g-k) = q^(g-k) a_k.  With
    full=True all of S_1..S_2g are computed and the functional equation,
    the Weil bound and evenness of a_1..a_2g are verified.
    """
    g = f.genus
    q = f.q
    if g == 0:
        return [1]
    top = 2 * g if full else g
    s = [exponential_sum(f, m, method) for m in range(1, top + 1)]
    a = [1] + [0] * (2 * g)
    for k in range(1, top + 1):
        tot = sum(s[m - 1] * a[k - m] for m in range(1, k + 1))
        if tot % k:
            raise AssertionError(f"power sum recurrence not divisible at k={k}")
        a[k] = tot // k
    if full:
        for k in range(g + 1, 2 * g + 1):
            if a[k] != q ** (k - g) * a[2 * g - k]:
                raise AssertionError(f"functional equation fails at k={k}")
        for k in range(2 * g + 1):
            if a[k] ** 2 > comb(2 * g, k) ** 2 * q**k:
                raise AssertionError(f"Weil bound fails at k={k}")
        if any(a[k] % 2 for k in range(1, 2 * g + 1)):
            raise AssertionError("odd coefficient in a 2-rank zero L-polynomial")
    else:
        for k in range(g + 1, 2 * g + 1):
            a[k] = q ** (k - g) * a[2 * g - k]
    return a


def _v2(x: int) -> int:
    return (x & -x).bit_length() - 1


def newton_polygon(lcoeffs, q: int) -> list[tuple[int, Fraction]]:
    """Vertices of the q-adic Newton polygon of sum lcoeffs[k] T^k.

    Valuations are normalized so v(q) = 1; zero coefficients are
    skipped.  Returns the lower hull vertices left to right.
    """
    a = q.bit_length() - 1
    if q != 1 << a or a < 1:
        raise ValueError(f"q = {q} is not a power of 2")
    pts = [(k, _v2(c)) for k, c in enumerate(lcoeffs) if c]
    if not pts:
        raise ValueError("zero polynomial")
    hull = []
    for p in pts:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], p) <= 0:
            hull.pop()
        hull.append(p)
    verts = [(k, Fraction(v, a)) for k, v in hull]
    for i in range(2, len(verts)):
        s_prev = _slope(verts[i - 2], verts[i - 1])
        s_next = _slope(verts[i - 1], verts[i])
        if not s_prev < s_next:
            raise AssertionError("hull slopes not strictly increasing")
    return verts


def _cross(o, a, b) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _slope(p, r) -> Fraction:
    return Fraction(r[1] - p[1], r[0] - p[0])


def first_vertex(vertices) -> tuple[int, Fraction]:
    """First vertex after the origin; the polygon starts at (0, 0)."""
    if vertices[0] != (0, 0):
        raise ValueError("polygon does not start at the origin")
    if len(vertices) < 2:
        raise ValueError("polygon has no positive-slope segment")
    return vertices[1]


def newton_polygon_of_curve(f: CurvePoly, full: bool = False) -> list[tuple[int, Fraction]]:
    return newton_polygon(l_polynomial(f, full=full), f.q)
