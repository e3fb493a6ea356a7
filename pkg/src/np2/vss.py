"""Semilinear stable-image predictor for the first Newton polygon vertex.

The minimal irreducible solutions of the digit equation for the curve's
exponent set have supports whose union is a finite set Sigma.  Writing
the solutions' jumps into a matrix over F_q yields a Frobenius-twisted
linear map phi on F_q^Sigma; the stable image V_ss = lim Im phi^k then
predicts the first vertex as (dim V_ss, density * dim V_ss) whenever
the dimension is positive.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .field import FieldCtx, make_ctx
from .modsolve import (
    DensityResult,
    ModSolution,
    density,
    minimal_irreducible_solutions,
    odds_up_to,
)
from .zeta import CurvePoly


@dataclass(frozen=True)
class MinimalSupportMatrix:
    """Support list Sigma, matrix rows over F_q, and the solution data."""

    sigma: tuple[int, ...]
    entries: tuple[tuple[int, ...], ...]
    density: Fraction
    jump_digits: frozenset
    field_degree: int


def build_matrix(solutions, f: CurvePoly) -> MinimalSupportMatrix:
    """Matrix of the twisted map on the union of solution supports.

    Row i sends e(s_i) to e(2 s_i) when 2 s_i lies in Sigma, plus
    c_d e(s_j) for every jump s_i -> s_j = 2 s_i - d that some solution
    actually performs: the digit bit u_{d,r} = 1 sits at the position
    where that solution's support passes through s_i.  Matching d alone,
    without the position, would add edges no solution takes.
    """
    if not solutions:
        raise ValueError("no solutions to build from")
    dens = solutions[0].density
    sigma = set()
    jump_digits = set()
    jump_edges = {}
    for sol in solutions:
        if sol.density != dens:
            raise ValueError("solutions have mixed densities")
        l = sol.length
        phi = sol.support()
        sigma.update(phi)
        for d, u in sol.digits:
            for r in range(l):
                if not (u >> r) & 1:
                    continue
                jump_digits.add((d, r))
                k = l - 1 - r
                si, sj = phi[k], phi[(k + 1) % l]
                assert 2 * si - sj == d
                prev = jump_edges.setdefault((si, sj), d)
                if prev != d:
                    raise ValueError(f"ambiguous entry at ({si}, {sj})")
    sigma = tuple(sorted(sigma))
    index = {s: j for j, s in enumerate(sigma)}
    n = len(sigma)
    rows = [[0] * n for _ in sigma]
    for s in sigma:
        if 2 * s in index:
            rows[index[s]][index[2 * s]] = 1
    for (si, sj), d in jump_edges.items():
        rows[index[si]][index[sj]] = f.coeff(d)
    return MinimalSupportMatrix(
        sigma, tuple(tuple(r) for r in rows), dens, frozenset(jump_digits), f.field_degree
    )


def _row_reduce(ctx: FieldCtx, rows) -> list[tuple[int, ...]]:
    basis: list[tuple[int, list[int]]] = []
    for row in rows:
        r = list(row)
        for pc, b in basis:
            if r[pc]:
                coef = r[pc]
                r = [x ^ ctx.mul(coef, y) for x, y in zip(r, b)]
        p = next((j for j, x in enumerate(r) if x), None)
        if p is None:
            continue
        inv = ctx.inv(r[p])
        basis.append((p, [ctx.mul(inv, x) for x in r]))
    basis.sort()
    return [tuple(r) for _, r in basis]


def _apply(ctx: FieldCtx, M: MinimalSupportMatrix, v, twist_power: int):
    n = len(M.sigma)
    out = [0] * n
    for i, a in enumerate(v):
        for _ in range(twist_power):
            a = ctx.mul(a, a)
        if a == 0:
            continue
        row = M.entries[i]
        if a == 1:
            for j in range(n):
                out[j] ^= row[j]
        else:
            for j in range(n):
                if row[j]:
                    out[j] ^= ctx.mul(a, row[j])
    return tuple(out)


def vss_dim(M: MinimalSupportMatrix, ctx: FieldCtx | None = None, twist_power: int = 1) -> int:
    """Dimension of the stable image of the twisted map.

    Iterates W_{k+1} = phi(W_k) from the full space; the chain descends,
    so the first repeat of the dimension is the stable value.
    """
    if ctx is None:
        ctx = make_ctx(M.field_degree)
    n = len(M.sigma)
    basis = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    dim = n
    for _ in range(n + 1):
        basis = _row_reduce(ctx, [_apply(ctx, M, v, twist_power) for v in basis])
        if len(basis) == dim:
            return dim
        if len(basis) > dim:
            raise AssertionError("image chain grew")
        dim = len(basis)
    if dim != 0:
        raise AssertionError("image chain failed to stabilize")
    return 0


def effective_exponent_set(f: CurvePoly) -> tuple[int, ...]:
    """Odd exponents up to deg f, with the distinguished exponents
    removed when their coefficients vanish."""
    n = (2 * f.genus + 2).bit_length() - 1
    strip = []
    t1 = (1 << n) - 1
    if f.coeff(t1) == 0:
        strip.append(t1)
    if f.deg == (1 << (n + 1)) - 3:
        t2 = 3 * (1 << (n - 1)) - 1
        if f.coeff(t2) == 0:
            strip.append(t2)
    return odds_up_to(f.deg, exclude=strip)


@lru_cache(maxsize=None)
def _density_cached(D) -> DensityResult:
    return density(D)


@lru_cache(maxsize=None)
def _solutions_cached(D, target) -> tuple[ModSolution, ...]:
    return tuple(minimal_irreducible_solutions(D, target=target))


@dataclass(frozen=True)
class VssReport:
    """Everything the stable-image route knows about one curve."""

    matrix: MinimalSupportMatrix
    dim: int
    vertex: tuple[int, Fraction] | None
    slope_above: Fraction | None


def vss_report(f: CurvePoly) -> VssReport:
    D = effective_exponent_set(f)
    res = _density_cached(D)
    if not res.certified:
        raise ValueError(f"density of {D} not certified; cannot predict")
    sols = _solutions_cached(D, res.value)
    M = build_matrix(sols, f)
    d = vss_dim(M)
    if d > 0:
        return VssReport(M, d, (d, res.value * d), None)
    return VssReport(M, 0, None, res.value)


def predict_first_vertex(f: CurvePoly) -> tuple[int, Fraction] | None:
    """First Newton polygon vertex per the stable image, or None when
    the dimension vanishes (first slope strictly above the density)."""
    return vss_report(f).vertex
