"""Brute-force reference implementations used only by the test suite."""

from collections import deque
from itertools import combinations

from np2.modsolve import ModSolution


def scalar_sigma(D, l):
    """Minimum solution weight by a plain dict-and-deque search."""
    m = (1 << l) - 1
    if m == 1:
        return 1
    moves = sorted({d * (1 << r) % m for d in D for r in range(l)})
    if 0 in moves:
        return 1
    dist = {0: 0}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for mv in moves:
            y = (x + mv) % m
            if y == 0:
                return dist[x] + 1
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    raise AssertionError("unreachable: d * (2^l - 1) is always a solution")


def exhaustive_irreducible_classes(D, l, w):
    """All irreducible weight-w length-l solutions, one per shift class,
    by trying every placement of w ones in the digit matrix."""
    m = (1 << l) - 1
    cells = [(d, r) for d in D for r in range(l)]
    out = {}
    for combo in combinations(cells, w):
        if sum(d << r for d, r in combo) % m:
            continue
        digits: dict[int, int] = {}
        for d, r in combo:
            digits[d] = digits.get(d, 0) | (1 << r)
        sol = ModSolution(l, tuple(sorted(digits.items())))
        if sol.weight == w and sol.is_irreducible():
            can = sol.canonical()
            out[can.digits] = can
    return sorted(out.values(), key=lambda s: s.digits)
