import random
from fractions import Fraction

import pytest

from helpers import exhaustive_irreducible_classes, scalar_sigma
from np2.modsolve import (
    DensityResult,
    ModSolution,
    density,
    min_weight_solution,
    minimal_irreducible_solutions,
    odds_up_to,
    sigma,
    support_sum_lower_bound,
)


def test_odds_up_to():
    assert odds_up_to(13) == (1, 3, 5, 7, 9, 11, 13)
    assert odds_up_to(9, exclude=(7,)) == (1, 3, 5, 9)


def test_frozen_single_digit_support():
    s = ModSolution(3, ((7, 1),))
    assert s.support() == (1, 2, 4)
    assert s.weight == 1
    assert s.density == Fraction(1, 3)
    assert s.is_irreducible()
    assert s.jump_count() == 1
    assert s.shift().digits == ((7, 2),)
    assert s.shift().shift().shift() == s


def test_frozen_two_digit_support():
    s = ModSolution(6, ((11, 1), (13, 4)))
    assert s.support() == (1, 2, 4, 8, 3, 6)
    assert s.weight == 2
    assert s.is_irreducible()
    assert s.jump_count() == 2


def test_frozen_reducible():
    s = ModSolution(2, ((1, 3),))
    assert s.support() == (1, 1)
    assert s.jump_count() == 2
    assert not s.is_irreducible()


def test_solution_validation():
    with pytest.raises(ValueError):
        ModSolution(0, ((1, 1),))
    with pytest.raises(ValueError):
        ModSolution(3, ())
    with pytest.raises(ValueError):
        ModSolution(3, ((2, 1),))  # even exponent
    with pytest.raises(ValueError):
        ModSolution(3, ((7, 8),))  # digit too wide
    with pytest.raises(ValueError):
        ModSolution(3, ((3, 1),))  # 3 not divisible by 7
    with pytest.raises(ValueError):
        ModSolution(6, ((13, 4), (11, 1)))  # unsorted


def sample_solutions():
    out = [
        ModSolution(3, ((7, 1),)),
        ModSolution(6, ((11, 1), (13, 4))),
        ModSolution(2, ((1, 3),)),
        ModSolution(7, ((13, 1), (23, 16))),
        ModSolution(8, ((23, 1), (29, 8))),
        ModSolution(10, ((19, 5), (29, 32))),
        ModSolution(1, ((5, 1),)),
        ModSolution(4, ((15, 3),)),
    ]
    rng = random.Random(2)
    # random valid solutions: pad a multiple of 2^l - 1 across random digits
    for _ in range(10):
        l = rng.randint(2, 8)
        m = (1 << l) - 1
        d = rng.choice([d for d in range(1, 16, 2)])
        out.append(ModSolution(l, ((d, m),)))  # d * m is divisible by m
    return out


def test_support_profile_invariant():
    # phi(i+1) <= 2 phi(i) cyclically, values positive
    for s in sample_solutions():
        phi = s.support()
        l = s.length
        assert all(v >= 1 for v in phi)
        for i in range(l):
            assert phi[(i + 1) % l] <= 2 * phi[i]


def test_digit_column_identity():
    # column sums of the digit matrix are determined by the support:
    # sum_d d * u_{d,r} = 2 phi(l-r-1) - phi((l-r) mod l)
    for s in sample_solutions():
        phi = s.support()
        l = s.length
        for r in range(l):
            col = sum(d for d, u in s.digits if (u >> r) & 1)
            assert col == 2 * phi[l - r - 1] - phi[(l - r) % l]


def test_shift_equivariance():
    for s in sample_solutions():
        phi = s.support()
        shifted = s.shift()
        assert shifted.weight == s.weight
        assert shifted.support() == phi[1:] + phi[:1]
        assert shifted.canonical() == s.canonical()
        cur = s
        for _ in range(s.length):
            cur = cur.shift()
        assert cur == s


def test_sigma_frozen_n3():
    D = odds_up_to(13)
    assert sigma(D, 3) == 1
    w = min_weight_solution(D, 3)
    assert w.digits == ((7, 1),)
    assert sigma(D, 6) == 2
    assert min_weight_solution(D, 6).weight == 2


def test_sigma_witness_is_minimal():
    rng = random.Random(4)
    for _ in range(12):
        size = rng.randint(1, 5)
        D = tuple(sorted(rng.sample(range(1, 32, 2), size)))
        l = rng.randint(1, 9)
        w = min_weight_solution(D, l)
        assert w.length == l
        assert set(d for d, _ in w.digits) <= set(D)
        assert w.weight == sigma(D, l) == scalar_sigma(D, l)


def test_sigma_matches_scalar_bfs_paper_sets():
    sets = [
        odds_up_to(13),
        odds_up_to(13, (7,)),
        odds_up_to(29, (15,)),
        odds_up_to(29, (15, 23)),
        odds_up_to(21, (15,)),
    ]
    for D in sets:
        for l in range(1, 13):
            assert sigma(D, l) == scalar_sigma(D, l), (D, l)


def test_sigma_length_cap():
    with pytest.raises(ValueError):
        sigma((7,), 27)
    with pytest.raises(ValueError):
        sigma((7,), 0)


def test_lower_bound_frozen_values():
    assert support_sum_lower_bound(1, 3) == 7
    assert support_sum_lower_bound(2, 6) == 24
    # tight: attained by the frozen minimal solutions
    assert sum(ModSolution(3, ((7, 1),)).support()) == 7
    assert sum(ModSolution(6, ((11, 1), (13, 4))).support()) == 24


def test_lower_bound_boundary_and_monotone():
    for s in range(1, 8):
        assert support_sum_lower_bound(s, s + 1) == s * (s + 1) // 2 + s + 1
        prev = None
        for l in range(1, 120):
            v = support_sum_lower_bound(s, l)
            if prev is not None:
                assert v >= prev, (s, l)
            prev = v
    with pytest.raises(ValueError):
        support_sum_lower_bound(0, 3)


def test_lower_bound_vs_all_irreducibles():
    # every irreducible solution found by exhaustive placement respects it
    D = odds_up_to(13)
    for l, w in ((3, 1), (4, 2), (5, 2), (6, 2)):
        for sol in exhaustive_irreducible_classes(D, l, w):
            assert sum(sol.support()) >= support_sum_lower_bound(w, l)


def test_density_frozen_n3():
    r = density(odds_up_to(13))
    assert r.value == Fraction(1, 3)
    assert r.length == 3
    assert r.certified
    assert r.witness.digits == ((7, 1),)
    assert dict(r.sigmas)[3] == 1


def test_density_single_exponent():
    r = density((1,))
    assert r.value == 1 and r.length == 1 and r.certified


def test_density_uncertified_when_horizon_too_short():
    r = density(odds_up_to(13), l_max=2)
    assert not r.certified


def test_density_spot_values():
    assert density(odds_up_to(17, (15,))).value == Fraction(1, 3)
    assert density(odds_up_to(23, (15,))).value == Fraction(2, 7)
    assert density(odds_up_to(29, (15,))).value == Fraction(1, 4)
    assert density(odds_up_to(61, (31,))).value == Fraction(1, 5)


def test_minimal_solutions_frozen_n3():
    sols = minimal_irreducible_solutions(odds_up_to(13))
    assert [(s.length, s.digits) for s in sols] == [
        (3, ((7, 1),)),
        (6, ((11, 1), (13, 4))),
    ]


def test_minimal_solutions_single_exponent():
    sols = minimal_irreducible_solutions((1,))
    assert [(s.length, s.digits) for s in sols] == [(1, ((1, 1),))]


def test_four_classes_at_two_sevenths():
    D = odds_up_to(29, (15,))
    sols = minimal_irreducible_solutions(D, target=Fraction(2, 7))
    assert [s.digits for s in sols] == [
        ((11, 1), (29, 4)),
        ((13, 1), (23, 16)),
        ((19, 1), (27, 4)),
        ((25, 1), (27, 32)),
    ]
    # exhaustive placement at the base length agrees
    assert exhaustive_irreducible_classes(D, 7, 2) == sols


def test_four_classes_at_two_ninths():
    D = odds_up_to(61, (31,))
    sols = minimal_irreducible_solutions(D, target=Fraction(2, 9))
    assert [s.digits for s in sols] == [
        ((23, 1), (61, 8)),
        ((29, 1), (47, 32)),
        ((39, 1), (59, 8)),
        ((55, 1), (57, 8)),
    ]
    assert exhaustive_irreducible_classes(D, 9, 2) == sols


def test_weight_two_family_identity():
    # 2^(n-1) (2^(n+1) - 3) + (3 2^(n-1) - 1) = 2^(2n) - 1, so the pair
    # u_{2^(n+1)-3} = 2^(n-1), u_{3 2^(n-1)-1} = 1 solves length 2n
    for n in (3, 4, 5, 6):
        d1, d2 = (1 << (n + 1)) - 3, 3 * (1 << (n - 1)) - 1
        assert (1 << (n - 1)) * d1 + d2 == (1 << (2 * n)) - 1
        sol = ModSolution(2 * n, tuple(sorted(((d1, 1 << (n - 1)), (d2, 1)))))
        assert sol.is_irreducible()
        assert sol.density == Fraction(1, n)
        # doubling the leading exponent instead would leave the allowed range
        assert (1 << (2 * n + 1)) - 3 > (1 << (n + 1)) - 1


def test_weight_three_families():
    # two families of weight-3 solutions of length 3n - 2, i in {5, 7}
    for n in (4, 5):
        l = 3 * n - 2
        m = (1 << l) - 1
        for i in (5, 7):
            a = [
                ((1 << (n + 1)) - 3, 1 << (2 * n - 3)),
                (3 * (1 << (n - 1)) - i, 1 << (n - 2)),
                (i * (1 << (n - 2)) - 1, 1),
            ]
            b = [
                ((1 << (n + 1)) - i, 1 << (2 * n - 3)),
                (i * (1 << (n - 2)) - 3, 1 << (n - 1)),
                (3 * (1 << (n - 1)) - 1, 1),
            ]
            for digits in (a, b):
                # the same exponent may appear twice; digits then add
                merged: dict[int, int] = {}
                for d, u in digits:
                    merged[d] = merged.get(d, 0) + u
                assert sum(d * u for d, u in merged.items()) == m
                sol = ModSolution(l, tuple(sorted(merged.items())))
                assert sol.weight == 3 and sol.is_irreducible()


def test_weight_three_family_counts():
    D4 = odds_up_to(29, (15,))
    assert len(minimal_irreducible_solutions(D4, target=Fraction(3, 10))) == 4
    D5 = odds_up_to(61, (31,))
    assert len(minimal_irreducible_solutions(D5, target=Fraction(3, 13))) == 4


def test_extra_classes_below_threshold():
    # below the largest degree the class lists grow past the generic four
    cases = {
        (17, (15,)): 2,
        (19, (15,)): 4,
        (21, (15,)): 6,
        (25, (15,)): 1,
        (27, (15,)): 3,
        (29, (15, 23)): 3,
    }
    for (d, ex), count in cases.items():
        D = odds_up_to(d, ex)
        r = density(D)
        assert r.certified
        sols = minimal_irreducible_solutions(D, target=r.value)
        assert len(sols) == count, (d, ex, [s.digits for s in sols])


def test_enumerator_matches_exhaustive_placement():
    # structured chain search vs trying every digit placement
    for d, ex, l, w in ((19, (15,), 6, 2), (19, (15,), 9, 3), (21, (15,), 6, 2)):
        D = odds_up_to(d, ex)
        sols = minimal_irreducible_solutions(D, target=Fraction(w, l))
        at_l = [s for s in sols if s.length == l]
        assert at_l == exhaustive_irreducible_classes(D, l, w)


def test_minimal_solutions_all_validate():
    for D, t in [
        (odds_up_to(13), None),
        (odds_up_to(29, (15,)), Fraction(2, 7)),
        (odds_up_to(21, (15,)), None),
    ]:
        for s in minimal_irreducible_solutions(D, target=t):
            assert s.is_irreducible()
            assert s == s.canonical()
            assert set(d for d, _ in s.digits) <= set(D)
