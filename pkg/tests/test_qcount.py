import itertools

import pytest

from qdiam.errors import ParameterOutOfRange
from qdiam.gfq import field_new
from qdiam.qcount import (complementary_pair_bound, count_profile,
                          cross_intersecting_sum_bound, ekr_bound,
                          gauss_binom, hilton_milner_bound, kleitman_bound,
                          layer_sum, nontrivial_intersecting_bound,
                          odd_stability_bound, odd_stability_in_range,
                          small_s_nontrivial_bound, type_a_even_bound,
                          type_a_even_in_range, type_b_even_bound,
                          type_b_even_in_range)
from qdiam.subspace import Subspace


def count_subspaces_bruteforce(q, n, k):
    """Independent oracle: all spans of k-tuples of vectors, deduplicated."""
    field = field_new(q)
    vectors = list(itertools.product(range(q), repeat=n))
    seen = set()
    for gens in itertools.product(vectors, repeat=k):
        s = Subspace.from_generators(field, n, list(gens))
        if s.dim == k:
            seen.add(s)
    return len(seen)


# -- gauss_binom ---------------------------------------------------------------

def test_gauss_binom_edges():
    assert gauss_binom(5, 0, 2) == 1
    assert gauss_binom(5, 5, 3) == 1
    assert gauss_binom(5, 6, 2) == 0
    assert gauss_binom(5, -1, 2) == 0


def test_gauss_binom_against_bruteforce_spans():
    assert gauss_binom(4, 2, 2) == count_subspaces_bruteforce(2, 4, 2) == 35
    assert gauss_binom(3, 1, 3) == count_subspaces_bruteforce(3, 3, 1) == 13
    assert gauss_binom(4, 3, 2) == count_subspaces_bruteforce(2, 4, 3) == 15
    assert gauss_binom(3, 2, 3) == count_subspaces_bruteforce(3, 3, 2) == 13


def test_gauss_binom_symmetry():
    for q in (2, 3, 4, 5):
        for n in range(12):
            for k in range(n + 1):
                assert gauss_binom(n, k, q) == gauss_binom(n, n - k, q)


def test_gauss_binom_rejects_bad_q():
    with pytest.raises(ParameterOutOfRange):
        gauss_binom(4, 2, 1)


# -- count_profile --------------------------------------------------------------

def test_count_profile_examples():
    assert count_profile(2, 1, 1, 0, 2) == 2
    assert count_profile(6, 2, 2, 2, 5) == 1          # B = A
    assert count_profile(4, 2, 2, 0, 2) == 16
    assert count_profile(4, 2, 2, 5, 2) == 0          # out of range j


def test_count_profile_total_identity_symbolic():
    # The j-sum equals [n l]_q as a polynomial identity in q; checking at
    # more integer points than its degree l*(n-l) pins it symbolically.
    for n in range(11):
        for k in range(n + 1):
            for l in range(n + 1):
                degree = l * (n - l)
                for q in range(2, degree + 4):
                    total = sum(count_profile(n, k, l, j, q)
                                for j in range(min(k, l) + 1))
                    assert total == gauss_binom(n, l, q)


# -- bound formulas --------------------------------------------------------------

def test_kleitman_bound_values():
    assert kleitman_bound(4, 2, 2) == 16
    assert kleitman_bound(4, 3, 2) == 23
    assert kleitman_bound(5, 4, 2) == 187
    assert kleitman_bound(3, 2, 3) == 14
    assert kleitman_bound(5, 3, 2) == 47


def test_kleitman_bound_range_errors():
    with pytest.raises(ParameterOutOfRange):
        kleitman_bound(3, 3, 2)
    with pytest.raises(ParameterOutOfRange):
        kleitman_bound(5, 1, 2)


def test_type_a_even_bound_value():
    assert type_a_even_bound(7, 2, 2) == 1 + 127 + 63 + 651 == 842
    assert not type_a_even_in_range(7, 2)
    assert type_a_even_in_range(19, 2)
    with pytest.raises(ParameterOutOfRange):
        type_a_even_bound(7, 1, 2)


def test_type_a_even_matches_ball_size_at_small_n():
    # at n = t+2 the formula equals the whole-lattice ball size; checked
    # directly against enumeration in the families tests; here the closed
    # form only
    assert type_a_even_bound(4, 2, 2) == 1 + 15 + 7 + 7


def test_hilton_milner_bound_values():
    assert hilton_milner_bound(7, 3, 2) == 651 - 2**6 * 7 + 2**3 == 211
    assert odd_stability_bound(7, 2, 2) == (1 + 127 + 2667) + 211 == 3006
    assert odd_stability_in_range(13, 2)
    assert not odd_stability_in_range(12, 2)
    with pytest.raises(ParameterOutOfRange):
        odd_stability_bound(4, 2, 2)   # needs n >= t+3


def test_hm_positive_on_hypothesis_range():
    for q in (2, 3, 4):
        for t in (2, 3, 4):
            for n in range(5 * t + 3, 41):
                assert hilton_milner_bound(n, t + 1, q) > 0


def test_type_b_even_bound_value():
    expected = (1 + 4095) + 5 * 4 * 651 * 4095
    assert type_b_even_bound(12, 2, 2) == expected
    assert type_b_even_in_range(12, 2)
    assert not type_b_even_in_range(11, 2)


def test_ekr_bound_values():
    assert ekr_bound(7, 3, 1, 2) == 651
    # at the boundary n = 2k - s the second branch can dominate: the whole
    # layer V(k) of F_q^(2k-s) is s-intersecting
    assert ekr_bound(5, 3, 1, 2) == gauss_binom(5, 2, 2) == 155
    # for s = 0 the two branches coincide at the boundary
    assert gauss_binom(6, 3, 2) == gauss_binom(2 * 3 - 0, 3, 2)
    assert ekr_bound(6, 3, 3, 2) == 1
    with pytest.raises(ParameterOutOfRange):
        ekr_bound(4, 3, 1, 2)


def test_nontrivial_intersecting_bound_values():
    assert nontrivial_intersecting_bound(7, 3, 1, 2) == 211
    # large-s regime: [s+2 1][n-s-1 k-s-1] - q [s+1 1][n-s-2 k-s-2]
    expected = (gauss_binom(4, 1, 2) * gauss_binom(7, 1, 2)
                - 2 * gauss_binom(3, 1, 2) * gauss_binom(6, 0, 2))
    assert nontrivial_intersecting_bound(10, 4, 2, 2) == expected == 1891
    # for s = 1, k = 3 the two published expressions agree identically
    for q in (2, 3):
        for n in range(7, 20):
            direct = (gauss_binom(3, 1, q) * gauss_binom(n - 2, 1, q)
                      - q * gauss_binom(2, 1, q))
            assert nontrivial_intersecting_bound(n, 3, 1, q) == direct
    with pytest.raises(ParameterOutOfRange):
        nontrivial_intersecting_bound(7, 3, 3, 2)
    with pytest.raises(ParameterOutOfRange):
        nontrivial_intersecting_bound(7, 3, 0, 2)


def test_nontrivial_below_ekr():
    for q in (2, 3):
        for k in (3, 4, 5):
            for s in range(1, k - 1):
                for n in range(2 * k + 2, 30):
                    assert (nontrivial_intersecting_bound(n, k, s, q)
                            < ekr_bound(n, k, s, q))


def test_complementary_pair_bound_values():
    assert complementary_pair_bound(4, 1, 2) == 15 - 8 + 1 == 8
    assert complementary_pair_bound(5, 2, 2) == 155 - 2**6 + 1 == 92
    for q in (2, 3):
        for n in range(3, 12):
            for k in range(1, (n - 1) // 2 + 1):
                assert complementary_pair_bound(n, k, q) < gauss_binom(n, k, q)
    with pytest.raises(ParameterOutOfRange):
        complementary_pair_bound(4, 2, 2)


def test_cross_intersecting_sum_bound_general():
    # complementary instantiation agrees with the dedicated formula
    for q in (2, 3):
        for n in range(5, 12):
            for k in range(2, (n - 1) // 2 + 1):
                assert (cross_intersecting_sum_bound(n, k, n - k, 1, q)
                        == complementary_pair_bound(n, k, q))
    with pytest.raises(ParameterOutOfRange):
        cross_intersecting_sum_bound(4, 2, 2, 2, 2)


def test_small_s_inequality_spot():
    lhs = small_s_nontrivial_bound(8, 4, 1, 2)
    rhs = gauss_binom(4, 1, 2) * gauss_binom(6, 2, 2)
    assert lhs == 11811 - 2**12 + 2**4
    assert lhs <= rhs


def test_bounds_monotone_in_n():
    for q in (2, 3):
        for d in (2, 3, 4, 5):
            vals = [kleitman_bound(n, d, q) for n in range(d + 1, 25)]
            assert all(a <= b for a, b in zip(vals, vals[1:]))
        for t in (2, 3):
            for fn, start in ((type_a_even_bound, t + 1),
                              (type_b_even_bound, t + 1),
                              (odd_stability_bound, t + 3)):
                vals = [fn(n, t, q) for n in range(start, 25)]
                assert all(a <= b for a, b in zip(vals, vals[1:]))


def test_layer_sum():
    assert layer_sum(5, 2, 2) == 1 + 31 + 155
