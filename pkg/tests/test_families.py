import io
import random

import pytest

from qdiam.errors import (AmbientMismatch, EmptyFamily, InvalidConfiguration,
                          ParseError)
from qdiam.families import (SubspaceFamily, ball, canonical_double_ball,
                            canonical_family, cross_intersection_profile,
                            diameter, diameter_at_most, dim_spread,
                            double_ball, extremal_odd_family,
                            extremal_odd_triple, hilton_milner_family,
                            hilton_milner_triple, is_admissible,
                            is_cross_intersecting, is_s_intersecting,
                            lower_layers, min_supp_norm, perp_family,
                            read_family, star, upper_layers, write_family)
from qdiam.gfq import field_new
from qdiam.grassmann import build_index, enumerate_layer
from qdiam.qcount import (gauss_binom, hilton_milner_bound, kleitman_bound,
                          layer_sum, odd_stability_bound, type_a_even_bound)
from qdiam.subspace import Subspace

F2 = field_new(2)
F3 = field_new(3)


def span(field, n, *gens):
    return Subspace.from_generators(field, n, list(gens))


def axis_line(field, n):
    return span(field, n, [1] + [0] * (n - 1))


def axis_subspace(field, n, indices):
    return span(field, n, *[[1 if j == i else 0 for j in range(n)] for i in indices])


def random_family(field, n, rng, size):
    members = []
    for _ in range(size):
        rows = rng.randrange(0, n + 1)
        members.append(Subspace.from_generators(
            field, n, [[rng.randrange(field.q) for _ in range(n)]
                       for _ in range(rows)]))
    return SubspaceFamily(field, n, members)


# -- families as containers ---------------------------------------------------

def test_family_dedupes_and_sorts():
    a = span(F2, 3, [1, 0, 0])
    b = span(F2, 3, [1, 0, 0], [1, 0, 0])
    fam = SubspaceFamily(F2, 3, [a, b, Subspace.zero(F2, 3)])
    assert len(fam) == 2
    assert fam.members == tuple(sorted(fam.members, key=Subspace.sort_key))
    assert fam.support == (0, 1)
    assert fam.layer_sizes() == {0: 1, 1: 1}


def test_family_rejects_mixed_ambient():
    with pytest.raises(AmbientMismatch):
        SubspaceFamily(F2, 3, [span(F2, 4, [1, 0, 0, 0])])


# -- balls and canonical families ----------------------------------------------

def test_ball_radius_zero():
    c = span(F2, 4, [1, 1, 0, 0], [0, 0, 1, 1])
    fam = ball(c, 0)
    assert fam.members == (c,)


def test_ball_around_zero_is_lower_layers():
    for t in range(4):
        assert ball(Subspace.zero(F2, 4), t) == lower_layers(F2, 4, t)


def test_ball_size_matches_even_stability_formula():
    x = axis_line(F2, 6)
    fam = ball(x, 2)
    assert len(fam) == type_a_even_bound(6, 2, 2)


def test_ball_membership_characterization_exhaustive():
    # line-centered radius-t ball: members are exactly the subspaces of
    # dimension < t, plus those of dimension t or t+1 containing the line
    n, t = 6, 2
    x = axis_line(F2, n)
    fam = ball(x, t)
    idx = build_index(F2, n)
    for a in idx.subspaces:
        expected = a.dim <= t - 1 or (a.dim in (t, t + 1) and a.contains(x))
        assert (a in fam) == expected


def test_double_ball_examples():
    c = span(F2, 4, [1, 0, 0, 0])
    assert double_ball(c, c, 1) == ball(c, 1)
    d = double_ball(Subspace.zero(F2, 4), c, 1)
    assert d == canonical_double_ball(c, 1)
    assert len(d) == kleitman_bound(4, 3, 2) == 23
    assert len(star(c, 2)) == gauss_binom(3, 1, 2) == 7


def test_lower_upper_layer_sizes():
    assert len(lower_layers(F2, 5, 2)) == layer_sum(5, 2, 2) == 187
    assert len(upper_layers(F2, 5, 2)) == 187
    assert upper_layers(F2, 5, 2) == perp_family(lower_layers(F2, 5, 2))
    assert canonical_family(F2, 5, 2, "L") == lower_layers(F2, 5, 2)
    assert canonical_family(F2, 5, 2, "U") == upper_layers(F2, 5, 2)


def test_lower_upper_disjoint_when_room():
    lo = lower_layers(F2, 5, 2)
    up = upper_layers(F2, 5, 2)
    assert not (lo.member_set & up.member_set)


def test_star_extremes():
    x = axis_line(F2, 4)
    assert star(x, 1).members == (x,)
    assert star(x, 4).members == (Subspace.full(F2, 4),)
    assert len(star(x, 2)) == gauss_binom(3, 1, 2)
    assert is_s_intersecting(star(x, 2).members, 1)


def test_whole_layer_not_intersecting():
    layer = list(enumerate_layer(F2, 4, 2))
    assert not is_s_intersecting(layer, 1)


# -- Hilton-Milner shapes -------------------------------------------------------

def test_hilton_milner_size_and_intersecting():
    n = 7
    x = axis_line(F2, n)
    y = axis_subspace(F2, n, [1, 2, 3])
    hm = hilton_milner_family(x, y)
    assert len(hm) == hilton_milner_bound(n, 3, 2) == 211
    assert is_s_intersecting(hm.members, 1)
    # nontrivial: no common line
    common = hm.members[0]
    for s in hm.members[1:]:
        common = common.intersect(s)
        if common.dim == 0:
            break
    assert common.dim == 0


def test_hilton_milner_rejects_x_inside_y():
    y = axis_subspace(F2, 7, [0, 1, 2])
    with pytest.raises(InvalidConfiguration):
        hilton_milner_family(axis_line(F2, 7), y)


def test_hilton_milner_triple_contains_center():
    y = axis_subspace(F2, 7, [1, 2, 3])
    fam = hilton_milner_triple(y)
    assert y in fam
    assert len(fam) == 211


def test_extremal_odd_families():
    n = 7
    x = axis_line(F2, n)
    y = axis_subspace(F2, n, [1, 2, 3])
    k = extremal_odd_family(x, y)
    assert len(k) == odd_stability_bound(n, 2, 2) == 3006
    assert k.layer(0) and k.layer(1) and k.layer(2)
    k3 = extremal_odd_triple(y)
    assert len(k3) == 3006
    assert set(k3.layer(0)) == {Subspace.zero(F2, n)}
    # lower layers are complete
    for i in range(3):
        assert len(k3.layer(i)) == gauss_binom(n, i, 2)


def test_q3_construction_sizes_smallest_n():
    # lower/upper layers at (q=3, n=5, t=2)
    assert len(lower_layers(F3, 5, 2)) == layer_sum(5, 2, 3)
    # canonical double ball at (q=3, n=4, t=1)
    x = axis_line(F3, 4)
    assert len(canonical_double_ball(x, 1)) == kleitman_bound(4, 3, 3)
    # line-centered ball at (q=3, n=6, t=2)
    x6 = axis_line(F3, 6)
    assert len(ball(x6, 2)) == type_a_even_bound(6, 2, 3)
    # Hilton-Milner shapes at (q=3, n=5, k=3)
    x5 = axis_line(F3, 5)
    y5 = axis_subspace(F3, 5, [1, 2, 3])
    assert len(hilton_milner_family(x5, y5)) == hilton_milner_bound(5, 3, 3)
    assert len(hilton_milner_triple(y5)) == hilton_milner_bound(5, 3, 3)
    assert len(extremal_odd_family(x5, y5)) == odd_stability_bound(5, 2, 3)
    assert len(extremal_odd_triple(y5)) == odd_stability_bound(5, 2, 3)


# -- statistics -----------------------------------------------------------------

def test_diameter_examples():
    single = SubspaceFamily(F2, 3, [span(F2, 3, [1, 0, 0])])
    assert diameter(single) == 0
    both_ends = SubspaceFamily(F2, 3, [Subspace.zero(F2, 3), Subspace.full(F2, 3)])
    assert diameter(both_ends) == 3
    assert diameter(lower_layers(F2, 5, 2)) == 4
    assert diameter(lower_layers(F2, 4, 2)) == 4
    with pytest.raises(EmptyFamily):
        diameter(SubspaceFamily(F2, 3, []))


def test_diameter_matches_bruteforce():
    rng = random.Random(31)
    for _ in range(60):
        n = rng.randrange(1, 6)
        fam = random_family(F2, n, rng, rng.randrange(1, 8))
        brute = max(a.distance(b) for a in fam for b in fam)
        assert diameter(fam) == brute
        for d in range(n + 1):
            ok, pair = diameter_at_most(fam, d)
            assert ok == (brute <= d)
            if not ok:
                assert pair[0].distance(pair[1]) > d


def test_dim_spread_and_min_supp_norm():
    fam = lower_layers(F2, 5, 2)
    assert dim_spread(fam) == 2
    assert min_supp_norm(fam) == 0
    up = upper_layers(F2, 5, 2)
    assert min_supp_norm(up) == 0
    mid = SubspaceFamily(F2, 5, list(enumerate_layer(F2, 5, 2)))
    assert dim_spread(mid) == 0
    assert min_supp_norm(mid) == 2


def test_perp_family_properties():
    rng = random.Random(37)
    for _ in range(40):
        n = rng.randrange(1, 6)
        fam = random_family(F3, n, rng, rng.randrange(1, 7))
        pf = perp_family(fam)
        assert len(pf) == len(fam)
        assert diameter(pf) == diameter(fam)
        assert pf.support == tuple(n - k for k in reversed(fam.support))
        assert perp_family(pf) == fam


def test_perp_family_of_lower_is_upper():
    assert perp_family(lower_layers(F3, 4, 1)) == upper_layers(F3, 4, 1)


def test_cross_intersection_profile_on_double_ball():
    fam = canonical_double_ball(axis_line(F2, 4), 1)
    rows = cross_intersection_profile(fam, 3)
    assert all(ok for (_, _, _, _, ok) in rows)
    # the (2,2) layer pair of the star is 1-intersecting
    row22 = [r for r in rows if r[0] == 2 and r[1] == 2][0]
    assert row22[2] == 1 and row22[3] >= 1


def test_cross_intersecting_predicate():
    x = axis_line(F2, 4)
    a = star(x, 2).members
    b = star(x, 3).members
    assert is_cross_intersecting(a, b, 1)
    # two 2-spaces of F_2^4 can be disjoint, so layer vs star fails at s=1
    assert not is_cross_intersecting(list(enumerate_layer(F2, 4, 2)), a, 1)
    with pytest.raises(EmptyFamily):
        is_cross_intersecting([], b, 1)


def test_min_supp_norm_bound_random():
    rng = random.Random(41)
    for _ in range(80):
        n = rng.randrange(1, 7)
        fam = random_family(F2, n, rng, rng.randrange(1, 8))
        assert 2 * min_supp_norm(fam) <= n - dim_spread(fam)


# -- admissibility ----------------------------------------------------------------

def test_lower_layers_not_a_even_admissible():
    rep = is_admissible(lower_layers(F2, 5, 2), "A_even", 2)
    assert not rep.admissible
    assert rep.witness_kind == "lower_layers"
    rep = is_admissible(upper_layers(F2, 5, 2), "A_even", 2)
    assert rep.witness_kind == "upper_layers"


def test_ball_a_even_admissible_not_b_even():
    x = axis_line(F2, 5)
    fam = ball(x, 2)
    rep = is_admissible(fam, "A_even", 2)
    assert rep.admissible
    rep = is_admissible(fam, "B_even", 2)
    assert not rep.admissible
    assert rep.witness_kind == "ball"
    assert rep.witness_centers[0] == x


def test_canonical_double_ball_not_a_odd_admissible():
    x = axis_line(F2, 4)
    fam = canonical_double_ball(x, 1)
    rep = is_admissible(fam, "A_odd", 1)
    assert not rep.admissible
    assert rep.witness_kind == "canonical_double_ball"
    assert rep.witness_centers[0] == x
    rep = is_admissible(perp_family(fam), "A_odd", 1)
    assert not rep.admissible
    assert rep.witness_kind == "canonical_double_ball_perp"


def test_diameter_violation_reported():
    fam = SubspaceFamily(F2, 4, [Subspace.zero(F2, 4), Subspace.full(F2, 4)])
    rep = is_admissible(fam, "A_even", 1)
    assert not rep.admissible
    assert not rep.diameter_ok
    assert rep.witness_kind is None


def test_b_odd_admissibility_small():
    # K(5,3,X,Y) escapes every adjacent double ball at (q=2, n=5, t=2)
    x = axis_line(F2, 5)
    y = axis_subspace(F2, 5, [1, 2, 3])
    fam = extremal_odd_family(x, y)
    rep = is_admissible(fam, "A_odd", 2)
    assert rep.admissible
    rep = is_admissible(fam, "B_odd", 2)
    assert rep.admissible
    # while the canonical double ball itself is contained (in itself)
    dd = canonical_double_ball(x, 2)
    rep = is_admissible(dd, "B_odd", 2)
    assert not rep.admissible
    assert rep.witness_kind == "double_ball"


def test_is_admissible_validates_class():
    with pytest.raises(ValueError):
        is_admissible(lower_layers(F2, 4, 1), "C_even", 1)
    with pytest.raises(EmptyFamily):
        is_admissible(SubspaceFamily(F2, 4, []), "A_even", 1)


# -- family files ------------------------------------------------------------------

def test_family_file_round_trip():
    fam = canonical_double_ball(axis_line(F2, 4), 1)
    buf = io.StringIO()
    write_family(fam, buf)
    text = buf.getvalue()
    assert text.startswith("family 2 4 23\n")
    assert read_family(io.StringIO(text)) == fam


def test_family_file_errors_carry_line_numbers():
    with pytest.raises(ParseError) as exc:
        read_family(io.StringIO("familia 2 4 1\n2:4:1:1000\n"))
    assert exc.value.line == 1
    bad_row = "family 2 4 2\n2:4:1:1000\n2:4:2:1100,1100\n"
    with pytest.raises(ParseError) as exc:
        read_family(io.StringIO(bad_row))
    assert exc.value.line == 3
    wrong_count = "family 2 4 3\n2:4:1:1000\n"
    with pytest.raises(ParseError):
        read_family(io.StringIO(wrong_count))
    mixed = "family 2 4 1\n3:4:1:1000\n"
    with pytest.raises(ParseError) as exc:
        read_family(io.StringIO(mixed))
    assert exc.value.line == 2


def test_b_odd_admissibility_implies_a_odd():
    # the canonical double balls are unions of two adjacent radius-t balls,
    # so escaping all double balls implies escaping the canonical ones
    x = axis_line(F2, 5)
    y = axis_subspace(F2, 5, [1, 2, 3])
    candidates = [
        extremal_odd_family(x, y),
        canonical_double_ball(x, 2),
        canonical_double_ball(x, 1),
        ball(x, 1),
        lower_layers(F2, 5, 1).union(star(x, 2)),
    ]
    for fam in candidates:
        for t in (1, 2):
            if max(fam.support) > 2 * t + 1:
                continue
            rep_b = is_admissible(fam, "B_odd", t)
            rep_a = is_admissible(fam, "A_odd", t)
            if rep_b.admissible:
                assert rep_a.admissible


def test_cross_intersection_required_levels():
    # required level for layers (i, j) under diameter d is ceil((i+j-d)/2)
    import math
    fam = canonical_double_ball(axis_line(F2, 5), 2)
    d = diameter(fam)
    rows = cross_intersection_profile(fam, d)
    for (i, j, required, got, ok) in rows:
        assert required == max(0, math.ceil((i + j - d) / 2))
        assert ok == (got >= required)
        assert ok
