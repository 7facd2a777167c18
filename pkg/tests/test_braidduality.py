from itertools import product
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from confighom.braidduality import (
    SpaceDescriptor,
    UserTP,
    WedgeTP,
    braid_cohomology,
    coefficient_gate,
    duality_flip,
    les_euler_check,
    multi_puncture_split,
    ordered_partition_count,
    preset_descriptor,
    puncture_split_mod2,
)
from confighom.chaincore import F2, Q, Z, GradedGroup, point
from confighom.errors import HypothesisError, UnsupportedSpaceError
from confighom.registry import rp_cohomology_f2
from confighom.tsp import reduced_tp_circle

circle_h = GradedGroup.from_dims([1, 1], F2)


def test_duality_examples():
    assert braid_cohomology(preset_descriptor("punctured-circle"), 5) == point(F2)
    assert braid_cohomology(preset_descriptor("closed-circle"), 3) == circle_h
    assert braid_cohomology(preset_descriptor("interval"), 4) == point(F2)
    with pytest.raises(HypothesisError) as info:
        braid_cohomology(preset_descriptor("closed-circle"), 4, Z)
    assert info.value.anchor


@pytest.mark.parametrize("k", range(2, 31))
def test_circle_braids(k):
    assert braid_cohomology(preset_descriptor("closed-circle"), k) == circle_h
    assert braid_cohomology(preset_descriptor("punctured-circle"), k) == point(F2)


def test_disjoint_intervals_count_components():
    # M = w open intervals, Mbar = wedge of w circles; B(M, k) has one
    # contractible component per composition of k into w parts
    for w in range(1, 5):
        desc = SpaceDescriptor(d=1, closed=True, punctures=1, quotient_model=WedgeTP(w))
        for k in range(1, 7):
            assert braid_cohomology(desc, k).dims() == {0: comb(k + w - 1, w - 1)}


def test_zero_points_is_a_point():
    assert braid_cohomology(preset_descriptor("closed-circle"), 0, Z) == point(Z)
    with pytest.raises(ValueError):
        braid_cohomology(preset_descriptor("closed-circle"), -1)


def test_missing_quotient_model():
    with pytest.raises(UnsupportedSpaceError):
        braid_cohomology(SpaceDescriptor(d=2, punctures=1), 3)


def test_user_tables_for_sphere_pairs():
    # B(S^d, 2) from user-supplied H_*(TP^2(S^d), TP^0(S^d)) over F2:
    # TP^2(S^d)/TP^0 has the F2 homology of RP^d suspended d times (degrees d..2d)
    for d in (2, 4):
        rel = GradedGroup.from_dims({q: 1 for q in range(d, 2 * d + 1)}, F2)
        desc = SpaceDescriptor(d=d, quotient_model=UserTP(relative={(2, 0): rel}))
        assert braid_cohomology(desc, 2) == rp_cohomology_f2(d, F2)
        qrel = GradedGroup.from_dims({d: 1, 2 * d: 1} if d % 2 == 0 else {d: 1}, Q)
        qdesc = SpaceDescriptor(d=d, quotient_model=UserTP(relative={(2, 0): qrel}))
        assert braid_cohomology(qdesc, 2, Q).dims() == {0: 1, d: 1}


def test_user_tp_from_reduced_layers():
    layers = [reduced_tp_circle(m) for m in range(5)]
    desc = SpaceDescriptor(d=1, punctures=1, quotient_model=UserTP(layers))
    assert braid_cohomology(desc, 4) == point(F2)
    short = SpaceDescriptor(d=1, punctures=1, quotient_model=UserTP(layers[:3]))
    with pytest.raises(UnsupportedSpaceError):
        braid_cohomology(short, 4)


def test_descriptor_json_round_trip():
    desc = preset_descriptor("closed-circle")
    again = SpaceDescriptor.from_dict(desc.to_dict())
    assert again.to_dict() == desc.to_dict()
    assert braid_cohomology(again, 3) == braid_cohomology(desc, 3)


def test_coefficient_gate():
    for d, orient in product(range(1, 7), (True, False)):
        for coeffs in (Z, Q):
            gate = coefficient_gate(coeffs, d, orient)
            assert gate.allowed == (d % 2 == 0 and orient)
            if not gate.allowed:
                assert gate.verdict == "twisted_required"
            assert coefficient_gate(coeffs, d, orient, "splitting").verdict in ("allowed", "f2_only")
        assert coefficient_gate(F2, d, orient).allowed


@settings(max_examples=100, deadline=None)
@given(st.dictionaries(st.integers(0, 8), st.integers(1, 3), max_size=5), st.integers(8, 12))
def test_duality_flip_is_an_involution(dims, top):
    g = GradedGroup.from_dims(dims, F2)
    assert duality_flip(duality_flip(g, top), top) == g


def test_partition_identities():
    for s in range(0, 11):
        assert ordered_partition_count(2, s) == s + 1
    for r in range(1, 11):
        assert ordered_partition_count(r, 1) == r
    assert ordered_partition_count(3, 2) == 6
    with pytest.raises(ValueError):
        ordered_partition_count(0, 2)


@pytest.mark.parametrize("r", range(1, 5))
def test_partitions_match_enumeration(r):
    for s in range(0, 9):
        brute = sum(1 for t in product(range(s + 1), repeat=r) if sum(t) == s)
        assert ordered_partition_count(r, s) == brute


def test_puncture_split_circle():
    base = {m: point(F2) for m in range(4)}
    assert puncture_split_mod2(base, 1, 3) == braid_cohomology(preset_descriptor("closed-circle"), 3)


@pytest.mark.parametrize("d", range(2, 13))
def test_puncture_split_sphere_pairs(d):
    base = {2: rp_cohomology_f2(d - 1, F2), 1: point(F2)}
    assert puncture_split_mod2(base, d, 2) == rp_cohomology_f2(d, F2)


def test_puncture_split_n_one():
    m_minus_p = GradedGroup.from_dims({0: 1, 1: 2}, F2)
    got = puncture_split_mod2({1: m_minus_p}, 2, 1)
    assert got.dims() == {0: 1, 1: 2, 2: 1}


def artin_q(r):
    return GradedGroup.from_dims({0: 1, 1: 1} if r >= 2 else {0: 1}, Q)


@pytest.mark.parametrize("n", range(2, 16))
def test_punctured_plane(n):
    base = {r: artin_q(r) for r in range(n + 1)}
    h = multi_puncture_split(base, 2, 2, n, Q)
    assert h.dim(1) == 2 and h.dim(0) == 1


def test_multi_puncture_gate():
    base = {r: point(Q) for r in range(3)}
    with pytest.raises(HypothesisError):
        multi_puncture_split(base, 3, 2, 2, Q)
    with pytest.raises(HypothesisError):
        multi_puncture_split(base, 2, 2, 2, Q, orientable=False)
    f2base = {r: point(F2) for r in range(3)}
    assert multi_puncture_split(f2base, 3, 2, 2, F2).total_rank() == 3


random_base = st.lists(st.dictionaries(st.integers(0, 5), st.integers(1, 3), max_size=4),
                       min_size=6, max_size=6)


@settings(max_examples=60, deadline=None)
@given(random_base, st.integers(0, 5), st.integers(2, 4))
def test_single_puncture_is_identity(dims, n, d):
    base = {r: GradedGroup.from_dims(x, F2) for r, x in enumerate(dims)}
    assert multi_puncture_split(base, d, 1, n, F2) == base[n]


@settings(max_examples=60, deadline=None)
@given(random_base, st.integers(0, 5), st.integers(1, 4), st.sampled_from([2, 4]))
def test_total_dimension_identity(dims, n, k, d):
    base = {r: GradedGroup.from_dims(x, Q) for r, x in enumerate(dims)}
    got = multi_puncture_split(base, d, k, n, Q).total_rank()
    want = sum((ordered_partition_count(k - 1, n - r) if k > 1 else int(r == n))
               * base[r].total_rank() for r in range(n + 1))
    assert got == want


def test_euler_les():
    closed, punct = preset_descriptor("closed-circle"), preset_descriptor("punctured-circle")
    for n in range(1, 12):
        prev = braid_cohomology(punct, n - 1) if n > 1 else point(F2)
        rep = les_euler_check(braid_cohomology(closed, n), braid_cohomology(punct, n), prev, 1, F2)
        assert rep.passed
    for d in range(2, 13):
        rep = les_euler_check(rp_cohomology_f2(d, F2), rp_cohomology_f2(d - 1, F2), point(F2), d, F2)
        assert rep.passed
    zero = GradedGroup({}, F2)
    assert les_euler_check(zero, zero, zero, 2, F2).passed
    assert not les_euler_check(point(F2), zero, zero, 2, F2).passed
