import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from confighom.chaincore import (
    F2,
    Q,
    Z,
    ChainComplex,
    Coefficients,
    Fp,
    GradedGroup,
    direct_sum,
    homology,
    relative_homology,
    shift,
    smith_normal_form,
    table_algebra,
    tensor,
)
from confighom.errors import MalformedComplexError
from confighom.spsym import preset, sp_chain_complex
from confighom.tsp import circle_cell, tp_circle_complex
from oracles import invariant_factors


def test_snf_examples():
    assert smith_normal_form([[0]]) == ([0], 0)
    assert smith_normal_form([[2]]) == ([2], 1)
    assert smith_normal_form([[2, 4], [6, 8]]) == ([2, 4], 2)


def test_snf_empty_and_large_entries():
    diag, rank = smith_normal_form(np.zeros((0, 3), dtype=object))
    assert rank == 0
    big = 10 ** 30
    diag, rank = smith_normal_form([[big, 0], [0, big * 3]])
    assert diag == [big, 3 * big] and rank == 2


small_matrix = st.integers(1, 4).flatmap(lambda r: st.integers(1, 4).flatmap(
    lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c),
                       min_size=r, max_size=r)))


@settings(max_examples=150, deadline=None)
@given(small_matrix)
def test_snf_matches_determinantal_divisors(m):
    diag, rank = smith_normal_form(m)
    nonzero = [abs(x) for x in diag if x]
    assert nonzero == invariant_factors(m)
    assert rank == len(nonzero)
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))


def _unimodular(rng, n):
    u = np.eye(n, dtype=object)
    for _ in range(3 * n):
        i, j = rng.choice(n, 2, replace=False) if n > 1 else (0, 0)
        if i == j:
            u[i] *= -1
            continue
        u[i] = u[i] + int(rng.integers(-2, 3)) * u[j]
    return u


@settings(max_examples=60, deadline=None)
@given(small_matrix, st.integers(0, 2 ** 32 - 1))
def test_snf_invariant_under_unimodular_change(m, seed):
    rng = np.random.default_rng(seed)
    a = np.array(m, dtype=object)
    p, q = _unimodular(rng, a.shape[0]), _unimodular(rng, a.shape[1])
    assert smith_normal_form(p.dot(a).dot(q))[0] == smith_normal_form(a)[0]


def test_homology_rp2_over_several_rings():
    c = tp_circle_complex(2)
    h = homology(c, Z)
    assert (h.rank(0), h.rank(1), h.torsion(1), h.rank(2)) == (1, 0, (2,), 0)
    assert homology(c, F2).as_list() == [1, 1, 1]
    assert homology(c, Q).as_list() == [1]
    assert homology(c, Fp(3)).as_list() == [1]


def test_homology_trivial_cases():
    assert homology(ChainComplex({}, {}), Z).is_zero
    s2 = ChainComplex.from_matrices({0: ["v"], 2: ["D"]}, {})
    assert homology(s2, Z).dims() == {0: 1, 2: 1}


def test_chain_complex_rejects_bad_input():
    with pytest.raises(MalformedComplexError):
        ChainComplex.from_matrices({0: ["a"], 1: ["b"], 2: ["c"]}, {1: [[1]], 2: [[1]]})
    with pytest.raises(MalformedComplexError):
        ChainComplex.from_matrices({0: ["a"], 1: ["b"]}, {1: [[1, 1]]})


def test_relative_homology_examples():
    c = tp_circle_complex(4)
    sub = {k: [circle_cell(k)] for k in range(4)}
    assert relative_homology(c, sub, F2).dims() == {4: 1}
    c3 = tp_circle_complex(3)
    assert relative_homology(c3, {0: ["sigma^0"], 1: ["sigma^1"]}, F2).dims() == {2: 1, 3: 1}
    full = {k: c3.labels(k) for k in c3.degrees()}
    assert relative_homology(c3, full, Z).is_zero


def test_relative_homology_rejects_non_subcomplex():
    c = tp_circle_complex(2)
    with pytest.raises(MalformedComplexError):
        relative_homology(c, {2: ["sigma^2"]}, Z)


def test_table_algebra():
    s0 = GradedGroup.from_dims({0: 1}, F2)
    assert table_algebra(s0, None, ("shift", 3)).dims() == {3: 1}
    circle = GradedGroup.from_dims([1, 1], F2)
    assert tensor(circle, circle).as_list() == [1, 2, 1]
    a = GradedGroup.from_dims([1, 1, 0], F2)
    b = GradedGroup.from_dims([0, 0, 1], F2)
    assert table_algebra(a, b, "direct_sum").as_list() == [1, 1, 1]
    with pytest.raises(ValueError):
        tensor(circle, GradedGroup.from_dims([1], Q))


def test_shift_and_sum_keep_torsion():
    g = GradedGroup({1: (0, (2,)), 2: (1, (3,))}, Z)
    s = shift(g, 2)
    assert s.torsion(3) == (2,) and s.rank(4) == 1
    d = direct_sum(g, g)
    assert d.torsion(1) == (2, 2)


def test_torsion_is_normalized():
    g = GradedGroup({0: (0, (6, 4))}, Z)
    assert g.torsion(0) == (2, 12)
    with pytest.raises(ValueError):
        GradedGroup({0: (0, (1,))}, Z)


def test_coefficients_parse():
    assert Coefficients.parse("F2") == F2 == Fp(2)
    assert Coefficients.parse("Fp:3") == Fp(3)
    assert Coefficients.parse("Q") == Q and Coefficients.parse("Z") == Z
    with pytest.raises(ValueError):
        Coefficients.parse("Fp:4")


def test_json_round_trip():
    g = GradedGroup({0: (1, ()), 1: (0, (2,)), 3: (2, (4,))}, Z)
    text = g.to_json()
    assert GradedGroup.from_json(text) == g
    assert json.loads(text)["coefficients"] == "Z"
    r = GradedGroup.from_dims({4: 1}, F2, reduced=True)
    assert GradedGroup.from_json(r.to_json()) == r


def _builtin_complexes():
    for n in range(0, 9):
        yield tp_circle_complex(n)
    for name in ("s2", "circle", "wedge:2", "wedge:3"):
        for n in range(0, 5):
            yield sp_chain_complex(preset(name), n, reduced=False)
            yield sp_chain_complex(preset(name), n, reduced=True)


def test_rational_dims_are_integral_free_ranks():
    for c in _builtin_complexes():
        hz, hq = homology(c, Z), homology(c, Q)
        assert {q: r for q, (r, _) in hz.entries.items() if r} == hq.dims()


@pytest.mark.parametrize("coeffs", [Z, Q, F2, Fp(3), Fp(5)])
def test_euler_characteristic_from_cells_matches_homology(coeffs):
    for c in _builtin_complexes():
        assert homology(c, coeffs).euler_characteristic() == c.euler_characteristic()
