import json
from itertools import product

import pytest

from confighom import bounds
from confighom.bounds import (
    INFINITE,
    BigradedTable,
    BoundResult,
    bcm_e1_assemble,
    cohdim_bound,
    connectivity_formulas,
    e1_cohdim_bound,
    e1_connectivity_bound,
    mod2_cohdim_disc,
    stability_ranges,
    surface_e1_envelope,
)
from confighom.braidduality import braid_cohomology, preset_descriptor
from confighom.chaincore import F2, Q, GradedGroup
from confighom.errors import HypothesisError
from confighom.registry import rp_cohomology_f2
from confighom.spsym import preset, sp_homology
from confighom.tsp import circle_relative, reduced_tp_circle
from confighom.verify import circle_sp_tables


@pytest.mark.parametrize("d", range(1, 11))
def test_sphere_pair_cohdim(d):
    assert cohdim_bound(d, 2, d - 1, True).value == d - 1
    assert cohdim_bound(d, 2, d - 1, False).value == d


def test_cohdim_rejects_out_of_range():
    with pytest.raises(HypothesisError):
        cohdim_bound(2, 1, 0, True)
    with pytest.raises(HypothesisError):
        cohdim_bound(2, 2, -1, True)
    with pytest.raises(HypothesisError):
        cohdim_bound(2, 2, 5, True)


def test_connectivity_formulas():
    for n in range(1, 10):
        assert connectivity_formulas("reduced_sp", r=1, n=n).value == 2 * n - 1
        assert connectivity_formulas("reduced_sp_2complex", w=0, n=n).value == 2 * n - 1
    assert connectivity_formulas("nakaoka", r=0, k=2).value == 1
    assert connectivity_formulas("R_lower", k=3, r=0, punctured_or_boundary=True).value == 2
    assert connectivity_formulas("R_lower", k=3, r=0, punctured_or_boundary=False).value == 1
    with pytest.raises(HypothesisError):
        connectivity_formulas("reduced_sp", r=0, n=2)
    with pytest.raises(ValueError):
        connectivity_formulas("nonsense")


def test_reduced_sp_sharp_on_sphere():
    for n in range(1, 12):
        red = sp_homology(preset("s2"), n, Q, reduced=True)
        assert red.bottom_degree() - 1 == connectivity_formulas("reduced_sp", r=1, n=n).value


def test_wedge_sp_connectivity_is_sharp():
    for w, n in product(range(0, 4), range(1, 6)):
        red = sp_homology(preset(f"wedge:{w}") if w else preset("point"), n, Q, reduced=True)
        bound = connectivity_formulas("reduced_sp_2complex", w=w, n=n).value
        if not red.is_zero:
            assert red.bottom_degree() - 1 >= bound


def test_mod2_disc():
    for k in range(1, 30):
        assert mod2_cohdim_disc(2, k).value <= k - 1
    for m in range(1, 7):
        assert mod2_cohdim_disc(5, 2 ** m).value == (2 ** m - 1) * 4
    for d, k in product(range(2, 11), range(2, 65)):
        assert mod2_cohdim_disc(d, k).value <= cohdim_bound(d, k, d - 1, True).value


def test_monotone_in_k_and_n():
    for d, r, pb in product(range(2, 6), range(0, 3), (True, False)):
        vals = [cohdim_bound(d, k, r, pb).value for k in range(max(2, r + 1), 20)]
        assert vals == sorted(vals)
    for name, fixed in (("nakaoka", {"r": 1}), ("reduced_sp", {"r": 2}),
                        ("reduced_sp_2complex", {"w": 3})):
        key = "k" if name == "nakaoka" else "n"
        vals = [connectivity_formulas(name, **fixed, **{key: x}).value for x in range(1, 20)]
        assert vals == sorted(vals)
    for kind in ("arnold", "riemann_surface"):
        vals = [stability_ranges(kind, k).value for k in range(1, 30)]
        assert vals == sorted(vals)
    vals = [mod2_cohdim_disc(3, k).value for k in range(1, 65)]
    assert all(b >= a for a, b in zip(vals, vals[1:]))


def test_computed_cohomology_within_bound():
    closed, punct = preset_descriptor("closed-circle"), preset_descriptor("punctured-circle")
    for k in range(2, 15):
        assert braid_cohomology(closed, k).top_degree() <= cohdim_bound(1, k, 0, False).value
        assert braid_cohomology(punct, k).top_degree() <= cohdim_bound(1, k, 0, True).value
    for d in range(2, 12):
        assert rp_cohomology_f2(d, F2).top_degree() <= cohdim_bound(d, 2, d - 1, False).value


def test_e1_examples():
    for n in (4, 5):
        rel_x, rel_sx = circle_sp_tables(n)
        e1 = bcm_e1_assemble(rel_x, rel_sx, n, F2)
        assert e1.total().dims() == {n: 1}
    rel_x, rel_sx = circle_sp_tables(4)
    assert bcm_e1_assemble(rel_x, rel_sx, 4, F2).entries == {(0, 4): 1}
    zero = [GradedGroup({}, F2, True)] * 5
    assert bcm_e1_assemble(zero, zero, 4, F2).is_zero


@pytest.mark.parametrize("n", range(1, 21))
def test_e1_collapse_for_circle(n):
    rel_x, rel_sx = circle_sp_tables(n)
    e1 = bcm_e1_assemble(rel_x, rel_sx, n, F2)
    assert e1.total() == GradedGroup(reduced_tp_circle(n).table.entries, F2)
    assert e1_connectivity_bound(e1).value == n - 1


@pytest.mark.parametrize("k", range(1, 21))
def test_surface_bounds(k):
    for w in range(1, 5):
        e1 = surface_e1_envelope(k, w, F2)
        assert e1_connectivity_bound(e1).value == k - 1
        assert e1_cohdim_bound(e1, k).value == k
        assert e1_cohdim_bound(e1, k, closed_surface=True).value == k + 1


def test_e1_single_class_and_empty():
    single = BigradedTable({(3, 7): 1}, F2)
    assert e1_connectivity_bound(single).value == 6
    assert e1_connectivity_bound(BigradedTable({}, F2)).value is INFINITE


def test_R_lower_against_circle_model():
    for k in range(1, 15):
        for pb in (True, False):
            lower = k - 1 if pb else k - 2
            rel = circle_relative(k, lower, F2)
            conn = rel.bottom_degree() - 1
            assert conn >= connectivity_formulas("R_lower", k=k, r=0, punctured_or_boundary=pb).value


def test_stability_ranges():
    assert stability_ranges("arnold", 7).value == 3
    for k in range(2, 20):
        assert stability_ranges("scanning", k, s="riemann_surface").value == k - 2
    assert stability_ranges("scanning", 3, s="arnold").value == 1
    with pytest.raises(ValueError):
        stability_ranges("unknown", 3)
    with pytest.raises(HypothesisError):
        stability_ranges("arnold", 0)


def test_bound_json():
    b = cohdim_bound(2, 5, 0, True)
    d = json.loads(b.to_json())
    assert set(d) == {"value", "kind", "source", "hypotheses"}
    assert BoundResult.from_dict(d) == b
    inf = e1_connectivity_bound(BigradedTable({}, F2))
    assert BoundResult.from_dict(json.loads(inf.to_json())).value is INFINITE
    with pytest.raises(ValueError):
        BoundResult(-2, "x", "y", ())


def test_both_routes_for_surfaces():
    k = 5
    main = cohdim_bound(2, k, 0, True).value
    e1 = e1_cohdim_bound(surface_e1_envelope(k, 1, F2), k).value
    assert main == e1 == k
    assert bounds.ANCHORS["cohdim"] != bounds.ANCHORS["surface"]
