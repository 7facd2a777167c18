"""Verification corpus: invariants and known values, run by ``confighom verify``.

Each check is a function returning ``(passed, detail)``; the report lists the
checks in a fixed order so repeated runs are byte-identical.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import comb

from . import bounds, registry
from .braidduality import (
    braid_cohomology,
    les_euler_check,
    multi_puncture_split,
    ordered_partition_count,
    preset_descriptor,
    puncture_split_mod2,
)
from .chaincore import F2, Q, Z, GradedGroup, homology, point
from .spsym import (
    BoundaryData,
    TwoComplexPresentation,
    multiplicative_power_rule,
    preset,
    sp_chain_complex,
    sp_homology,
    steenrod_monotonicity_check,
)
from .tsp import (
    circle_relative,
    reduced_tp_circle,
    mod2_tp_splitting_check,
    tp_circle_complex,
    tp_circle_homology,
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}: {self.detail}"


def _first_mismatch(pairs):
    for key, got, want in pairs:
        if got != want:
            return f"mismatch at {key}: got {got}, expected {want}"
    return None


def check_rp_model(n_max: int = 50):
    pairs = [(n, homology(tp_circle_complex(n), Z), registry.rp_homology(n, Z))
             for n in range(n_max + 1)]
    bad = _first_mismatch(pairs)
    return bad is None, bad or f"TP^n(S^1) has the integral homology of RP^n for n <= {n_max}"


def check_circle_braids(k_max: int = 30, corpus_dir=None):
    reg = registry.load_registry(corpus_dir)
    pairs = []
    for k in range(1, k_max + 1):
        pairs.append((("closed", k), braid_cohomology(preset_descriptor("closed-circle"), k),
                      registry.expected_table(reg["braid-circle"], k)))
        for name in ("punctured-circle", "interval"):
            pairs.append(((name, k), braid_cohomology(preset_descriptor(name), k),
                          registry.expected_table(reg["braid-line"], k)))
    bad = _first_mismatch(pairs)
    return bad is None, bad or f"B(S^1,k) ~ S^1 and B(R,k) ~ pt over F2 for k <= {k_max}"


def check_sphere_pairs(d_max: int = 12, corpus_dir=None):
    reg = registry.load_registry(corpus_dir)
    pairs = []
    for d in range(2, d_max + 1):
        base = {2: registry.expected_table(reg["braid-euclidean-pair"], d), 1: point(F2)}
        pairs.append((d, puncture_split_mod2(base, d, 2),
                      registry.expected_table(reg["braid-sphere-pair"], d)))
    bad = _first_mismatch(pairs)
    return bad is None, bad or f"splitting rebuilds H^*(RP^d) from H^*(RP^(d-1)) for 2 <= d <= {d_max}"


def check_cpn(n_max: int = 20, corpus_dir=None):
    reg = registry.load_registry(corpus_dir)
    s2 = preset("s2")
    pairs = []
    for n in range(n_max + 1):
        pairs.append((("SP", n), sp_homology(s2, n, Z),
                      registry.expected_table(reg["symmetric-sphere"], n)))
        if n:
            red = sp_homology(s2, n, Z, reduced=True)
            pairs.append((("SPbar", n), red,
                          registry.expected_table(reg["reduced-symmetric-sphere"], n)))
            sharp = bounds.connectivity_formulas("reduced_sp", r=1, n=n).value
            pairs.append((("sharp", n), red.bottom_degree() - 1, sharp))
    bad = _first_mismatch(pairs)
    return bad is None, bad or f"SP^n(S^2) = CP^n and SPbar^n(S^2) = S^2n for n <= {n_max}"


def check_wedges(w_max: int = 4, n_max: int = 6):
    pairs = []
    for w in range(w_max + 1):
        for n in range(n_max + 1):
            got = sp_homology(preset(f"wedge:{w}"), n, Q)
            want = GradedGroup.from_dims({q: comb(w, q) for q in range(min(w, n) + 1)}, Q)
            pairs.append(((w, n), got, want))
    bad = _first_mismatch(pairs)
    return bad is None, bad or f"Betti numbers of SP^n(wedge of w circles) are binom(w,q), w <= {w_max}, n <= {n_max}"


def check_steenrod(n_max: int = 10):
    failures = []
    for name in ("point", "circle", "s2", "wedge:2", "wedge:3"):
        rep = steenrod_monotonicity_check(preset(name), n_max, F2)
        if not rep.passed:
            failures.append((name, rep.failures[:3]))
    rp2 = TwoComplexPresentation(1, 1, BoundaryData(((2,),), multiplicative_power_rule([[2]], n_max)))
    rep = steenrod_monotonicity_check(rp2, n_max, F2)
    if not rep.passed:
        failures.append(("rp2", rep.failures[:3]))
    return not failures, (f"failures {failures}" if failures
                          else f"Betti numbers of SP^n are monotone in n for n <= {n_max}")


def check_punctured_plane(n_max: int = 15, corpus_dir=None):
    reg = registry.load_registry(corpus_dir)
    base = {r: registry.expected_table(reg["braid-plane-rational"], r) for r in range(n_max + 1)}
    pairs = [(n, multi_puncture_split(base, 2, 2, n, Q).dim(1), reg["punctured-plane-h1"]["value"])
             for n in range(2, n_max + 1)]
    bad = _first_mismatch(pairs)
    return bad is None, bad or f"dim H^1(B(C^*,n); Q) = 2 for 2 <= n <= {n_max}"


def check_partitions(limit: int = 20):
    pairs = []
    for s in range(limit + 1):
        pairs.append((("p(1,s)", s), ordered_partition_count(1, s), 1))
        pairs.append((("p(2,s)", s), ordered_partition_count(2, s), s + 1))
    for r in range(1, limit + 1):
        pairs.append((("p(r,1)", r), ordered_partition_count(r, 1), r))
    bad = _first_mismatch(pairs)
    return bad is None, bad or f"p(1,s)=1, p(2,s)=s+1, p(r,1)=r for r, s <= {limit}"


def check_bounds():
    problems = []
    for d in range(1, 11):
        if d >= 2 and bounds.cohdim_bound(d, 2, d - 1, True).value != d - 1:
            problems.append(("R^d pair", d))
        if bounds.cohdim_bound(d, 2, d - 1, False).value != d:
            problems.append(("S^d pair", d))
    for d in range(2, 11):
        for k in range(2, 65):
            if bounds.mod2_cohdim_disc(d, k).value > bounds.cohdim_bound(d, k, d - 1, True).value:
                problems.append(("mod2", d, k))
    for k in range(1, 21):
        for w in (1, 2, 4):
            e1 = bounds.surface_e1_envelope(k, w, F2)
            if bounds.e1_cohdim_bound(e1, k).value != k:
                problems.append(("punctured surface", k, w))
            if bounds.e1_cohdim_bound(e1, k, closed_surface=True).value != k + 1:
                problems.append(("closed surface", k, w))
    return not problems, (f"failures {problems[:5]}" if problems
                          else "cohdim, mod-2 disc and surface E1 bounds reproduce the recorded values")


def circle_sp_tables(n: int, field=F2):
    """Relative SP tables of S^1 and of its suspension S^2, levels 0..n."""
    circle, s2 = preset("circle"), preset("s2")
    rel_x = [sp_homology(circle, i, field, reduced=True) for i in range(n + 1)]
    rel_sx = [sp_homology(s2, j, field, reduced=True) for j in range(n // 2 + 1)]
    return rel_x, rel_sx


def check_e1_collapse(n_max: int = 20):
    pairs = []
    for n in range(1, n_max + 1):
        rel_x, rel_sx = circle_sp_tables(n)
        e1 = bounds.bcm_e1_assemble(rel_x, rel_sx, n, F2)
        want = reduced_tp_circle(n, F2).table
        pairs.append((n, e1.total().dims(), want.dims()))
        pairs.append((("conn", n), bounds.e1_connectivity_bound(e1).value, n - 1))
    bad = _first_mismatch(pairs)
    return bad is None, bad or f"E1 for S^1 is one class in degree n for n <= {n_max}"


def check_tp_splitting(n_max: int = 12):
    full = [tp_circle_homology(k, F2) for k in range(n_max + 1)]
    red = [reduced_tp_circle(k, F2) for k in range(n_max + 1)]
    rep = mod2_tp_splitting_check(full, red)
    return rep.passed, (f"failures {rep.failures[:5]}" if not rep.passed
                        else f"H(TP^k) = H(TP^(k-1)) + H(TPbar^k) over F2 for k <= {n_max}")


def check_euler_les(corpus_dir=None):
    reg = registry.load_registry(corpus_dir)
    problems = []
    closed, punct = preset_descriptor("closed-circle"), preset_descriptor("punctured-circle")
    for n in range(1, 16):
        prev = braid_cohomology(punct, n - 1) if n > 1 else point(F2)
        if not les_euler_check(braid_cohomology(closed, n), braid_cohomology(punct, n), prev, 1, F2):
            problems.append(("circle", n))
    for d in range(2, 13):
        rep = les_euler_check(registry.expected_table(reg["braid-sphere-pair"], d),
                              registry.expected_table(reg["braid-euclidean-pair"], d),
                              point(F2), d, F2)
        if not rep:
            problems.append(("sphere", d))
    return not problems, (f"failures {problems}" if problems
                          else "Euler characteristics satisfy the puncture long exact sequence")


def random_presentation(rng: random.Random, max_power: int) -> TwoComplexPresentation:
    w = rng.randint(0, 3)
    r = rng.randint(0, 2)
    attach = [[rng.randint(-3, 3) if w else 0 for _ in range(w)] for _ in range(r)]
    if any(any(row) for row in attach):
        return TwoComplexPresentation(w, r, BoundaryData(attach, multiplicative_power_rule(attach, max_power)))
    return TwoComplexPresentation(w, r, BoundaryData(attach))


def check_random_complexes(count: int = 40, n_max: int = 6, seed: int = 20240101):
    rng = random.Random(seed)
    for _ in range(count):
        p = random_presentation(rng, n_max)
        n = rng.randint(0, n_max)
        for reduced in (False, True):
            c = sp_chain_complex(p, n, reduced)  # raises on d∘d != 0
            h = homology(c, Q)
            if h.euler_characteristic() != c.euler_characteristic():
                return False, f"Euler characteristic mismatch for w={p.w}, r={p.disc_count}, n={n}"
    return True, f"d∘d = 0 and Euler characteristics agree on {count} random presentations"


def check_surface_h1(corpus_dir=None):
    reg = registry.load_registry(corpus_dir)
    entry = reg["surface-h1"]
    lo = entry["valid"]["min"]
    ok = all(bounds.stability_ranges("scanning", k, s="arnold").value >= 1
             for k in range(lo, entry["valid"]["max"] + 1))
    ok = ok and bounds.stability_ranges("scanning", lo - 1, s="arnold").value < 1
    h1 = registry.surface_h1(1)
    ok = ok and h1.rank(1) == 2 and h1.torsion(1) == (2,)
    return ok, f"scanning range reaches H_1 exactly from k = {lo} on (recorded H_1 = Z/2 + Z^2g)"


CHECKS = [
    ("rp-model", check_rp_model),
    ("circle-braids", check_circle_braids),
    ("sphere-pairs", check_sphere_pairs),
    ("cpn", check_cpn),
    ("wedge-betti", check_wedges),
    ("steenrod", check_steenrod),
    ("punctured-plane", check_punctured_plane),
    ("partitions", check_partitions),
    ("bounds", check_bounds),
    ("e1-collapse", check_e1_collapse),
    ("tp-splitting", check_tp_splitting),
    ("euler-les", check_euler_les),
    ("random-complexes", check_random_complexes),
    ("surface-h1", check_surface_h1),
]

_CORPUS_AWARE = {"circle-braids", "sphere-pairs", "cpn", "punctured-plane", "euler-les", "surface-h1"}


def run_corpus(corpus_dir=None) -> list[CheckResult]:
    results = []
    for name, fn in CHECKS:
        try:
            passed, detail = fn(corpus_dir=corpus_dir) if name in _CORPUS_AWARE else fn()
        except Exception as exc:  # a crashing check is a failed check
            passed, detail = False, f"{type(exc).__name__}: {exc}"
        results.append(CheckResult(name, bool(passed), detail))
    return results


def report(results: list[CheckResult]) -> str:
    lines = [r.line() for r in results]
    npass = sum(r.passed for r in results)
    lines.append(f"{npass}/{len(results)} checks passed")
    return "\n".join(lines)
