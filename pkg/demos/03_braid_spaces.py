"""
Braid spaces by duality and splitting
=====================================

Unordered configurations of k points are computed from the homology of
truncated products of the one-point compactification, read backwards.
"""

from confighom.braidduality import (
    braid_cohomology,
    multi_puncture_split,
    preset_descriptor,
    puncture_split_mod2,
)
from confighom.chaincore import F2, Q, GradedGroup, point
from confighom.errors import HypothesisError
from confighom.registry import artin_rational, rp_cohomology_f2

# k points on a circle: a circle's worth of configurations
print(braid_cohomology(preset_descriptor("closed-circle"), 4).describe("H^"))

# on a line they are contractible
print(braid_cohomology(preset_descriptor("punctured-circle"), 4).describe("H^"))

# integral coefficients would need the orientation sheaf here
try:
    braid_cohomology(preset_descriptor("closed-circle"), 4, Q)
except HypothesisError as exc:
    print("rejected:", exc.anchor)

# pairs of points on S^4: rebuild RP^4 from pairs in R^4 and a point
base = {2: rp_cohomology_f2(3, F2), 1: point(F2)}
print(puncture_split_mod2(base, 4, 2).as_list())

# the punctured plane: H^1 has rank 2 for every n >= 2
n = 6
base = {r: artin_rational(r, Q) for r in range(n + 1)}
h = multi_puncture_split(base, 2, 2, n, Q)
print(h.dims())
