"""
Bringing your own data
======================

Presentations with nontrivial attaching maps, and truncated-product tables
supplied by hand.
"""

import json

from confighom.braidduality import SpaceDescriptor, UserTP, braid_cohomology
from confighom.chaincore import F2, Z, GradedGroup
from confighom.spsym import (
    BoundaryData,
    TwoComplexPresentation,
    multiplicative_power_rule,
    sp_homology,
)

# RP^2: one loop, one disc attached by twice the loop.  The boundaries of
# higher disc powers follow from D * D = 2 SP^2 D.
attach = [[2]]
rp2 = TwoComplexPresentation(1, 1, BoundaryData(attach, multiplicative_power_rule(attach, 6)))
print(json.dumps(rp2.to_dict()))
for n in (1, 2, 3):
    print(n, sp_homology(rp2, n, Z).describe())

# pairs of points on S^2, from the relative homology of TP^2(S^2) over F2
rel = GradedGroup.from_dims({2: 1, 3: 1, 4: 1}, F2)
desc = SpaceDescriptor(d=2, quotient_model=UserTP(relative={(2, 0): rel}))
print(braid_cohomology(desc, 2).describe("H^"))
