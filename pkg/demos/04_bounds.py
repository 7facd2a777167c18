"""
Connectivity and dimension bounds
=================================

Bounds come back as small records carrying the value, the kind of bound,
where it comes from and the hypotheses used.
"""

from confighom.bounds import (
    bcm_e1_assemble,
    cohdim_bound,
    connectivity_formulas,
    e1_cohdim_bound,
    e1_connectivity_bound,
    mod2_cohdim_disc,
    stability_ranges,
    surface_e1_envelope,
)
from confighom.chaincore import F2
from confighom.verify import circle_sp_tables

print(cohdim_bound(3, 2, 2, punctured_or_boundary=False).to_json())

for k in (2, 3, 4, 7, 8):
    print(k, mod2_cohdim_disc(3, k).value, cohdim_bound(3, k, 2, True).value)

print(connectivity_formulas("reduced_sp", r=1, n=4).value)

# the E^1 term for the circle is a single class
rel_x, rel_sx = circle_sp_tables(7)
e1 = bcm_e1_assemble(rel_x, rel_sx, 7, F2)
print(e1.entries, e1_connectivity_bound(e1).value)

# for surfaces, two routes give the same answer
k = 6
env = surface_e1_envelope(k, 2, F2)
print(e1_cohdim_bound(env, k).value, cohdim_bound(2, k, 0, True).value)
print(e1_cohdim_bound(env, k, closed_surface=True).value)

print(stability_ranges("scanning", 9, s="arnold").value)
