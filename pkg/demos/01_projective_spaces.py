"""
Projective spaces from a one-cell-per-degree complex
====================================================

The truncated symmetric products of the circle have one cell in each degree,
with boundary 0 or 2.  Their homology is that of real projective space.
"""

from confighom.chaincore import F2, Q, Z, homology, smith_normal_form
from confighom.tsp import tp_circle_complex

# Smith normal form is the workhorse; torsion is read off the diagonal
print(smith_normal_form([[2, 4], [6, 8]]))

# TP^5(S^1): Z, Z/2, 0, Z/2, 0, Z
c = tp_circle_complex(5)
print(homology(c, Z).describe())

# changing coefficients changes the answer, as it should for RP^5
for coeffs in (F2, Q):
    print(coeffs, homology(c, coeffs).as_list())

# the cell counts know the Euler characteristic regardless of the ring
print("chi =", c.euler_characteristic(), homology(c, F2).euler_characteristic())
