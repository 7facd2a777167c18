"""
Symmetric products of two-complexes
===================================

A 2-complex with one vertex, w loops and some discs gives a small cell
model for SP^n.  Cells are star products of loops and disc powers.
"""

from confighom.chaincore import Q, Z
from confighom.spsym import (
    SymCell,
    enumerate_cells,
    preset,
    sp_homology,
    star_product,
    steenrod_monotonicity_check,
)

# loops anticommute, disc powers multiply with binomial coefficients
e1, e2 = SymCell(0, (1,)), SymCell(0, (2,))
print(star_product(e2, e1))
print(star_product(SymCell(0, (), ((1, 1),)), SymCell(0, (), ((1, 2),))))

# SP^3(S^2) is CP^3
s2 = preset("s2")
print(sp_homology(s2, 3, Z).describe())
print("reduced:", sp_homology(s2, 3, Z, reduced=True).dims())

# SP^n of a wedge of circles is a torus truncated at degree n
wedge = preset("wedge:3")
for n in range(1, 5):
    print(n, sp_homology(wedge, n, Q).as_list())

# cells of SP^2 for the wedge of two circles
for cell in enumerate_cells(preset("wedge:2"), 2):
    print(cell.degree, cell.label)

print("monotone:", steenrod_monotonicity_check(s2, 6, Q).passed)
