"""
Degree maps and their symmetry classes
======================================

Psi_n lands in orthogonal, symmetric, symplectic or alternating matrices
depending on n mod 4.
"""

from suslin.core import (
    UnitVector,
    degree_map_class,
    degree_map_reference_form,
    generic_unit_vector,
    psi,
    psi_degree_map,
    sigma,
    unit_basis_vector,
)
from suslin.matrix import classify_form, det, pfaffian
from suslin.ring import Quadric, sample_quadric_point

for n in range(2, 8):
    print(n, degree_map_class(n))

# base point values
print(psi_degree_map(unit_basis_vector(3)) == psi(4))
print(psi_degree_map(unit_basis_vector(5)) == sigma(16))

# Psi_3 over S_5 is alternating with Pfaffian one
M = psi_degree_map(generic_unit_vector(Quadric(3)))
print(M)
print("alternating:", classify_form(M, "alternating"), " Pf =", pfaffian(M))

# Psi_4 preserves sigma_8
M4 = psi_degree_map(generic_unit_vector(Quadric(4)))
print("orthogonal wrt sigma_8:", classify_form(M4, "orthogonal", sigma(8)))
print(degree_map_reference_form(4) == sigma(8))

# n = 5 and n = 7 at a rational point
for n in (5, 7):
    p = sample_quadric_point(n, seed=3)
    M = psi_degree_map(UnitVector(p.xs, p.ys))
    if n == 5:
        print("Psi_5 symmetric:", classify_form(M, "symmetric"), " det =", det(M))
    else:
        print("Psi_7 alternating:", classify_form(M, "alternating"), " Pf =", pfaffian(M))
