"""
Spin_6 and SL_4
===============

Certify diag(h, (h*)^-1) as a Spin element, act on a unit vector of length
3 and watch the degree map transform by g' = E_3^t h E_3^-t.
"""

import random

from suslin.core import UnitVector, psi_degree_map, q_form, standard_involution
from suslin.matrix import Matrix, block_sum, identity
from suslin.ring import sample_quadric_point
from suslin.spin import (
    NotStable,
    phi_embed,
    spin6_from_sl4,
    spin_act,
    spin_certify,
    translation_matrix,
)
from suslin.witness import elementary_sl

# the standard involution negates the image of V
v = phi_embed((1, 2, 3), (4, 5, 6))
print(standard_involution(v) == -v)

# a random product of elementary 4x4 matrices
h = elementary_sl(random.Random(0), 4, 6)
print(h)
g = spin_certify(spin6_from_sl4(h))
print("induced SO_6 matrix:")
print(g.so_matrix)

# act on a point of U_5
p = sample_quadric_point(3, seed=2)
u = UnitVector(p.xs, p.ys)
v = spin_act(g, u)
print("moved vector:", [str(x) for x in v.a], [str(x) for x in v.b], " q =", q_form(v.a, v.b))

# translation law for the degree map
gp = translation_matrix(h)
print(psi_degree_map(v) == gp @ psi_degree_map(u) @ gp.T)

# a determinant -1 twist is not a Spin element
twist = block_sum(Matrix([[-1]]), identity(3))
try:
    spin_certify(spin6_from_sl4(h @ twist))
except NotStable as exc:
    print("rejected:", exc)
