"""
Lifting the hyperbolic embedding
================================

H(s) = diag(s, s^-t) sits in SO_2n.  Solving a linear system over Q gives
an even Clifford element g with pi(g) = H(s), unique up to sign.
"""

from fractions import Fraction

from suslin.matrix import elementary
from suslin.ring import PolyRing
from suslin.spin import hyperbolic_embed, lift_hyperbolic_to_spin

# symbolic in the elementary parameter
lam = PolyRing(1).xs()[0]
print(hyperbolic_embed(elementary(3, 0, 1, lam)).mat)

s1 = elementary(3, 0, 2, 2)
s2 = elementary(3, 1, 0, Fraction(-1, 3))
g1, g2 = lift_hyperbolic_to_spin(s1), lift_hyperbolic_to_spin(s2)
print(g1.g)
print("covers H(s1):", g1.so_matrix == hyperbolic_embed(s1).mat)

# the lift is multiplicative up to the kernel {1, -1}
g12 = lift_hyperbolic_to_spin(s1 @ s2).g
prod = g1.g @ g2.g
print("lift(s1 s2) = +-lift(s1) lift(s2):", g12 == prod or g12 == -prod)
