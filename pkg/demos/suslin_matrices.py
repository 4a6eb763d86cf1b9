"""
Suslin matrices over a quadric
==============================

Build alpha_n for a generic vector, check the determinant and the product
with alpha-bar, then specialize to a rational point.
"""

from suslin.core import q_form, suslin_alpha, suslin_alpha_bar
from suslin.matrix import det, identity
from suslin.ring import PolyRing, Quadric, sample_quadric_point

# over the free ring the determinant is a power of the quadratic form
R = PolyRing(3)
a, b = R.xs(), R.ys()
A = suslin_alpha(a, b)
print(A)
print("det alpha_3 =", det(A))
print("q^2         =", q_form(a, b) ** 2)

# alpha * alphabar is the scalar q
print((A @ suslin_alpha_bar(a, b)) == identity(4).scale(q_form(a, b)))

# on the quadric S_5 the relation x1*y1 = 1 - x2*y2 - x3*y3 is built in
S5 = Quadric(3)
B = suslin_alpha(S5.xs(), S5.ys())
print("over", S5, "det =", det(B))

# a seeded rational point of the quadric gives an invertible rational matrix
p = sample_quadric_point(4, seed=1)
print("x =", [str(x) for x in p.xs], " y =", [str(y) for y in p.ys])
C = suslin_alpha(p.xs, p.ys)
print("det at the point:", det(C))
print((C @ suslin_alpha_bar(p.xs, p.ys)).is_identity())
