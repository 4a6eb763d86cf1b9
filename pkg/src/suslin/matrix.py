"""Dense matrices over the exact rings of :mod:`suslin.ring`.

Matrices are immutable.  Entries are plain rationals for ``RATIONAL`` and
:class:`~suslin.ring.Poly` otherwise.  A rational matrix combines freely with
a matrix over any other ring (rationals embed everywhere); two different
polynomial rings do not mix.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import accumulate
from typing import Callable, Sequence

from .ring import RATIONAL, Poly, Ring, RingMismatch, ring_of

__all__ = [
    "Matrix",
    "NotAlternating",
    "ShapeError",
    "SingularMatrix",
    "mat_mul",
    "transpose",
    "block",
    "block_sum",
    "det",
    "det_berkowitz",
    "det_bareiss",
    "charpoly",
    "pfaffian",
    "pfaffian_expansion",
    "pfaffian_elimination",
    "classify_form",
    "gram_form",
    "identity",
    "zeros",
    "elementary",
    "inverse",
    "nullspace",
    "is_symmetric",
    "is_alternating",
    "format_matrix",
]


class ShapeError(ValueError):
    pass


class NotAlternating(ValueError):
    pass


class SingularMatrix(ArithmeticError):
    pass


def _common_ring(a: Ring, b: Ring) -> Ring:
    if a == b or b.is_rational:
        return a
    if a.is_rational:
        return b
    raise RingMismatch(f"{a} vs {b}")


class Matrix:
    __slots__ = ("ring", "rows", "cols", "_e")

    def __init__(self, entries: Sequence[Sequence], ring: Ring | None = None):
        rows = [list(r) for r in entries]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ShapeError("ragged matrix")
        if ring is None:
            ring = ring_of(v for r in rows for v in r)
        self.ring = ring
        self.rows = len(rows)
        self.cols = ncols
        self._e = tuple(tuple(ring.coerce(v) for v in r) for r in rows)

    @classmethod
    def _raw(cls, ring: Ring, rows) -> "Matrix":
        # entries already coerced
        m = cls.__new__(cls)
        m.ring = ring
        m._e = tuple(tuple(r) for r in rows)
        m.rows = len(m._e)
        m.cols = len(m._e[0]) if m._e else 0
        return m

    # -- access -----------------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij):
        i, j = ij
        if isinstance(i, slice) or isinstance(j, slice):
            rows = self._e[i] if isinstance(i, slice) else (self._e[i],)
            return Matrix._raw(self.ring, [r[j] if isinstance(j, slice) else (r[j],) for r in rows])
        return self._e[i][j]

    def row(self, i: int) -> tuple:
        return self._e[i]

    def tolist(self) -> list[list]:
        return [list(r) for r in self._e]

    def entries(self):
        for r in self._e:
            yield from r

    def map(self, f: Callable, ring: Ring | None = None) -> "Matrix":
        return Matrix([[f(v) for v in r] for r in self._e], ring)

    def to_ring(self, ring: Ring) -> "Matrix":
        if ring == self.ring:
            return self
        return Matrix(self._e, ring)

    # -- algebra ----------------------------------------------------------------
    @property
    def T(self) -> "Matrix":
        return Matrix._raw(self.ring, zip(*self._e)) if self.rows else self

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return mat_mul(self, other)

    def _binop(self, other, op):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.shape != other.shape:
            raise ShapeError(f"{self.shape} vs {other.shape}")
        ring = _common_ring(self.ring, other.ring)
        a, b = self.to_ring(ring), other.to_ring(ring)
        return Matrix._raw(ring, [[op(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(a._e, b._e)])

    def __add__(self, other):
        return self._binop(other, lambda x, y: x + y)

    def __sub__(self, other):
        return self._binop(other, lambda x, y: x - y)

    def __neg__(self):
        return Matrix._raw(self.ring, [[-v for v in r] for r in self._e])

    def scale(self, c) -> "Matrix":
        ring = _common_ring(self.ring, ring_of([c]))
        c = ring.coerce(c)
        return Matrix._raw(ring, [[c * ring.coerce(v) for v in r] for r in self._e])

    __rmul__ = scale

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.shape != other.shape:
            return False
        return all(x == y for x, y in zip(self.entries(), other.entries()))

    def __hash__(self):
        return hash((self.shape, self._e))

    def is_zero(self) -> bool:
        return not any(self.entries())

    def is_identity(self) -> bool:
        return self.is_square and all(
            v == (1 if i == j else 0) for i, r in enumerate(self._e) for j, v in enumerate(r)
        )

    def is_scalar(self):
        """Return c if the matrix equals c*I, else None."""
        if not self.is_square or not self.rows:
            return None
        c = self._e[0][0]
        for i, r in enumerate(self._e):
            for j, v in enumerate(r):
                if v != (c if i == j else 0):
                    return None
        return c

    def split(self, r: int, c: int | None = None) -> list[list["Matrix"]]:
        """Cut into a 2x2 grid of blocks at row ``r`` and column ``c``."""
        c = r if c is None else c
        return [
            [self[:r, :c], self[:r, c:]],
            [self[r:, :c], self[r:, c:]],
        ]

    def det(self):
        return det(self)

    def pfaffian(self):
        return pfaffian(self)

    def inverse(self) -> "Matrix":
        return inverse(self)

    def nullspace(self) -> list[list[Fraction]]:
        return nullspace(self)

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols} over {self.ring})"

    def __str__(self):
        return format_matrix(self)


def format_matrix(m: Matrix) -> str:
    cells = [[str(v) for v in r] for r in m._e]
    if not cells:
        return "[]"
    widths = [max(len(r[j]) for r in cells) for j in range(m.cols)]
    return "\n".join(
        "[ " + "  ".join(c.rjust(w) for c, w in zip(r, widths)) + " ]" for r in cells
    )


def identity(n: int, ring: Ring = RATIONAL) -> Matrix:
    one, zero = ring.one, ring.zero
    return Matrix._raw(ring, [[one if i == j else zero for j in range(n)] for i in range(n)])


def zeros(rows: int, cols: int | None = None, ring: Ring = RATIONAL) -> Matrix:
    cols = rows if cols is None else cols
    return Matrix._raw(ring, [[ring.zero] * cols for _ in range(rows)])


def elementary(n: int, i: int, j: int, lam, ring: Ring | None = None) -> Matrix:
    """I + lam*E_ij (0-based indices, i != j)."""
    if i == j:
        raise ValueError("elementary matrices need i != j")
    ring = ring or ring_of([lam])
    rows = identity(n, ring).tolist()
    rows[i][j] = ring.coerce(lam)
    return Matrix._raw(ring, rows)


def gram_form(n: int, ring: Ring = RATIONAL) -> Matrix:
    """[[0, I_n], [I_n, 0]]: the polar form of q(a, b) = sum a_i b_i."""
    i, z = identity(n, ring), zeros(n, n, ring)
    return block([[z, i], [i, z]])


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if a.cols != b.rows:
        raise ShapeError(f"cannot multiply {a.shape} by {b.shape}")
    ring = _common_ring(a.ring, b.ring)
    a, b = a.to_ring(ring), b.to_ring(ring)
    zero = ring.zero
    # skip zeros on both sides: the structured matrices here are very sparse
    brows = [[(j, v) for j, v in enumerate(r) if v] for r in b._e]
    out = []
    for r in a._e:
        acc = [zero] * b.cols
        for k, x in enumerate(r):
            if x:
                for j, y in brows[k]:
                    acc[j] = acc[j] + x * y
        out.append(acc)
    return Matrix._raw(ring, out)


def transpose(a: Matrix) -> Matrix:
    return a.T


def block(grid: Sequence[Sequence[Matrix]]) -> Matrix:
    """Assemble a matrix from a rectangular grid of blocks."""
    ring = RATIONAL
    for brow in grid:
        for m in brow:
            ring = _common_ring(ring, m.ring)
    out = []
    for brow in grid:
        height = brow[0].rows
        if any(m.rows != height for m in brow):
            raise ShapeError("blocks in a row differ in height")
        brow = [m.to_ring(ring) for m in brow]
        for i in range(height):
            out.append([v for m in brow for v in m._e[i]])
    widths = {len(r) for r in out}
    if len(widths) > 1:
        raise ShapeError("block rows differ in width")
    return Matrix._raw(ring, out)


def block_sum(*mats: Matrix) -> Matrix:
    """Block-diagonal sum A ⊥ B ⊥ ..."""
    if not mats:
        raise ValueError("need at least one matrix")
    if any(not m.is_square for m in mats):
        raise ShapeError("block sums take square matrices")
    ring = RATIONAL
    for m in mats:
        ring = _common_ring(ring, m.ring)
    offsets = [0, *accumulate(m.rows for m in mats)]
    size = offsets[-1]
    rows = [[ring.zero] * size for _ in range(size)]
    for m, off in zip(mats, offsets):
        m = m.to_ring(ring)
        for i, r in enumerate(m._e):
            rows[off + i][off : off + m.cols] = r
    return Matrix._raw(ring, rows)


# -- determinants -----------------------------------------------------------------


def charpoly(a: Matrix) -> list:
    """Coefficients [1, c1, ..., cn] of det(t*I - A), highest degree first.

    Berkowitz's algorithm: only ring additions and multiplications, so it is
    valid over any commutative ring.  O(n^4) ring operations.
    """
    if not a.is_square:
        raise ShapeError("characteristic polynomial of a non-square matrix")
    ring, e = a.ring, a._e
    zero, one = ring.zero, ring.one
    poly = [one]
    for r in range(a.rows):
        # leading principal (r+1)x(r+1) block: [[A_r, C], [R, a_rr]]
        col = [e[i][r] for i in range(r)]
        row = e[r][:r]
        toeplitz = [one, -e[r][r]]
        vec = col
        for _ in range(r):
            s = zero
            for x, y in zip(row, vec):
                if x and y:
                    s = s + x * y
            toeplitz.append(-s)
            vec = [
                sum_products(e[i][:r], vec, zero) for i in range(r)
            ]
        # poly_{r+1} = T @ poly_r, T lower-triangular Toeplitz, size (r+2) x (r+1)
        new = []
        for i in range(r + 2):
            s = zero
            for j in range(min(i + 1, r + 1)):
                t = toeplitz[i - j]
                if t and poly[j]:
                    s = s + t * poly[j]
            new.append(s)
        poly = new
    return poly


def sum_products(xs, ys, zero):
    s = zero
    for x, y in zip(xs, ys):
        if x and y:
            s = s + x * y
    return s


def det_berkowitz(a: Matrix):
    p = charpoly(a)
    return p[-1] if a.rows % 2 == 0 else -p[-1]


def det_bareiss(a: Matrix):
    """Fraction-free elimination; rational matrices only."""
    if not a.ring.is_rational:
        raise TypeError("Bareiss elimination needs exact division (rational ring)")
    if not a.is_square:
        raise ShapeError("determinant of a non-square matrix")
    n = a.rows
    if n == 0:
        return 1
    if all(isinstance(v, int) for v in a.entries()):
        m = [list(r) for r in a._e]
        div = int.__floordiv__  # exact by Sylvester's identity
    else:
        m = [[Fraction(v) for v in r] for r in a._e]
        div = Fraction.__truediv__
    sign, prev = 1, 1
    for k in range(n - 1):
        if not m[k][k]:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            ri, rk = m[i], m[k]
            for j in range(k + 1, n):
                v = pivot * ri[j] - mik * rk[j]
                ri[j] = div(v, prev) if prev != 1 else v
            ri[k] = 0
        prev = pivot
    d = sign * m[n - 1][n - 1]
    return d.numerator if isinstance(d, Fraction) and d.denominator == 1 else d


def det(a: Matrix):
    """Determinant: Bareiss over the rationals, Berkowitz over other rings."""
    if not a.is_square:
        raise ShapeError("determinant of a non-square matrix")
    if a.ring.is_rational:
        return det_bareiss(a)
    return det_berkowitz(a)


# -- Pfaffians --------------------------------------------------------------------


def _check_alternating(a: Matrix):
    if not a.is_square or a.rows % 2:
        raise NotAlternating("Pfaffian needs an even square matrix")
    if not is_alternating(a):
        raise NotAlternating("matrix is not alternating")


def pfaffian_expansion(a: Matrix):
    """Pfaffian by first-row expansion, memoised on the remaining index set.

    Pf(A) = sum_{j>=2} (-1)^j a_{1j} Pf(A minus rows/cols 1 and j).
    Division free.  Cost grows like 2^n, so keep n <= 16.
    """
    _check_alternating(a)
    e, ring = a._e, a.ring
    memo: dict = {}

    def pf(idx: tuple):
        if not idx:
            return ring.one
        if idx in memo:
            return memo[idx]
        first, rest = idx[0], idx[1:]
        total = ring.zero
        for k, j in enumerate(rest):
            x = e[first][j]
            if not x:
                continue
            sub = pf(rest[:k] + rest[k + 1 :])
            if sub:
                term = x * sub
                total = total + term if k % 2 == 0 else total - term
        memo[idx] = total
        return total

    return pf(tuple(range(a.rows)))


def pfaffian_elimination(a: Matrix):
    """Pfaffian by skew-symmetric Gaussian elimination; rational matrices only.

    Each step pivots on a 2x2 block and replaces the rest with its Schur
    complement, Pf([[B, C], [-C^t, D]]) = Pf(B) * Pf(D + C^t B^-1 C).
    """
    if not a.ring.is_rational:
        raise TypeError("elimination Pfaffian needs a field (rational ring)")
    _check_alternating(a)
    m = [[Fraction(v) for v in r] for r in a._e]
    n = a.rows
    result = Fraction(1)
    for k in range(0, n, 2):
        p = next((j for j in range(k + 1, n) if m[k][j]), None)
        if p is None:
            return 0
        if p != k + 1:
            m[k + 1], m[p] = m[p], m[k + 1]
            for r in m:
                r[k + 1], r[p] = r[p], r[k + 1]
            result = -result
        b = m[k][k + 1]
        result *= b
        r0, r1 = m[k], m[k + 1]
        for i in range(k + 2, n):
            u, v = r1[i], r0[i]
            if not (u or v):
                continue
            ri = m[i]
            for j in range(k + 2, n):
                if r0[j] or r1[j]:
                    ri[j] += (u * r0[j] - v * r1[j]) / b
    return result.numerator if result.denominator == 1 else result


def pfaffian(a: Matrix):
    if a.ring.is_rational:
        return pfaffian_elimination(a)
    return pfaffian_expansion(a)


# -- inverses and linear algebra over QQ ------------------------------------------


def inverse(a: Matrix) -> Matrix:
    """Exact inverse.

    Gauss-Jordan over the rationals.  Over polynomial rings the inverse is
    taken from the characteristic polynomial (Cayley-Hamilton), which needs
    the determinant to be a nonzero rational constant.
    """
    if not a.is_square:
        raise ShapeError("inverse of a non-square matrix")
    n = a.rows
    if a.ring.is_rational:
        m = [[Fraction(v) for v in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(a._e)]
        for k in range(n):
            p = next((i for i in range(k, n) if m[i][k]), None)
            if p is None:
                raise SingularMatrix("matrix is singular")
            m[k], m[p] = m[p], m[k]
            piv = m[k][k]
            m[k] = [v / piv for v in m[k]]
            for i in range(n):
                if i != k and m[i][k]:
                    f = m[i][k]
                    m[i] = [x - f * y for x, y in zip(m[i], m[k])]
        return Matrix([[_tidy(v) for v in r[n:]] for r in m], RATIONAL)
    cp = charpoly(a)
    c0 = cp[-1]
    if not (isinstance(c0, Poly) and c0.is_constant() and c0):
        raise SingularMatrix("determinant is not a nonzero constant")
    c0 = c0.constant_coeff()
    # A^{-1} = -(A^{n-1} + c1 A^{n-2} + ... + c_{n-1} I) / c_n
    acc = identity(n, a.ring)
    for c in cp[1:-1]:
        acc = (a @ acc) + identity(n, a.ring).scale(c)
    return acc.scale(Fraction(-1) / c0)


def _tidy(v: Fraction):
    return v.numerator if v.denominator == 1 else v


def nullspace(a: Matrix) -> list[list[Fraction]]:
    """Basis of {x : A x = 0} over QQ, from the reduced row echelon form."""
    if not a.ring.is_rational:
        raise TypeError("nullspace is only offered over the rationals")
    return nullspace_rows([list(r) for r in a._e], a.cols)


def nullspace_rows(rows: list[list], ncols: int) -> list[list[Fraction]]:
    m = [[Fraction(v) for v in r] for r in rows if any(r)]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        m[r] = [v / piv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -m[i][f]
        basis.append(v)
    return basis


# -- symmetry classes --------------------------------------------------------------


def is_symmetric(a: Matrix) -> bool:
    return a.is_square and a == a.T


def is_alternating(a: Matrix) -> bool:
    if not a.is_square:
        return False
    e = a._e
    return all(not e[i][i] for i in range(a.rows)) and all(
        e[i][j] == -e[j][i] for i in range(a.rows) for j in range(i + 1, a.rows)
    )


def classify_form(a: Matrix, kind: str, form: Matrix | None = None) -> bool:
    """Membership test for the classes symmetric / alternating /
    orthogonal (w.r.t. ``form``) / symplectic (w.r.t. an alternating ``form``)."""
    if kind == "symmetric":
        return is_symmetric(a)
    if kind == "alternating":
        return is_alternating(a)
    if kind not in ("orthogonal", "symplectic"):
        raise ValueError(f"unknown class {kind!r}")
    if form is None:
        raise ValueError(f"{kind} needs a reference form")
    if not a.is_square or form.shape != a.shape:
        raise ShapeError(f"form {form.shape} does not match matrix {a.shape}")
    if kind == "symplectic" and not is_alternating(form):
        return False
    return a.T @ form @ a == form
