"""Clifford embedding, Spin certification and the covering map to SO_2n.

The Clifford algebra of the hyperbolic space H(R^n) is realised as 2^n square
matrices: a vector (a, b) goes to phi(a, b) = [[0, alpha_n(a, b)],
[alphabar_n(a, b), 0]].  Even elements are block diagonal, odd elements are
block anti-diagonal.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import isqrt

from .core import (
    _check_all,
    _entry,
    _instances,
    q_form,
    E_inverse,
    E_matrix,
    UnitVector,
    psi_degree_map,
    standard_involution,
    suslin_alpha,
    suslin_alpha_bar,
)
from .matrix import (
    Matrix,
    ShapeError,
    block,
    block_sum,
    det,
    gram_form,
    identity,
    inverse,
    nullspace_rows,
    zeros,
)
from .ring import RATIONAL, Ring, ring_of

__all__ = [
    "SpinError",
    "NotInV",
    "NotEven",
    "NotUnitary",
    "NotStable",
    "NotOrthogonal",
    "NotSpecial",
    "NoLift",
    "NotNormalizable",
    "SpinElem",
    "SOMatrix",
    "phi_embed",
    "phi_extract",
    "suslin_extract",
    "clifford_parity",
    "spin_certify",
    "spin_act",
    "so_act",
    "hyperbolic_embed",
    "lift_hyperbolic_to_spin",
    "spin6_from_sl4",
    "translation_matrix",
    "check_translation_law",
    "verify_clifford_suite",
    "CLIFFORD_THRESHOLDS",
]


class SpinError(ValueError):
    """Base class for failed Clifford/Spin checks."""


class NotInV(SpinError):
    """An odd element is not the image of a vector of H(R^n)."""


class NotEven(SpinError):
    pass


class NotUnitary(SpinError):
    pass


class NotStable(SpinError):
    pass


class NotOrthogonal(SpinError):
    pass


class NotSpecial(SpinError):
    pass


class NoLift(SpinError):
    pass


class NotNormalizable(SpinError):
    pass


def phi_embed(a, b, ring: Ring | None = None) -> Matrix:
    """phi(a, b) = [[0, alpha_n(a, b)], [alphabar_n(a, b), 0]]."""
    al = suslin_alpha(a, b, ring)
    ab = suslin_alpha_bar(a, b, al.ring)
    z = zeros(al.rows, ring=al.ring)
    return block([[z, al], [ab, z]])


def clifford_parity(m: Matrix) -> str:
    """"even", "odd", "zero" or "mixed" for a 2^n square matrix."""
    if not m.is_square or m.rows % 2:
        raise ShapeError("Clifford elements are even-sized square matrices")
    h = m.rows // 2
    (a, b), (c, d) = m.split(h)
    diag_zero = a.is_zero() and d.is_zero()
    off_zero = b.is_zero() and c.is_zero()
    if diag_zero and off_zero:
        return "zero"
    if off_zero:
        return "even"
    if diag_zero:
        return "odd"
    return "mixed"


def _find_pattern(m: Matrix, gens: list) -> dict:
    found = {}
    for i, r in enumerate(m._e):
        for j, v in enumerate(r):
            for k, g in enumerate(gens):
                if k in found:
                    continue
                if v == g:
                    found[k] = (i, j, 1)
                elif v == -g:
                    found[k] = (i, j, -1)
    return found


@lru_cache(maxsize=None)
def _alpha_pattern(n: int) -> tuple:
    """For each coordinate of (a, b), a (row, col, sign) of alpha_n where it appears alone.

    alpha_n is linear and every entry is 0 or +-(one coordinate).  For n = 1
    the coordinate b1 is invisible in alpha_1 = (a1); then the tuple is short.
    """
    from .ring import PolyRing

    ring = PolyRing(n)
    found = _find_pattern(suslin_alpha(ring.xs(), ring.ys(), ring), [*ring.xs(), *ring.ys()])
    return tuple(found.get(k) for k in range(2 * n))


@lru_cache(maxsize=None)
def _phi_pattern(n: int) -> tuple:
    """Same as :func:`_alpha_pattern`, read off the full odd matrix phi_n."""
    from .ring import PolyRing

    ring = PolyRing(n)
    found = _find_pattern(phi_embed(ring.xs(), ring.ys(), ring), [*ring.xs(), *ring.ys()])
    if len(found) != 2 * n:
        raise AssertionError("Clifford pattern does not expose every coordinate")
    return tuple(found[k] for k in range(2 * n))


def suslin_extract(m: Matrix, n: int | None = None):
    """Recover (a, b) from a matrix claimed to be alpha_n(a, b).

    Raises NotInV if the matrix is not of that form.
    """
    size = m.rows
    if not m.is_square or size & (size - 1):
        raise ShapeError(f"expected a 2^(n-1) square matrix, got {m.shape}")
    n = n or size.bit_length()
    pattern = _alpha_pattern(n)
    if None in pattern:
        raise ValueError(f"alpha_{n} does not determine (a, b)")
    coords = [m[i, j] * s for i, j, s in pattern]
    a, b = tuple(coords[:n]), tuple(coords[n:])
    if suslin_alpha(a, b, m.ring) != m:
        raise NotInV("matrix is not a Suslin matrix")
    return a, b


def phi_extract(m: Matrix):
    """Inverse of :func:`phi_embed`; raises NotInV for matrices outside V."""
    if not m.is_square or m.rows < 2 or m.rows & (m.rows - 1):
        raise ShapeError(f"expected a 2^n square matrix, got {m.shape}")
    n = m.rows.bit_length() - 1
    coords = [m[i, j] * s for i, j, s in _phi_pattern(n)]
    a, b = tuple(coords[:n]), tuple(coords[n:])
    residual = m - phi_embed(a, b, m.ring)
    if not residual.is_zero():
        raise NotInV("odd element has a nonzero residual outside V")
    return a, b


# -- Spin ------------------------------------------------------------------------


@dataclass(frozen=True)
class SOMatrix:
    """A 2n x 2n matrix preserving [[0, I], [I, 0]] with determinant 1."""

    n: int
    mat: Matrix

    def __post_init__(self):
        if self.mat.shape != (2 * self.n, 2 * self.n):
            raise ShapeError("SO matrix has the wrong size")
        g = gram_form(self.n)
        if self.mat.T @ g @ self.mat != g:
            raise NotOrthogonal("matrix does not preserve the hyperbolic form")
        if det(self.mat) != 1:
            raise NotSpecial("determinant is not 1")


@dataclass(frozen=True)
class SpinElem:
    """A certified element of Spin_2n.

    ``certificate`` holds the images of the 2n basis vectors of H(R^n) under
    conjugation, as coordinate tuples; they are the columns of ``so_matrix``.
    """

    n: int
    g: Matrix
    so_matrix: Matrix
    certificate: dict = field(compare=False, repr=False)

    @property
    def inverse(self) -> Matrix:
        return standard_involution(self.g)

    @property
    def blocks(self) -> tuple[Matrix, Matrix]:
        h = self.g.rows // 2
        return self.g[:h, :h], self.g[h:, h:]

    def __matmul__(self, other: "SpinElem") -> "SpinElem":
        return spin_certify(self.g @ other.g)


def _basis_vectors(n: int, ring: Ring):
    for k in range(2 * n):
        v = [ring.zero] * (2 * n)
        v[k] = ring.one
        yield tuple(v[:n]), tuple(v[n:])


def spin_certify(g: Matrix) -> SpinElem:
    """Certify g as an element of Spin_2n or raise the failing check."""
    if not g.is_square or g.rows < 2 or g.rows & (g.rows - 1):
        raise ShapeError(f"expected a 2^n square matrix, got {g.shape}")
    n = g.rows.bit_length() - 1
    parity = clifford_parity(g)
    if parity != "even":
        raise NotEven(f"element is {parity}, not even")
    gstar = standard_involution(g)
    if not (g @ gstar).is_identity():
        raise NotUnitary("g g* != 1")
    ring = g.ring
    columns = []
    for a, b in _basis_vectors(n, ring):
        conj = g @ phi_embed(a, b, ring) @ gstar
        try:
            a2, b2 = phi_extract(conj)
        except NotInV as exc:
            raise NotStable(f"conjugate of basis vector leaves V: {exc}") from exc
        columns.append((*a2, *b2))
    so = Matrix([list(r) for r in zip(*columns)], ring)
    gram = gram_form(n, ring)
    if so.T @ gram @ so != gram:
        raise NotOrthogonal("induced matrix does not preserve the hyperbolic form")
    if det(so) != 1:
        raise NotSpecial("induced matrix has determinant != 1")
    return SpinElem(n, g, so, {"unitary": True, "basis_images": columns})


def so_act(so: Matrix, u: UnitVector) -> UnitVector:
    col = so @ u.as_column()
    vals = [col[i, 0] for i in range(col.rows)]
    n = u.n
    return UnitVector(tuple(vals[:n]), tuple(vals[n:]), col.ring)


def spin_act(g: SpinElem, u: UnitVector) -> UnitVector:
    """Action of a certified Spin element on a unit vector.

    Odd n: alpha(v', w') = h alpha(v, w) h* where g = diag(h, (h*)^-1).
    Even n: alpha(v', w') = phi1 alpha(v, w) phi2^-1 where g = diag(phi1, phi2).
    The result is cross-checked against the induced SO matrix.
    """
    if u.n != g.n:
        raise ShapeError(f"unit vector of length {u.n} for Spin_{2 * g.n}")
    if g.n == 1:
        # alpha_1 forgets b1; act on the full Clifford image instead
        a, b = phi_extract(g.g @ phi_embed(u.a, u.b, u.ring) @ g.inverse)
        out = UnitVector(a, b, ring_of([*a, *b]))
        if so_act(g.so_matrix, u) != out:
            raise AssertionError("Spin action disagrees with the induced SO action")
        return out
    top, bottom = g.blocks
    alpha = suslin_alpha(u.a, u.b, u.ring)
    if g.n % 2:
        moved = top @ alpha @ standard_involution(top)
    else:
        moved = top @ alpha @ standard_involution(bottom)
    try:
        a, b = suslin_extract(moved, g.n)
    except NotInV as exc:  # excluded by certification
        raise AssertionError("certified Spin element moved a vector out of V") from exc
    out = UnitVector(a, b, moved.ring)
    if so_act(g.so_matrix, u) != out:
        raise AssertionError("Spin action disagrees with the induced SO action")
    return out


# -- hyperbolic embedding and its lift ---------------------------------------------


def hyperbolic_embed(s: Matrix) -> SOMatrix:
    """H(s) = diag(s, (s^t)^-1) for s in SL_n."""
    if not s.is_square:
        raise ShapeError("H needs a square matrix")
    if det(s) != 1:
        raise NotSpecial("H is only defined on SL_n")
    return SOMatrix(s.rows, block_sum(s, inverse(s).T))


def _even_unknowns(size: int):
    h = size // 2
    return [(i, j) for i in range(h) for j in range(h)] + [
        (h + i, h + j) for i in range(h) for j in range(h)
    ]


def lift_hyperbolic_to_spin(s: Matrix) -> SpinElem:
    """Lift H(s), s in SL_n(QQ), to a certified Spin element.

    Solves g phi(v) = phi(H(s) v) g for even g over all basis vectors v,
    rescales to g g* = 1, and picks the sign making the first nonzero entry
    (row-major) positive.
    """
    if not s.ring.is_rational:
        raise TypeError("lifts are only computed over the rationals")
    n = s.rows
    hmat = hyperbolic_embed(s).mat
    size = 2**n
    unknowns = _even_unknowns(size)
    rows: dict = {}
    for k, (a, b) in enumerate(_basis_vectors(n, RATIONAL)):
        src = phi_embed(a, b, RATIONAL)
        col = [hmat[i, k] for i in range(2 * n)]
        dst = phi_embed(col[:n], col[n:], RATIONAL)
        # (G phi)_{rc} - (phi' G)_{rc} with G the unit matrix at (p, q):
        # G phi contributes phi[q][c] at row p; phi' G contributes phi'[r][p] at column q
        for u, (p, q) in enumerate(unknowns):
            for c, v in enumerate(src.row(q)):
                if v:
                    rows.setdefault((k, p, c), {})
                    rows[(k, p, c)][u] = rows[(k, p, c)].get(u, 0) + v
            for r in range(size):
                v = dst[r, p]
                if v:
                    rows.setdefault((k, r, q), {})
                    rows[(k, r, q)][u] = rows[(k, r, q)].get(u, 0) - v
    # many equations repeat across basis vectors; keep one copy of each
    distinct = {tuple(sorted((u, v) for u, v in eq.items() if v)) for eq in rows.values()}
    dense = []
    for eq in sorted(e for e in distinct if e):
        row = [0] * len(unknowns)
        for u, v in eq:
            row[u] = v
        dense.append(row)
    basis = nullspace_rows(dense, len(unknowns))
    if not basis:
        raise NoLift("no even element intertwines H(s)")
    if len(basis) > 1:
        raise NoLift(f"solution space has dimension {len(basis)}, expected 1")
    vec = basis[0]
    grid = [[Fraction(0)] * size for _ in range(size)]
    for (p, q), x in zip(unknowns, vec):
        grid[p][q] = x
    g = Matrix(grid, RATIONAL)
    c = (g @ standard_involution(g)).is_scalar()
    if c is None or c == 0:
        raise NoLift("g g* is not a nonzero scalar")
    c = Fraction(c)
    num, den = c.numerator, c.denominator
    rn, rd = isqrt(abs(num)), isqrt(den)
    if num < 0 or rn * rn != num or rd * rd != den:
        raise NotNormalizable(f"g g* = {c} is not a rational square")
    g = g.scale(Fraction(rd, rn))
    first = next(v for v in g.entries() if v)
    if first < 0:
        g = -g
    elem = spin_certify(g)
    if elem.so_matrix != hmat:
        raise NoLift("lift does not cover H(s)")
    return elem


# -- the Spin_6 = SL_4 dictionary ------------------------------------------------


def spin6_from_sl4(h: Matrix) -> Matrix:
    """diag(h, (h*)^-1) for a 4x4 matrix h (not certified here)."""
    if h.shape != (4, 4):
        raise ShapeError("the Spin_6 dictionary takes 4x4 matrices")
    return block_sum(h, standard_involution(inverse(h)))


def translation_matrix(h: Matrix) -> Matrix:
    """g' = E_n^t h (E_n^t)^-1, so that Psi_n(v', w') = g' Psi_n(v, w) g'^t (odd n)."""
    n = h.rows.bit_length()
    return E_matrix(n).T @ h @ E_inverse(n).T


def check_translation_law(g: SpinElem, u: UnitVector) -> bool:
    """Psi_n(g.u) == g' Psi_n(u) g'^t for odd n."""
    if g.n % 2 == 0:
        raise ValueError("the translation law is stated for odd n")
    top, _ = g.blocks
    gp = translation_matrix(top)
    moved = spin_act(g, u)
    return psi_degree_map(moved) == gp @ psi_degree_map(u) @ gp.T


CLIFFORD_THRESHOLDS = {"clifford": 5, "involution": 4}


def _random_int_matrix(rng, size: int, bound: int = 5) -> Matrix:
    return Matrix([[rng.randint(-bound, bound) for _ in range(size)] for _ in range(size)])


def verify_clifford_suite(n: int, mode: str = "symbolic", seeds: int = 20,
                          thresholds: dict | None = None, only: str | None = None) -> list[dict]:
    """Clifford relation and standard-involution identities for H(R^n)."""
    limits = {**CLIFFORD_THRESHOLDS, **(thresholds or {})}
    report = []

    def want(name):
        return only is None or only == name

    def mode_for(kind):
        return "symbolic" if mode == "symbolic" and n <= limits[kind] else "sampled"

    if want("clifford"):
        m = mode_for("clifford")

        def rel(ab):
            a, b = ab
            p = phi_embed(a, b)
            return p @ p == identity(p.rows).scale(q_form(a, b))

        ok, bad = _check_all(((lbl, (a, b)) for lbl, a, b in _instances(n, m, seeds)), rel)
        report.append(_entry("clifford", n, m, ok, "phi(v)^2 = q(v) I", bad))

    if want("involution-on-V"):
        # the involution is the adjugate for n = 1 and acts as -1 on V for all n
        m = mode_for("involution")
        ok, bad = _check_all(
            ((lbl, (a, b)) for lbl, a, b in _instances(n, m, seeds)),
            lambda ab: standard_involution(phi_embed(*ab)) == -phi_embed(*ab),
        )
        report.append(_entry("involution-on-V", n, m, ok, "phi(v)* = -phi(v)", bad))

    if want("involution-anti"):
        count = max(seeds, 1)
        size = 2**n

        def anti(seed):
            rng = random.Random(seed)
            a, b = _random_int_matrix(rng, size), _random_int_matrix(rng, size)
            sa, sb = standard_involution(a), standard_involution(b)
            return standard_involution(a @ b) == sb @ sa and standard_involution(sa) == a

        ok, bad = _check_all(((f"seed={s}", s) for s in range(count)), anti)
        report.append(_entry("involution-anti", n, "sampled", ok,
                                "(MN)* = N* M*, (M*)* = M", bad))
    return report
