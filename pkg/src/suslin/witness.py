"""Witness checkers for orbit and stabilised-congruence statements.

Nothing here decides orbit membership.  Every function either checks a
supplied witness exactly or builds one from an explicit formula.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Sequence, Union

from .core import (
    E_inverse,
    E_matrix,
    UnimodularVec,
    UnitVector,
    psi,
    psi_degree_map,
    sigma,
)
from .matrix import (
    Matrix,
    ShapeError,
    block_sum,
    det,
    identity,
    is_alternating,
    is_symmetric,
    pfaffian,
)
from .ring import PolyRing, Quadric, Ring, ring_of
from .spin import (
    SpinElem,
    SpinError,
    lift_hyperbolic_to_spin,
    so_act,
    spin6_from_sl4,
    spin_act,
    spin_certify,
)

__all__ = [
    "random_congruence_instance",
    "random_factorization_instance",
    "WitnessError",
    "FlavorMismatch",
    "StabilizerFails",
    "ProductMismatch",
    "InvalidFactor",
    "PfaffianNotOne",
    "ElementaryWitness",
    "OrbitWitness",
    "AltClassRep",
    "verify_congruence_witness",
    "factorization_check",
    "unit_vector_of",
    "power_row_section",
    "alt4_to_unit_vector",
    "unit_vector_to_alt4",
    "stabilizer_transvection",
    "spin6_stabilizer",
    "random_elementary_witness",
    "elementary_sl",
]


class WitnessError(ValueError):
    pass


class FlavorMismatch(WitnessError):
    pass


class StabilizerFails(WitnessError):
    pass


class ProductMismatch(WitnessError):
    pass


class InvalidFactor(WitnessError):
    pass


class PfaffianNotOne(WitnessError):
    pass


@dataclass(frozen=True)
class ElementaryWitness:
    """A product of elementary matrices I + lam*E_ij (0-based i != j)."""

    size: int
    factors: tuple = ()

    def __post_init__(self):
        facs = tuple((int(i), int(j), lam) for i, j, lam in self.factors)
        for i, j, _ in facs:
            if i == j or not (0 <= i < self.size and 0 <= j < self.size):
                raise ValueError(f"bad elementary factor indices ({i}, {j})")
        object.__setattr__(self, "factors", facs)

    def matrix(self, ring: Ring | None = None) -> Matrix:
        ring = ring or ring_of(lam for _, _, lam in self.factors)
        rows = identity(self.size, ring).tolist()
        # right-multiplying by I + lam*E_ij adds lam * column i to column j
        for i, j, lam in self.factors:
            lam = ring.coerce(lam)
            for r in rows:
                if r[i]:
                    r[j] = r[j] + lam * r[i]
        return Matrix(rows, ring)

    def inverse(self) -> "ElementaryWitness":
        return ElementaryWitness(self.size, tuple((i, j, -lam) for i, j, lam in reversed(self.factors)))

    def then(self, other: "ElementaryWitness") -> "ElementaryWitness":
        if other.size != self.size:
            raise ShapeError("witness sizes differ")
        return ElementaryWitness(self.size, self.factors + other.factors)

    def with_cancelling_pair(self, pos: int, i: int, j: int, lam) -> "ElementaryWitness":
        """Insert (i, j, lam), (i, j, -lam) at ``pos``; the product is unchanged."""
        f = list(self.factors)
        f[pos:pos] = [(i, j, lam), (i, j, -lam)]
        return ElementaryWitness(self.size, tuple(f))


def _stabilised(m: Matrix, extra: int, flavor: str) -> Matrix:
    if extra == 0:
        return m
    pad = sigma(extra) if flavor == "S_sim" else psi(extra)
    return block_sum(m, pad)


def verify_congruence_witness(M: Matrix, N: Matrix, i: int, E, flavor: str = "W_E") -> bool:
    """Check M ⊥ F_{2n+2i} == E^t (N ⊥ F_{2m+2i}) E exactly.

    F is psi for the alternating flavors ("W_E", "W_SL") and sigma for
    "S_sim"; M has size 2m and N has size 2n.  ``E`` is an
    :class:`ElementaryWitness` (required for "W_E" and "S_sim") or, for
    "W_SL", any matrix of determinant 1.
    """
    if flavor not in ("W_E", "W_SL", "S_sim"):
        raise ValueError(f"unknown flavor {flavor!r}")
    for name, x in (("M", M), ("N", N)):
        if not x.is_square or x.rows % 2:
            raise ShapeError(f"{name} must be an even square matrix")
        if flavor == "S_sim":
            if not is_symmetric(x):
                raise FlavorMismatch(f"{name} is not symmetric")
        elif not is_alternating(x):
            raise FlavorMismatch(f"{name} is not alternating")
    if i < 1:
        raise ValueError("stabilisation index i must be >= 1")
    if flavor == "W_SL" and (pfaffian(M) != 1 or pfaffian(N) != 1):
        raise FlavorMismatch("W_SL compares alternating matrices of Pfaffian 1")
    size = M.rows + N.rows + 2 * i
    if isinstance(E, ElementaryWitness):
        if E.size != size:
            raise ShapeError(f"witness has size {E.size}, expected {size}")
        ring = ring_of([*M.entries(), *N.entries()])
        e = E.matrix(ring if not ring.is_rational else None)
    elif isinstance(E, Matrix):
        if flavor != "W_SL":
            raise FlavorMismatch(f"{flavor} needs an elementary witness, got a bare matrix")
        if E.shape != (size, size):
            raise ShapeError(f"witness has shape {E.shape}, expected {size}x{size}")
        if det(E) != 1:
            return False
        e = E
    else:
        raise TypeError("E must be an ElementaryWitness or a Matrix")
    lhs = _stabilised(M, N.rows + 2 * i, flavor)
    rhs = e.T @ _stabilised(N, M.rows + 2 * i, flavor) @ e
    return lhs == rhs


# -- factorisation check for Spin = lift(SL_n) * Epin * St(x, y) ---------------


def _certified(x, what: str) -> SpinElem:
    if isinstance(x, SpinElem):
        x = x.g
    try:
        return spin_certify(x)
    except SpinError as exc:
        raise InvalidFactor(f"{what}: {type(exc).__name__}: {exc}") from exc


def factorization_check(phi, lam: Matrix, eps: Sequence, s, target: UnitVector) -> bool:
    """Check a claimed factorisation phi = lift(lam) * eps_1 * ... * eps_k * s.

    ``s`` must fix ``target``.  Every Spin factor is (re)certified.  Returns
    True, or raises StabilizerFails / ProductMismatch / InvalidFactor.
    """
    phi = _certified(phi, "phi")
    s = _certified(s, "stabiliser")
    eps = [_certified(e, f"eps[{k}]") for k, e in enumerate(eps)]
    if spin_act(s, target) != target:
        raise StabilizerFails("claimed stabiliser moves the target vector")
    try:
        lifted = lift_hyperbolic_to_spin(lam)
    except (SpinError, TypeError) as exc:
        raise InvalidFactor(f"SL_n factor: {type(exc).__name__}: {exc}") from exc
    prod = lifted.g
    for e in eps:
        prod = prod @ e.g
    prod = prod @ s.g
    if prod != phi.g:
        raise ProductMismatch("composed factors differ from phi")
    return True


def stabilizer_transvection(chi: Matrix, u: Sequence, lam) -> Matrix:
    """k = I + lam * chi u u^t, which satisfies k chi k^t = chi for alternating chi."""
    col = Matrix([[x] for x in u], ring_of(u))
    return identity(chi.rows) + (chi @ col @ col.T).scale(lam)


def spin6_stabilizer(target: UnitVector, moves: Sequence[tuple[Sequence, object]]) -> SpinElem:
    """A Spin_6 element fixing ``target``, built from symplectic transvections.

    Each move ``(u, lam)`` contributes a transvection of chi = Psi_3(target);
    the product k is transported back along the Spin_6 = SL_4 dictionary,
    h = (E_3^t)^-1 k E_3^t.
    """
    if target.n != 3:
        raise ShapeError("the Spin_6 stabiliser construction needs n = 3")
    chi = psi_degree_map(target)
    k = identity(4, chi.ring)
    for u, lam in moves:
        k = k @ stabilizer_transvection(chi, u, lam)
    h = E_inverse(3).T @ k @ E_matrix(3).T
    return spin_certify(spin6_from_sl4(h))


# -- orbit witnesses ---------------------------------------------------------------


@dataclass(frozen=True)
class OrbitWitness:
    """``element`` carries ``source`` to ``target``.

    kind "SL" and "Elementary" act on unimodular vectors (columns), "SO" and
    "Spin" on unit vectors.
    """

    kind: str
    element: Union[Matrix, ElementaryWitness, SpinElem]
    source: Union[UnimodularVec, UnitVector]
    target: Union[UnimodularVec, UnitVector]

    def verify(self) -> bool:
        if self.kind in ("SL", "Elementary"):
            m = self.element.matrix() if isinstance(self.element, ElementaryWitness) else self.element
            if self.kind == "SL" and det(m) != 1:
                return False
            col = m @ Matrix([[x] for x in self.source.a])
            return tuple(col[i, 0] for i in range(col.rows)) == tuple(self.target.a)
        if self.kind == "SO":
            return so_act(self.element, self.source) == self.target
        if self.kind == "Spin":
            return spin_act(self.element, self.source) == self.target
        raise ValueError(f"unknown witness kind {self.kind!r}")


def unit_vector_of(v: UnimodularVec) -> UnitVector:
    if v.section is None:
        raise WitnessError("unimodular vector carries no section")
    return UnitVector(v.a, v.section)


def power_row_section(n: int, m: int) -> UnimodularVec:
    """(x1^m, x2, ..., xn) over S_{2n-1} with an explicit section.

    Expanding 1 = (x1 y1 + s)^m with s = x2 y2 + ... + xn yn, the pure
    (x1 y1)^m term gives the first coordinate y1^m; every other term has a
    factor s, and the part multiplying xi goes to the i-th coordinate.
    """
    if n < 2 or m < 1:
        raise ValueError("need n >= 2 and m >= 1")
    ring = Quadric(n)
    free = PolyRing(n)
    x, y = free.xs(), free.ys()
    s = free.zero
    for i in range(1, n):
        s = s + x[i] * y[i]
    t = x[0] * y[0]
    # sum_{k<m} C(m,k) t^k s^(m-1-k), computed in the free ring then reduced
    cof = free.zero
    for k in range(m):
        cof = cof + comb(m, k) * t**k * s ** (m - 1 - k)
    section = [ring.coerce(y[0] ** m)] + [ring.coerce(y[i] * cof) for i in range(1, n)]
    vec = [ring.coerce(x[0] ** m)] + [ring.coerce(x[i]) for i in range(1, n)]
    return UnimodularVec(tuple(vec), tuple(section))


# -- U_5 <-> alternating 4x4 matrices of Pfaffian 1 ---------------------------------


@dataclass(frozen=True)
class AltClassRep:
    mat: Matrix

    def __post_init__(self):
        if not is_alternating(self.mat) or self.mat.rows % 4:
            raise FlavorMismatch("representative must be alternating of size 4*2^k")
        if pfaffian(self.mat) != 1:
            raise PfaffianNotOne("representative must have Pfaffian 1")


@lru_cache(maxsize=None)
def _psi3_pattern() -> tuple:
    ring = PolyRing(3)
    m = psi_degree_map((ring.xs(), ring.ys()), ring, check=False)
    gens = [*ring.xs(), *ring.ys()]
    out = []
    for g in gens:
        for i in range(4):
            for j in range(4):
                if m[i, j] == g:
                    out.append((i, j, 1))
                    break
                if m[i, j] == -g:
                    out.append((i, j, -1))
                    break
            else:
                continue
            break
    return tuple(out)


def unit_vector_to_alt4(u: UnitVector) -> AltClassRep:
    if u.n != 3:
        raise ShapeError("U_5 consists of length-3 unit vectors")
    return AltClassRep(psi_degree_map(u))


def alt4_to_unit_vector(a: Union[AltClassRep, Matrix]) -> UnitVector:
    """Read (v, w) off an alternating 4x4 matrix of Pfaffian 1."""
    m = a.mat if isinstance(a, AltClassRep) else a
    if m.shape != (4, 4) or not is_alternating(m):
        raise FlavorMismatch("expected an alternating 4x4 matrix")
    if pfaffian(m) != 1:
        raise PfaffianNotOne(f"Pfaffian is {pfaffian(m)}, not 1")
    coords = [m[i, j] * s for i, j, s in _psi3_pattern()]
    u = UnitVector(tuple(coords[:3]), tuple(coords[3:]), m.ring)
    if psi_degree_map(u) != m:
        raise AssertionError("alternating matrix is not in the image of Psi_3")
    return u


def random_elementary_witness(rng, size: int, count: int, bound: int = 3,
                              block: int | None = None) -> ElementaryWitness:
    """Random elementary product; indices restricted to range(block) if given."""
    top = size if block is None else block
    facs = []
    for _ in range(count):
        i, j = rng.sample(range(top), 2)
        lam = 0
        while not lam:
            lam = rng.randint(-bound, bound)
        facs.append((i, j, lam))
    return ElementaryWitness(size, tuple(facs))


def elementary_sl(rng, n: int, count: int, bound: int = 3) -> Matrix:
    return random_elementary_witness(rng, n, count, bound).matrix()


# -- self-generated instances ------------------------------------------------------


def random_congruence_instance(rng, flavor: str = "W_E", half: int = 2, i: int = 1, count: int = 6):
    """(M, N, i, E) with M = E0^t N E0 for a random elementary E0 of size 2*half.

    N = B^t F B for a random elementary B, so N has Pfaffian 1 in the
    alternating flavors.  E embeds E0 in the top-left corner; for "W_SL" it
    is returned as a dense matrix.
    """
    size = 2 * half
    base = sigma(size) if flavor == "S_sim" else psi(size)
    b = random_elementary_witness(rng, size, count).matrix()
    N = b.T @ base @ b
    e0 = random_elementary_witness(rng, size, count)
    M = e0.matrix().T @ N @ e0.matrix()
    E = ElementaryWitness(2 * size + 2 * i, e0.factors)
    if flavor == "W_SL":
        return M, N, i, E.matrix()
    return M, N, i, E


def random_factorization_instance(rng, point_seed: int, n_eps: int = 2, n_moves: int = 2) -> dict:
    """A certified decomposition phi = lift(lam) * eps_1 ... eps_k * s for n = 3.

    The eps factors are Spin_6 images of elementary SL_4 products and s is
    built from symplectic transvections of Psi_3(target).  The elementary
    parameters are kept under "eps_params" so callers can perturb them.
    """
    from .ring import sample_quadric_point

    p = sample_quadric_point(3, point_seed)
    target = UnitVector(p.xs, p.ys)
    lam = elementary_sl(rng, 3, 3)
    eps_params = [random_elementary_witness(rng, 4, 3) for _ in range(n_eps)]
    eps = [spin_certify(spin6_from_sl4(w.matrix())) for w in eps_params]
    moves = []
    for _ in range(n_moves):
        u = [rng.randint(-2, 2) for _ in range(4)]
        if not any(u):
            u[0] = 1
        moves.append((u, rng.choice([-2, -1, 1, 2])))
    s = spin6_stabilizer(target, moves)
    phi = lift_hyperbolic_to_spin(lam).g
    for e in eps:
        phi = phi @ e.g
    phi = phi @ s.g
    return {"phi": phi, "lam": lam, "eps": eps, "eps_params": eps_params, "s": s, "target": target}
