"""Suslin matrices and the structure constants built around them.

All recursive constructions return :class:`~suslin.matrix.Matrix` objects.
Constant matrices (J, E, sigma, psi, tau) are built over the rationals and
promote automatically when multiplied with matrices over a polynomial ring.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .matrix import (
    Matrix,
    block,
    block_sum,
    classify_form,
    det,
    identity,
    pfaffian,
    zeros,
)
from .ring import RATIONAL, EvalPoint, Poly, PolyRing, Ring, ring_of, sample_quadric_point

__all__ = [
    "UnitVector",
    "UnimodularVec",
    "SuslinMatrix",
    "NotAUnitVector",
    "q_form",
    "suslin_alpha",
    "suslin_alpha_bar",
    "J_matrix",
    "E_matrix",
    "E_inverse",
    "sigma",
    "psi",
    "tau",
    "standard_involution",
    "psi_degree_map",
    "degree_map_class",
    "degree_map_reference_form",
    "unit_basis_vector",
    "generic_unit_vector",
    "verify_suslin_suite",
    "SUITE_THRESHOLDS",
    "DEGREE_THRESHOLDS",
    "verify_degree_map_suite",
]


class NotAUnitVector(ValueError):
    pass


def q_form(a: Sequence, b: Sequence):
    """q(a, b) = sum a_i b_i."""
    if len(a) != len(b):
        raise ValueError("vectors differ in length")
    ring = ring_of([*a, *b])
    total = ring.zero
    for x, y in zip(a, b):
        total = total + ring.coerce(x) * ring.coerce(y)
    return total


@dataclass(frozen=True)
class UnitVector:
    """A pair (a, b) of length-n vectors with q(a, b) = 1."""

    a: tuple
    b: tuple
    ring: Ring = field(default=None, compare=False)

    def __post_init__(self):
        a, b = tuple(self.a), tuple(self.b)
        if len(a) != len(b) or not a:
            raise ValueError("a and b must be nonempty and of equal length")
        ring = self.ring or ring_of([*a, *b])
        a = tuple(ring.coerce(v) for v in a)
        b = tuple(ring.coerce(v) for v in b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "ring", ring)
        if q_form(a, b) != 1:
            raise NotAUnitVector(f"q(a, b) = {q_form(a, b)}, not 1")

    @property
    def n(self) -> int:
        return len(self.a)

    def as_column(self) -> Matrix:
        return Matrix([[v] for v in (*self.a, *self.b)], self.ring)


@dataclass(frozen=True)
class UnimodularVec:
    """A vector a, optionally certified unimodular by a section b (a.b = 1)."""

    a: tuple
    section: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(self.a))
        if self.section is not None:
            object.__setattr__(self, "section", tuple(self.section))
            if len(self.section) != len(self.a):
                raise ValueError("section length differs from vector length")
            if q_form(self.a, self.section) != 1:
                raise NotAUnitVector("section does not satisfy sum a_i b_i = 1")

    @property
    def n(self) -> int:
        return len(self.a)


def unit_basis_vector(n: int, ring: Ring = RATIONAL) -> UnitVector:
    """u_n = (e_n, e_n) with e_n = (1, 0, ..., 0)."""
    e = [ring.one] + [ring.zero] * (n - 1)
    return UnitVector(tuple(e), tuple(e), ring)


def generic_unit_vector(ring: Ring) -> UnitVector:
    """(x, y) over the quadric ring itself."""
    return UnitVector(tuple(ring.xs()), tuple(ring.ys()), ring)


# -- Suslin matrices ---------------------------------------------------------------


def _alpha_rows(a: tuple, b: tuple, zero, one) -> list[list]:
    n = len(a)
    if n == 1:
        return [[a[0]]]
    top = _alpha_rows(a[1:], b[1:], zero, one)
    swapped = _alpha_rows(b[1:], a[1:], zero, one)
    h = len(top)
    rows = []
    for i in range(h):
        rows.append([a[0] if j == i else zero for j in range(h)] + top[i])
    for i in range(h):
        rows.append([-swapped[j][i] for j in range(h)] + [b[0] if j == i else zero for j in range(h)])
    return rows


def _vectors(a, b, ring):
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    if not a:
        raise ValueError("vectors must be nonempty")
    ring = ring or ring_of([*a, *b])
    return tuple(ring.coerce(v) for v in a), tuple(ring.coerce(v) for v in b), ring


def suslin_alpha(a: Sequence, b: Sequence, ring: Ring | None = None) -> Matrix:
    """alpha_n(a, b), a 2^(n-1) square matrix.

    alpha_1 = (a1); alpha_n = [[a1*I, alpha_{n-1}(a', b')],
                               [-alpha_{n-1}(b', a')^t, b1*I]].
    """
    a, b, ring = _vectors(a, b, ring)
    return Matrix._raw(ring, _alpha_rows(a, b, ring.zero, ring.one))


def suslin_alpha_bar(a: Sequence, b: Sequence, ring: Ring | None = None) -> Matrix:
    """The dual matrix: [[b1*I, -alpha_{n-1}(a', b')], [alpha_{n-1}(b', a')^t, a1*I]]."""
    a, b, ring = _vectors(a, b, ring)
    if len(a) == 1:
        return Matrix._raw(ring, [[b[0]]])
    top = suslin_alpha(a[1:], b[1:], ring)
    low = suslin_alpha(b[1:], a[1:], ring).T
    h = top.rows
    return block(
        [
            [identity(h, ring).scale(b[0]), -top],
            [low, identity(h, ring).scale(a[0])],
        ]
    )


@dataclass(frozen=True)
class SuslinMatrix:
    """alpha_n(a, b) together with the vectors it was built from."""

    a: tuple
    b: tuple
    mat: Matrix

    @classmethod
    def build(cls, a, b, ring: Ring | None = None) -> "SuslinMatrix":
        a, b, ring = _vectors(a, b, ring)
        return cls(a, b, suslin_alpha(a, b, ring))

    @property
    def n(self) -> int:
        return len(self.a)

    def bar(self) -> Matrix:
        return suslin_alpha_bar(self.a, self.b, self.mat.ring)


# -- structure constants -----------------------------------------------------------


@lru_cache(maxsize=None)
def J_matrix(n: int) -> Matrix:
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return Matrix([[1]])
    j = J_matrix(n - 1)
    z = zeros(j.rows)
    if n % 2 == 0:
        return block([[z, j], [-j, z]])
    return block([[j, z], [z, -j]])


def _two_by_two(m: int, entries) -> Matrix:
    if m < 2 or m % 2:
        raise ValueError("size must be a positive even number")
    return block_sum(*[Matrix(entries)] * (m // 2))


@lru_cache(maxsize=None)
def sigma(m: int) -> Matrix:
    """sigma_m = sigma_2 ⊥ ... ⊥ sigma_2 with sigma_2 = [[0, 1], [1, 0]]."""
    return _two_by_two(m, [[0, 1], [1, 0]])


@lru_cache(maxsize=None)
def psi(m: int) -> Matrix:
    """psi_m = psi_2 ⊥ ... ⊥ psi_2 with psi_2 = [[0, 1], [-1, 0]]."""
    return _two_by_two(m, [[0, 1], [-1, 0]])


@lru_cache(maxsize=None)
def tau(m: int) -> Matrix:
    """tau_m = tau_2 ⊥ ... ⊥ tau_2 with tau_2 = [[0, 1], [0, 0]]."""
    return _two_by_two(m, [[0, 1], [0, 0]])


def _e_factors(n: int) -> list[tuple[Matrix, Matrix]]:
    """E_n as an ordered product of (factor, factor inverse) pairs, n >= 3."""
    h = 2 ** (n - 2)
    one, z = identity(h), zeros(h)

    def diag(a, b):
        return block([[a, z], [z, b]])

    def lower(t):
        return block([[one, z], [t, one]])

    def upper(t):
        return block([[one, t], [z, one]])

    r = n % 4
    if r in (0, 2):
        jt = J_matrix(n - 1).T
        first = (diag(one, jt), diag(one, J_matrix(n - 1)))
        second = (lower(tau(h)), lower(-tau(h)))
        if r == 0:
            third = (upper(-sigma(h)), upper(sigma(h)))
            fourth = (diag(one, psi(h)), diag(one, -psi(h)))  # psi^2 = -I
        else:
            third = (upper(psi(h)), upper(-psi(h)))
            fourth = (diag(one, sigma(h)), diag(one, sigma(h)))  # sigma^2 = I
        return [first, second, third, fourth]
    prev, prev_inv = E_matrix(n - 1), E_inverse(n - 1)
    tail = psi(h) if r == 1 else sigma(h)
    tail_inv = -psi(h) if r == 1 else sigma(h)
    return [(diag(prev, prev), diag(prev_inv, prev_inv)), (diag(one, tail), diag(one, tail_inv))]


@lru_cache(maxsize=None)
def E_matrix(n: int) -> Matrix:
    if n < 1:
        raise ValueError("n must be >= 1")
    if n <= 2:
        return identity(2 ** (n - 1))
    out = None
    for f, _ in _e_factors(n):
        out = f if out is None else out @ f
    return out


@lru_cache(maxsize=None)
def E_inverse(n: int) -> Matrix:
    if n <= 2:
        return identity(2 ** (n - 1))
    out = None
    for _, g in reversed(_e_factors(n)):
        out = g if out is None else out @ g
    return out


def _log2_size(m: Matrix) -> int:
    size = m.rows
    if not m.is_square or size < 1 or size & (size - 1):
        raise ValueError(f"expected a square matrix of power-of-two size, got {m.shape}")
    return size.bit_length() - 1


def standard_involution(m: Matrix) -> Matrix:
    """M* = J_{k+1} M^t J_{k+1}^t for M of size 2^k."""
    k = _log2_size(m)
    j = J_matrix(k + 1)
    return j @ m.T @ j.T


# -- degree maps -------------------------------------------------------------------


def psi_degree_map(u: UnitVector | tuple, ring: Ring | None = None, *, check: bool = True) -> Matrix:
    """Psi_n(v, w): E^-1 alpha^t E for even n, E^t alpha J E for odd n.

    ``u`` may also be a raw ``(v, w)`` pair, in which case it is validated as
    a unit vector unless ``check`` is false.
    """
    if not isinstance(u, UnitVector):
        v, w = u
        if check:
            u = UnitVector(tuple(v), tuple(w), ring)
        else:
            v, w, ring = _vectors(v, w, ring)
            return _psi_raw(v, w, ring)
    return _psi_raw(u.a, u.b, u.ring)


def _psi_raw(v, w, ring) -> Matrix:
    n = len(v)
    alpha = suslin_alpha(v, w, ring)
    e = E_matrix(n)
    if n % 2 == 0:
        return E_inverse(n) @ alpha.T @ e
    return e.T @ alpha @ J_matrix(n) @ e


def degree_map_class(n: int) -> str:
    return {0: "orthogonal", 1: "symmetric", 2: "symplectic", 3: "alternating"}[n % 4]


def degree_map_reference_form(n: int) -> Matrix | None:
    """The form the even-n degree maps preserve: E^t J^t E."""
    if n % 2:
        return None
    e = E_matrix(n)
    return e.T @ J_matrix(n).T @ e


# -- identity suite ----------------------------------------------------------------

SUITE_THRESHOLDS = {"det": 4, "product": 6, "pfaffian": 3}


def _entry(identity_name, n, mode, ok, statement, counterexample=None):
    rec = {"identity": identity_name, "n": n, "mode": mode, "statement": statement,
           "status": "pass" if ok else "fail"}
    if counterexample is not None and not ok:
        rec["counterexample"] = counterexample
    return rec


def _check_all(instances, predicate):
    """Run predicate over (label, data) pairs; return (ok, first failing label)."""
    for label, data in instances:
        if not predicate(data):
            return False, label
    return True, None


def _instances(n: int, mode: str, seeds: int):
    """(label, a, b) triples: the generic vectors, or sampled quadric points."""
    if mode == "symbolic":
        ring = PolyRing(n)
        return [("generic", tuple(ring.xs()), tuple(ring.ys()))]
    out = []
    for s in range(seeds):
        p = sample_quadric_point(n, s)
        out.append((f"seed={s}", p.xs, p.ys))
    return out


def verify_suslin_suite(n: int, mode: str = "symbolic", seeds: int = 20,
                        thresholds: dict | None = None, only: str | None = None) -> list[dict]:
    """Check the Suslin-matrix identities for one n.

    Returns a list of report records ``{identity, n, mode, status, ...}``.
    In symbolic mode the checks run over the free polynomial ring; identities
    whose size exceeds ``thresholds`` fall back to sampled quadric points
    and are reported with mode ``"sampled"``.
    """
    if n < 2:
        raise ValueError("the suite needs n >= 2")
    if mode not in ("symbolic", "sampled"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "sampled" and seeds < 1:
        raise ValueError("sampled mode needs at least one seed")
    limits = {**SUITE_THRESHOLDS, **(thresholds or {})}
    report = []

    def want(name):
        return only is None or only == name

    def mode_for(kind):
        if mode == "symbolic" and n <= limits[kind]:
            return "symbolic"
        return "sampled"

    cache = {}

    def inst(m):
        if m not in cache:
            cache[m] = _instances(n, m, seeds)
        return cache[m]

    if want("det"):
        m = mode_for("det")
        exponent = 2 ** (n - 2)

        def det_ok(ab):
            a, b = ab
            return det(suslin_alpha(a, b)) == q_form(a, b) ** exponent

        ok, bad = _check_all(((lbl, (a, b)) for lbl, a, b in inst(m)), det_ok)
        report.append(_entry("det", n, m, ok, f"det(alpha_{n}) = q^{exponent}", bad))

    if want("product"):
        m = mode_for("product")

        def prod_ok(ab):
            a, b = ab
            al, ab_ = suslin_alpha(a, b), suslin_alpha_bar(a, b)
            q = identity(al.rows).scale(q_form(a, b))
            return al @ ab_ == q and ab_ @ al == q

        ok, bad = _check_all(((lbl, (a, b)) for lbl, a, b in inst(m)), prod_ok)
        report.append(_entry("product", n, m, ok,
                             f"alpha_{n} * alphabar_{n} = alphabar_{n} * alpha_{n} = q * I", bad))

    if want("transpose"):
        m = mode_for("product")
        ok, bad = _check_all(
            ((lbl, (a, b)) for lbl, a, b in inst(m)),
            lambda ab: suslin_alpha_bar(*ab) == suslin_alpha(ab[1], ab[0]).T,
        )
        report.append(_entry("transpose", n, m, ok, f"alphabar_{n}(a,b) = alpha_{n}(b,a)^t", bad))

    if want("J"):
        j = J_matrix(n)
        sign = -1 if (n * (n - 1) // 2) % 2 else 1
        ok = (j @ j.T).is_identity() and (j.T @ j).is_identity() and (j @ j.scale(sign)).is_identity()
        report.append(_entry("J", n, "symbolic", ok,
                             f"J_{n} J_{n}^t = J_{n}^t J_{n} = I, J_{n}^-1 = {sign:+d} J_{n}"))

    if want("E"):
        ok = (E_matrix(n) @ E_inverse(n)).is_identity() and (E_inverse(n) @ E_matrix(n)).is_identity()
        report.append(_entry("E", n, "symbolic", ok, f"E_{n} E_{n}^-1 = I"))

    if want("EJE") and n % 2 == 0:
        h = 2 ** (n - 1)
        target = sigma(h) if n % 4 == 0 else -psi(h)
        ok = degree_map_reference_form(n) == target
        name = f"sigma_{h}" if n % 4 == 0 else f"-psi_{h}"
        report.append(_entry("EJE", n, "symbolic", ok, f"E_{n}^t J_{n}^t E_{n} = {name}"))

    return report


DEGREE_THRESHOLDS = {"degree": 4, "pfaffian": 3, "det": 4}


def _degree_instances(n: int, mode: str, seeds: int):
    if mode == "symbolic":
        from .ring import Quadric

        return [("generic", generic_unit_vector(Quadric(n)))]
    return [(f"seed={s}", UnitVector(p.xs, p.ys)) for s in range(seeds)
            for p in [sample_quadric_point(n, s)]]


def verify_degree_map_suite(n: int, mode: str = "symbolic", seeds: int = 20,
                            thresholds: dict | None = None, only: str | None = None) -> list[dict]:
    """Class membership and normalisation of the degree map Psi_n.

    Symbolic checks run over the quadric ring S_{2n-1} with the generic unit
    vector (x, y); larger n fall back to sampled quadric points.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    limits = {**DEGREE_THRESHOLDS, **(thresholds or {})}
    report = []
    h = 2 ** (n - 1)
    cls = degree_map_class(n)

    def want(name):
        return only is None or only == name

    def mode_for(kind):
        return "symbolic" if mode == "symbolic" and n <= limits[kind] else "sampled"

    cache = {}

    def psis(m):
        if m not in cache:
            cache[m] = [(lbl, psi_degree_map(u)) for lbl, u in _degree_instances(n, m, seeds)]
        return cache[m]

    if want("psi-class"):
        m = mode_for("degree")
        if cls == "orthogonal":
            form, statement = sigma(h), f"Psi_{n}^t sigma_{h} Psi_{n} = sigma_{h}"
        elif cls == "symplectic":
            form, statement = psi(h), f"Psi_{n}^t psi_{h} Psi_{n} = psi_{h}"
        else:
            form, statement = None, f"Psi_{n} is {cls}"
        ok, bad = _check_all(psis(m), lambda p: classify_form(p, cls, form))
        report.append(_entry("psi-class", n, m, ok, statement, bad))

    if want("pfaffian-one") and n % 4 == 3:
        m = mode_for("pfaffian")
        ok, bad = _check_all(psis(m), lambda p: pfaffian(p) == 1)
        report.append(_entry("pfaffian-one", n, m, ok, f"Pf(Psi_{n}) = 1", bad))

    if want("det-one") and n % 4 == 1 and n > 1:
        m = mode_for("det")
        ok, bad = _check_all(psis(m), lambda p: det(p) == 1)
        report.append(_entry("det-one", n, m, ok, f"det(Psi_{n}) = 1", bad))

    if want("psi-unit") and n % 2 == 1 and n > 1:
        target = sigma(h) if n % 4 == 1 else psi(h)
        ok = psi_degree_map(unit_basis_vector(n)) == target
        name = f"sigma_{h}" if n % 4 == 1 else f"psi_{h}"
        report.append(_entry("psi-unit", n, "symbolic", ok, f"Psi_{n}(e_{n}, e_{n}) = {name}"))

    return report
