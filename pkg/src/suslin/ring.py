"""Exact coefficient rings.

Three kinds of ring are supported:

* ``RATIONAL``: elements are plain ``int`` / ``fractions.Fraction`` values.
* ``PolyRing(n)``: the free polynomial ring Q[x1, y1, ..., xn, yn].
* ``Quadric(n)``: Q[x1, y1, ..., xn, yn] / (x1*y1 + ... + xn*yn - 1).

Polynomial elements are :class:`Poly` instances. Exponent tuples are stored
interleaved, ``(e_x1, e_y1, e_x2, e_y2, ...)``, so that Python's tuple
ordering *is* the lexicographic monomial order x1 > y1 > x2 > y2 > ...
Under that order the leading monomial of the quadric relation is x1*y1, and
reduction modulo the relation amounts to substituting
x1*y1 -> 1 - (x2*y2 + ... + xn*yn).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Mapping, Sequence

__all__ = [
    "Ring",
    "RATIONAL",
    "PolyRing",
    "Quadric",
    "Poly",
    "RingMismatch",
    "EvalPoint",
    "normal_form",
    "ring_arith",
    "eval_at",
    "sample_quadric_point",
    "ring_of",
    "to_fraction",
]


class RingMismatch(ValueError):
    """Raised when elements of two incompatible rings are combined."""


@dataclass(frozen=True)
class Ring:
    kind: str  # "rational" | "poly" | "quadric"
    n: int = 0

    def __post_init__(self):
        if self.kind not in ("rational", "poly", "quadric"):
            raise ValueError(f"unknown ring kind {self.kind!r}")
        if self.kind == "rational" and self.n != 0:
            raise ValueError("the rational ring has no variables")
        if self.kind != "rational" and self.n < 1:
            raise ValueError("polynomial rings need n >= 1 variable pairs")

    @property
    def nvars(self) -> int:
        return 2 * self.n

    @property
    def is_rational(self) -> bool:
        return self.kind == "rational"

    @property
    def zero(self):
        return 0 if self.is_rational else Poly(self, {})

    @property
    def one(self):
        return 1 if self.is_rational else Poly(self, {(0,) * self.nvars: 1})

    def __str__(self):
        if self.kind == "rational":
            return "QQ"
        if self.kind == "poly":
            return f"QQ[x1..x{self.n},y1..y{self.n}]"
        return f"S_{2 * self.n - 1}"

    def coerce(self, value):
        """Bring ``value`` into this ring (rationals embed everywhere)."""
        if isinstance(value, Poly):
            if value.ring == self:
                return value
            if self.is_rational:
                if value.is_constant():
                    return value.constant_coeff()
                raise RingMismatch(f"cannot coerce {value!r} into {self}")
            if value.ring.n == self.n and value.ring.kind == "poly" and self.kind == "quadric":
                return normal_form(value, self)
            raise RingMismatch(f"cannot coerce element of {value.ring} into {self}")
        if isinstance(value, bool) or not isinstance(value, Rational):
            raise TypeError(f"not an exact rational: {value!r}")
        if self.is_rational:
            return value
        return Poly(self, {(0,) * self.nvars: value} if value else {})

    def gen(self, name: str) -> "Poly":
        """Generator by name, e.g. ``ring.gen("y2")``."""
        var, idx = name[0], int(name[1:])
        if var not in "xy" or not 1 <= idx <= self.n:
            raise ValueError(f"no generator {name!r} in {self}")
        exps = [0] * self.nvars
        exps[2 * (idx - 1) + (var == "y")] = 1
        return Poly(self, {tuple(exps): 1})

    def xs(self) -> list["Poly"]:
        return [self.gen(f"x{i}") for i in range(1, self.n + 1)]

    def ys(self) -> list["Poly"]:
        return [self.gen(f"y{i}") for i in range(1, self.n + 1)]

    def var_names(self) -> list[str]:
        return [f"{v}{i}" for i in range(1, self.n + 1) for v in "xy"]


RATIONAL = Ring("rational")


def PolyRing(n: int) -> Ring:
    return Ring("poly", n)


def Quadric(n: int) -> Ring:
    return Ring("quadric", n)


def _clean(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


@lru_cache(maxsize=None)
def _relation_power(n: int, k: int) -> tuple:
    """Terms of (1 - x2*y2 - ... - xn*yn)**k as ((exps, coeff), ...)."""
    nv = 2 * n
    terms = {(0,) * nv: 1}
    step = {(0,) * nv: 1}
    for i in range(1, n):
        e = [0] * nv
        e[2 * i] = e[2 * i + 1] = 1
        step[tuple(e)] = -1
    for _ in range(k):
        terms = _mul_raw(terms, step)
    return tuple(terms.items())


def _mul_raw(p: Mapping, q: Mapping) -> dict:
    out: dict = {}
    for ea, ca in p.items():
        for eb, cb in q.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            c = out.get(e, 0) + ca * cb
            if c:
                out[e] = c
            else:
                out.pop(e, None)
    return out


def _reduce_quadric(terms: Mapping, n: int) -> dict:
    """Normal form modulo x1*y1 + ... + xn*yn - 1."""
    out: dict = {}
    for e, c in terms.items():
        k = min(e[0], e[1])
        if k == 0:
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
            continue
        base = (e[0] - k, e[1] - k) + e[2:]
        for f, d in _relation_power(n, k):
            g = tuple(x + y for x, y in zip(base, f))
            v = out.get(g, 0) + c * d
            if v:
                out[g] = v
            else:
                out.pop(g, None)
    return out


class Poly:
    """Immutable polynomial in canonical form over a :class:`Ring`.

    Instances always hold reduced terms: zero coefficients are dropped and,
    in a quadric ring, no monomial is divisible by x1*y1.  Equality of term
    dictionaries is therefore equality in the ring.
    """

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping, *, reduced: bool = True):
        if ring.is_rational:
            raise ValueError("rational elements are plain numbers, not Poly")
        if not reduced:
            terms = {tuple(e): c for e, c in terms.items() if c}
            if ring.kind == "quadric":
                terms = _reduce_quadric(terms, ring.n)
        self.ring = ring
        self.terms = {e: _clean(c) for e, c in terms.items()}
        self._hash = None

    # -- construction helpers -------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            return other
        return self.ring.coerce(other)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_coeff(self):
        return self.terms.get((0,) * self.ring.nvars, 0)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    # -- arithmetic -------------------------------------------------------------
    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Rational) and not isinstance(other, bool):
            if not other:
                return Poly(self.ring, {})
            return Poly(self.ring, {e: c * other for e, c in self.terms.items()})
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        raw = _mul_raw(self.terms, other.terms)
        if self.ring.kind == "quadric":
            raw = _reduce_quadric(raw, self.ring.n)
        return Poly(self.ring, raw)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Rational) and other:
            return self * (Fraction(1) / other)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not supported")
        result, base = self.ring.one, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison -------------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, Rational):
            return self.is_constant() and self.constant_coeff() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- display ----------------------------------------------------------------
    def sorted_terms(self) -> list:
        """Terms in decreasing monomial order (leading term first)."""
        return sorted(self.terms.items(), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.ring.var_names()
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"Poly({self})"


def ring_of(values: Iterable) -> Ring:
    """The common ring of a collection of elements (rational if no Poly)."""
    ring = RATIONAL
    for v in values:
        if isinstance(v, Poly):
            if ring.is_rational:
                ring = v.ring
            elif v.ring != ring:
                raise RingMismatch(f"{ring} vs {v.ring}")
    return ring


def to_fraction(value) -> Fraction:
    if isinstance(value, Poly):
        if not value.is_constant():
            raise ValueError(f"{value} is not a constant")
        value = value.constant_coeff()
    return Fraction(value)


def normal_form(p, ring: Ring):
    """Canonical representative of ``p`` in ``ring``.

    ``p`` may be a :class:`Poly` over the free ring with the same number of
    variable pairs, a raw ``{exps: coeff}`` mapping, or a rational.
    """
    if isinstance(p, Poly):
        if p.ring.n != ring.n and not ring.is_rational:
            raise RingMismatch(f"{p.ring} vs {ring}")
        terms = p.terms
    elif isinstance(p, Mapping):
        terms = p
    else:
        return ring.coerce(p)
    return Poly(ring, terms, reduced=False)


def ring_arith(op: str, a, b=None):
    """``op`` in {"add", "mul", "neg"}; ``b`` is ignored for "neg"."""
    if op == "neg":
        return -a
    ra, rb = ring_of([a]), ring_of([b])
    if ra != rb:
        raise RingMismatch(f"{ra} vs {rb}")
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


@dataclass(frozen=True)
class EvalPoint:
    """A rational point (x1..xn, y1..yn) on the quadric sum(xi*yi) = 1."""

    xs: tuple
    ys: tuple

    def __post_init__(self):
        if len(self.xs) != len(self.ys):
            raise ValueError("x and y coordinates differ in length")
        if sum((Fraction(x) * y for x, y in zip(self.xs, self.ys)), Fraction(0)) != 1:
            raise ValueError("point does not lie on the quadric")

    @property
    def n(self) -> int:
        return len(self.xs)

    def interleaved(self) -> tuple:
        return tuple(v for pair in zip(self.xs, self.ys) for v in pair)


def eval_at(e, point: EvalPoint | Sequence) -> Fraction:
    """Evaluate ``e`` at a point.

    ``point`` is an :class:`EvalPoint` or a raw sequence of 2n values in
    interleaved order (x1, y1, x2, y2, ...).  Raw sequences are allowed so
    free polynomials can be evaluated off the quadric.
    """
    if not isinstance(e, Poly):
        return Fraction(e)
    vals = point.interleaved() if isinstance(point, EvalPoint) else tuple(point)
    if len(vals) != e.ring.nvars:
        raise ValueError(f"expected {e.ring.nvars} coordinates, got {len(vals)}")
    if e.ring.kind == "quadric" and not isinstance(point, EvalPoint):
        point = EvalPoint(vals[0::2], vals[1::2])  # validates the relation
    vals = [Fraction(v) for v in vals]
    total = Fraction(0)
    for exps, c in e.terms.items():
        t = Fraction(c)
        for v, k in zip(vals, exps):
            if k:
                t *= v**k
        total += t
    return total


def _random_rational(rng: random.Random, bound: int = 10, nonzero: bool = False) -> Fraction:
    while True:
        num = rng.randint(-bound, bound)
        den = rng.randint(1, bound)
        if num or not nonzero:
            return Fraction(num, den)


def sample_quadric_point(n: int, seed: int, bound: int = 10) -> EvalPoint:
    """Seeded rational point on the quadric; y1 is solved for."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = random.Random(seed)
    xs = [_random_rational(rng, bound, nonzero=True) for _ in range(n)]
    ys = [None] + [_random_rational(rng, bound) for _ in range(n - 1)]
    ys[0] = (1 - sum((x * y for x, y in zip(xs[1:], ys[1:])), Fraction(0))) / xs[0]
    return EvalPoint(tuple(xs), tuple(ys))
