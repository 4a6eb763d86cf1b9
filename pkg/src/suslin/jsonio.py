"""JSON encodings.

* ring element: list of ``{"coeff": "p/q", "exps": [e_x1, e_y1, ...]}``
  terms, leading monomial first; rationals use ``"exps": []``.
* matrix: ``{"rows", "cols", "ctx": {"kind", "n"}, "entries"}``.
* Spin element: ``{"n", "g", "so_matrix", "certificate"}``.
* witness file: ``{"flavor", "M", "N", "i", "factors" | "matrix", "expected"}``;
  factors are ``[i, j, lam]`` triples (0-based).  Flavor "factorization"
  carries ``phi``, ``lam``, ``eps``, ``s`` and ``target`` instead.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .core import UnitVector
from .matrix import Matrix
from .ring import RATIONAL, Poly, Ring
from .spin import SpinElem
from .witness import ElementaryWitness

__all__ = [
    "elem_to_json",
    "elem_from_json",
    "matrix_to_json",
    "matrix_from_json",
    "ring_to_json",
    "ring_from_json",
    "spin_to_json",
    "unit_vector_to_json",
    "unit_vector_from_json",
    "congruence_witness_to_json",
    "factorization_to_json",
    "dumps",
]


def _coeff_str(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def ring_to_json(ring: Ring) -> dict:
    return {"kind": ring.kind, "n": ring.n}


def ring_from_json(d: dict) -> Ring:
    return Ring(d["kind"], int(d.get("n", 0)))


def elem_to_json(v) -> list:
    if isinstance(v, Poly):
        return [{"coeff": _coeff_str(c), "exps": list(e)} for e, c in v.sorted_terms()]
    return [{"coeff": _coeff_str(v), "exps": []}] if v else []


def elem_from_json(terms, ring: Ring):
    if isinstance(terms, (int, str)):
        return ring.coerce(Fraction(terms))
    if ring.is_rational:
        total = Fraction(0)
        for t in terms:
            if t.get("exps"):
                raise ValueError("rational entries cannot carry exponents")
            total += Fraction(t["coeff"])
        return total.numerator if total.denominator == 1 else total
    raw: dict = {}
    for t in terms:
        exps = tuple(int(k) for k in t["exps"])
        if len(exps) != ring.nvars:
            raise ValueError(f"term has {len(exps)} exponents, ring has {ring.nvars} variables")
        raw[exps] = raw.get(exps, 0) + Fraction(t["coeff"])
    return Poly(ring, raw, reduced=False)


def matrix_to_json(m: Matrix) -> dict:
    return {
        "rows": m.rows,
        "cols": m.cols,
        "ctx": ring_to_json(m.ring),
        "entries": [[elem_to_json(v) for v in r] for r in m.tolist()],
    }


def matrix_from_json(d: dict) -> Matrix:
    ring = ring_from_json(d["ctx"]) if "ctx" in d else RATIONAL
    rows = [[elem_from_json(v, ring) for v in r] for r in d["entries"]]
    m = Matrix(rows, ring)
    if "rows" in d and (m.rows, m.cols) != (d["rows"], d["cols"]):
        raise ValueError("declared shape does not match entries")
    return m


def unit_vector_to_json(u: UnitVector) -> dict:
    return {
        "ctx": ring_to_json(u.ring),
        "a": [elem_to_json(v) for v in u.a],
        "b": [elem_to_json(v) for v in u.b],
    }


def unit_vector_from_json(d: dict) -> UnitVector:
    ring = ring_from_json(d["ctx"]) if "ctx" in d else RATIONAL
    return UnitVector(
        tuple(elem_from_json(v, ring) for v in d["a"]),
        tuple(elem_from_json(v, ring) for v in d["b"]),
        ring,
    )


def spin_to_json(s: SpinElem) -> dict:
    return {
        "n": s.n,
        "g": matrix_to_json(s.g),
        "so_matrix": matrix_to_json(s.so_matrix),
        "certificate": {
            "unitary": s.certificate["unitary"],
            "basis_images": [[elem_to_json(v) for v in col] for col in s.certificate["basis_images"]],
        },
    }


def congruence_witness_to_json(M: Matrix, N: Matrix, i: int, E, flavor: str, expected: bool = True) -> dict:
    out = {"flavor": flavor, "M": matrix_to_json(M), "N": matrix_to_json(N), "i": i, "expected": expected}
    if isinstance(E, ElementaryWitness):
        out["size"] = E.size
        out["factors"] = [[a, b, elem_to_json(lam)] for a, b, lam in E.factors]
    else:
        out["matrix"] = matrix_to_json(E)
    return out


def _spin_matrix(x) -> dict:
    return matrix_to_json(x.g if isinstance(x, SpinElem) else x)


def factorization_to_json(phi, lam: Matrix, eps, s, target: UnitVector, expected: bool = True) -> dict:
    return {
        "flavor": "factorization",
        "phi": _spin_matrix(phi),
        "lam": matrix_to_json(lam),
        "eps": [_spin_matrix(e) for e in eps],
        "s": _spin_matrix(s),
        "target": unit_vector_to_json(target),
        "expected": expected,
    }


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
