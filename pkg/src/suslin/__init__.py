"""Exact Suslin matrices, Clifford/Spin machinery and witness checkers."""

from .ring import (
    RATIONAL,
    EvalPoint,
    Poly,
    PolyRing,
    Quadric,
    Ring,
    RingMismatch,
    eval_at,
    normal_form,
    ring_arith,
    sample_quadric_point,
)
from .matrix import (
    Matrix,
    block,
    block_sum,
    classify_form,
    det,
    identity,
    pfaffian,
)

__version__ = "0.1.0"
