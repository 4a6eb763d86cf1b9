import random
import sys
from fractions import Fraction

from hypothesis import settings, strategies as st

from suslin.matrix import Matrix
from suslin.ring import Poly

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def rationals(bound=6):
    return st.builds(Fraction, st.integers(-bound, bound), st.integers(1, bound))


def polys(ring, max_terms=4, max_exp=3):
    """Small random polynomials; built unreduced so quadric rings normalize them."""
    exps = st.tuples(*[st.integers(0, max_exp)] * ring.nvars)
    return st.dictionaries(exps, rationals(), max_size=max_terms).map(
        lambda d: Poly(ring, d, reduced=False)
    )


def int_matrix(rng: random.Random, size: int, bound: int = 5) -> Matrix:
    return Matrix([[rng.randint(-bound, bound) for _ in range(size)] for _ in range(size)])


def alternating_int_matrix(rng: random.Random, size: int, bound: int = 5) -> Matrix:
    rows = [[0] * size for _ in range(size)]
    for i in range(size):
        for j in range(i + 1, size):
            v = rng.randint(-bound, bound)
            rows[i][j], rows[j][i] = v, -v
    return Matrix(rows)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
