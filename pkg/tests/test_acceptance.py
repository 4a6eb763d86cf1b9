"""Acceptance gate: one check per criterion, exact arithmetic, stated time budgets.

Run with pytest (a summary line per criterion is printed at the end) or
directly: ``python tests/test_acceptance.py``.
"""

import random
import subprocess
import sys
import time
from contextlib import contextmanager

import pytest

from suslin import jsonio
from suslin.core import (
    E_matrix,
    J_matrix,
    UnitVector,
    generic_unit_vector,
    psi,
    psi_degree_map,
    q_form,
    sigma,
    standard_involution,
    suslin_alpha,
    suslin_alpha_bar,
    unit_basis_vector,
)
from suslin.matrix import Matrix, block_sum, classify_form, det, elementary, gram_form, identity, pfaffian
from suslin.ring import PolyRing, Quadric, sample_quadric_point
from suslin.spin import (
    NotStable,
    check_translation_law,
    hyperbolic_embed,
    phi_embed,
    so_act,
    spin6_from_sl4,
    spin_act,
    spin_certify,
    translation_matrix,
)
from suslin.witness import (
    ElementaryWitness,
    WitnessError,
    elementary_sl,
    factorization_check,
    power_row_section,
    random_congruence_instance,
    random_factorization_instance,
    verify_congruence_witness,
)

RESULTS = []
SEEDS = 20


@contextmanager
def criterion(number, title, budget):
    start = time.perf_counter()
    try:
        yield
    except BaseException as exc:
        text = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        RESULTS.append((number, title, False, time.perf_counter() - start, text))
        raise
    elapsed = time.perf_counter() - start
    ok = elapsed <= budget
    RESULTS.append((number, title, ok, elapsed, "" if ok else f"over budget ({budget:.0f}s)"))
    if not ok:
        pytest.fail(f"criterion {number} took {elapsed:.1f}s, budget {budget:.0f}s")


def sample_units(n, count=SEEDS):
    for s in range(count):
        p = sample_quadric_point(n, s)
        yield s, UnitVector(p.xs, p.ys)


def generic(n):
    r = PolyRing(n)
    return r.xs(), r.ys()


def bump(m, i, j):
    rows = m.tolist()
    rows[i][j] = rows[i][j] + 1
    return Matrix(rows, m.ring)


def rejected(check):
    try:
        return check() is False
    except WitnessError:
        return True


# ----------------------------------------------------------------------------------


def test_01_determinant_identity():
    with criterion(1, "det alpha_n = q^(2^(n-2))", 120):
        for n in (2, 3, 4):
            a, b = generic(n)
            assert det(suslin_alpha(a, b)) == q_form(a, b) ** (2 ** (n - 2)), f"symbolic n={n}"
        for n in (5, 6, 7):
            for s, u in sample_units(n):
                assert det(suslin_alpha(u.a, u.b)) == 1, f"n={n} seed={s}"
            # off the quadric the power is visible
            rng = random.Random(n)
            a = [rng.randint(-3, 3) for _ in range(n)]
            b = [rng.randint(-3, 3) for _ in range(n)]
            assert det(suslin_alpha(a, b)) == q_form(a, b) ** (2 ** (n - 2)), f"integer n={n}"


def test_02_product_identity():
    with criterion(2, "alpha * alphabar = alphabar * alpha = q I", 60):
        for n in range(1, 7):
            a, b = generic(n)
            al, ab = suslin_alpha(a, b), suslin_alpha_bar(a, b)
            qi = identity(al.rows).scale(q_form(a, b))
            assert al @ ab == qi, f"n={n} alpha*alphabar"
            assert ab @ al == qi, f"n={n} alphabar*alpha"


def test_03_transpose_duality():
    with criterion(3, "alpha(b,a)^t = alphabar(a,b)", 30):
        for n in range(1, 7):
            a, b = generic(n)
            assert suslin_alpha(b, a).T == suslin_alpha_bar(a, b), f"n={n}"


def test_04_J_laws():
    with criterion(4, "J J^t = J^t J = I, J^-1 = (-1)^(n(n-1)/2) J", 5):
        for n in range(1, 9):
            j = J_matrix(n)
            assert (j @ j.T).is_identity() and (j.T @ j).is_identity(), f"n={n}"
            assert j @ j.scale((-1) ** (n * (n - 1) // 2)) == identity(j.rows), f"n={n} inverse"


def test_05_degree_map_classes():
    with criterion(5, "degree-map classes and base values", 300):
        m3 = psi_degree_map(generic_unit_vector(Quadric(3)))
        assert classify_form(m3, "alternating") and pfaffian(m3) == 1, "Psi_3 over S_5"
        m4 = psi_degree_map(generic_unit_vector(Quadric(4)))
        assert classify_form(m4, "orthogonal", sigma(8)), "Psi_4 over S_7"
        assert E_matrix(4).T @ J_matrix(4).T @ E_matrix(4) == sigma(8), "E_4^t J_4^t E_4"
        for s, u in sample_units(5):
            m = psi_degree_map(u)
            assert classify_form(m, "symmetric") and det(m) == 1, f"Psi_5 seed={s}"
        for s, u in sample_units(6):
            assert classify_form(psi_degree_map(u), "symplectic", psi(32)), f"Psi_6 seed={s}"
        for s, u in sample_units(7):
            m = psi_degree_map(u)
            assert classify_form(m, "alternating") and pfaffian(m) == 1, f"Psi_7 seed={s}"
        assert psi_degree_map(unit_basis_vector(3)) == psi(4)
        assert psi_degree_map(unit_basis_vector(5)) == sigma(16)


def test_06_clifford_and_involution():
    with criterion(6, "phi(v)^2 = q I; (MN)* = N*M*; phi(v)* = phi(v)", 60):
        for n in range(1, 6):
            a, b = generic(n)
            p = phi_embed(a, b)
            assert p @ p == identity(p.rows).scale(q_form(a, b)), f"Clifford n={n}"
        for seed in range(50):
            rng = random.Random(seed)
            size = 2 ** rng.randint(1, 4)
            m = Matrix([[rng.randint(-4, 4) for _ in range(size)] for _ in range(size)])
            k = Matrix([[rng.randint(-4, 4) for _ in range(size)] for _ in range(size)])
            assert standard_involution(m @ k) == standard_involution(k) @ standard_involution(m), f"seed={seed}"
            assert standard_involution(standard_involution(m)) == m, f"seed={seed}"
        for seed in range(50):
            rng = random.Random(seed)
            n = rng.randint(1, 4)
            a = [rng.randint(-5, 5) for _ in range(n)]
            b = [rng.randint(-5, 5) for _ in range(n)]
            p = phi_embed(a, b)
            negated = standard_involution(p) == -p and not p.is_zero()
            assert standard_involution(p) == p, (
                f"phi(v)* != phi(v) at n={n}, a={a}, b={b}"
                + (" (phi(v)* = -phi(v) holds)" if negated else "")
            )
        for n in range(1, 5):
            a, b = generic(n)
            p = phi_embed(a, b)
            assert standard_involution(p) == p, f"symbolic n={n}"


def test_07_spin6_dictionary():
    with criterion(7, "Spin_6 = SL_4 dictionary and translation law", 120):
        twist = block_sum(Matrix([[-1]]), identity(3))
        for seed in range(100):
            rng = random.Random(seed)
            h = elementary_sl(rng, 4, 6)
            g = spin_certify(spin6_from_sl4(h))
            so = g.so_matrix
            assert so.T @ gram_form(3) @ so == gram_form(3) and det(so) == 1, f"seed={seed}"
            try:
                spin_certify(spin6_from_sl4(h @ twist))
            except NotStable:
                pass
            else:
                raise AssertionError(f"det -1 twist certified at seed={seed}")
            p = sample_quadric_point(3, seed)
            u = UnitVector(p.xs, p.ys)
            v = spin_act(g, u)
            assert q_form(v.a, v.b) == 1 and v == so_act(so, u), f"action seed={seed}"
            gp = translation_matrix(h)
            assert psi_degree_map(v) == gp @ psi_degree_map(u) @ gp.T, f"translation seed={seed}"
            assert check_translation_law(g, u)


def test_08_hyperbolic_embedding():
    with criterion(8, "H(e_ij(lam)) in SO_2n symbolically", 10):
        lam = PolyRing(1).xs()[0]
        for n in (3, 4):
            for i in range(n):
                for j in range(n):
                    if i != j:
                        h = hyperbolic_embed(elementary(n, i, j, lam)).mat
                        assert h.T @ gram_form(n) @ h == gram_form(n), f"n={n} ({i},{j})"
                        assert det(h) == 1, f"det n={n} ({i},{j})"


def test_09_power_row_sections():
    with criterion(9, "sections of (x1^m, x2, x3, x4) over S_7", 60):
        ring = Quadric(4)
        for m in range(1, 13):
            v = power_row_section(4, m)
            assert v.a == (ring.gen("x1") ** m, ring.gen("x2"), ring.gen("x3"), ring.gen("x4")), f"m={m}"
            assert sum((a * b for a, b in zip(v.a, v.section)), ring.zero) == 1, f"m={m}"


def test_10_witness_verifiers():
    with criterion(10, "witness checkers: accept self-generated, reject perturbations", 60):
        for flavor in ("W_E", "W_SL", "S_sim"):
            for seed in range(100):
                rng = random.Random(seed)
                M, N, i, E = random_congruence_instance(rng, flavor)
                assert verify_congruence_witness(M, N, i, E, flavor), f"{flavor} seed={seed}"
                for which, X in (("M", M), ("N", N)):
                    for r in range(X.rows):
                        for c in range(X.cols):
                            args = [bump(X, r, c), N] if which == "M" else [M, bump(X, r, c)]
                            assert rejected(lambda: verify_congruence_witness(*args, i, E, flavor)), (
                                f"{flavor} seed={seed} {which}[{r},{c}]+1 accepted"
                            )
        for seed in range(100):
            rng = random.Random(seed)
            inst = random_factorization_instance(rng, seed)
            args = [inst["phi"], inst["lam"], inst["eps"], inst["s"], inst["target"]]
            assert factorization_check(*args), f"factorization seed={seed}"
            slot = rng.choice(["phi", "s"] + [k for k in range(len(inst["eps"]))])
            if slot == "phi":
                m = inst["phi"]
            elif slot == "s":
                m = inst["s"].g
            else:
                m = inst["eps"][slot].g
            r, c = rng.randrange(m.rows), rng.randrange(m.cols)
            bad = list(args)
            if slot == "phi":
                bad[0] = bump(m, r, c)
            elif slot == "s":
                bad[3] = bump(m, r, c)
            else:
                bad[2] = [bump(m, r, c) if k == slot else e for k, e in enumerate(inst["eps"])]
            assert rejected(lambda: factorization_check(*bad)), f"seed={seed} {slot}[{r},{c}]+1 accepted"


def test_11_determinism(tmp_path):
    with criterion(11, "byte-identical JSON across runs", 600):
        inst = random_factorization_instance(random.Random(0), 0)
        wfile = tmp_path / "w.json"
        M, N, i, E = random_congruence_instance(random.Random(0), "W_E")
        wfile.write_text(jsonio.dumps([
            jsonio.congruence_witness_to_json(M, N, i, E, "W_E"),
            jsonio.factorization_to_json(*(inst[k] for k in ("phi", "lam", "eps", "s", "target"))),
        ]))
        commands = [
            ["verify", "--n", "1..7", "--mode", "symbolic", "--seeds", str(SEEDS)],
            ["orbit-witness", "verify", str(wfile)],
        ]
        for cmd in commands:
            outs = [
                subprocess.run([sys.executable, "-m", "suslin.cli", *cmd], capture_output=True, check=False).stdout
                for _ in range(2)
            ]
            assert outs[0] and outs[0] == outs[1], f"{cmd[0]} output differs between runs"


def summary_lines():
    lines = []
    for number, title, ok, elapsed, detail in sorted(RESULTS):
        line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {title}  ({elapsed:.1f}s)"
        if detail:
            line += f"  -- {detail}"
        lines.append(line)
    return lines


if __name__ == "__main__":
    import tempfile
    from pathlib import Path

    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                if "tmp_path" in fn.__code__.co_varnames[: fn.__code__.co_argcount]:
                    with tempfile.TemporaryDirectory() as d:
                        fn(Path(d))
                else:
                    fn()
            except BaseException:
                pass
    print("\n".join(summary_lines()))
    sys.exit(0 if all(r[2] for r in RESULTS) else 1)
