import random
from fractions import Fraction

import pytest

from suslin.core import (
    UnimodularVec,
    UnitVector,
    generic_unit_vector,
    psi,
    psi_degree_map,
    q_form,
    sigma,
    unit_basis_vector,
)
from suslin.matrix import Matrix, ShapeError, block_sum, det, elementary, identity, pfaffian
from suslin.ring import Quadric, eval_at, sample_quadric_point
from suslin.spin import spin6_from_sl4, spin_act, spin_certify, translation_matrix
from suslin.witness import (
    AltClassRep,
    ElementaryWitness,
    FlavorMismatch,
    InvalidFactor,
    OrbitWitness,
    PfaffianNotOne,
    ProductMismatch,
    StabilizerFails,
    WitnessError,
    alt4_to_unit_vector,
    elementary_sl,
    factorization_check,
    power_row_section,
    random_congruence_instance,
    random_elementary_witness,
    random_factorization_instance,
    spin6_stabilizer,
    stabilizer_transvection,
    unit_vector_of,
    unit_vector_to_alt4,
    verify_congruence_witness,
)


def bump(m: Matrix, i: int, j: int) -> Matrix:
    rows = m.tolist()
    rows[i][j] = rows[i][j] + 1
    return Matrix(rows, m.ring)


def rejected(check) -> bool:
    try:
        return check() is False
    except WitnessError:
        return True


# -- congruence witnesses ------------------------------------------------------------


def test_trivial_witness():
    assert verify_congruence_witness(psi(4), psi(4), 1, ElementaryWitness(10))


def test_witness_in_disguise():
    w = ElementaryWitness(10, ((0, 1, 2), (3, 2, -1)))
    assert verify_congruence_witness(psi(4), psi(4), 1, w.then(w.inverse()))


def test_elementary_witness_matrix():
    w = ElementaryWitness(3, ((0, 1, 2), (1, 2, 5)))
    e01 = Matrix([[1, 2, 0], [0, 1, 0], [0, 0, 1]])
    e12 = Matrix([[1, 0, 0], [0, 1, 5], [0, 0, 1]])
    assert w.matrix() == e01 @ e12
    assert (w.matrix() @ w.inverse().matrix()).is_identity()
    with pytest.raises(ValueError):
        ElementaryWitness(3, ((1, 1, 2),))


def oracle(M, N, i, E, flavor):
    """Direct congruence check from explicit elementary products."""
    if isinstance(E, ElementaryWitness):
        e = identity(E.size)
        for a, b, lam in E.factors:
            e = e @ elementary(E.size, a, b, lam)
    else:
        if det(E) != 1:
            return False
        e = E
    pad = sigma if flavor == "S_sim" else psi
    return block_sum(M, pad(N.rows + 2 * i)) == e.T @ block_sum(N, pad(M.rows + 2 * i)) @ e


@pytest.mark.parametrize("flavor", ["W_E", "W_SL", "S_sim"])
@pytest.mark.parametrize("seed", range(100))
def test_self_generated_congruences(flavor, seed):
    rng = random.Random(seed)
    M, N, i, E = random_congruence_instance(rng, flavor)
    assert verify_congruence_witness(M, N, i, E, flavor)
    # perturbing the data always breaks the congruence
    r, c = rng.randrange(M.rows), rng.randrange(M.cols)
    assert rejected(lambda: verify_congruence_witness(bump(M, r, c), N, i, E, flavor))
    # a perturbed witness may land on another valid witness; defer to the oracle
    if isinstance(E, Matrix):
        r, c = rng.randrange(E.rows), rng.randrange(E.cols)
        E2 = bump(E, r, c)
    else:
        k = rng.randrange(len(E.factors))
        facs = list(E.factors)
        a, b, lam = facs[k]
        facs[k] = (a, b, lam + 1)
        E2 = ElementaryWitness(E.size, tuple(facs))
    assert verify_congruence_witness(M, N, i, E2, flavor) == oracle(M, N, i, E2, flavor)


def test_perturbed_witness_can_stay_valid():
    # I + e_{98} is in SL_2 = Sp_2 on the last psi_2 pad block
    M, N, i, E = random_congruence_instance(random.Random(31), "W_SL")
    assert verify_congruence_witness(M, N, i, bump(E, 9, 8), "W_SL")


@pytest.mark.parametrize("seed", range(30))
def test_cancelling_pairs_do_not_matter(seed):
    rng = random.Random(seed)
    M, N, i, E = random_congruence_instance(rng, "W_E")
    pos = rng.randrange(len(E.factors) + 1)
    a, b = rng.sample(range(E.size), 2)
    padded = E.with_cancelling_pair(pos, a, b, rng.randint(1, 9))
    assert verify_congruence_witness(M, N, i, padded) == verify_congruence_witness(M, N, i, E)
    wrong = ElementaryWitness(E.size, ((0, 1, 1),))
    assert verify_congruence_witness(M, N, i, wrong.with_cancelling_pair(0, a, b, 3)) == \
        verify_congruence_witness(M, N, i, wrong)


def test_flavor_checks():
    with pytest.raises(FlavorMismatch):
        verify_congruence_witness(sigma(4), psi(4), 1, ElementaryWitness(10), "W_E")
    with pytest.raises(FlavorMismatch):
        verify_congruence_witness(psi(4), psi(4), 1, identity(10), "W_E")
    with pytest.raises(FlavorMismatch):
        verify_congruence_witness(psi(4).scale(2), psi(4), 1, identity(10), "W_SL")
    with pytest.raises(ShapeError):
        verify_congruence_witness(psi(4), psi(4), 1, ElementaryWitness(8))


def test_W_SL_rejects_det_not_one():
    flip = block_sum(Matrix([[-1]]), identity(9))
    assert not verify_congruence_witness(psi(4), psi(4), 1, flip, "W_SL")


@pytest.mark.parametrize("seed", range(10))
def test_translation_law_gives_W_SL_witness(seed):
    rng = random.Random(seed)
    h = elementary_sl(rng, 4, 5)
    g = spin_certify(spin6_from_sl4(h))
    p = sample_quadric_point(3, seed)
    u = UnitVector(p.xs, p.ys)
    N, M = psi_degree_map(u), psi_degree_map(spin_act(g, u))
    E = block_sum(translation_matrix(h).T, identity(6))
    assert verify_congruence_witness(M, N, 1, E, "W_SL")


# -- factorization ----------------------------------------------------------------


def test_trivial_factorization():
    one = identity(8)
    assert factorization_check(one, identity(3), [], one, unit_basis_vector(3))


@pytest.mark.parametrize("seed", range(100))
def test_self_generated_factorizations(seed):
    rng = random.Random(seed)
    inst = random_factorization_instance(rng, seed)
    args = [inst["phi"], inst["lam"], inst["eps"], inst["s"], inst["target"]]
    assert factorization_check(*args)

    # +1 on one entry of one Spin factor
    which = rng.choice(["phi", "s", "eps"])
    if which == "eps":
        k = rng.randrange(len(inst["eps"]))
        m = inst["eps"][k].g
        r, c = rng.randrange(m.rows), rng.randrange(m.cols)
        bad = list(args)
        bad[2] = [bump(m, r, c) if j == k else e for j, e in enumerate(inst["eps"])]
    else:
        m = inst[which].g if which == "s" else inst[which]
        r, c = rng.randrange(m.rows), rng.randrange(m.cols)
        bad = list(args)
        bad[0 if which == "phi" else 3] = bump(m, r, c)
    assert rejected(lambda: factorization_check(*bad))

    # +1 on an elementary parameter keeps every factor certified
    w = inst["eps_params"][0]
    facs = list(w.factors)
    a, b, lam = facs[0]
    facs[0] = (a, b, lam + 1)
    moved = spin_certify(spin6_from_sl4(ElementaryWitness(4, tuple(facs)).matrix()))
    with pytest.raises(ProductMismatch):
        factorization_check(args[0], args[1], [moved, *args[2][1:]], args[3], args[4])


def test_stabilizer_failure():
    e = unit_basis_vector(3)
    mover = next(
        g for g in (spin_certify(spin6_from_sl4(elementary(4, a, b, 1))) for a in range(4) for b in range(4) if a != b)
        if spin_act(g, e) != e
    )
    with pytest.raises(StabilizerFails):
        factorization_check(mover, identity(3), [], mover, e)


def test_invalid_factor():
    with pytest.raises(InvalidFactor):
        factorization_check(identity(8).scale(2), identity(3), [], identity(8), unit_basis_vector(3))


@pytest.mark.parametrize("seed", range(20))
def test_transvection_preserves_form(seed):
    rng = random.Random(seed)
    p = sample_quadric_point(3, seed)
    chi = psi_degree_map(UnitVector(p.xs, p.ys))
    k = stabilizer_transvection(chi, [rng.randint(-3, 3) for _ in range(4)], rng.randint(1, 5))
    assert k @ chi @ k.T == chi


def test_symbolic_stabilizer():
    u = generic_unit_vector(Quadric(3))
    s = spin6_stabilizer(u, [((1, 0, 0, 0), 1), ((0, 1, 1, 0), -2)])
    assert spin_act(s, u) == u


# -- orbit witnesses and sections ------------------------------------------------------


def test_orbit_witness_kinds():
    e = unit_basis_vector(3)
    assert OrbitWitness("Spin", spin_certify(identity(8)), e, e).verify()
    assert OrbitWitness("SO", identity(6), e, e).verify()
    v = UnimodularVec((1, 0, 0))
    w = UnimodularVec((1, 2, 0))
    assert OrbitWitness("Elementary", ElementaryWitness(3, ((1, 0, 2),)), v, w).verify()
    assert not OrbitWitness("SL", identity(3).scale(-1), v, v).verify()


def test_unit_vector_of():
    assert unit_vector_of(UnimodularVec((1, 0, 0), (1, 0, 0))) == unit_basis_vector(3)
    with pytest.raises(WitnessError):
        unit_vector_of(UnimodularVec((0, 0, 1)))


def test_power_row_m1():
    r = Quadric(3)
    assert power_row_section(3, 1).section == tuple(r.ys())


def test_power_row_n3_m2():
    r = Quadric(3)
    v = power_row_section(3, 2)
    assert v.section[0] == r.gen("y1") ** 2
    assert v.a[0] == r.gen("x1") ** 2
    assert q_form(v.a, v.section) == 1


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("m", range(1, 13))
def test_power_row_sections(n, m):
    v = power_row_section(n, m)
    total = sum((a * b for a, b in zip(v.a, v.section)), Quadric(n).zero)
    assert total == 1
    assert unit_vector_of(v).n == n
    # evaluation oracle on rational points of the quadric
    for seed in range(3):
        pt = sample_quadric_point(n, seed)
        assert sum(eval_at(a, pt) * eval_at(b, pt) for a, b in zip(v.a, v.section)) == 1


def test_alt4_base_point():
    assert alt4_to_unit_vector(psi(4)) == unit_basis_vector(3)
    assert unit_vector_to_alt4(unit_basis_vector(3)).mat == psi(4)


def test_alt4_round_trip_symbolic():
    u = generic_unit_vector(Quadric(3))
    assert alt4_to_unit_vector(unit_vector_to_alt4(u)) == u
    a = unit_vector_to_alt4(u)
    assert unit_vector_to_alt4(alt4_to_unit_vector(a)) == a


@pytest.mark.parametrize("seed", range(20))
def test_alt4_from_random_alternating(seed):
    rng = random.Random(seed)
    while True:
        rows = [[0] * 4 for _ in range(4)]
        for i in range(4):
            for j in range(i + 1, 4):
                rows[i][j] = rng.randint(-5, 5)
                rows[j][i] = -rows[i][j]
        a = Matrix(rows)
        if pfaffian(a):
            break
    d = block_sum(Matrix([[Fraction(1, pfaffian(a))]]), identity(3))
    a = d @ a @ d
    assert pfaffian(a) == 1
    assert psi_degree_map(alt4_to_unit_vector(a)) == a


def test_alt4_rejects():
    with pytest.raises(PfaffianNotOne):
        alt4_to_unit_vector(psi(4).scale(2))
    with pytest.raises(FlavorMismatch):
        AltClassRep(sigma(4))
