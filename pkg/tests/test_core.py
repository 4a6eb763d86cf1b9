import pytest
from hypothesis import given

from suslin.core import (
    E_inverse,
    E_matrix,
    J_matrix,
    NotAUnitVector,
    UnitVector,
    degree_map_class,
    generic_unit_vector,
    psi,
    psi_degree_map,
    q_form,
    sigma,
    standard_involution,
    suslin_alpha,
    suslin_alpha_bar,
    tau,
    unit_basis_vector,
    verify_degree_map_suite,
    verify_suslin_suite,
)
from suslin.matrix import Matrix, block_sum, classify_form, det, identity, pfaffian
from suslin.ring import PolyRing, Quadric, sample_quadric_point

from conftest import polys


def free(n):
    r = PolyRing(n)
    return r, r.xs(), r.ys()


def test_alpha_1():
    r, a, b = free(1)
    assert suslin_alpha(a, b) == Matrix([[a[0]]])
    assert suslin_alpha_bar(a, b) == Matrix([[b[0]]])


def test_alpha_2():
    r, a, b = free(2)
    assert suslin_alpha(a, b) == Matrix([[a[0], a[1]], [-b[1], b[0]]])
    assert suslin_alpha_bar(a, b) == Matrix([[b[0], -a[1]], [b[1], a[0]]])


def test_alpha_2_determinant():
    r, a, b = free(2)
    assert det(suslin_alpha(a, b)) == a[0] * b[0] + a[1] * b[1]


def test_alpha_3_at_base_point():
    u = unit_basis_vector(3)
    assert suslin_alpha(u.a, u.b) == identity(4)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_alpha_entries_are_linear(n):
    r, a, b = free(n)
    for v in suslin_alpha(a, b).entries():
        assert v == 0 or all(sum(e) == 1 for e in v.terms)


def test_J_small():
    assert J_matrix(1) == Matrix([[1]])
    j2 = Matrix([[0, 1], [-1, 0]])
    assert J_matrix(2) == j2
    assert J_matrix(3) == block_sum(j2, -j2)


@pytest.mark.parametrize("n", range(1, 9))
def test_J_laws(n):
    j = J_matrix(n)
    assert (j @ j.T).is_identity() and (j.T @ j).is_identity()
    sign = (-1) ** (n * (n - 1) // 2)
    assert j @ j.scale(sign) == identity(j.rows)


def test_E_small():
    assert E_matrix(1) == identity(1)
    assert E_matrix(2) == identity(2)
    assert E_matrix(3) == block_sum(identity(2), sigma(2))


@pytest.mark.parametrize("n", range(1, 8))
def test_E_inverse(n):
    assert (E_matrix(n) @ E_inverse(n)).is_identity()


def test_constants():
    assert sigma(2) == Matrix([[0, 1], [1, 0]])
    assert psi(2) == Matrix([[0, 1], [-1, 0]])
    assert tau(2) == Matrix([[0, 1], [0, 0]])
    assert tau(4) == block_sum(tau(2), tau(2))


def test_involution_basics():
    assert standard_involution(identity(4)) == identity(4)
    with pytest.raises(ValueError):
        standard_involution(identity(3))


def test_involution_is_adjugate_for_2x2():
    r, a, b = free(2)
    m = Matrix([[a[0], a[1]], [b[0], b[1]]])
    assert standard_involution(m) == Matrix([[b[1], -a[1]], [-b[0], a[0]]])


def test_unit_vector_validation():
    with pytest.raises(NotAUnitVector):
        UnitVector((1, 1), (1, 1))
    u = generic_unit_vector(Quadric(3))
    assert q_form(u.a, u.b) == 1


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_product_identity_sampled(n):
    for seed in range(5):
        p = sample_quadric_point(n, seed)
        a, b = suslin_alpha(p.xs, p.ys), suslin_alpha_bar(p.xs, p.ys)
        assert (a @ b).is_identity() and (b @ a).is_identity()


@given(polys(PolyRing(2), max_terms=2), polys(PolyRing(2), max_terms=2))
def test_alpha_2_det_with_arbitrary_entries(p, q):
    r, a, b = free(2)
    v, w = (p, a[1]), (b[0], q)
    assert det(suslin_alpha(v, w)) == q_form(v, w)


def test_degree_map_base_points():
    assert psi_degree_map(unit_basis_vector(3)) == psi(4)
    assert psi_degree_map(unit_basis_vector(5)) == sigma(16)


def test_degree_map_3_over_S5():
    m = psi_degree_map(generic_unit_vector(Quadric(3)))
    assert classify_form(m, "alternating")
    assert pfaffian(m) == 1


def test_degree_map_3_over_free_ring():
    # off the quadric the Pfaffian is the quadratic form itself
    r, a, b = free(3)
    m = psi_degree_map((a, b), r, check=False)
    assert pfaffian(m) == q_form(a, b)


def test_degree_map_4_orthogonal():
    m = psi_degree_map(generic_unit_vector(Quadric(4)))
    assert classify_form(m, "orthogonal", sigma(8))


@pytest.mark.parametrize("seed", range(5))
def test_degree_map_5_symmetric(seed):
    p = sample_quadric_point(5, seed)
    m = psi_degree_map(UnitVector(p.xs, p.ys))
    assert classify_form(m, "symmetric") and det(m) == 1


def test_degree_map_classes():
    assert [degree_map_class(n) for n in (4, 5, 6, 7)] == ["orthogonal", "symmetric", "symplectic", "alternating"]


def test_EJE():
    assert E_matrix(4).T @ J_matrix(4).T @ E_matrix(4) == sigma(8)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_suslin_suite_symbolic(n):
    rep = verify_suslin_suite(n, "symbolic")
    assert rep and all(r["status"] == "pass" for r in rep)
    assert all(r["mode"] == "symbolic" for r in rep)


@pytest.mark.parametrize("n", [5, 6])
def test_suslin_suite_sampled(n):
    rep = verify_suslin_suite(n, "sampled", seeds=3)
    assert all(r["status"] == "pass" for r in rep)


def test_suite_falls_back_above_threshold():
    rep = verify_suslin_suite(5, "symbolic", seeds=2, only="det")
    assert rep[0]["mode"] == "sampled" and rep[0]["status"] == "pass"


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_degree_suite(n):
    rep = verify_degree_map_suite(n, "symbolic", seeds=3)
    assert all(r["status"] == "pass" for r in rep)


def test_suite_rejects_bad_config():
    with pytest.raises(ValueError):
        verify_suslin_suite(3, "sampled", seeds=0)
    with pytest.raises(ValueError):
        verify_suslin_suite(3, "exhaustive")


def test_suite_reports_counterexample(monkeypatch):
    import suslin.core as core

    monkeypatch.setattr(core, "suslin_alpha_bar", lambda a, b, ring=None: core.suslin_alpha(a, b, ring))
    rep = verify_suslin_suite(3, "sampled", seeds=2, only="product")
    assert rep[0]["status"] == "fail"
    assert rep[0]["counterexample"] == "seed=0"
