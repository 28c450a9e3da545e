from fractions import Fraction
from itertools import permutations

import numpy as np
import pytest

from gtwidth import oracle
from gtwidth.errors import ConstantMismatch, DomainViolation, PointOrbit, ShapeMismatch
from gtwidth.lie import Family, Weight, orbit_dims
from gtwidth.polytope import edges, hrep, vertex_V

U, SO_ODD, SO_EVEN = Family.U, Family.SO_ODD, Family.SO_EVEN


def W(fam, *lam):
    return Weight.of(fam, lam)


# --- exact LP checks -------------------------------------------------------------


def test_lp_optimize_examples():
    p = hrep(W(U, 1, 0))
    assert oracle.lp_optimize(p, [1], True).value == 1
    p = hrep(W(U, 3, 3, 1))
    i = p.diagram.index((2, 1))
    obj = [0] * p.N
    obj[i] = 1
    assert oracle.lp_optimize(p, obj, False).value == 1
    a = Fraction(9, 4)
    assert oracle.lp_optimize(hrep(W(SO_ODD, a)), [1], False).value == -a


def test_lp_optimize_shape():
    with pytest.raises(ShapeMismatch):
        oracle.lp_optimize(hrep(W(U, 1, 0)), [1, 0])


@pytest.mark.parametrize("w,lengths", [
    (W(U, 3, 1, 0), [1, 1, 2]),
    (W(U, 1, 0), [1]),
    (W(SO_ODD, 3), [6]),
])
def test_verify_edge_examples(w, lengths):
    p, V = hrep(w), vertex_V(w)
    es = edges(w)
    assert [e.length for e in es] == lengths
    assert all(oracle.verify_edge(p, e, V) for e in es)
    assert all(oracle.edge_check(p, e, V).active_rank == p.N - 1 for e in es)


def test_verify_edge_rejects_a_wrong_length():
    w = W(U, 3, 1, 0)
    p, V = hrep(w), vertex_V(w)
    e = edges(w)[2]
    bad = type(e)(e.box, e.direction, e.length + 1, e.moved, e.interval)
    assert not oracle.verify_edge(p, bad, V)


def test_verify_edge_rejects_a_non_edge():
    # the diagonal of the square U(3), (3,3,1) is not an edge
    w = W(U, 3, 3, 1)
    p, V = hrep(w), vertex_V(w)
    e = edges(w)[0]
    diag = type(e)(e.box, (0, 1), Fraction(2), e.moved, e.interval)
    assert oracle.edge_check(p, diag, V).active_rank < p.N - 1 or not oracle.verify_edge(p, diag, V)


def test_vertex_rank():
    for w in (W(U, 3, 1, 0), W(SO_EVEN, 5, 2, 2, -2), W(SO_ODD, 3, 2, 0)):
        assert oracle.is_vertex(hrep(w), vertex_V(w))
    p = hrep(W(U, 3, 1, 0))
    assert not oracle.is_vertex(p, (Fraction(1, 2), 1, 1))


def test_distinguished_check():
    rc = oracle.distinguished_check(W(SO_ODD, 5, 2, 2))
    assert (rc.lp_max, rc.lp_min, rc.ok) == (2, 0, True)


# --- stabilizer dimension ----------------------------------------------------


@pytest.mark.parametrize("w,dim", [(W(U, 3, 3, 1), 5), (W(SO_ODD, 4, 0), 4), (W(SO_EVEN, 3, 3), 4)])
def test_stabilizer_dim(w, dim):
    assert oracle.stabilizer_dim(w) == dim
    assert w.group.dim - dim == orbit_dims(w)[0]


# --- sampling ------------------------------------------------------------


def test_sample_u2_spectrum():
    A = oracle.sample_orbit_point(W(U, 1, 0), seed=3)
    assert np.allclose(np.sort(np.linalg.eigvalsh(A)), [0, 1], atol=1e-12)
    assert np.allclose(A, A.conj().T)


def test_sample_so3_norm():
    a = 1.75
    A = oracle.sample_orbit_point(W(SO_ODD, Fraction(7, 4)), seed=5)
    assert np.allclose(A, -A.T)
    assert np.isclose(np.sum(A * A), 2 * a * a)


def test_sample_is_seeded():
    w = W(SO_EVEN, 3, 1, -1)
    assert np.array_equal(oracle.sample_orbit_point(w, 11), oracle.sample_orbit_point(w, 11))
    assert not np.array_equal(oracle.sample_orbit_point(w, 11), oracle.sample_orbit_point(w, 12))


def test_sample_point_orbit():
    with pytest.raises(PointOrbit):
        oracle.sample_orbit_point(W(U, 1, 1), 0)


def test_haar_matrices_are_group_elements():
    rng = np.random.default_rng(0)
    for m in range(1, 7):
        q = oracle.haar_special_orthogonal(m, rng)
        assert np.allclose(q @ q.T, np.eye(m)) and np.isclose(np.linalg.det(q), 1)
        u = oracle.haar_unitary(m, rng)
        assert np.allclose(u @ u.conj().T, np.eye(m))


def test_haar_orthogonal_first_column_is_uniform():
    # the first column of a Haar SO(3) element is uniform on the sphere: E[x^2] = 1/3
    rng = np.random.default_rng(1)
    xs = np.array([oracle.haar_special_orthogonal(3, rng)[:, 0] for _ in range(4000)])
    assert np.allclose((xs ** 2).mean(axis=0), 1 / 3, atol=0.03)
    assert np.allclose(xs.mean(axis=0), 0, atol=0.05)


@pytest.mark.parametrize("w", [
    W(U, 3, 1, 0), W(U, 4, 4, 2, -1), W(SO_ODD, 5, 1), W(SO_ODD, 3, 3, 0),
    W(SO_EVEN, 3, 3), W(SO_EVEN, 5, 2, 2, -2), W(SO_EVEN, 4, 2, 1),
])
def test_gt_values_at_model_matrix_is_V(w):
    v = oracle.gt_values(w, oracle.model_matrix(w))
    assert np.allclose(v, [float(x) for x in vertex_V(w)], atol=oracle.SPECTRUM_TOL)


def test_gt_values_u2_example():
    w = W(U, 1, 0)
    assert oracle.gt_values(w, np.array([[0.5, 0.5], [0.5, 0.5]])) == pytest.approx([0.5])


def test_gt_values_shape_and_constants():
    w = W(U, 3, 3, 1)
    with pytest.raises(ShapeMismatch):
        oracle.gt_values(w, np.eye(2))
    with pytest.raises(ShapeMismatch):
        oracle.gt_values(W(SO_ODD, 1), np.eye(3))
    # diag(1, 3, 3) has lambda_1^(2) = 3 as required; diag(3, 1, 3) does not
    oracle.gt_values(w, np.diag([1.0, 3.0, 3.0]))
    with pytest.raises(ConstantMismatch):
        oracle.gt_values(w, np.diag([1.0, 1.0, 3.0]).astype(complex))


def test_gt_values_even_sign_follows_pfaffian():
    w = W(SO_EVEN, 3, -2)
    L = oracle.model_matrix(w)
    assert oracle.level_values(w, L, 4)[-1] == pytest.approx(-2)
    assert oracle.level_values(W(SO_EVEN, 3, 2), oracle.model_matrix(W(SO_EVEN, 3, 2)), 4)[-1] == pytest.approx(2)


def pf_by_definition(A):
    """Sum over perfect matchings written as permutations (tiny sizes only)."""
    n = A.shape[0]
    total = 0.0
    for p in permutations(range(n)):
        if any(p[2 * i] > p[2 * i + 1] for i in range(n // 2)):
            continue
        if any(p[2 * i] > p[2 * i + 2] for i in range(n // 2 - 1)):
            continue
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        term = (-1) ** inv
        for i in range(n // 2):
            term *= A[p[2 * i], p[2 * i + 1]]
        total += term
    return total


@pytest.mark.parametrize("n", [2, 4, 6])
def test_pfaffian_small_matches_definition(n):
    rng = np.random.default_rng(n)
    X = rng.standard_normal((n, n))
    A = X - X.T
    assert oracle.pfaffian(A) == pytest.approx(pf_by_definition(A))


@pytest.mark.parametrize("n", [8, 10, 12])
def test_pfaffian_large_squares_to_det(n):
    rng = np.random.default_rng(n)
    X = rng.standard_normal((n, n))
    A = X - X.T
    assert oracle.pfaffian(A) ** 2 == pytest.approx(np.linalg.det(A), rel=1e-9)
    # Pf(B A B^T) = det(B) Pf(A)
    B = rng.standard_normal((n, n))
    assert oracle.pfaffian(B @ A @ B.T) == pytest.approx(np.linalg.det(B) * oracle.pfaffian(A), rel=1e-8)


def test_pfaffian_block_model():
    L = oracle.model_matrix(W(SO_EVEN, 3, 2, 5 - 6))
    # blocks [[0,-a],[a,0]] have Pfaffian -a
    assert oracle.pfaffian(L) == pytest.approx((-3) * (-2) * 1)
    assert oracle.pfaffian(np.zeros((3, 3))) == 0


def test_membership_examples():
    for w in (W(U, 3, 1, 0), W(SO_ODD, 5, 1)):
        rep = oracle.montecarlo_membership(w, 1000, 1e-8, seed=2)
        assert rep.passed and rep.samples == 1000 and rep.tolerance == 1e-8
    with pytest.raises(PointOrbit):
        oracle.montecarlo_membership(W(U, 2, 2), 10, 1e-8, 0)


def test_membership_detects_a_wrong_polytope(monkeypatch):
    # samples of (3, 1, 0) checked against the polytope of (3, 1/2, 0) must violate it
    w = W(U, 3, 1, 0)
    monkeypatch.setattr(oracle, "hrep", lambda w_: hrep(W(U, 3, Fraction(1, 2), 0)))
    rep = oracle.montecarlo_membership(w, 200, 1e-8, 0)
    assert not rep.passed and rep.max_violation < -0.01


# --- psi -----------------------------------------------------------------


def test_psi_jacobian_exact_determinant():
    z = np.array([np.pi / 4, 0.5])
    assert np.linalg.det(oracle.psi_jacobian(z)) == pytest.approx(1.0)


def test_psi_jacobian_matches_finite_difference():
    rng = np.random.default_rng(4)
    z = oracle.sample_psi_domain(2, 1, rng)[0]
    h = 1e-6
    fd = np.column_stack([(oracle.psi(z + h * e) - oracle.psi(z - h * e)) / (2 * h) for e in np.eye(4)])
    assert np.allclose(fd, oracle.psi_jacobian(z), atol=1e-7)
    J = oracle.psi_jacobian(z)
    omega = oracle.symplectic_matrix(2)
    assert np.allclose(J.T @ omega @ J, omega)


@pytest.mark.parametrize("N", [1, 2, 3])
def test_psi_symplectic(N):
    assert oracle.psi_symplectic_check(N, 1000, seed=0) < oracle.JACOBIAN_TOL


def test_psi_domain_violation():
    with pytest.raises(DomainViolation):
        oracle.psi_symplectic_check(1, 1, points=np.array([[1.0, 0.0]]))
    with pytest.raises(DomainViolation):
        oracle.psi_symplectic_check(2, 1, points=np.array([[1.0, 0.6, 1.0, 0.6]]))


def test_psi_samples_keep_margin():
    z = oracle.sample_psi_domain(3, 2000, np.random.default_rng(0), margin=1e-3)
    assert z[:, 1::2].min() >= 1e-3 and z[:, 1::2].sum(axis=1).max() <= 1 - 1e-3
    assert z[:, 0::2].min() >= 1e-3 and z[:, 0::2].max() <= np.pi - 1e-3
