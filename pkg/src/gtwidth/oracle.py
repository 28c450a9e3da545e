"""Independent checks of the polytope machinery.

Exact checks (LP over the H-representation, active-set ranks) use rationals
throughout.  Sampling checks conjugate the model matrix of lambda by a Haar
random group element and read the Gelfand-Tsetlin values off the spectra of
the leading principal submatrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels
from .diagram import Box, basis_index, box_of, levels
from .errors import ConstantMismatch, DomainViolation, LPInfeasible, PointOrbit, ShapeMismatch
from .exact import rank
from .lie import Family, Weight, coroot_pairings, is_point_orbit, positive_roots
from .lp import INFEASIBLE, OPTIMAL, LPResult, solve_lp
from .polytope import EdgeData, Polytope, diagram_of, hrep, distinguished_box, vertex_V

MEMBERSHIP_TOL = 1e-8
SPECTRUM_TOL = 1e-10
JACOBIAN_TOL = 1e-7
FD_STEP = 1e-6
PSI_MARGIN = 1e-2


# --- exact checks --------------------------------------------------------


def lp_optimize(p: Polytope, objective, maximize: bool = False, *, feasible_point=None,
                extra_rows=(), extra_rhs=()) -> LPResult:
    """Optimise ``objective . x`` over ``p`` (plus optional extra ``<=`` rows)."""
    if len(objective) != p.N:
        raise ShapeMismatch(f"objective has {len(objective)} entries, polytope lives in R^{p.N}")
    A, b = p.dense()
    A = A + [list(r) for r in extra_rows]
    b = b + list(extra_rhs)
    res = solve_lp(A, b, objective, maximize=maximize, feasible_point=feasible_point)
    if res.status == INFEASIBLE:
        raise LPInfeasible("Gelfand-Tsetlin polytope is empty")
    return res


def _dot(row, x):
    return sum((a * v for a, v in zip(row, x) if a), Fraction(0))


def active_rows(p: Polytope, x) -> list:
    A, b = p.dense()
    return [row for row, bi in zip(A, b) if _dot(row, x) == bi]


def is_vertex(p: Polytope, V) -> bool:
    """``V`` is in ``p`` and the constraints tight at ``V`` have rank ``N``."""
    A, b = p.dense()
    if any(_dot(row, V) > bi for row, bi in zip(A, b)):
        return False
    return rank(active_rows(p, V), p.N) == p.N


@dataclass(frozen=True)
class EdgeCheck:
    box: Box
    length: Fraction
    endpoints_in_p: bool
    active_rank: int
    lp_interval: tuple | None
    expected_interval: tuple
    N: int

    @property
    def ok(self) -> bool:
        return (
            self.endpoints_in_p
            and self.active_rank == self.N - 1
            and self.lp_interval == self.expected_interval
        )


def edge_check(p: Polytope, e: EdgeData, V) -> EdgeCheck:
    N = p.N
    A, b = p.dense()
    end = tuple(v + e.length * d for v, d in zip(V, e.direction))
    inside = all(_dot(r, V) <= bi and _dot(r, end) <= bi for r, bi in zip(A, b))
    tight = [(r, bi) for r, bi in zip(A, b) if _dot(r, V) == bi and _dot(r, end) == bi]
    act_rank = rank([r for r, _ in tight], N) if tight else 0
    interval = None
    if inside:
        i = basis_index(p.diagram, e.box)
        obj = [Fraction(0)] * N
        obj[i] = Fraction(1)
        neg = [[-x for x in r] for r, _ in tight]
        rhs = [-bi for _, bi in tight]
        hi = lp_optimize(p, obj, True, feasible_point=V, extra_rows=neg, extra_rhs=rhs)
        lo = lp_optimize(p, obj, False, feasible_point=V, extra_rows=neg, extra_rhs=rhs)
        interval = (lo.value, hi.value)
    return EdgeCheck(e.box, e.length, inside, act_rank, interval, tuple(e.interval), N)


def verify_edge(p: Polytope, e: EdgeData, V) -> bool:
    """Exact check that ``V + t w`` (``0 <= t <= length``) is an edge of ``p``."""
    return edge_check(p, e, V).ok


@dataclass(frozen=True)
class DistinguishedCheck:
    box: Box | None
    lp_max: Fraction | None
    lp_min: Fraction | None
    expected: tuple

    @property
    def ok(self) -> bool:
        return self.box is not None and (self.lp_max, self.lp_min) == self.expected


def distinguished_check(w: Weight) -> DistinguishedCheck:
    """LP range of the distinguished coordinate, expected ``[0, |lam_n|]``."""
    expected = (abs(w.at(w.n)), Fraction(0))
    b = distinguished_box(w)
    p = hrep(w)
    if b is None or b not in p.diagram:
        return DistinguishedCheck(b if b is None else Box(*b), None, None, expected)
    obj = [Fraction(0)] * p.N
    obj[basis_index(p.diagram, b)] = Fraction(1)
    V = vertex_V(w)
    hi = lp_optimize(p, obj, True, feasible_point=V)
    lo = lp_optimize(p, obj, False, feasible_point=V)
    assert hi.status == lo.status == OPTIMAL
    return DistinguishedCheck(Box(*b), hi.value, lo.value, expected)


# --- dimensions ----------------------------------------------------------


def stabilizer_dim(w: Weight) -> int:
    """Rank plus twice the number of positive roots vanishing on ``lambda``."""
    zero = sum(1 for p in coroot_pairings(w) if p.value == 0)
    assert len(positive_roots(w.group)) == len(coroot_pairings(w))
    return w.n + 2 * zero


# --- sampling ------------------------------------------------------------


def haar_unitary(n: int, rng) -> np.ndarray:
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def haar_special_orthogonal(m: int, rng) -> np.ndarray:
    q, r = np.linalg.qr(rng.standard_normal((m, m)))
    q = q * np.sign(np.diagonal(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


def model_matrix(w: Weight) -> np.ndarray:
    """``diag(lam_n, ..., lam_1)`` (U) or ``diag(L(lam_1), ..., L(lam_n)[, 0])`` (SO)."""
    lam = [float(x) for x in w.entries]
    if w.family is Family.U:
        return np.diag(lam[::-1]).astype(complex)
    m = w.group.matrix_size
    L = np.zeros((m, m))
    for i, a in enumerate(lam):
        L[2 * i, 2 * i + 1] = -a
        L[2 * i + 1, 2 * i] = a
    return L


def sample_orbit_point(w: Weight, seed=None, *, rng=None) -> np.ndarray:
    if is_point_orbit(w):
        raise PointOrbit(f"orbit of {w} is a point")
    rng = np.random.default_rng(seed) if rng is None else rng
    L = model_matrix(w)
    if w.family is Family.U:
        q = haar_unitary(w.n, rng)
        A = q @ L @ q.conj().T
        return (A + A.conj().T) / 2
    q = haar_special_orthogonal(w.group.matrix_size, rng)
    A = q @ L @ q.T
    return (A - A.T) / 2


def _pf_expand(A) -> float:
    n = A.shape[0]
    if n == 0:
        return 1.0
    total = 0.0
    rest = list(range(1, n))
    for idx, j in enumerate(rest):
        if A[0, j] == 0:
            continue
        keep = rest[:idx] + rest[idx + 1:]
        total += (-1) ** idx * A[0, j] * _pf_expand(A[np.ix_(keep, keep)])
    return total


def pfaffian(A) -> float:
    """Pfaffian of a real skew-symmetric matrix.

    Expansion along the first row up to size 6, otherwise a skew LTL^T
    elimination with partial pivoting.
    """
    A = np.array(A, dtype=float)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ShapeMismatch("pfaffian needs a square matrix")
    if n % 2:
        return 0.0
    if n <= 6:
        return _pf_expand(A)
    pf = 1.0
    for k in range(0, n - 1, 2):
        kp = k + 1 + int(np.argmax(np.abs(A[k + 1:, k])))
        if kp != k + 1:
            A[[k + 1, kp], :] = A[[kp, k + 1], :]
            A[:, [k + 1, kp]] = A[:, [kp, k + 1]]
            pf = -pf
        if A[k + 1, k] == 0.0:
            return 0.0
        pf *= A[k, k + 1]
        if k + 2 < n:
            tau = A[k, k + 2:] / A[k, k + 1]
            col = A[k + 2:, k + 1]
            A[k + 2:, k + 2:] += np.outer(tau, col) - np.outer(col, tau)
    return pf


def _check_shape(w: Weight, A):
    m = w.group.matrix_size
    if A.shape != (m, m):
        raise ShapeMismatch(f"{w.group.name} needs a {m}x{m} matrix, got {A.shape}")
    if w.family is Family.U:
        if not np.allclose(A, A.conj().T, atol=1e-9):
            raise ShapeMismatch("matrix is not Hermitian")
    elif not np.allclose(A, -A.T, atol=1e-9):
        raise ShapeMismatch("matrix is not skew-symmetric")


def level_values(w: Weight, A, s: int) -> np.ndarray:
    """Gelfand-Tsetlin values ``lambda_1^{(s)}, lambda_2^{(s)}, ...`` of ``A``."""
    sub = A[:s, :s]
    if w.family is Family.U:
        return np.linalg.eigvalsh(sub)[::-1]
    half = s // 2
    a = np.sort(np.linalg.eigvalsh(1j * sub))[::-1][:half]
    a = np.maximum(a, 0.0)
    if s % 2 == 0 and half:
        # the sign of the smallest value follows the Pfaffian, as in the D chamber
        sign = (-1) ** half * np.sign(pfaffian(sub.real))
        if sign < 0:
            a[-1] = -a[-1]
    return a


def gt_values(w: Weight, A, *, tol: float = 1e-6) -> np.ndarray:
    """Values of the non-constant functions at ``A``, in basis order.

    Constant functions are compared with their known values; a mismatch larger
    than ``tol`` raises ``ConstantMismatch``.
    """
    A = np.asarray(A)
    _check_shape(w, A)
    d = diagram_of(w)
    group = w.group
    out = np.empty(d.N)
    for s in levels(group):
        vals = level_values(w, A, s)
        for j, v in enumerate(vals, start=1):
            ref = (j, s)
            if ref in d.constants:
                c = float(d.constants[ref])
                if abs(v - c) > tol:
                    raise ConstantMismatch(f"lambda_{j}^({s}) = {v!r}, expected {c}")
            else:
                out[d._index[box_of(group, j, s)]] = v
    return out


@dataclass(frozen=True)
class SampleReport:
    samples: int
    max_violation: float
    seed: int | None
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_violation >= -self.tolerance


def montecarlo_membership(w: Weight, n_samples: int, tol: float = MEMBERSHIP_TOL, seed=None) -> SampleReport:
    """Worst slack of the polytope inequalities at ``n_samples`` orbit points."""
    if is_point_orbit(w):
        raise PointOrbit(f"orbit of {w} is a point")
    p = hrep(w)
    A, b = p.dense()
    Af = np.array([[float(x) for x in r] for r in A]).reshape(len(A), p.N)
    bf = np.array([float(x) for x in b])
    rng = np.random.default_rng(seed)
    X = np.empty((n_samples, p.N))
    for i in range(n_samples):
        X[i] = gt_values(w, sample_orbit_point(w, rng=rng))
    worst = _kernels.min_slack(Af, bf, X) if n_samples else float("inf")
    return SampleReport(n_samples, float(worst), seed, tol)


# --- the map Psi ---------------------------------------------------------


def psi(z) -> np.ndarray:
    """``(x_j, y_j) -> (sqrt(y_j) cos 2x_j, -sqrt(y_j) sin 2x_j)``."""
    z = np.asarray(z, dtype=float)
    out = np.empty_like(z)
    x, y = z[0::2], z[1::2]
    out[0::2] = np.sqrt(y) * np.cos(2 * x)
    out[1::2] = -np.sqrt(y) * np.sin(2 * x)
    return out


def psi_jacobian(z) -> np.ndarray:
    """Closed-form Jacobian of ``psi`` (block diagonal)."""
    z = np.asarray(z, dtype=float)
    D = z.shape[0]
    J = np.zeros((D, D))
    for j in range(D // 2):
        x, y = z[2 * j], z[2 * j + 1]
        r = np.sqrt(y)
        J[2 * j, 2 * j] = -2 * r * np.sin(2 * x)
        J[2 * j, 2 * j + 1] = np.cos(2 * x) / (2 * r)
        J[2 * j + 1, 2 * j] = -2 * r * np.cos(2 * x)
        J[2 * j + 1, 2 * j + 1] = -np.sin(2 * x) / (2 * r)
    return J


def sample_psi_domain(N: int, n_points: int, rng, margin: float = PSI_MARGIN) -> np.ndarray:
    """Points of ``(0, pi)^N x {y > 0, sum y < 1}`` kept ``margin`` away from the boundary."""
    x = rng.uniform(margin, np.pi - margin, size=(n_points, N))
    # Dirichlet sample of (y_1..y_N, slack), squeezed away from the faces
    y = rng.dirichlet(np.ones(N + 1), size=n_points)[:, :N]
    y = margin + (1 - (N + 1) * margin) * y
    z = np.empty((n_points, 2 * N))
    z[:, 0::2] = x
    z[:, 1::2] = y
    return z


def _in_domain(z, h) -> bool:
    x, y = z[:, 0::2], z[:, 1::2]
    return bool(
        np.all(x - h > 0) and np.all(x + h < np.pi)
        and np.all(y - h > 0) and np.all(y.sum(axis=1) + h < 1)
    )


def psi_symplectic_check(N: int, n_points: int, seed=None, *, h: float = FD_STEP,
                         margin: float = PSI_MARGIN, points=None) -> float:
    """Max over points of ``||J^T Omega J - Omega||_inf`` with a finite-difference ``J``."""
    if N < 1:
        raise ValueError("N must be at least 1")
    if points is None:
        points = sample_psi_domain(N, n_points, np.random.default_rng(seed), margin)
    points = np.asarray(points, dtype=float)
    if points.ndim != 2 or points.shape[1] != 2 * N:
        raise ShapeMismatch(f"points must have shape (k, {2 * N})")
    if not _in_domain(points, h):
        raise DomainViolation("a sample (or its stencil) leaves the open domain of psi")
    return _kernels.psi_deviation(points, h)


def symplectic_matrix(N: int) -> np.ndarray:
    omega = np.zeros((2 * N, 2 * N))
    for j in range(N):
        omega[2 * j, 2 * j + 1] = 1.0
        omega[2 * j + 1, 2 * j] = -1.0
    return omega

