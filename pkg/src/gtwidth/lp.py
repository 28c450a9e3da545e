"""Exact linear programming over ``Fraction`` with a tableau simplex.

Solves ``min/max c.x  s.t.  A x <= b`` for free ``x``.  Bland's rule picks the
entering and leaving variables, so the method terminates on degenerate
problems; the desk-scale polytopes used here have at most a few dozen
coordinates, which keeps a dense exact tableau practical.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class LPResult:
    status: str
    value: Fraction | None = None
    witness: tuple | None = None


class _Tableau:
    """Rows ``T[i] . (vars, rhs)`` with ``basis[i]`` the basic variable of row i."""

    def __init__(self, rows, basis, nvars):
        self.T = rows
        self.basis = basis
        self.nvars = nvars

    def pivot(self, r, c):
        T = self.T
        prow = T[r]
        pv = prow[c]
        if pv != _ONE:
            inv = _ONE / pv
            prow = [x * inv if x else x for x in prow]
            T[r] = prow
        nz = [j for j, x in enumerate(prow) if x]
        for i, row in enumerate(T):
            if i == r:
                continue
            f = row[c]
            if f:
                for j in nz:
                    row[j] -= f * prow[j]
        self.basis[r] = c

    def run(self, cost, allowed):
        """Minimise ``cost . vars`` from the current basic feasible solution.

        ``cost`` is a dense list over variables; returns False if unbounded.
        """
        T = self.T
        nv = self.nvars
        while True:
            # reduced costs d_j = c_j - sum_i c_{B_i} T[i][j]
            cb = [cost[b] for b in self.basis]
            basic = set(self.basis)
            entering = None
            for j in allowed:
                if j in basic:
                    continue
                d = cost[j]
                for i, row in enumerate(T):
                    if cb[i] and row[j]:
                        d -= cb[i] * row[j]
                if d < 0:
                    entering = j
                    break
            if entering is None:
                return True
            best = None
            for i, row in enumerate(T):
                a = row[entering]
                if a > 0:
                    ratio = row[nv] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return False
            self.pivot(best[1], entering)

    def values(self):
        x = [_ZERO] * self.nvars
        for i, b in enumerate(self.basis):
            x[b] = self.T[i][self.nvars]
        return x


def solve_lp(A, b, c, maximize=False, feasible_point=None) -> LPResult:
    """Optimise ``c.x`` over ``{x : A x <= b}`` exactly.

    ``feasible_point`` (optional, must satisfy the constraints) lets the solver
    skip phase one by shifting the origin onto it.
    """
    A = [[Fraction(v) for v in row] for row in A]
    b = [Fraction(v) for v in b]
    c = [Fraction(v) for v in c]
    m = len(A)
    N = len(c)
    shift = [_ZERO] * N
    if feasible_point is not None:
        shift = [Fraction(v) for v in feasible_point]
        b = [bi - sum((aij * xj for aij, xj in zip(row, shift)), _ZERO) for row, bi in zip(A, b)]
        if any(bi < 0 for bi in b):
            raise ValueError("feasible_point violates the constraints")
    sense = -1 if maximize else 1

    # variables: x+ (0..N-1), x- (N..2N-1), slack (2N..2N+m-1), artificial after
    n_struct = 2 * N + m
    art_rows = [i for i in range(m) if b[i] < 0]
    nvars = n_struct + len(art_rows)
    rows, basis = [], []
    art_of = {}
    for i in range(m):
        flip = -1 if b[i] < 0 else 1
        row = [_ZERO] * (nvars + 1)
        for j in range(N):
            a = A[i][j] * flip
            row[j] = a
            row[N + j] = -a
        row[2 * N + i] = Fraction(flip)
        row[nvars] = b[i] * flip
        if flip < 0:
            col = n_struct + len(art_of)
            art_of[i] = col
            row[col] = _ONE
            basis.append(col)
        else:
            basis.append(2 * N + i)
        rows.append(row)
    tab = _Tableau(rows, basis, nvars)

    if art_of:
        cost1 = [_ZERO] * nvars
        for col in art_of.values():
            cost1[col] = _ONE
        tab.run(cost1, range(nvars))
        infeas = sum((tab.T[i][nvars] for i, bv in enumerate(tab.basis) if bv >= n_struct), _ZERO)
        if infeas > 0:
            return LPResult(INFEASIBLE)
        # drive remaining (zero-level) artificials out of the basis
        for i in range(len(tab.T) - 1, -1, -1):
            if tab.basis[i] >= n_struct:
                col = next((j for j in range(n_struct) if tab.T[i][j]), None)
                if col is None:
                    del tab.T[i]
                    del tab.basis[i]
                else:
                    tab.pivot(i, col)
        tab.T = [row[:n_struct] + [row[nvars]] for row in tab.T]
        tab.nvars = n_struct

    cost = [_ZERO] * tab.nvars
    for j in range(N):
        cost[j] = sense * c[j]
        cost[N + j] = -sense * c[j]
    if not tab.run(cost, range(n_struct)):
        return LPResult(UNBOUNDED)
    vals = tab.values()
    x = tuple(vals[j] - vals[N + j] + shift[j] for j in range(N))
    value = sum((ci * xi for ci, xi in zip(c, x)), _ZERO)
    return LPResult(OPTIMAL, value, x)
