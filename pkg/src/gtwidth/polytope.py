"""Gelfand-Tsetlin polytope, the vertex V, its edges and the simplex certificate.

Coordinates are indexed by the boxes of the diagram in its basis order.  For
U(n) the edges leave V (all functions at their lower bounds) in directions
``+sum e_{j,k}``; for SO they leave V (all functions at their upper bounds) in
directions ``-sum e_{j,k}``.  Either way the matrix of primitive edge
directions is triangular in basis order with unit diagonal, and the simplex
``conv{V, V + r' w}`` lies in the polytope, so the Gromov width is at least
``r'``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .diagram import Box, Diagram, basis_index, box_of, build_diagram, g_of, relations, rim_row
from .errors import (
    ContainmentFailure,
    DimensionMismatch,
    InternalInvariantError,
    UnimodularityFailure,
)
from .exact import bareiss_det
from .lie import Family, Weight, block_structure, lower_bound


@dataclass(frozen=True)
class LinearInequality:
    """``sum coeffs[b] * x_b <= rhs``."""

    coeffs: tuple  # ((Box, Fraction), ...) sorted by basis index
    rhs: Fraction

    def lhs(self, x, index) -> Fraction:
        return sum((c * x[index[b]] for b, c in self.coeffs), Fraction(0))


@dataclass(frozen=True)
class Polytope:
    diagram: Diagram
    inequalities: tuple

    @property
    def N(self) -> int:
        return self.diagram.N

    def dense(self):
        """``(A, b)`` as lists of Fraction rows, columns in basis order."""
        idx = self.diagram._index
        A, b = [], []
        for ineq in self.inequalities:
            row = [Fraction(0)] * self.N
            for box, c in ineq.coeffs:
                row[idx[box]] += c
            A.append(row)
            b.append(ineq.rhs)
        return A, b


@lru_cache(maxsize=512)
def diagram_of(w: Weight) -> Diagram:
    return build_diagram(w)


def _inequalities(d: Diagram) -> tuple:
    group = d.group
    const = d.constants
    out = []
    for big, small, sign in relations(group):
        # big - sign * small >= 0   <=>   -big + sign * small <= 0
        terms = {}
        rhs = Fraction(0)
        for ref, c in ((big, -1), (small, sign)):
            if ref in const:
                rhs -= c * const[ref]
            else:
                b = box_of(group, *ref)
                terms[b] = terms.get(b, 0) + c
        terms = {b: Fraction(c) for b, c in terms.items() if c != 0}
        if not terms:
            if rhs < 0:
                raise InternalInvariantError(f"constant relation {big} >= {sign}*{small} is false")
            continue
        coeffs = tuple(sorted(terms.items(), key=lambda t: d._index[t[0]]))
        out.append(LinearInequality(coeffs, rhs))
    return tuple(out)


@lru_cache(maxsize=512)
def hrep(w: Weight) -> Polytope:
    d = diagram_of(w)
    return Polytope(d, _inequalities(d))


def vertex_V(w: Weight) -> tuple:
    d = diagram_of(w)
    n = w.n
    if w.family is Family.U:
        return tuple(w.at(n - b.k + 1) for b in d.boxes)
    return tuple(w.at(b.j) for b in d.boxes)


@dataclass(frozen=True)
class EdgeData:
    box: Box
    direction: tuple  # integers, basis order
    length: Fraction
    moved: frozenset
    interval: tuple  # (lo, hi) for the free coordinate


def _edge_u(d: Diagram, s: int, l: int) -> EdgeData:
    w = d.weight
    n = w.n
    bs = block_structure(w)
    g = g_of(d, l)
    lo, hi = w.at(bs.n_(g)), w.at(bs.n_(g - 1))
    top = n - bs.n_(g - 1)
    moved = set()
    for j in range(1, s + 1):
        for k in range(l, top + 1):
            if (j, k) not in d:
                raise InternalInvariantError(f"edge of box ({s},{l}) leaves the diagram at ({j},{k})")
            moved.add(Box(j, k))
    return _edge(d, Box(s, l), moved, +1, hi - lo, (lo, hi))


def _edge_so(d: Diagram, s: int, l: int) -> EdgeData:
    w = d.weight
    group = d.group
    bs = block_structure(w)
    g = g_of(d, s)
    e = bs.n_(g)
    lam_b = w.at(e)
    if l == rim_row(group, s):
        length = 2 * lam_b
    elif s < e and rim_row(group, s) < l <= rim_row(group, e):
        length = lam_b
    else:
        if e >= w.n:
            raise InternalInvariantError(f"box ({s},{l}) has no right-hand block")
        length = lam_b - abs(w.at(e + 1))
    moved = {b for b in d.boxes if b.k <= l and s <= b.j <= e}
    return _edge(d, Box(s, l), moved, -1, length, (w.at(s) - length, w.at(s)))


def _edge(d, box, moved, sign, length, interval) -> EdgeData:
    if length <= 0:
        raise InternalInvariantError(f"edge of box {tuple(box)} has non-positive length {length}")
    direction = [0] * d.N
    for b in moved:
        direction[basis_index(d, b)] = sign
    return EdgeData(box, tuple(direction), Fraction(length), frozenset(moved), interval)


@lru_cache(maxsize=512)
def edges(w: Weight) -> tuple:
    d = diagram_of(w)
    make = _edge_u if w.family is Family.U else _edge_so
    return tuple(make(d, b.j, b.k) for b in d.boxes)


def exceptional_boxes(w: Weight) -> set:
    """SO boxes whose edges may be shorter than r.

    These sit strictly between the rim row and row 0 in the columns of the
    last block of ``(lam_1, ..., |lam_n|)``; their edges have length ``|lam_n|``.
    """
    if w.family is Family.U or w.at(w.n) == 0:
        return set()
    d = diagram_of(w)
    tail = abs(w.at(w.n))
    return {
        b for b in d.boxes
        if w.at(b.j) == tail and rim_row(d.group, b.j) < b.k <= 0
    }


def matrix_W(w: Weight):
    """Matrix of primitive edge directions (columns, basis order) and its determinant."""
    d = diagram_of(w)
    N = d.N
    cols = [e.direction for e in edges(w)]
    for c in cols:
        g = 0
        for x in c:
            g = gcd(g, x)
        if g != 1:
            raise UnimodularityFailure(f"direction {c} is not primitive")
    W = tuple(tuple(cols[c][r] for c in range(N)) for r in range(N))
    diag = -1 if w.family is not Family.U else 1
    for r in range(N):
        if W[r][r] != diag or any(W[r][c] for c in range(r + 1, N)):
            raise UnimodularityFailure(f"W is not lower triangular with {diag} on the diagonal")
    det = bareiss_det(W)
    if det not in (1, -1):
        raise UnimodularityFailure(f"det W = {det}")
    return W, det


def simplex_R(w: Weight) -> list:
    r_prime, _ = lower_bound(w)
    assert r_prime > 0
    V = vertex_V(w)
    verts = [V]
    for e in edges(w):
        verts.append(tuple(v + r_prime * x for v, x in zip(V, e.direction)))
    return verts


def contains(p: Polytope, x) -> bool:
    if len(x) != p.N:
        raise DimensionMismatch(f"point has {len(x)} coordinates, polytope lives in R^{p.N}")
    idx = p.diagram._index
    return all(ineq.lhs(x, idx) <= ineq.rhs for ineq in p.inequalities)


def distinguished_box(w: Weight):
    """Coordinate pinned between two hyperplanes when condition (*) fails."""
    n = w.n
    if w.family is Family.SO_ODD:
        return Box(n - 1, 0)
    if w.family is Family.SO_EVEN:
        return Box(n - 2, 0)
    return None


@dataclass(frozen=True)
class Certificate:
    weight: Weight
    r_prime: Fraction
    star: bool
    V: tuple
    W: tuple
    detW: int
    simplex_vertices: tuple
    contained: bool


def certificate(w: Weight) -> Certificate:
    r_prime, star = lower_bound(w)
    W, det = matrix_W(w)
    p = hrep(w)
    verts = tuple(simplex_R(w))
    contained = all(contains(p, v) for v in verts)
    if not contained:
        raise ContainmentFailure(f"simplex of size {r_prime} is not contained in the polytope of {w}")
    return Certificate(w, r_prime, star, vertex_V(w), W, det, verts, contained)
