from fractions import Fraction

import pytest

from gtwidth.diagram import Box
from gtwidth.errors import DimensionMismatch, PointOrbit
from gtwidth.lie import Family, Weight
from gtwidth.polytope import (
    certificate,
    contains,
    edges,
    exceptional_boxes,
    hrep,
    matrix_W,
    distinguished_box,
    simplex_R,
    vertex_V,
)

from weights import block_grid

U, SO_ODD, SO_EVEN = Family.U, Family.SO_ODD, Family.SO_EVEN
a = Fraction(7, 2)


def W(fam, *lam):
    return Weight.of(fam, lam)


def interval_of(p):
    """Bounds of the only coordinate of a 1-dimensional polytope."""
    lo, hi = None, None
    for ineq in p.inequalities:
        ((_, c),) = ineq.coeffs
        v = ineq.rhs / c
        if c > 0:
            hi = v if hi is None else min(hi, v)
        else:
            lo = v if lo is None else max(lo, v)
    return lo, hi


def test_hrep_u2():
    p = hrep(W(U, 1, 0))
    assert p.N == 1 and interval_of(p) == (0, 1)


def test_hrep_u3_with_tie():
    p = hrep(W(U, 3, 3, 1))
    # x21 in [1, 3], x11 in [x21, 3]
    for x, ok in [((1, 1), True), ((3, 3), True), ((1, 3), True), ((2, 1), False), ((0, 0), False), ((3, 4), False)]:
        assert contains(p, x) is ok


def test_hrep_so3():
    assert interval_of(hrep(W(SO_ODD, a))) == (-a, a)


def test_vertex_examples():
    assert vertex_V(W(U, 3, 1, 0)) == (0, 0, 1)
    assert vertex_V(W(U, 3, 3, 1)) == (1, 1)
    assert vertex_V(W(SO_ODD, a)) == (a,)


def test_edge_lengths_examples():
    assert [e.length for e in edges(W(U, 3, 1, 0))] == [1, 1, 2]
    assert [e.length for e in edges(W(U, 3, 3, 1))] == [2, 2]
    (e,) = edges(W(SO_ODD, a))
    assert e.length == 2 * a


def test_matrix_w_examples():
    Wm, det = matrix_W(W(U, 3, 1, 0))
    cols = [tuple(row[c] for row in Wm) for c in range(3)]
    assert cols == [(1, 1, 0), (0, 1, 0), (0, 0, 1)] and det == 1
    assert matrix_W(W(U, 1, 0)) == (((1,),), 1)
    assert matrix_W(W(SO_ODD, a)) == (((-1,),), -1)


def test_simplex_examples():
    assert simplex_R(W(U, 1, 0)) == [(0,), (1,)]
    assert simplex_R(W(U, 3, 3, 1)) == [(1, 1), (3, 3), (1, 3)]
    assert simplex_R(W(SO_ODD, a)) == [(a,), (-a,)]


def test_contains_examples():
    p = hrep(W(U, 1, 0))
    assert contains(p, (Fraction(1, 2),))
    assert not contains(p, (Fraction(3, 2),))
    with pytest.raises(DimensionMismatch):
        contains(p, (0, 0))


@pytest.mark.parametrize("w,r,star,det", [
    (W(U, 3, 1, 0), 1, True, 1),
    (W(SO_EVEN, 3, 3), 3, False, -1),
    (W(SO_ODD, 5, 1), 2, True, 1),
])
def test_certificate_examples(w, r, star, det):
    c = certificate(w)
    assert (c.r_prime, c.star, c.detW, c.contained) == (r, star, det, True)
    assert len(c.simplex_vertices) == len(c.V) + 1


def test_point_orbit_rejected():
    with pytest.raises(PointOrbit):
        certificate(W(U, 2, 2))


def test_distinguished_box_positions():
    assert distinguished_box(W(SO_ODD, 2, 2)) == Box(1, 0)
    assert distinguished_box(W(SO_EVEN, 5, 2, 2)) == Box(1, 0)
    assert distinguished_box(W(U, 1, 0)) is None


@pytest.mark.parametrize("w", list(block_grid(4)), ids=str)
def test_grid_certificate_and_edge_structure(w):
    c = certificate(w)
    assert c.contained and c.detW in (1, -1)
    # each edge moves its own box and nothing earlier in the basis order
    d = hrep(w).diagram
    for i, e in enumerate(edges(w)):
        assert e.box in e.moved
        assert all(d.index(b) >= i for b in e.moved)
        assert e.interval[1] - e.interval[0] == e.length
    # edges shorter than r' can only be the exceptional ones
    short = {e.box for e in edges(w) if e.length < c.r_prime}
    assert not short
    if w.family is U:
        assert min(e.length for e in edges(w)) == c.r_prime
    else:
        assert exceptional_boxes(w) <= {e.box for e in edges(w) if e.length == abs(w.at(w.n))}
