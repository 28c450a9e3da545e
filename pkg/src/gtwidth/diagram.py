"""Ladder diagrams (U(n)) and so-diagrams (SO(2n+1), SO(2n)).

A Gelfand-Tsetlin function ``lambda_j^{(s)}`` (subscript ``j``, superscript
``s``) is addressed by the pair ``(j, s)``.  Boxes use Cartesian coordinates
``(j, k)``:

* U(n):   ``(j, k) <-> lambda_j^{(j + k - 1)}``, levels ``1 .. n-1``;
* SO(m):  ``(j, k) <-> lambda_j^{(j + k + c)}`` with ``c = n`` for m = 2n+1 and
  ``c = n - 1`` for m = 2n, levels ``2 .. m-1``.

In both cases column ``j`` holds the functions with subscript ``j``, the line
``j + k = n + 1`` holds the constants ``lambda_j`` of the top level, and every
box sits between its top neighbour ``(j, k+1)`` and its right neighbour
``(j+1, k)``.  For SO the column ``j`` ends at the "rim" box of level ``2j``,
whose function enters the inequalities only through its absolute value.

A function is a box of the diagram iff it is not constant on the orbit, which
is decided by propagating the interlacing inequalities from the top constants
and checking whether the resulting interval degenerates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import lcm
from fractions import Fraction
from typing import NamedTuple

from .errors import PointOrbit, UnknownBox
from .lie import Family, GroupSpec, Weight, block_structure, is_point_orbit


class Box(NamedTuple):
    j: int
    k: int


class Relation(NamedTuple):
    """``big >= sign * small`` between two Gelfand-Tsetlin functions."""

    big: tuple
    small: tuple
    sign: int


def top_level(group: GroupSpec) -> int:
    return group.n if group.family is Family.U else group.matrix_size


def levels(group: GroupSpec) -> range:
    """Superscripts of the non-top Gelfand-Tsetlin functions."""
    if group.family is Family.U:
        return range(1, group.n)
    return range(2, group.matrix_size)


def level_size(group: GroupSpec, s: int) -> int:
    if group.family is Family.U:
        return s
    if s == top_level(group):
        return group.n
    return s // 2


def _offset(group: GroupSpec) -> int:
    if group.family is Family.U:
        return -1
    return group.n if group.family is Family.SO_ODD else group.n - 1


def box_of(group: GroupSpec, j: int, s: int) -> Box:
    return Box(j, s - j - _offset(group))


def function_of(group: GroupSpec, box) -> tuple:
    j, k = box
    return (j, j + k + _offset(group))


def rim_row(group: GroupSpec, j: int) -> int:
    """Row of the lowest box of column ``j`` (SO only)."""
    return box_of(group, j, 2 * j).k


@lru_cache(maxsize=64)
def relations(group: GroupSpec) -> tuple:
    """All interlacing relations of the Gelfand-Tsetlin pattern of ``group``."""
    rels = []
    if group.family is Family.U:
        for l in range(1, group.n):
            for j in range(1, l + 1):
                rels.append(Relation((j, l + 1), (j, l), 1))
                rels.append(Relation((j, l), (j + 1, l + 1), 1))
        return tuple(rels)
    top = top_level(group)
    for u in range(top, 2, -1):
        if u % 2:  # (2k+1, 2k)
            k = (u - 1) // 2
            for i in range(1, k + 1):
                rels.append(Relation((i, u), (i, u - 1), 1))
            for i in range(1, k):
                rels.append(Relation((i, u - 1), (i + 1, u), 1))
            rels.append(Relation((k, u), (k, u - 1), -1))
        else:  # (2k, 2k-1)
            k = u // 2
            for i in range(1, k):
                rels.append(Relation((i, u), (i, u - 1), 1))
            for i in range(1, k - 1):
                rels.append(Relation((i, u - 1), (i + 1, u), 1))
            rels.append(Relation((k - 1, u - 1), (k, u), 1))
            rels.append(Relation((k - 1, u - 1), (k, u), -1))
    return tuple(rels)


def propagate_intervals(w: Weight, rels=None) -> dict:
    """Tightest intervals implied by the relations, by bound propagation.

    Returns a map from every non-top function ``(j, s)`` to ``(lo, hi)``.
    """
    group = w.group
    top = top_level(group)
    rels = relations(group) if rels is None else rels
    # work with integers: scale by the common denominator (Fraction compares are slow)
    scale = lcm(*(x.denominator for x in w.entries))
    const = {(j, top): int(w.at(j) * scale) for j in range(1, group.n + 1)}
    lo: dict = {}
    hi: dict = {}

    def get(bounds, ref):
        return const[ref] if ref in const else bounds.get(ref)

    def raise_lo(ref, v):
        if v is None or ref in const:
            return False
        cur = lo.get(ref)
        if cur is None or v > cur:
            lo[ref] = v
            return True
        return False

    def lower_hi(ref, v):
        if v is None or ref in const:
            return False
        cur = hi.get(ref)
        if cur is None or v < cur:
            hi[ref] = v
            return True
        return False

    def neg(v):
        return None if v is None else -v

    # alternate sweep direction: bounds flow both down from the top level and back up
    sweeps = (rels, rels[::-1])
    for it in range(4 * len(rels) + 8):
        changed = False
        for big, small, sign in sweeps[it % 2]:
            if sign > 0:
                changed |= lower_hi(small, get(hi, big))
                changed |= raise_lo(big, get(lo, small))
            else:
                # big >= |small| (the +1 twin is also in rels), so big >= 0 as well
                h = get(hi, small)
                changed |= raise_lo(big, None if h is None else max(-h, 0))
                changed |= raise_lo(small, neg(get(hi, big)))
        if not changed:
            break
    else:  # pragma: no cover - bounded pattern always converges
        raise RuntimeError("interval propagation did not converge")

    out = {}
    for s in levels(group):
        for j in range(1, level_size(group, s) + 1):
            a, b = lo.get((j, s)), hi.get((j, s))
            assert a is not None and b is not None and a <= b, ((j, s), a, b)
            out[(j, s)] = (Fraction(a, scale), Fraction(b, scale))
    return out


def basis_key(group: GroupSpec, box):
    j, k = box
    if group.family is Family.U:
        return (k, -j)
    return (j, -k)


@dataclass(frozen=True)
class Diagram:
    group: GroupSpec
    weight: Weight
    boxes: tuple
    gtable: dict  # Box -> (superscript, subscript)
    intervals: dict  # Box -> (lo, hi)
    bounds: dict  # Box -> (lower neighbours, upper neighbours)
    constants: dict = field(repr=False)  # (j, s) -> value, top level included
    _index: dict = field(repr=False, compare=False, default=None)

    @property
    def N(self) -> int:
        return len(self.boxes)

    def index(self, box) -> int:
        return basis_index(self, box)

    def __contains__(self, box) -> bool:
        return Box(*box) in self._index


def build_diagram(w: Weight) -> Diagram:
    if is_point_orbit(w):
        raise PointOrbit(f"orbit of {w} is a point")
    group = w.group
    rels = relations(group)
    ivals = propagate_intervals(w, rels)
    top = top_level(group)
    const = {(j, top): w.at(j) for j in range(1, group.n + 1)}
    box_at = {ref: box_of(group, *ref) for ref in ivals}
    boxes = []
    for ref, (a, b) in ivals.items():
        if a == b:
            const[ref] = a
        else:
            boxes.append(box_at[ref])
    boxes.sort(key=lambda b: basis_key(group, b))
    boxes = tuple(boxes)

    def neighbour(ref):
        return const[ref] if ref in const else box_at[ref]

    lower = {b: [] for b in boxes}
    upper = {b: [] for b in boxes}
    for big, small, sign in rels:
        if big not in const:
            lower[box_at[big]].append((sign, neighbour(small)))
        if small not in const:
            upper[box_at[small]].append((sign, neighbour(big)))
    gtable = {box_at[ref]: (ref[1], ref[0]) for ref in ivals if ref not in const}
    return Diagram(
        group=group,
        weight=w,
        boxes=boxes,
        gtable=gtable,
        intervals={box_at[ref]: iv for ref, iv in ivals.items() if ref not in const},
        bounds={b: (tuple(lower[b]), tuple(upper[b])) for b in boxes},
        constants=const,
        _index={b: i for i, b in enumerate(boxes)},
    )


def basis_index(d: Diagram, b) -> int:
    try:
        return d._index[Box(*b)]
    except (KeyError, TypeError):
        raise UnknownBox(f"{b!r} is not a box of the diagram") from None


def g_of(d: Diagram, l: int) -> int:
    """Index of the diagonal square met by row ``l`` (U) or column ``l`` (SO)."""
    n = d.group.n
    if not 1 <= l <= n:
        raise IndexError(f"index {l} outside 1..{n}")
    bs = block_structure(d.weight)
    if d.group.family is Family.U:
        return bs.block_of(n - l + 1)
    return bs.block_of(l)


def render(d: Diagram) -> str:
    """ASCII picture: one cell per position, boxes show their GT function."""
    group = d.group
    cells = {}
    for b in d.boxes:
        s, j = d.gtable[b]
        cells[b] = f"l{j}^{s}"
    for (j, s), v in d.constants.items():
        cells.setdefault(box_of(group, j, s), f"={v}")
    if not cells:
        return ""
    ks = [b.k for b in cells]
    width = max(len(c) for c in cells.values()) + 2
    lines = []
    for k in range(max(ks), min(ks) - 1, -1):
        row = "".join(cells.get(Box(j, k), ".").center(width) for j in range(1, group.n + 1))
        lines.append(f"{k:>3} |{row.rstrip()}")
    lines.append("    +" + "-" * (width * group.n))
    lines.append("     " + "".join(str(j).center(width) for j in range(1, group.n + 1)))
    return "\n".join(lines)
