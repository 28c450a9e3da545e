"""Root data of U(n), SO(2n+1) and SO(2n) and the width bounds built from it.

Everything here is exact: weights are tuples of :class:`fractions.Fraction`
and no floating point value is ever produced.

Index conventions follow the usual mathematical ones, so the helpers that
take an index (``Weight.at``, ``BlockStructure.n_``) are 1-based.

Block indexing: for ``lam_1 = ... = lam_{n_1} > lam_{n_1+1} = ... > ... = lam_n``
we store the breakpoints ``n_1 < ... < n_m`` and the block sizes
``k_j = n_j - n_{j-1}`` (``n_0 = 0``, ``n_{m+1} = n``), so ``k_j`` is the size
of the j-th block.  Some texts use ``k_j = n_{j+1} - n_j`` instead; only the
labels differ.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .errors import InvalidWeight, NotRegular, PointOrbit, WrongFamily


class Family(enum.Enum):
    U = "u"
    SO_ODD = "so-odd"
    SO_EVEN = "so-even"


@dataclass(frozen=True)
class GroupSpec:
    family: Family
    n: int

    def __post_init__(self):
        if not isinstance(self.family, Family):
            object.__setattr__(self, "family", Family(self.family))
        if int(self.n) != self.n or self.n < 1:
            raise InvalidWeight(f"rank parameter must be a positive integer, got {self.n!r}")

    @property
    def is_orthogonal(self) -> bool:
        return self.family is not Family.U

    @property
    def matrix_size(self) -> int:
        if self.family is Family.U:
            return self.n
        if self.family is Family.SO_ODD:
            return 2 * self.n + 1
        return 2 * self.n

    @property
    def dim(self) -> int:
        """Real dimension of the group."""
        m = self.matrix_size
        if self.family is Family.U:
            return m * m
        return m * (m - 1) // 2

    @property
    def name(self) -> str:
        if self.family is Family.U:
            return f"U({self.n})"
        return f"SO({self.matrix_size})"


def _as_fraction(x) -> Fraction:
    if isinstance(x, bool):
        raise InvalidWeight(f"not a rational number: {x!r}")
    if isinstance(x, (Fraction, int)) or isinstance(x, Rational):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if "." in s or "e" in s.lower():
            raise InvalidWeight(f"decimal entries are not accepted, use p/q: {x!r}")
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidWeight(f"cannot parse {x!r} as a rational") from exc
    raise InvalidWeight(f"entries must be exact rationals, got {type(x).__name__} {x!r}")


@dataclass(frozen=True)
class Weight:
    """A point of the positive Weyl chamber of ``group``."""

    group: GroupSpec
    entries: tuple

    def __post_init__(self):
        entries = tuple(_as_fraction(x) for x in self.entries)
        object.__setattr__(self, "entries", entries)
        n = self.group.n
        if len(entries) != n:
            raise InvalidWeight(f"{self.group.name} needs {n} entries, got {len(entries)}")
        fam = self.group.family
        last_plain = n if fam is not Family.SO_EVEN else n - 1
        for i in range(1, last_plain):
            if entries[i - 1] < entries[i]:
                raise InvalidWeight(
                    f"chamber inequality lambda_{i} >= lambda_{i + 1} violated "
                    f"({entries[i - 1]} < {entries[i]})"
                )
        if fam is Family.SO_ODD and entries[-1] < 0:
            raise InvalidWeight(f"chamber inequality lambda_{n} >= 0 violated ({entries[-1]} < 0)")
        if fam is Family.SO_EVEN and n >= 2 and entries[n - 2] < abs(entries[n - 1]):
            raise InvalidWeight(
                f"chamber inequality lambda_{n - 1} >= |lambda_{n}| violated "
                f"({entries[n - 2]} < |{entries[n - 1]}|)"
            )

    @classmethod
    def of(cls, family, values) -> "Weight":
        values = list(values)
        return cls(GroupSpec(Family(family) if not isinstance(family, Family) else family, len(values)), tuple(values))

    @property
    def n(self) -> int:
        return self.group.n

    @property
    def family(self) -> Family:
        return self.group.family

    def at(self, i: int) -> Fraction:
        """``lambda_i`` with 1-based ``i``."""
        if not 1 <= i <= self.n:
            raise IndexError(f"lambda_{i} out of range 1..{self.n}")
        return self.entries[i - 1]

    def __str__(self):
        return f"{self.group.name}[{', '.join(str(x) for x in self.entries)}]"


@dataclass(frozen=True)
class BlockStructure:
    m: int
    breakpoints: tuple  # n_1 < ... < n_m
    multiplicities: tuple  # k_1 .. k_{m+1}
    n: int

    def n_(self, j: int) -> int:
        """Breakpoint ``n_j`` with ``n_0 = 0`` and ``n_{m+1} = n``."""
        if j == 0:
            return 0
        if j == self.m + 1:
            return self.n
        if 1 <= j <= self.m:
            return self.breakpoints[j - 1]
        raise IndexError(f"n_{j} undefined for m = {self.m}")

    def block_of(self, i: int) -> int:
        """1-based index of the block containing position ``i``."""
        if not 1 <= i <= self.n:
            raise IndexError(i)
        for j, nj in enumerate(self.breakpoints, start=1):
            if i <= nj:
                return j
        return self.m + 1

    def block(self, j: int) -> range:
        return range(self.n_(j - 1) + 1, self.n_(j) + 1)


def _blocks_of_values(values) -> BlockStructure:
    n = len(values)
    bps = tuple(i for i in range(1, n) if values[i - 1] != values[i])
    edges = (0,) + bps + (n,)
    ks = tuple(edges[j] - edges[j - 1] for j in range(1, len(edges)))
    return BlockStructure(len(bps), bps, ks, n)


def block_structure(w: Weight) -> BlockStructure:
    """Blocks of equal consecutive entries of ``w`` (by value, also for SO(2n))."""
    return _blocks_of_values(w.entries)


@dataclass(frozen=True)
class CorootPairing:
    label: str
    value: Fraction


def positive_roots(group: GroupSpec):
    """Positive roots as ``(kind, j, k)`` with kind in ``'-'``, ``'+'``, ``'short'``."""
    n = group.n
    roots = [("-", j, k) for j in range(1, n + 1) for k in range(j + 1, n + 1)]
    if group.is_orthogonal:
        roots += [("+", j, k) for j in range(1, n + 1) for k in range(j + 1, n + 1)]
    if group.family is Family.SO_ODD:
        roots += [("short", j, j) for j in range(1, n + 1)]
    return roots


def _pair(w: Weight, root) -> CorootPairing:
    kind, j, k = root
    if kind == "-":
        return CorootPairing(f"(e{j}-e{k})^v", w.at(j) - w.at(k))
    if kind == "+":
        return CorootPairing(f"(e{j}+e{k})^v", w.at(j) + w.at(k))
    return CorootPairing(f"(e{j})^v", 2 * w.at(j))


def coroot_pairings(w: Weight) -> list:
    return [_pair(w, root) for root in positive_roots(w.group)]


def r_of(w: Weight) -> Fraction:
    """Minimum of the strictly positive coroot pairings."""
    positive = [p.value for p in coroot_pairings(w) if p.value > 0]
    if not positive:
        raise PointOrbit(f"orbit of {w} is a point: no coroot pairs positively")
    return min(positive)


def is_point_orbit(w: Weight) -> bool:
    return all(p.value <= 0 for p in coroot_pairings(w))


def r_closed_form(w: Weight) -> Fraction:
    """The bound written through the block breakpoints instead of all coroots.

    For SO(2n) the sum term is ``lambda_{n-1} + lambda_n``; this agrees with the
    frequently quoted ``lambda_{n_m} + lambda_n`` only when the last block has
    size one (e.g. SO(6), (5, 1, 1) has the pairing 2 = lambda_2 + lambda_3).
    """
    bs = block_structure(w)
    lam = w.at
    gaps = [lam(bs.n_(j)) - lam(bs.n_(j) + 1) for j in range(1, bs.m + 1)]
    fam = w.family
    terms = list(gaps)
    if fam is Family.SO_ODD and lam(w.n) != 0:
        terms.append(2 * lam(w.n))
    elif fam is Family.SO_EVEN and w.n >= 2:
        s = lam(w.n - 1) + lam(w.n)
        if s > 0:
            terms.append(s)
    if not terms:
        raise PointOrbit(f"orbit of {w} is a point")
    return min(terms)


def condition_star(w: Weight, *, fold_sign: bool = True) -> bool:
    """``(lam_n != lam_{n-1}) or (lam_n == 0) or (lam_n >= r)``; true for n = 1.

    For SO(2n) the test is applied to ``(lam_1, ..., lam_{n-1}, |lam_n|)``
    unless ``fold_sign=False``.  The two chamber points are exchanged by the
    diagram automorphism of D_n, so their orbits are symplectomorphic, and
    without folding e.g. SO(8), (5, 2, 2, -2) would pass while its polytope has
    lattice width 2 < r = 3 in the coordinate of box (2, 0).
    """
    if not w.group.is_orthogonal:
        raise WrongFamily("condition (*) is only defined for SO(2n+1) and SO(2n)")
    n = w.n
    if n == 1:
        return True
    last, prev = w.at(n), w.at(n - 1)
    if fold_sign and w.family is Family.SO_EVEN:
        last = abs(last)
    return last != prev or last == 0 or last >= r_of(w)


def lower_bound(w: Weight):
    """``(r_prime, star)``: the certified lower bound for the Gromov width."""
    r = r_of(w)
    if not w.group.is_orthogonal:
        return r, True
    if condition_star(w):
        return r, True
    last = abs(w.at(w.n))
    assert last != 0 and r > last, "condition (*) failure must imply r > |lambda_n| != 0"
    return last, False


def _stabilizer_blocks(w: Weight) -> BlockStructure:
    # the outer automorphism lam_n -> -lam_n of D_n does not change the orbit type
    vals = list(w.entries)
    if w.family is Family.SO_EVEN:
        vals[-1] = abs(vals[-1])
    return _blocks_of_values(vals)


def _dim_so(m: int) -> int:
    return m * (m - 1) // 2


def stabilizer_dim_from_blocks(w: Weight) -> int:
    bs = _stabilizer_blocks(w)
    ks = bs.multiplicities
    if w.family is Family.U or w.at(w.n) != 0:
        return sum(k * k for k in ks)
    head = sum(k * k for k in ks[:-1])
    tail = ks[-1]
    if w.family is Family.SO_ODD:
        return head + _dim_so(2 * tail + 1)
    return head + _dim_so(2 * tail)


def orbit_dims(w: Weight):
    """``(real_dim, N)`` with ``real_dim = dim G - dim Stab(lambda)``."""
    real = w.group.dim - stabilizer_dim_from_blocks(w)
    assert real % 2 == 0
    return real, real // 2


def orbit_dim_formula(w: Weight, *, halve_zero_term: bool = False) -> int:
    """Orbit dimension through ``n(n-1) - sum k_j(k_j - 1)`` style formulas.

    With ``lambda_n = 0`` the extra subtraction is ``k(k+1)`` (SO(2n+1)) or
    ``k(k-1)`` (SO(2n)) for the size ``k`` of the zero block.  Passing
    ``halve_zero_term=True`` subtracts half of that instead, which produces odd
    (hence impossible) dimensions such as 7 for SO(5), (a, 0).
    """
    n = w.n
    ks = _stabilizer_blocks(w).multiplicities
    corr = sum(k * (k - 1) for k in ks)
    fam = w.family
    if fam is Family.U:
        return n * (n - 1) - corr
    base = 2 * n * n if fam is Family.SO_ODD else 2 * n * (n - 1)
    dim = base - corr
    if w.at(n) == 0:
        k = ks[-1]
        extra = k * (k + 1) if fam is Family.SO_ODD else k * (k - 1)
        dim -= Fraction(extra, 2) if halve_zero_term else extra
    return dim


def exact_width(w: Weight):
    """Exact Gromov width when some difference divides all others, else ``None``."""
    if w.family is not Family.U:
        raise WrongFamily("the divisibility criterion is specific to U(n)")
    r = r_of(w)
    lam = w.entries
    diffs = {a - b for a in lam for b in lam}
    for d in sorted({abs(x) for x in diffs if x != 0}):
        if all((x / d).denominator == 1 for x in diffs):
            assert d == r, (d, r)
            return d
    return None


def simple_roots(group: GroupSpec):
    n = group.n
    roots = [("-", i, i + 1) for i in range(1, n)]
    if group.family is Family.SO_ODD:
        roots.append(("short", n, n))
    elif group.family is Family.SO_EVEN and n >= 2:
        roots.append(("+", n - 1, n))
    return roots


def _indecomposable_root(w: Weight):
    pairings = coroot_pairings(w)
    if any(p.value == 0 for p in pairings):
        raise NotRegular(f"{w} is not regular")
    values = [p.value for p in pairings]
    for root in simple_roots(w.group):
        p = _pair(w, root).value
        if all((q / p).denominator == 1 and q / p > 0 for q in values):
            return root, p
    return None


def is_indecomposable(w: Weight) -> bool:
    return _indecomposable_root(w) is not None


def indecomposable_upper_bound(w: Weight):
    """``min |<alpha^v, lambda>|`` for regular indecomposable orbits, else ``None``."""
    if _indecomposable_root(w) is None:
        return None
    return min(abs(p.value) for p in coroot_pairings(w))
