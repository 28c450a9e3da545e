"""Small exact linear-algebra helpers over ``Fraction`` and ``int``."""

from __future__ import annotations

from fractions import Fraction


def fmt(q) -> str:
    """Rational as ``"p/q"`` (or ``"p"`` for integers)."""
    return str(Fraction(q))


def parse(s) -> Fraction:
    if isinstance(s, bool) or isinstance(s, float):
        raise ValueError(f"not an exact rational: {s!r}")
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, str):
        t = s.strip()
        if "." in t or "e" in t.lower():
            raise ValueError(f"not an exact rational: {s!r}")
        return Fraction(t)
    raise ValueError(f"not an exact rational: {s!r}")


def bareiss_det(rows) -> int:
    """Determinant of an integer matrix by fraction-free elimination."""
    a = [list(map(int, r)) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    if any(len(r) != n for r in a):
        raise ValueError("matrix is not square")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rank(rows, ncols: int | None = None) -> int:
    """Rank of a rational matrix (list of rows)."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return 0
    ncols = len(m[0]) if ncols is None else ncols
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pv = m[r][c]
        for i in range(r + 1, len(m)):
            f = m[i][c]
            if f:
                f /= pv
                row_r = m[r]
                m[i] = [x - f * y for x, y in zip(m[i], row_r)]
        r += 1
        if r == len(m):
            break
    return r
