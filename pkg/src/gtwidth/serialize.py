"""JSON encoding of polytopes, certificates and reports.

Rationals are strings ``"p/q"`` (or ``"p"``), boxes are ``[j, k]`` and
matrices are lists of rows.  Floats appear only in sampling results.
"""

from __future__ import annotations

import json

from .exact import fmt
from .lie import Weight, lower_bound, orbit_dims, r_of
from .polytope import Certificate, Polytope


def rat(q) -> str:
    return fmt(q)


def rats(xs) -> list:
    return [fmt(x) for x in xs]


def box(b) -> list:
    return [int(b[0]), int(b[1])]


def weight_fields(w: Weight) -> dict:
    return {"group": w.family.value, "n": w.n, "lambda": rats(w.entries)}


def polytope_json(p: Polytope) -> dict:
    A, b = p.dense()
    return {
        "kind": "polytope",
        **weight_fields(p.diagram.weight),
        "N": p.N,
        "boxes": [box(x) for x in p.diagram.boxes],
        "A": [rats(row) for row in A],
        "b": rats(b),
    }


def certificate_json(c: Certificate) -> dict:
    return {
        "V": rats(c.V),
        "W": [[int(x) for x in row] for row in c.W],
        "det": int(c.detW),
        "simplex_vertices": [rats(v) for v in c.simplex_vertices],
        "contained": bool(c.contained),
    }


def bound_fields(w: Weight, exact_width, upper) -> dict:
    r_prime, star = lower_bound(w)
    real, N = orbit_dims(w)
    return {
        **weight_fields(w),
        "r": rat(r_of(w)),
        "r_prime": rat(r_prime),
        "condition_star": bool(star),
        "real_dim": real,
        "N": N,
        "exact_width": None if exact_width is None else rat(exact_width),
        "indecomposable_upper_bound": None if upper is None else rat(upper),
    }


def dumps(report: dict) -> str:
    """Canonical one-line encoding (sorted keys), byte-stable for equal reports."""
    return json.dumps(report, sort_keys=True, separators=(",", ":"), allow_nan=False)


def float_or_none(x):
    if x is None:
        return None
    x = float(x)
    return x if x == x and abs(x) != float("inf") else None
