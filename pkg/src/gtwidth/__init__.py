"""Lower bounds for the Gromov width of U(n), SO(2n+1) and SO(2n) coadjoint orbits.

The bound comes from an explicit simplex inside the Gelfand-Tsetlin polytope
of the orbit; everything on the certificate side is exact rational arithmetic.
"""

from .errors import (
    ConstantMismatch,
    ContainmentFailure,
    DimensionMismatch,
    DomainViolation,
    GTWidthError,
    InternalInvariantError,
    InvalidWeight,
    LPInfeasible,
    NotRegular,
    PointOrbit,
    ShapeMismatch,
    UnimodularityFailure,
    UnknownBox,
    WrongFamily,
)
from .lie import Family, GroupSpec, Weight, condition_star, lower_bound, orbit_dims, r_of
from .diagram import Box, build_diagram
from .polytope import certificate, edges, hrep, matrix_W, simplex_R, vertex_V

__version__ = "0.1.0"
