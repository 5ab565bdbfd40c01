"""Exact minimal log discrepancies for weighted hypersurfaces.

Builds the Sylvester-sequence family of exceptional Fano hypersurfaces X_n,
computes mlds of cyclic quotient and Newton non-degenerate hypersurface
quotient singularities, and checks the arithmetic claims made about X_n.
"""

from mldlab.alpha import AlphaBounds, fermat_lct, nu_bounds, tangent_cone, tangent_cone_klt
from mldlab.exact import frac, sylvester, sylvester_prefix_sum
from mldlab.family import FamilyMember, build_family, certify, closed_form_mld
from mldlab.mld import (
    Classification,
    LatticePoint,
    MldResult,
    QuotientSingularity,
    cyclic_quotient_mld,
    hypersurface_quotient_mld,
    lattice_value,
)
from mldlab.wps import WeightedPolynomial, newton_interior_slack

__version__ = "0.1.0"
