"""Exact invariants of plane curve singularities and holomorphic
foliation germs, with machine-checked identities.

Everything is computed over the rationals with certified degrees and
precisions: colengths by truncated exact row reduction, branches by
rational Newton-Puiseux, global data through affine charts.
"""

from .config import Config
from .foliation import (
    IdentityVerdict,
    LocalFoliation,
    SepDivisor,
    adjunction_suite,
    check_balance_identity,
    check_branch_sum_inequality,
    check_gsv_tjurina_bound,
    check_index_transfer,
    check_ratio_bound,
    chi,
    chi_checked,
    effective_divisor,
    gsv,
    is_invariant,
    mult_along_branch,
    mult_along_curve,
    mult_along_divisor,
    theta_residual,
    tjurina_foliation,
)
from .localring import (
    INFINITE,
    Colength,
    LocalIdeal,
    colength,
    intersection_multiplicity,
    milnor_curve,
    milnor_foliation,
    multiplicity_curve,
    tjurina_curve,
)
from .poly import Poly, Rat, parse_poly, poly_order, resultant
from .projective import (
    ProjPoint,
    ProjectiveFoliation,
    alcantara_family,
    blowup_chart,
    certify_singularities,
    chart,
    check_cerveau_lins_neto,
    check_global_tjurina,
    check_gsv_sum,
    check_ploski_bound,
    check_soares_bound,
    curve_chart,
    genus,
)
from .puiseux import (
    Branch,
    NewtonPolygon,
    ValueSet,
    branch_count,
    branch_decompose,
    differential_values,
    gap_count,
    newton_polygon,
    order_along,
    semigroup,
)
from .series import TruncSeries, series_substitute

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
