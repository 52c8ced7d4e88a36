"""Parity of eta-quotient Fourier coefficients.

Bit-packed GF(2) power series, eta-quotient expansion, lacunarity
criteria, even/odd counting over arithmetic progressions, and
representation counts of the associated dyadic quadratic forms.
"""

from .errors import (
    BoundExceedsTruncationError,
    CountOverflowError,
    EtaParityError,
    EtaSyntaxError,
    NotAUnitError,
    ZeroSubscriptError,
)
from .etaq import (
    EtaQuotientSpec,
    LacunarityVerdict,
    check_lacunarity,
    expand,
    minimal_d,
    parse,
    render,
)
from .gf2series import (
    GF2Series,
    add,
    first_difference,
    geometric,
    inverse,
    mul,
    pentagonal_series,
    pow2d,
    power,
    square,
    truncate,
)
from .parity import (
    ParityCount,
    ScanPoint,
    ScanReport,
    check_run_structure,
    count_parity,
    density_scan,
    growth_scan,
    product_identity_mismatch,
    theta_count_relative_error,
    theta_odd_count,
)
from .quadform import (
    QuadFormSpec,
    RepCountTable,
    odd_rep_count,
    probe_power_equivalence,
    read_parity_bitmap,
    rep_counts,
    variable_theta,
    write_parity_bitmap,
)

__version__ = "0.1.0"

__all__ = [
    "BoundExceedsTruncationError",
    "CountOverflowError",
    "EtaParityError",
    "EtaSyntaxError",
    "NotAUnitError",
    "ZeroSubscriptError",
    "EtaQuotientSpec",
    "LacunarityVerdict",
    "check_lacunarity",
    "expand",
    "minimal_d",
    "parse",
    "render",
    "GF2Series",
    "add",
    "first_difference",
    "geometric",
    "inverse",
    "mul",
    "pentagonal_series",
    "pow2d",
    "power",
    "square",
    "truncate",
    "ParityCount",
    "ScanPoint",
    "ScanReport",
    "check_run_structure",
    "count_parity",
    "density_scan",
    "growth_scan",
    "product_identity_mismatch",
    "theta_count_relative_error",
    "theta_odd_count",
    "QuadFormSpec",
    "RepCountTable",
    "odd_rep_count",
    "probe_power_equivalence",
    "read_parity_bitmap",
    "rep_counts",
    "variable_theta",
    "write_parity_bitmap",
    "__version__",
]
