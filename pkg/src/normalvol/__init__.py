"""Exact volumes and mixed volumes of normal complexes of marked fans.

The package constructs normal complexes of marked simplicial fans,
computes their (mixed) volumes by several independent exact algorithms,
builds Bergman fans of matroids, and verifies Alexandrov-Fenchel and
log-concavity properties with rational arithmetic throughout.
"""

from .errors import NormalVolError
from .fan import MarkedFan, build_fan, fan_to_json, is_tropical, star
from .normalcx import (
    Context,
    classify_z,
    find_cubical,
    mvol_polarization_oracle,
    mvol_recursive,
    vol_polynomial,
    vol_recursive,
    w_vector,
)
from .chow import ChowClass, deg_product, degree, multiply_divisor
from .matroid import (
    Matroid,
    alpha_beta_z,
    bergman_fan,
    char_poly,
    e0_inner_product,
    from_flats,
    graphic,
    linear,
    uniform,
)
from .af import af_check, check_reduce_conditions, hrw_verify, lorentzian_spot_check

__all__ = [
    "NormalVolError",
    "MarkedFan",
    "build_fan",
    "fan_to_json",
    "is_tropical",
    "star",
    "Context",
    "classify_z",
    "find_cubical",
    "w_vector",
    "vol_recursive",
    "vol_polynomial",
    "mvol_recursive",
    "mvol_polarization_oracle",
    "ChowClass",
    "multiply_divisor",
    "degree",
    "deg_product",
    "Matroid",
    "from_flats",
    "uniform",
    "graphic",
    "linear",
    "char_poly",
    "bergman_fan",
    "e0_inner_product",
    "alpha_beta_z",
    "af_check",
    "check_reduce_conditions",
    "lorentzian_spot_check",
    "hrw_verify",
]

__version__ = "0.1.0"
