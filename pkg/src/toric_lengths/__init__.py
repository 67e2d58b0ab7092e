"""Exact lengths of extremal rays of Q-factorial toric Fano varieties with Picard number one."""

from .fan import (
    CoveringData,
    CurveClass,
    FanError,
    FanoFan,
    covering,
    covering_fan,
    from_weights,
    from_weights_with_overlattice,
    is_wps,
    new_fano_fan,
)
from .intersection import (
    anticanonical_degree,
    curve_divisor_via_cover,
    divisor_curve,
    length,
    local_blowup_numbers,
)
from .lattice import Overlattice, hnf, snf

__all__ = [
    "CoveringData",
    "CurveClass",
    "FanError",
    "FanoFan",
    "Overlattice",
    "anticanonical_degree",
    "covering",
    "covering_fan",
    "curve_divisor_via_cover",
    "divisor_curve",
    "from_weights",
    "from_weights_with_overlattice",
    "hnf",
    "is_wps",
    "length",
    "local_blowup_numbers",
    "new_fano_fan",
    "snf",
]
