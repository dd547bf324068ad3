"""treeinverse: exact inversion of formal power series via spin models on trees.

The package solves polynomial fixed-point systems attached to finite
alphabets and square matrices, producing pairs of mutually inverse formal
power series, and provides the combinatorial machinery (planar rooted trees,
spin-model partition functions, grafted trees, chain morphism counts) that
explains and cross-checks the algebra, plus exact-to-numeric asymptotics for
the resulting algebraic generating functions.
"""

from .rings import (
    QQ,
    DUAL,
    PARAMS,
    ConsistencyError,
    Dual,
    InputError,
    ModInt,
    ParamPoly,
    SizeLimitError,
    modring,
    ring_from_json,
)
from .series import (
    Monomial,
    Series,
    compose_in_x,
    derivative_x,
    revert_newton,
    series_from_json,
    series_inverse,
    series_to_json,
)

__version__ = "0.1.0"

__all__ = [
    "QQ",
    "DUAL",
    "PARAMS",
    "ConsistencyError",
    "Dual",
    "InputError",
    "ModInt",
    "Monomial",
    "ParamPoly",
    "Series",
    "SizeLimitError",
    "compose_in_x",
    "derivative_x",
    "modring",
    "revert_newton",
    "ring_from_json",
    "series_from_json",
    "series_inverse",
    "series_to_json",
]
