"""Exact special values of zeta functions of one-dimensional arithmetic schemes at s = n < 0."""

from __future__ import annotations

__version__ = "0.1.0"

from .dsl import parse, to_text  # noqa: E402
from .errors import ZetaCheckError  # noqa: E402
from .ledger import MotivicProfile, predicted_special_value, scheme_profile  # noqa: E402
from .scheme import archimedean_profile, delta, normalize, vanishing_order  # noqa: E402
from .zeta import SpecialValue, evaluate, factorize, special_value, zeta_order  # noqa: E402

__all__ = [
    "MotivicProfile",
    "SpecialValue",
    "ZetaCheckError",
    "archimedean_profile",
    "delta",
    "evaluate",
    "factorize",
    "normalize",
    "parse",
    "predicted_special_value",
    "scheme_profile",
    "special_value",
    "to_text",
    "vanishing_order",
    "zeta_order",
]
