"""Exact constructive analysis on the unit interval.

Everything here computes with unbounded-integer rationals; there is no
floating point anywhere. The layers, bottom up:

- :mod:`nicecover.rational`: exact rational carrier, parsing, rendering.
- :mod:`nicecover.crn`: computable reals as approximation programs paired
  with precision regulators, plus arithmetic and regulator validation.
- :mod:`nicecover.machine`: a tiny counter machine with exact step
  accounting and a dovetailing enumerator.
- :mod:`nicecover.analysis`: waiting sequences that tie machine runs to
  real values, the step-certified halting probe, and bisection search.
- :mod:`nicecover.cover`: open interval covers of [0,1], exact Lebesgue
  numbers, epsilon-nets, and checkable finite-subcover certificates.
- :mod:`nicecover.cli`: the ``nicecover`` command.
"""

from .crn import CRN, Apartness, approx_to, compare_apart, from_rational, validate_regulator
from .errors import (
    BudgetExceeded,
    DomainError,
    InvalidProgram,
    NoContainingElement,
    NonpositiveRadius,
    NotACover,
    NotNiceCover,
    NotSeparated,
    ParseError,
    ZeroDenominator,
)
from .rational import Order, Rational, compare, make_rational, parse_rational, render

__version__ = "0.1.0"

__all__ = [
    "CRN",
    "Apartness",
    "BudgetExceeded",
    "DomainError",
    "InvalidProgram",
    "NoContainingElement",
    "NonpositiveRadius",
    "NotACover",
    "NotNiceCover",
    "NotSeparated",
    "Order",
    "ParseError",
    "Rational",
    "ZeroDenominator",
    "approx_to",
    "compare",
    "compare_apart",
    "from_rational",
    "make_rational",
    "parse_rational",
    "render",
    "validate_regulator",
    "__version__",
]
