"""Exact verification of 2-class capitulation in Q(sqrt(2 p1 p2), i).

Modules, bottom up: arith, gaussian, pell, multiquad (with characters),
units, forms, capitulation (with identities), report and cli.
"""
from .capitulation import (
    CapKernel,
    InvalidPair,
    computed_kernel,
    eligibility,
    order_two_check,
    predicted_kernels,
    thm17_count,
)
from .forms import class_number_imag, class_number_real, kuroda_check
from .identities import verify_radical_identity
from .multiquad import Field, is_square
from .pell import fund_unit, pell_factor
from .report import PairReport, run_pair
from .units import sfu_classify, unit_index_K3, unit_index_quad_i

__version__ = "0.1.0"

__all__ = [
    "CapKernel",
    "Field",
    "InvalidPair",
    "PairReport",
    "class_number_imag",
    "class_number_real",
    "computed_kernel",
    "eligibility",
    "fund_unit",
    "is_square",
    "kuroda_check",
    "order_two_check",
    "pell_factor",
    "predicted_kernels",
    "run_pair",
    "sfu_classify",
    "thm17_count",
    "unit_index_K3",
    "unit_index_quad_i",
    "verify_radical_identity",
]
