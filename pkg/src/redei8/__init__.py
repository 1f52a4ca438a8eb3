"""2-primary ranks of class groups of Q(sqrt(-p_1...p_t)) and quadratic forms over F_2."""

from .kernels import BACKEND
from .quadform import Classification, FormType, QuadForm, classify, nullity_set, predicted_nullities
from .redei import EightRankReport, FieldSpec, eight_rank_report, four_rank, validate_field
from .report import FieldReport, field_report

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Classification",
    "EightRankReport",
    "FieldReport",
    "FieldSpec",
    "FormType",
    "QuadForm",
    "classify",
    "eight_rank_report",
    "field_report",
    "four_rank",
    "nullity_set",
    "predicted_nullities",
    "validate_field",
]
