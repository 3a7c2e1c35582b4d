"""Exact arithmetic substrate: rationals, jets, Laurent polynomials, sampling."""

from .jets import Dual2, is_zero, jacobian, jet_eval, value_of
from .laurent import BiLaurent, exact_divide
from .rational import Q, as_q, parse_qlist, qlist, qstr, quadratic_roots, rational_sqrt
from .sampling import SeededSampler, sample_rational

__all__ = [
    "BiLaurent", "Dual2", "Q", "SeededSampler", "as_q", "exact_divide", "is_zero",
    "jacobian", "jet_eval", "parse_qlist", "qlist", "qstr", "quadratic_roots",
    "rational_sqrt", "sample_rational", "value_of",
]
