"""Deciding and certifying compactness of multiplication operators."""

from .approximant import Approximant, coefficient_error, finite_rank_approximant
from .certify import (
    Certificate,
    MinimalIndices,
    Verdict,
    certify_element_compact,
    certify_mult_compact,
    ideal_membership,
    minimal_indices,
    pair_reports,
)
from .conditions import (
    ConditionReport,
    Failure,
    check_pair,
    oracle_check_pair,
    stabilization_bound,
)
from .witness import WitnessFamily, separation_bound, verify_separation, witness_family

__all__ = [
    "Approximant",
    "Certificate",
    "ConditionReport",
    "Failure",
    "MinimalIndices",
    "Verdict",
    "WitnessFamily",
    "certify_element_compact",
    "certify_mult_compact",
    "check_pair",
    "coefficient_error",
    "finite_rank_approximant",
    "ideal_membership",
    "minimal_indices",
    "oracle_check_pair",
    "pair_reports",
    "separation_bound",
    "stabilization_bound",
    "verify_separation",
    "witness_family",
]
