"""Exact/float simplex, branch-and-bound, certificates and a vertex-enumeration oracle."""

from .bnb import BranchBudget, solve_milp
from .certificate import CertificateCheck, check_certificate
from .oracle import vertex_enumeration_oracle
from .simplex import EXACT, FLOAT, ArithmeticMode, LPSolution, Status, decimal_string, solve_lp

__all__ = [
    "ArithmeticMode",
    "BranchBudget",
    "CertificateCheck",
    "EXACT",
    "FLOAT",
    "LPSolution",
    "Status",
    "check_certificate",
    "decimal_string",
    "solve_lp",
    "solve_milp",
    "vertex_enumeration_oracle",
]
