"""Hamiltonian cycle algorithms for graphs close to Dirac's minimum-degree bound.

Two parameterisations are covered: at most ``k`` vertices below degree n/2
(kernel of at most 3k vertices), and minimum degree at least ceil(n/2) - k
(cycle extension, partition and colour-coding path cover).
"""
from .errors import (ContractViolation, DiracHamError, GraphFormatError, MalformedCertificate,
                     PreconditionError, Refusal)
from .graph import Graph, check_ham_cycle, is_ham_cycle, is_two_connected
from .outcome import Exhaustive, Hamiltonian, NonHamiltonian

__version__ = "0.1.0"

__all__ = [
    "ContractViolation", "DiracHamError", "Exhaustive", "Graph", "GraphFormatError",
    "Hamiltonian", "MalformedCertificate", "NonHamiltonian", "PreconditionError", "Refusal",
    "check_ham_cycle", "is_ham_cycle", "is_two_connected",
]
