"""Exact computations for quantum cluster algebras with compatible Poisson
structures and their second quantization."""

from .errors import QCAError
from .laurent import LaurentUV, LaurentV, laurent_divide_exact, q_analog
from .seed import (
    CompatibleTriple,
    ExtendedExchangeMatrix,
    PoissonMatrix,
    QuantumSeed,
    apply_sequence,
    mutate_B,
    mutate_Lambda,
    mutate_Omega_direct,
    mutate_Omega_nonquantum,
    mutate_W,
)

__all__ = [
    "QCAError",
    "LaurentV",
    "LaurentUV",
    "q_analog",
    "laurent_divide_exact",
    "ExtendedExchangeMatrix",
    "QuantumSeed",
    "CompatibleTriple",
    "PoissonMatrix",
    "apply_sequence",
    "mutate_B",
    "mutate_Lambda",
    "mutate_W",
    "mutate_Omega_direct",
    "mutate_Omega_nonquantum",
]
