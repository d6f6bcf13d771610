"""Exact Poisson algebra, quantization maps and packet evolution."""

from ._core import (
    Config,
    ConfigError,
    DomainError,
    MismatchError,
    NumericError,
    Operator,
    ParseError,
    Polynomial,
    bracket,
    check_dirac,
    commutator,
    dirac_defect,
    evolution_identity_defect,
    evolve,
    frame_compare,
    heisenberg_derivative,
    load_config,
    parse,
    parse_config,
    quantize,
)

__all__ = [
    "Config",
    "ConfigError",
    "DomainError",
    "MismatchError",
    "NumericError",
    "Operator",
    "ParseError",
    "Polynomial",
    "bracket",
    "check_dirac",
    "commutator",
    "dirac_defect",
    "evolution_identity_defect",
    "evolve",
    "frame_compare",
    "heisenberg_derivative",
    "load_config",
    "parse",
    "parse_config",
    "quantize",
]
