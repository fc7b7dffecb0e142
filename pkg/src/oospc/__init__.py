"""Optical orthogonal signature pattern codes from group-invariant packing designs."""

from .bounds import johnson_bound, oospc_upper_bound, upper_bound
from .design import (DesignInstance, FanDesign, Oospc, RotationalDesign, VerificationReport,
                     dumps, loads, read_design, write_design)
from .errors import (AmbientMismatchError, ConstructionError, HypothesisError, OospcError,
                     ParameterError, ParseError)
from .groups import Block
from .verify import verify

__all__ = [
    "AmbientMismatchError", "Block", "ConstructionError", "DesignInstance", "FanDesign",
    "HypothesisError", "Oospc", "OospcError", "ParameterError", "ParseError",
    "RotationalDesign", "VerificationReport", "dumps", "johnson_bound", "loads",
    "oospc_upper_bound", "read_design", "upper_bound", "verify", "write_design",
]
__version__ = "0.1.0"
