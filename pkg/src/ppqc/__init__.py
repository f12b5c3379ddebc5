"""Density-matrix simulation of pseudo-pure-state quantum computation."""

from ppqc.errors import (
    ConfigError,
    ConstantFunctionError,
    DimensionError,
    IoError,
    NormalizationError,
    NotHermitianError,
    NotUnitaryError,
    OracleError,
    ParameterError,
    PPQCError,
    ProjectionError,
    SizeError,
    StateError,
)
from ppqc.oracles import OracleFunction
from ppqc.states import (
    DensityMatrix,
    PseudoPureState,
    PureState,
    WernerParameters,
    maximally_mixed,
    pseudo_pure,
    werner,
)

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "ConstantFunctionError",
    "DensityMatrix",
    "DimensionError",
    "IoError",
    "NormalizationError",
    "NotHermitianError",
    "NotUnitaryError",
    "OracleError",
    "OracleFunction",
    "ParameterError",
    "PPQCError",
    "ProjectionError",
    "PseudoPureState",
    "PureState",
    "SizeError",
    "StateError",
    "WernerParameters",
    "maximally_mixed",
    "pseudo_pure",
    "werner",
]
