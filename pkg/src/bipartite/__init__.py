"""Bipartite entanglement toolkit: density operators, Schmidt and PPT tests,
CHSH analysis and single-qubit teleportation."""

from .bell import ChshReport, ChshSetting, chsh_value, correlation, lhv_max_chsh, optimal_setting, singlet
from .entanglement import SchmidtDecomposition, SeparabilityVerdict, Verdict, schmidt, separability_decision
from .states import BlochVector, DensityOperator, MeasurementAxis, PureState, Subsystem
from .teleport import BellLabel, TeleportTranscript

__all__ = [
    "BellLabel",
    "BlochVector",
    "ChshReport",
    "ChshSetting",
    "DensityOperator",
    "MeasurementAxis",
    "PureState",
    "SchmidtDecomposition",
    "SeparabilityVerdict",
    "Subsystem",
    "TeleportTranscript",
    "Verdict",
    "chsh_value",
    "correlation",
    "lhv_max_chsh",
    "optimal_setting",
    "schmidt",
    "separability_decision",
    "singlet",
]
