"""Dissipative generation of tripartite entanglement in three spin qubits under correlated noise."""
from .algebra import DensityMatrix
from .analytic import AnalyticUnsupported, SectorRates, sector_rates
from .entanglement import (
    bipartite_negativity,
    negativity_from_fidelity,
    tripartite_negativity,
    w_fidelity,
)
from .integrator import EvolutionSpec, TimeSeries, calibrate_pulse, propagate
from .model import CoherentModel, CPViolationError, Drive, ModelError, NoiseModel, jump_operators, validate_cp
from .scenario import Scenario, figure_preset, parse_scenario, run_scenario

__version__ = "0.1.0"

__all__ = [
    "AnalyticUnsupported",
    "CPViolationError",
    "CoherentModel",
    "DensityMatrix",
    "Drive",
    "EvolutionSpec",
    "ModelError",
    "NoiseModel",
    "Scenario",
    "SectorRates",
    "TimeSeries",
    "bipartite_negativity",
    "calibrate_pulse",
    "figure_preset",
    "jump_operators",
    "negativity_from_fidelity",
    "parse_scenario",
    "propagate",
    "run_scenario",
    "sector_rates",
    "tripartite_negativity",
    "validate_cp",
    "w_fidelity",
]
