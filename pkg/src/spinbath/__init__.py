"""Exact dephasing dynamics of two qubits coupled to finite spin baths."""
__version__ = "0.1.0"

from .config import ScenarioConfig, TimeGrid, config_from_dict, load_config
from .entanglement import concurrence, concurrence_series, concurrence_xstate
from .errors import CapacityError, ConfigurationError, NumericError, StateError
from .model import BathMode, BathSpec, OhmicSpec, sample_bath
from .scenario import reproduce_figure, run_scenario

__all__ = [
    "__version__", "ScenarioConfig", "TimeGrid", "config_from_dict", "load_config",
    "concurrence", "concurrence_series", "concurrence_xstate", "CapacityError",
    "ConfigurationError", "NumericError", "StateError", "BathMode", "BathSpec",
    "OhmicSpec", "sample_bath", "reproduce_figure", "run_scenario",
]
