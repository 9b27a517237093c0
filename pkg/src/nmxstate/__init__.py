"""Correlation measures of two noisy oscillators in non-Markovian reservoirs."""

__version__ = "0.1.0"

from .estimators import CorrelationMeasures, InjectedEnergy  # noqa: E402
from .measures import (  # noqa: E402
    DiscordOptimizerConfig,
    MeasureSet,
    concurrence,
    geometric_discord,
    log_negativity,
    measure_all,
    negativity,
    quantum_discord,
)
from .noise import NoiseKernel, QuadratureConfig, epsilon_at, epsilon_closed_form  # noqa: E402
from .state import XState, bell_initial, rho_normalized, rho_unnormalized  # noqa: E402
from .sweep import SweepConfig, SweepTable, run_sweep  # noqa: E402
