"""Casimir and van der Waals forces between real-material plates from Lifshitz theory."""

__version__ = "0.1.0"

from .core import CONSTANTS, DEFAULT_TOLERANCES, Grid, Tolerances, make_grid, matsubara_frequency
from .errors import (CasimirError, ConfigurationError, ConvergenceError, DomainError, GeometryError,
                     UnsupportedOperationError, ValidationError)
from .geometry import (OscillatorConfig, RoughnessProfile, SphereConfig, ideal_free_energy, ideal_pressure,
                       ideal_sphere_force, oscillator_analysis, pfa_sphere_force, pressure_from_gradient,
                       rough_pressure)
from .lifshitz import (PlateConfig, ThermalState, classical_term, entropy, free_energy, pressure,
                       zero_temperature_free_energy, zero_temperature_pressure)
from .materials import PRESETS, MaterialModel, OpticalTable, eps_imag_axis, kk_transform, load_optical_table
from .reflection import Prescription, fresnel, impedance_reflection, zero_freq_limit
from .yukawa import ExperimentBand, LayeredPlate, YukawaParams, constrain, load_band, yukawa_pressure
