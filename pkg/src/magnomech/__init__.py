"""Squeezed microwave output fields from a two-tone driven cavity magnomechanical system.

Modules
-------
params          parameter set, thermal occupations, JSON configs
drive           drive calibration (Rabi frequencies <-> effective couplings)
susceptibility  natural / composite / effective susceptibilities
rwa_spectrum    analytic output noise spectral density (RWA)
floquet         exact linear response including counter-rotating terms
steadystate     Lyapunov steady state, quadrature variances
sweep           G+ optimization and parameter sweeps
figures         reference-figure data workflows
"""

from .drive import DriveSpec, calibrate_rabi, mean_amplitude
from .floquet import converge, floquet_nsd
from .params import (ParameterError, SystemParams, baseline, emit_config, from_hz,
                     load_config, thermal_occupation, validate)
from .rwa_spectrum import NsdPoint, nsd_components, nsd_zero_freq, spectrum, squeezing_db
from .steadystate import is_stable, quadrature_variances, steady_covariance
from .sweep import Optimum, optimize_gplus, sensitivity

__version__ = "0.1.0"
