"""Laser-induced thermotherapy simulator with tissue vaporization."""

from ._litt import (
    CaseNotFound,
    ConfigError,
    RunFailed,
    ValidationError,
    __version__,
    arrhenius_rate,
    cases,
    check_config,
    default_config,
    effective_capacity,
    enthalpy_capacity,
    enthalpy_clamp,
    find_case,
    laser_power,
    run_case,
    stefan_zeta,
    to_celsius,
    to_kelvin,
    verify,
    water_density,
    water_density_slope,
)

__all__ = [
    "CaseNotFound",
    "ConfigError",
    "RunFailed",
    "ValidationError",
    "__version__",
    "arrhenius_rate",
    "cases",
    "check_config",
    "default_config",
    "effective_capacity",
    "enthalpy_capacity",
    "enthalpy_clamp",
    "find_case",
    "laser_power",
    "run_case",
    "stefan_zeta",
    "to_celsius",
    "to_kelvin",
    "verify",
    "water_density",
    "water_density_slope",
]
