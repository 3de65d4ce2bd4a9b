"""Python bindings for the orlicz-distort core library."""

from ._core import (
    BisectionOptions,
    ConvergenceError,
    DistortionBundle,
    DomainError,
    GaugeFunction,
    InputError,
    LogPowerForm,
    RangeError,
    Stability,
    YoungFunction,
    conjugate,
    crosscheck_spread,
    default_cn,
    distort_form,
    inverse,
    kaufman_constant,
    net_premeasure,
    run_cli,
    sobolev_conjugate,
)

__all__ = [
    "BisectionOptions",
    "ConvergenceError",
    "DistortionBundle",
    "DomainError",
    "GaugeFunction",
    "InputError",
    "LogPowerForm",
    "RangeError",
    "Stability",
    "YoungFunction",
    "conjugate",
    "crosscheck_spread",
    "default_cn",
    "distort_form",
    "inverse",
    "kaufman_constant",
    "net_premeasure",
    "run_cli",
    "sobolev_conjugate",
]
