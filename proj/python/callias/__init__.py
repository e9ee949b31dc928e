"""Python front end for the callias C++ core."""

from ._core import (
    DomainError,
    NumericalError,
    classify,
    gamma_trace,
    gammas,
    index,
    inequality_ids,
    kernel,
    potential_value,
    resolvent_power_diagonal,
    sign_integral,
    sign_spectral,
    verify,
    verify_inequality,
    witten,
)

__all__ = [
    "DomainError",
    "NumericalError",
    "classify",
    "gamma_trace",
    "gammas",
    "index",
    "inequality_ids",
    "kernel",
    "potential_value",
    "resolvent_power_diagonal",
    "sign_integral",
    "sign_spectral",
    "verify",
    "verify_inequality",
    "witten",
]
