"""Stochastic inertial splitting solvers for composite regression.

Thin Python layer over the C++ core: proximal operators, polynomial
benchmark data, the grouped sparse regression problem and its solvers.
"""

from ._core import (
    ConfigError,
    GroupLasso,
    NumericalError,
    Regularizer,
    ValidationError,
    __version__,
    make_dataset,
    project_l1_ball,
    project_simplex,
    prox_group_l2,
    prox_l1,
    spectral_norm,
)

__all__ = [
    "ConfigError",
    "GroupLasso",
    "NumericalError",
    "Regularizer",
    "ValidationError",
    "__version__",
    "make_dataset",
    "project_l1_ball",
    "project_simplex",
    "prox_group_l2",
    "prox_l1",
    "spectral_norm",
]
