"""Solvers for the Smoluchowski coagulation equation on uniform grids.

Two discretizations share the same grids, kernels and diagnostics:

* :mod:`coagkit.fem`  -- piecewise-constant finite elements on f;
* :mod:`coagkit.flfm` -- the finite volume flux scheme on g = x f.

:mod:`coagkit.analytic` holds the closed-form solutions for the constant and
multiplicative kernels and :mod:`coagkit.experiments` the studies and CLI.
"""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    CoagError,
    ConfigError,
    ConvergenceError,
    DomainError,
    IncompatibleGridError,
    IntegrandError,
    IntegrationError,
    InvalidDomainError,
    TooFewElementsError,
)
from .kernel import CONSTANT, MULTIPLICATIVE, Kernel, Kind, custom_kernel, kernel_from_name  # noqa: E402
from .mesh import Grid, make_uniform_grid, restrict_to_coarse  # noqa: E402
