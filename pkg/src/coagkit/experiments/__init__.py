"""Declarative studies, CSV result tables and the ``coagkit`` command."""

from .config import ExperimentConfig, builtin_config, builtin_names, load_config, parse_config
from .results import ResultTable
from .studies import (
    run_cost_study,
    run_moment_study,
    run_self_convergence,
    run_study,
    run_validation,
    run_xmax_sweep,
)

__all__ = [
    "ExperimentConfig",
    "ResultTable",
    "builtin_config",
    "builtin_names",
    "load_config",
    "parse_config",
    "run_study",
    "run_validation",
    "run_self_convergence",
    "run_moment_study",
    "run_cost_study",
    "run_xmax_sweep",
]
