"""Python interface to the gga core library.

Configuration arguments are partial documents in the same layout as the
CLI's JSON config; missing keys take their defaults.
"""

from ._core import (
    ConfigError,
    EvaluationError,
    UsageError,
    bifurcation_sweep,
    classify_chase,
    compare,
    defaults,
    dynamic_objective,
    evolve,
    meta_optimize,
    mutation_rates,
    newton_step,
    rastrigin,
    run_ensemble,
)

__all__ = [
    "ConfigError",
    "EvaluationError",
    "UsageError",
    "bifurcation_sweep",
    "classify_chase",
    "compare",
    "defaults",
    "dynamic_objective",
    "evolve",
    "meta_optimize",
    "mutation_rates",
    "newton_step",
    "rastrigin",
    "run_ensemble",
]
