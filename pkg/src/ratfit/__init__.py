"""Adaptive barycentric rational approximation with three weight-solving drivers."""

from .barycentric import (
    BarycentricModel,
    PoleZeroReport,
    SmoothParts,
    detect_froissart,
    polynomial_weights,
)
from .engine import (
    ConvergenceTrace,
    EngineOptions,
    SampleSet,
    WeightSolve,
    budget_model,
    run,
)

__version__ = "0.1.0"

__all__ = [
    "BarycentricModel",
    "PoleZeroReport",
    "SmoothParts",
    "detect_froissart",
    "polynomial_weights",
    "ConvergenceTrace",
    "EngineOptions",
    "SampleSet",
    "WeightSolve",
    "budget_model",
    "run",
    "__version__",
]
