from __future__ import annotations


class ImhError(Exception):
    """Base class for every failure raised by the sampling library."""


class NonFiniteDensityError(ImhError, ValueError):
    """A density evaluated to -inf/nan where a finite value is required."""


class DatasetError(ImhError, ValueError):
    """Malformed probit input data (missing column, bad cell, singular design)."""


class MleConvergenceError(ImhError):
    """Newton-Raphson did not reach the gradient tolerance (often complete separation)."""


class SingularHessianError(ImhError):
    """The observed information matrix could not be inverted."""


class ConfigurationError(ImhError, ValueError):
    """Inconsistent experiment or command-line configuration."""
