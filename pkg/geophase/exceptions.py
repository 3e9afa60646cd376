"""
Custom exception classes for the geophase package.
"""

from typing import Optional


class GeoPhaseError(Exception):
    """Base exception for all geophase errors."""
    pass

class ValidationError(GeoPhaseError):
    """Raised when an input value lies outside its domain."""
    pass

class ConfigurationError(GeoPhaseError):
    """Raised when a configuration object or override is invalid."""
    pass

class DegeneracyError(ValidationError):
    """Raised when a trajectory stays degenerate for too many consecutive samples.

    Attributes:
        t_start: time of the first degenerate sample in the offending run
        t_end: time of the last degenerate sample in the offending run
    """
    def __init__(self, message: str, t_start: float, t_end: float):
        super().__init__(message)
        self.t_start = t_start
        self.t_end = t_end

class GaugeAlignmentError(GeoPhaseError):
    """Raised when two eigenvectors are too close to orthogonal to align."""
    pass

class SolverDivergedError(GeoPhaseError):
    """Raised when a numeric solver loses finiteness or trace preservation.

    Attributes:
        time: time of the first sample that failed the check (if known)
        drift: largest trace drift observed
    """
    def __init__(self, message: str, time: Optional[float] = None, drift: Optional[float] = None):
        super().__init__(message)
        self.time = time
        self.drift = drift

class GridMismatchError(ValidationError):
    """Raised when two trajectories cannot be compared sample by sample."""
    pass

class OutputError(GeoPhaseError):
    """Raised when CSV output cannot be written."""
    pass
