"""Exception types shared across the package."""


class LatticeAggError(Exception):
    """Base class for all package-specific errors."""


class SamplingError(LatticeAggError):
    """Rejection or relaunch budget exhausted while sampling.

    Attributes
    ----------
    attempts : number of attempts made before giving up.
    """

    def __init__(self, message: str, attempts: int = 0):
        super().__init__(message)
        self.attempts = attempts


class SimulationError(LatticeAggError):
    """A growth step failed; carries the 1-based step index."""

    def __init__(self, message: str, step: int):
        super().__init__(f"step {step}: {message}")
        self.step = step


class ClusterFileError(LatticeAggError):
    """Malformed cluster or growth file; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
