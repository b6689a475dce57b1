"""Exception types raised across the package."""


class GhzLbcError(Exception):
    """Base class for all errors raised by this package."""


class NormViolation(GhzLbcError, ValueError):
    """State amplitudes do not satisfy |alpha|^2 + |beta|^2 = 1."""


class PatternLengthMismatch(GhzLbcError, ValueError):
    """Basis pattern length does not match the qubit count."""


class TooFewQubits(GhzLbcError, ValueError):
    """Operation requires at least two qubits."""


class IndexOutOfRange(GhzLbcError, IndexError):
    """Index outside its admissible range."""


class NotXStructured(GhzLbcError, ValueError):
    """Density matrix carries coherences outside the single allowed pair."""


class NegativeInput(GhzLbcError, ValueError):
    """Rate or time argument must be nonnegative."""


class ProbabilityOutOfRange(GhzLbcError, ValueError):
    """Probability must lie in [0, 1]."""


class ConfigMismatch(GhzLbcError, ValueError):
    """Noise configuration and supplied parameters disagree."""


class DimensionTooSmall(GhzLbcError, ValueError):
    """Matrix dimension must be at least 2."""


class QubitCapExceeded(GhzLbcError, ValueError):
    """Brute-force routine refused to run above its qubit cap."""


class UnsupportedScenario(GhzLbcError, ValueError):
    """No factorized expression exists for this noise configuration."""


class DegenerateState(GhzLbcError, ValueError):
    """Product-state amplitudes make the requested test undefined."""


class NumericalFailure(GhzLbcError, ArithmeticError):
    """A numerical routine produced values outside its guaranteed range."""


class ConfigParseError(GhzLbcError, ValueError):
    """Experiment configuration is malformed."""


class UnknownPreset(GhzLbcError, ValueError):
    """Requested preset name is not defined."""
