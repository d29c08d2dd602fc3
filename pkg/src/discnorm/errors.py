"""Exception types shared across the package."""


class ConfigError(Exception):
    """Invalid configuration: bad grid counts, unknown corpus family, malformed run config."""


class DomainError(ValueError):
    """An input lies outside the mathematical domain of an operation."""


class EvaluationError(RuntimeError):
    """A node sum produced a non-finite value; the message names the offending node."""


class NormalizationError(RuntimeError):
    """A weight could not be rescaled to meet its constraint."""
