"""Exception hierarchy shared across the toolkit.

The CLI maps these onto process exit codes, so library code should
raise the most specific class that applies.
"""


class SimplexError(Exception):
    """Base class for all toolkit errors."""


class ConfigError(SimplexError):
    """Invalid configuration or argument combination (exit code 2)."""


class DataError(SimplexError):
    """Unusable input data: parse failures, dimension mismatches,
    non-finite features, degenerate datasets (exit code 3)."""


class NumericalError(SimplexError):
    """A solver produced non-finite output or an impossible state
    (exit code 4)."""
