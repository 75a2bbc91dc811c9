"""Exception and warning types shared across the package."""


class Error(ValueError):
    """Base class for all repsample errors."""


class ConfigError(Error):
    """Invalid configuration: bad arguments, unknown columns, malformed requests.

    The CLI maps this (and I/O failures) to exit code 2.
    """


class DataFormatError(ConfigError):
    """Malformed input data: ragged CSV rows, duplicate headers, bad ids."""


class DegenerateInputError(Error):
    """Statistically degenerate input: empty variable after missing-value
    removal, zero population mean under a relative margin of error, more
    clusters requested than distinct values, empty composition.

    The CLI maps this to exit code 1.
    """


class DegenerateInputWarning(UserWarning):
    """Emitted when a computation proceeds through a degenerate case
    (constant variable, all-zero stratum variances, fewer than three
    distinct values for elbow selection)."""
