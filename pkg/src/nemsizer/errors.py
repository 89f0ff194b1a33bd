"""Exception hierarchy.

Two families, mirrored by the CLI exit codes: ``InputError`` (bad files,
bad config, bad CLI parameters -> exit 2) and ``ModelError`` (a model
precondition does not hold for otherwise well-formed inputs -> exit 3).
"""


class NemsizerError(Exception):
    """Base class for all package errors."""


class InputError(NemsizerError):
    """Malformed or missing input data / configuration."""


class ModelError(NemsizerError):
    """A model precondition is violated (valid data, inapplicable method)."""


class ConfigError(InputError):
    """Bad key/value config file (unknown, missing or unparseable key)."""


class MissingColumn(InputError):
    """A mapped CSV column is absent from the header row."""


class MalformedRow(InputError):
    """A CSV row cannot be parsed; carries the 1-based line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class NonMonotonicTimestamp(InputError):
    """Timestamps in an interval file are not strictly increasing."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class InvalidLawParameters(InputError):
    """Synthetic-data law parameters are out of range."""


class DegenerateTariff(ModelError):
    """Price ordering too degenerate for the storage sizing rule."""


class ParityRequired(ModelError):
    """Closed-form solar rule needs buy == sell in both periods."""


class DegenerateSamples(ModelError):
    """Sample set has no spread (e.g. all values equal)."""


class ProbabilityOutOfRange(ModelError):
    """Quantile probability must lie strictly inside (0, 1)."""


class NegativeIrradiance(ModelError):
    """Irradiance passed to the PV conversion is negative (clamp at ingest)."""
