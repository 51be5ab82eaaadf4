"""Exception types shared across the validator."""

from __future__ import annotations


class ValidatorError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(ValidatorError):
    """Invalid run configuration, CLI arguments, or domain specification."""


class DomainSpecError(ConfigError):
    """A domain specification file violates its schema or invariants."""


class TurtleSyntaxError(ValidatorError):
    """Malformed Turtle input.

    Carries the 1-based line and column of the offending token.
    """

    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.message = message


class UnknownPrefixError(ValidatorError):
    """A prefixed name uses a prefix with no @prefix declaration."""

    def __init__(self, prefix: str, line: int = 0, column: int = 0):
        super().__init__(f"unknown prefix '{prefix}:' at line {line}, column {column}")
        self.prefix = prefix
        self.line = line
        self.column = column


class NetworkError(ValidatorError):
    """An HTTP request failed below the application layer."""

    def __init__(self, cause: str):
        super().__init__(cause)
        self.cause = cause


class EndpointTimeoutError(NetworkError):
    """A SPARQL endpoint did not answer in time; retry with a smaller limit."""


class SourceError(ValidatorError):
    """A knowledge-source request failed.

    category is one of: network, auth, parse, rate-limited.
    """

    CATEGORIES = ("network", "auth", "parse", "rate-limited")

    def __init__(self, source_id: str, category: str, message: str):
        if category not in self.CATEGORIES:
            raise ValueError(f"unknown source error category: {category}")
        super().__init__(f"[{source_id}] {category}: {message}")
        self.source_id = source_id
        self.category = category
        self.message = message


class FixtureFormatError(ValidatorError):
    """A fixture source file does not follow the fixture schema."""

    def __init__(self, path: str, detail: str):
        super().__init__(f"{path}: {detail}")
        self.path = path
        self.detail = detail


class CoordinateRangeError(ValidatorError):
    """Latitude or longitude outside the valid degree ranges."""


class NegativeWeightError(ValidatorError):
    """A raw source weight is negative."""

    def __init__(self, index: int):
        super().__init__(f"weight at index {index} is negative")
        self.index = index


class EmptyAttributeSpaceError(ValidatorError):
    """An instance reached scoring with no attribute values (M = 0)."""


class MissingLabelError(ValidatorError):
    """No baseline label exists for a (subject, property) pair."""

    def __init__(self, subject: str, property_name: str):
        super().__init__(f"no baseline label for ({subject}, {property_name})")
        self.subject = subject
        self.property_name = property_name


class EmptyEvaluationError(ValidatorError):
    """Metrics were requested over an empty classification list."""
