"""Exception types shared across the toolkit."""


class HashnetError(Exception):
    """Base class for all toolkit errors."""


class ParseError(HashnetError):
    """A record line could not be parsed. Carries the 1-based line number."""

    def __init__(self, line_number, message):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class DuplicateKeyError(ParseError):
    """A unique key (e.g. tweet_id) appeared twice in a record stream."""


class ConfigError(HashnetError):
    """Invalid run or generator configuration. Names the offending field."""

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field


class UndefinedMetricError(HashnetError):
    """A metric is undefined for the given graph (e.g. density of a 1-node graph)."""


class UndefinedRatioError(UndefinedMetricError):
    """A ratio indicator has a zero or empty denominator."""


class ConvergenceError(HashnetError):
    """An iterative solver did not converge. Carries the last residual."""

    def __init__(self, message, residual):
        super().__init__(f"{message} (residual {residual:.3e})")
        self.residual = residual


class MissingAttributeError(HashnetError):
    """An account id could not be resolved in the attribute registry."""


class SchemaMismatchError(HashnetError):
    """Two reports carry incompatible schema versions."""
