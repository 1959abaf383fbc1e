"""Exception types shared across the package."""


class DimensionMismatchError(ValueError):
    """A feature index fell outside the model's feature-space dimension."""


class ConfigError(ValueError):
    """Invalid configuration or unusable input (empty dataset, bad flag value)."""


class DataFormatError(ValueError):
    """Malformed file content; carries the offending path and line number."""

    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        if path is not None and line is not None:
            message = f"{path}:{line}: {message}"
        elif path is not None:
            message = f"{path}: {message}"
        elif line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
