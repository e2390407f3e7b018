"""Error taxonomy shared across the package.

Both error types subclass ValueError so library code can be used without
importing them; the CLI maps them to distinct exit codes (config -> 1,
data -> 2).
"""


class ConfigError(ValueError):
    """Invalid configuration: bad parameter value, unknown key, missing file."""


class DataError(ValueError):
    """Malformed or unusable input data: parse failures, bad magic, bad labels."""
