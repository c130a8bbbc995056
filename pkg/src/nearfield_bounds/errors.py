"""Exception types raised across the package.

Each class carries a short machine-readable ``code`` that the CLI prints
alongside the message.
"""


class NearFieldError(ValueError):
    code = "error"


class DomainError(NearFieldError):
    """A parameter lies outside its admissible range."""

    code = "domain"


class ConfigError(NearFieldError):
    """Inconsistent or incomplete run configuration."""

    code = "config"


class BracketError(NearFieldError):
    """The oracle search interval does not contain the boundary."""

    code = "bracket"
