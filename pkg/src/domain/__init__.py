from .exceptions import ConfigError, DomainError, NumericalError, ValidationError

__all__ = [
    "ConfigError",
    "DomainError",
    "NumericalError",
    "ValidationError",
]
