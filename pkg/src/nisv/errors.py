"""Exception types shared across the package."""

from __future__ import annotations


class DomainError(ValueError):
    """A point or symbol lies outside the region where it can be evaluated."""


class OrderMismatch(ValueError):
    """Two objects were truncated at different orders."""


class NotInHardySpace(ValueError):
    """A function has a pole in the closed disc or closed right half-plane."""


class IllConditionedKernel(RuntimeError):
    """A numeric kernel cut has no clear spectral gap."""

    def __init__(self, message: str, singular_values=None, cut: int | None = None):
        super().__init__(message)
        self.singular_values = singular_values
        self.cut = cut


class ConfigError(ValueError):
    """Invalid configuration file or command-line override."""
