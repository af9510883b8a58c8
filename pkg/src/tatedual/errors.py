"""Exception hierarchy shared across the package."""

from __future__ import annotations


class TatedualError(Exception):
    """Base class for all package errors."""


class InvalidInput(TatedualError, ValueError):
    """A caller supplied parameters outside the supported domain."""


class ResourceGuard(TatedualError, RuntimeError):
    """A computation would exceed the configured size limits."""


class VerificationFailure(TatedualError, RuntimeError):
    """A mathematical cross-check failed; never raised for I/O problems."""


class RouteDisagreement(VerificationFailure):
    """Two independent shift computations produced different answers."""

    def __init__(self, message: str, first=None, second=None):
        super().__init__(message)
        self.first = first
        self.second = second
