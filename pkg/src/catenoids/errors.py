"""Exception types raised by the library."""


class CatenoidError(ValueError):
    """Base class for all errors raised by :mod:`catenoids`."""


class DomainError(CatenoidError):
    """A parameter lies outside the domain of the requested map."""


class BranchError(DomainError):
    """The blow-up chart was evaluated off its inverse-cosine branch."""


class NotHermitianError(CatenoidError):
    """A matrix handed to :func:`catenoids.lorentz.from_herm` is not Hermitian."""


class SingularPointError(CatenoidError):
    """The induced metric (or the normal system) degenerates at the point."""


class ConfigError(CatenoidError):
    """Invalid run configuration for meshing or export."""
