# -*- coding: utf-8 -*-
"""
Exceptions raised by kinatlas.

Every error is a KinAtlasError, so callers (notably the CLI) can catch the family in one place.
"""


class KinAtlasError(Exception):
    """Root of all kinatlas errors."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class InvalidInput(KinAtlasError, ValueError):
    pass


class DimensionError(KinAtlasError, ValueError):
    pass


class VariantMismatch(KinAtlasError, TypeError):
    """Two workspace values of different kinds were combined."""
    pass


class RangeError(KinAtlasError, ValueError):
    pass


class GlueError(KinAtlasError):
    """Paths (or a deformation track and a plan) do not meet at the gluing point."""
    pass


class Unreachable(KinAtlasError):
    pass


class BranchDomainError(KinAtlasError):
    pass


class NoGlobalInverse(KinAtlasError):
    pass


class Unsupported(KinAtlasError):
    pass


class SingularEncounter(KinAtlasError):
    pass


class NewtonDivergence(KinAtlasError):
    pass


class StartMismatch(KinAtlasError):
    pass


class NoChart(KinAtlasError):
    pass


class CoverageGap(KinAtlasError):
    pass


class SizeError(KinAtlasError, ValueError):
    pass


class ConstructionError(KinAtlasError):
    pass
