"""Exception types shared across the engine."""

from __future__ import annotations


class ContrapunctusError(Exception):
    """Base class for all engine errors."""


class CarrierMismatchError(ContrapunctusError):
    """Two values that must live on the same carrier do not."""


class WorldMismatchError(ContrapunctusError):
    """Two morphisms that must belong to the same world do not."""


class AdmissibilityError(ContrapunctusError):
    """Parameters do not describe an admissible morphism of the world."""


class InvalidPolarityError(ContrapunctusError):
    """A morphism required to act as a (unique) polarity does not.

    `witnesses` carries the quasipolarities that certify the failure,
    e.g. the several witnesses of a non-strong dichotomy.
    """

    def __init__(self, message: str, witnesses: tuple = ()):
        super().__init__(message)
        self.witnesses = tuple(witnesses)


class StructuralError(ContrapunctusError):
    """A structural precondition fails (odd carrier, wrong subset size, ...)."""


class SizeCapError(ContrapunctusError):
    """A cap protecting exhaustive computation was exceeded."""


class ParseError(ContrapunctusError):
    """Unparseable world spec or morphism text; `token` is the offender."""

    def __init__(self, message: str, token: str | None = None):
        super().__init__(message)
        self.token = token
