"""Exception types shared across the package."""

from __future__ import annotations


class GroupoidMusicError(Exception):
    """Base class for all errors raised by this package."""


class NotAbelian(GroupoidMusicError):
    pass


class IncompatibleComposition(GroupoidMusicError):
    """Raised when composing g2 . g1 with t(g1) != s(g2)."""


class DuplicateObject(GroupoidMusicError):
    pass


class InvalidAction(GroupoidMusicError):
    def __init__(self, report):
        self.report = list(report)
        super().__init__("action functor is invalid: " + "; ".join(self.report[:3]))


class InvalidCocycle(GroupoidMusicError):
    def __init__(self, report):
        self.report = list(report)
        super().__init__("2-cocycle condition fails: " + "; ".join(self.report[:3]))


class DeskScaleExceeded(GroupoidMusicError):
    pass


class UnknownType(GroupoidMusicError):
    pass


class DimensionMismatch(GroupoidMusicError):
    pass


class NotEquivariant(GroupoidMusicError):
    pass


class NotRepresented(GroupoidMusicError):
    pass


class PartialityViolation(GroupoidMusicError):
    """An operation was applied to a chord outside its domain."""


class NotAPackaging(GroupoidMusicError):
    def __init__(self, message, objects=()):
        self.objects = tuple(objects)
        super().__init__(message)


class ClosureBudgetExceeded(GroupoidMusicError):
    pass


class ParseError(GroupoidMusicError):
    pass


class ValidationError(GroupoidMusicError):
    def __init__(self, message, report=()):
        self.report = list(report)
        super().__init__(message)
