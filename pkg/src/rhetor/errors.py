"""Exception hierarchy shared by all rhetor modules.

Every domain failure raises a subclass of :class:`RhetorError`; the CLI maps
any of these to exit status 1 and prints ``<ClassName>: <message>``.
"""
from __future__ import annotations


class RhetorError(Exception):
    """Base class for all domain errors."""


# --- registry ---------------------------------------------------------------

class DuplicateMode(RhetorError):
    """Two mode definitions share one id, or an extension conflicts with a built-in."""


class BadConstituent(RhetorError):
    """A mode's constituent list is malformed or references an unusable mode."""


class ParseError(RhetorError):
    """A document is structurally malformed; carries line/position when known."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + where)


class UnknownMode(RhetorError):
    """A name does not resolve to any registered mode."""

    def __init__(self, message: str, suggestions: tuple[str, ...] = (), line: int | None = None):
        self.suggestions = tuple(suggestions)
        self.line = line
        if line is not None:
            message = f"{message} (line {line})"
        if self.suggestions:
            message = f"{message}; did you mean: {', '.join(self.suggestions)}?"
        super().__init__(message)


# --- operators --------------------------------------------------------------

class NotDiatomic(RhetorError):
    """Split applied to a mode that is not a two-part compound."""


class NotAtomic(RhetorError):
    """Unite applied to a non-atomic input."""


class SelfUnite(RhetorError):
    """Unite applied to one mode twice."""


class NoDual(RhetorError):
    """A unary duality operator was applied to a mode with no registered partner."""


class BadRuleSet(RhetorError):
    """A duality rule set violates functional pairing or pairs a mode with itself."""


# --- capacity / entropy -----------------------------------------------------

class OutOfRange(RhetorError):
    """A width argument falls outside the supported range."""


class BadCapacity(RhetorError):
    """Learner capacity must be strictly positive."""


class BadCount(RhetorError):
    """A count argument is inconsistent (e.g. modes used exceeds modes available)."""


class BadDistribution(RhetorError):
    """Probabilities are negative or do not sum to one."""


# --- pyramid ----------------------------------------------------------------

class UnknownProfile(RhetorError):
    """No built-in mapping profile with the requested name."""


class BadEdge(RhetorError):
    """A mapping edge references a node that does not exist."""


class UnknownNode(RhetorError):
    """A (layer, id) pair does not name a node of the graph."""


class BadComposition(RhetorError):
    """An academic-function composition violates its structural rules."""


# --- documents --------------------------------------------------------------

class EmptySegment(RhetorError):
    """A segment line carries no mode names."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"{message} (line {line})"
        super().__init__(message)


class BadIndex(RhetorError):
    """Segment or stage indices are duplicated or not strictly increasing."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"{message} (line {line})"
        super().__init__(message)


class UnmappedStage(RhetorError):
    """A document stage has no entry in the supplied stage map."""


class NotEnoughStages(RhetorError):
    """Rate estimation needs at least two distinct stage indices."""


class BadSchedule(RhetorError):
    """A stage schedule is malformed (non-monotone width, bad duration)."""
