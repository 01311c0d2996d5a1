"""
Exceptions raised by digitalspheres.

Invalid input is a ``ValueError`` subclass, an exhausted search is a ``RuntimeError``
subclass so callers can tell "proven negative" apart from "gave up".
"""


class DigitalSpaceError(ValueError):
  """Invalid digital space input (self-loop, unknown endpoint, duplicate label, ...)."""


class SpaceParseError(DigitalSpaceError):
  def __init__(self, message, lineno=None):
    self.lineno = lineno
    if lineno is not None:
      message = f"line {lineno}: {message}"
    super().__init__(message)


class PreconditionError(DigitalSpaceError):
  """An operation's stated precondition does not hold for the given input."""


class UsageError(DigitalSpaceError):
  """Bad command line usage."""


class SearchBudgetExhausted(RuntimeError):
  def __init__(self, budget, explored):
    self.budget = budget
    self.explored = explored
    super().__init__(f"Search budget of {budget} states exhausted after exploring {explored} states")


class CriterionMismatchError(AssertionError):
  """A sphere criterion held on a space the sphere decision procedure rejects."""
