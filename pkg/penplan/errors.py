"""Exception hierarchy shared by the library and the command line."""

from typing import Optional

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_NONCOMPLIANT = 2
EXIT_NO_PLAN = 3
EXIT_BUDGET = 4


class PenplanError(Exception):
  """Base error. Carries the exit code the CLI maps it to."""

  exit_code = EXIT_INPUT_ERROR

  def __init__(
    self,
    message: str,
    line: Optional[int] = None,
    column: Optional[int] = None,
    path: Optional[str] = None,
  ):
    super().__init__(message)
    self.message = message
    self.line = line
    self.column = column
    self.path = path

  def __str__(self) -> str:
    where = ':'.join(str(p) for p in (self.path, self.line, self.column) if p is not None)
    return f'{where}: {self.message}' if where else self.message


class DslError(PenplanError):
  """Syntax or validation error in a .dom/.pol/.prb file."""


class GroundingError(PenplanError):
  """A schematic declaration cannot be expanded against the domain."""


class TransitionError(PenplanError):
  """A state or transition violates the transition semantics.

  Attributes:
      reason: Short reason without location, e.g. 'not executable'
      step: 0-based plan step where the failure happened (None outside simulate)
  """

  def __init__(self, reason: str, step: Optional[int] = None):
    message = reason if step is None else f'{reason} at step {step}'
    super().__init__(message)
    self.reason = reason
    self.step = step


class PolicyError(PenplanError):
  """Policy evaluation yields no unique conflict-free verdict set.

  Attributes:
      kind: 'inconsistent' or 'non_categorical'
      rules: Rule instance ids involved in the conflict
  """

  INCONSISTENT = 'inconsistent'
  NON_CATEGORICAL = 'non_categorical'

  def __init__(self, kind: str, rules: tuple[str, ...] = ()):
    label = 'inconsistent policy' if kind == self.INCONSISTENT else 'non-categorical policy'
    message = f'{label} at state'
    if rules:
      message += f' ({", ".join(rules)})'
    super().__init__(message)
    self.kind = kind
    self.rules = rules


class BudgetExceeded(PenplanError):
  """A configured size or search budget was exhausted."""

  exit_code = EXIT_BUDGET
