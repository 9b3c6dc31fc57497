"""Abstract syntax for domain, policy and problem files.

Source positions are kept on every node for diagnostics but excluded from
equality, so a pretty-printed and re-parsed spec compares equal to the original.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Union


@dataclass(frozen=True)
class Pos:
  """1-based line and column."""

  line: int = 1
  column: int = 1


NOWHERE = Pos()


def is_variable(arg: str) -> bool:
  """Variables are uppercase identifiers, constants lowercase."""
  return arg[:1].isupper()


@dataclass(frozen=True)
class Term:
  """`name` or `name(arg, ...)`; args are constants or variables."""

  name: str
  args: tuple[str, ...] = ()
  pos: Pos = field(default=NOWHERE, compare=False, repr=False)

  def variables(self) -> list[str]:
    """Variable arguments, in order."""
    return [a for a in self.args if is_variable(a)]

  def __str__(self) -> str:
    if not self.args:
      return self.name
    return f'{self.name}({", ".join(self.args)})'


@dataclass(frozen=True)
class Literal:
  """An atom or its negation, as written."""
  atom: Term
  positive: bool = True

  @property
  def pos(self) -> Pos:
    """Position of the atom."""
    return self.atom.pos

  def __str__(self) -> str:
    return str(self.atom) if self.positive else f'-{self.atom}'


@dataclass(frozen=True)
class Guard:
  """Inequality built-in `left != right`."""

  left: str
  right: str
  pos: Pos = field(default=NOWHERE, compare=False, repr=False)

  def variables(self) -> list[str]:
    """Variable arguments, in order."""
    return [a for a in (self.left, self.right) if is_variable(a)]

  def __str__(self) -> str:
    return f'{self.left} != {self.right}'


Condition = Union[Literal, Guard]
Body = tuple[Condition, ...]


def body_literals(body: Body) -> list[Literal]:
  """Fluent literals of a body, guards dropped."""
  return [c for c in body if isinstance(c, Literal)]


def body_guards(body: Body) -> list[Guard]:
  """Inequality guards of a body."""
  return [c for c in body if isinstance(c, Guard)]


@dataclass(frozen=True)
class Schema:
  """Fluent or action declaration; `sorts` is the argument signature."""

  name: str
  sorts: tuple[str, ...] = ()
  pos: Pos = field(default=NOWHERE, compare=False, repr=False)


@dataclass(frozen=True)
class DynamicLaw:
  """`causes action: effects if body.`"""

  action: Term
  effects: tuple[Literal, ...]
  body: Body = ()
  pos: Pos = field(default=NOWHERE, compare=False, repr=False)


@dataclass(frozen=True)
class StaticLaw:
  """`static head if body.`"""

  head: Literal
  body: Body
  pos: Pos = field(default=NOWHERE, compare=False, repr=False)


@dataclass(frozen=True)
class ExecCondition:
  """`exec action if body.`"""

  action: Term
  body: Body
  pos: Pos = field(default=NOWHERE, compare=False, repr=False)


@dataclass
class DomainSpec:
  """A parsed `.dom` file before grounding."""
  sorts: dict[str, tuple[str, ...]] = field(default_factory=dict)
  fluent_schemas: list[Schema] = field(default_factory=list)
  action_schemas: list[Schema] = field(default_factory=list)
  dynamic_laws: list[DynamicLaw] = field(default_factory=list)
  static_laws: list[StaticLaw] = field(default_factory=list)
  exec_conditions: list[ExecCondition] = field(default_factory=list)

  def fluent_signature(self) -> dict[str, tuple[str, ...]]:
    """Fluent name to argument sorts."""
    return {s.name: s.sorts for s in self.fluent_schemas}

  def action_signature(self) -> dict[str, tuple[str, ...]]:
    """Action name to argument sorts."""
    return {s.name: s.sorts for s in self.action_schemas}

  def sort_of_constant(self) -> dict[str, str]:
    """Constant to the sort that declares it."""
    return {c: sort for sort, consts in self.sorts.items() for c in consts}


class HeadKind(str, Enum):
  """Deontic operator of a rule head."""
  PERMITTED = 'permitted'
  OBL = 'obl'


@dataclass(frozen=True)
class Head:
  """Policy rule head.

  `positive` is the outer sign (`-permitted(a)`, `-obl(a)`); `action_positive`
  is the inner sign of an obligation (`obl(-a)`), always True for permitted.
  """

  kind: HeadKind
  action: Term
  positive: bool = True
  action_positive: bool = True

  def __str__(self) -> str:
    inner = str(self.action) if self.action_positive else f'-{self.action}'
    text = f'{self.kind.value}({inner})'
    return text if self.positive else f'-{text}'


@dataclass(frozen=True)
class Rule:
  """Strict rule or default (`defeasible`) as written in the policy."""
  id: str
  head: Head
  body: Body = ()
  defeasible: bool = False
  pos: Pos = field(default=NOWHERE, compare=False, repr=False)


DEFAULT_PENALTY = 2
DEFAULT_WEAK_PENALTY = 0


@dataclass
class PolicySpec:
  """A parsed `.pol` file."""
  strict_rules: list[Rule] = field(default_factory=list)
  defeasible_rules: list[Rule] = field(default_factory=list)
  preferences: list[tuple[str, str]] = field(default_factory=list)
  rule_penalties: dict[str, int] = field(default_factory=dict)
  default_penalty: int = DEFAULT_PENALTY
  weak_penalty: int = DEFAULT_WEAK_PENALTY
  max_penalty: Optional[int] = None

  def rules(self) -> list[Rule]:
    """Strict rules followed by defaults, in file order."""
    return [*self.strict_rules, *self.defeasible_rules]


class Mode(str, Enum):
  """Planning mode; emergency lifts the penalty cap."""
  NORMAL = 'normal'
  EMERGENCY = 'emergency'


@dataclass
class ProblemSpec:
  """A parsed `.prb` file."""
  init: list[Literal] = field(default_factory=list)
  goal: list[Literal] = field(default_factory=list)
  horizon: int = 0
  mode: Mode = Mode.NORMAL
