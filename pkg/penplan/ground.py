"""Expand schematic laws and policy rules over the declared sorts.

Everything is grounded up front. Ground lists are duplicate-free and sorted by
name then arguments, so every downstream iteration is deterministic.
"""

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Optional

from penplan.dsl.ast import (
  Body,
  DomainSpec,
  Head,
  HeadKind,
  Literal,
  PolicySpec,
  Rule,
  Term,
  body_guards,
  body_literals,
  is_variable,
)
from penplan.dsl.sorts import check_term, infer_variable_sorts
from penplan.errors import BudgetExceeded, GroundingError

DEFAULT_GROUND_BUDGET = 1_000_000


def _render(name: str, args: tuple[str, ...]) -> str:
  return f'{name}({",".join(args)})' if args else name


@dataclass(frozen=True, order=True)
class GroundAtom:
  """A fluent with constant arguments, e.g. `at(base)`."""
  name: str
  args: tuple[str, ...] = ()

  def __str__(self) -> str:
    return _render(self.name, self.args)


@dataclass(frozen=True, order=True)
class GroundLiteral:
  """A ground atom or its negation."""
  name: str
  args: tuple[str, ...] = ()
  positive: bool = True

  @property
  def atom(self) -> GroundAtom:
    """The literal without its sign."""
    return GroundAtom(self.name, self.args)

  @classmethod
  def of(cls, atom: GroundAtom, positive: bool = True) -> 'GroundLiteral':
    """Literal for `atom` with the given sign."""
    return cls(atom.name, atom.args, positive)

  def __str__(self) -> str:
    text = _render(self.name, self.args)
    return text if self.positive else f'-{text}'


@dataclass(frozen=True, order=True)
class GroundAction:
  """An action instance, e.g. `cruise(base,cust)`."""
  name: str
  args: tuple[str, ...] = ()

  def __str__(self) -> str:
    return _render(self.name, self.args)


def complement(lit: GroundLiteral) -> GroundLiteral:
  """Flip the sign of a literal."""
  return GroundLiteral(lit.name, lit.args, not lit.positive)


@dataclass(frozen=True, order=True)
class GroundDynamicLaw:
  """`causes action: effects if body` for one instance."""
  action: GroundAction
  effects: tuple[GroundLiteral, ...]
  body: tuple[GroundLiteral, ...] = ()


@dataclass(frozen=True, order=True)
class GroundStaticLaw:
  """`static head if body` for one instance."""
  head: GroundLiteral
  body: tuple[GroundLiteral, ...] = ()


@dataclass(frozen=True, order=True)
class GroundExecCondition:
  """`exec action if body` for one instance."""
  action: GroundAction
  body: tuple[GroundLiteral, ...] = ()


@dataclass(frozen=True)
class GroundDomain:
  """Ground fluents, actions and laws, in sorted order."""
  fluents: tuple[GroundAtom, ...]
  actions: tuple[GroundAction, ...]
  dynamic_laws: tuple[GroundDynamicLaw, ...] = ()
  static_laws: tuple[GroundStaticLaw, ...] = ()
  exec_conditions: tuple[GroundExecCondition, ...] = ()
  spec: DomainSpec = field(default_factory=DomainSpec, compare=False, repr=False)
  _dynamic_by_action: dict = field(init=False, compare=False, repr=False)
  _exec_by_action: dict = field(init=False, compare=False, repr=False)
  _action_set: frozenset = field(init=False, compare=False, repr=False)
  _fluent_set: frozenset = field(init=False, compare=False, repr=False)

  def __post_init__(self):
    dynamic: dict[GroundAction, list[GroundDynamicLaw]] = {}
    for law in self.dynamic_laws:
      dynamic.setdefault(law.action, []).append(law)
    execs: dict[GroundAction, list[GroundExecCondition]] = {}
    for cond in self.exec_conditions:
      execs.setdefault(cond.action, []).append(cond)
    object.__setattr__(self, '_dynamic_by_action', dynamic)
    object.__setattr__(self, '_exec_by_action', execs)
    object.__setattr__(self, '_action_set', frozenset(self.actions))
    object.__setattr__(self, '_fluent_set', frozenset(self.fluents))

  def laws_for(self, action: GroundAction) -> list[GroundDynamicLaw]:
    """Dynamic laws whose action is `action`."""
    return self._dynamic_by_action.get(action, [])

  def exec_conditions_for(self, action: GroundAction) -> list[GroundExecCondition]:
    """Executability conditions of `action`."""
    return self._exec_by_action.get(action, [])

  def has_action(self, action: GroundAction) -> bool:
    """True for a declared action instance."""
    return action in self._action_set

  def has_fluent(self, atom: GroundAtom) -> bool:
    """True for a declared fluent instance."""
    return atom in self._fluent_set


class _Budget:
  """Counts enumerated variable assignments across one grounding run."""

  def __init__(self, limit: int):
    self.limit = limit
    self.used = 0

  def spend(self) -> None:
    self.used += 1
    if self.used > self.limit:
      raise BudgetExceeded(f'domain too large: more than {self.limit} ground instances')


def _assignments(
  var_sorts: dict[str, str],
  sorts: dict[str, tuple[str, ...]],
  body: Body,
  budget: _Budget,
) -> Iterator[dict[str, str]]:
  names = sorted(var_sorts)
  guards = body_guards(body)
  for values in itertools.product(*(sorts[var_sorts[v]] for v in names)):
    budget.spend()
    binding = dict(zip(names, values))
    if all(_value(g.left, binding) != _value(g.right, binding) for g in guards):
      yield binding


def _value(arg: str, binding: dict[str, str]) -> str:
  return binding[arg] if is_variable(arg) else arg


def _args(term: Term, binding: dict[str, str]) -> tuple[str, ...]:
  return tuple(_value(a, binding) for a in term.args)


def _literal(lit: Literal, binding: dict[str, str]) -> GroundLiteral:
  return GroundLiteral(lit.atom.name, _args(lit.atom, binding), lit.positive)


def _body(body: Body, binding: dict[str, str]) -> tuple[GroundLiteral, ...]:
  return tuple(_literal(lit, binding) for lit in body_literals(body))


def _typing(spec: DomainSpec, actions: list[Term], lits: list[Literal], body: Body, pos):
  constants = spec.sort_of_constant()
  typed = []
  for term in actions:
    typed += check_term(term, spec.action_signature(), constants, 'action', GroundingError)
  for lit in [*lits, *body_literals(body)]:
    typed += check_term(lit.atom, spec.fluent_signature(), constants, 'fluent', GroundingError)
  return infer_variable_sorts(typed, body, pos, constants, GroundingError)


def _product(spec: DomainSpec, sorts: tuple[str, ...], budget: _Budget) -> list[tuple[str, ...]]:
  combos = []
  for args in itertools.product(*(spec.sorts[s] for s in sorts)):
    budget.spend()
    combos.append(args)
  return combos


def ground_domain(spec: DomainSpec, budget: int = DEFAULT_GROUND_BUDGET) -> GroundDomain:
  """Ground every fluent, action and law of a validated domain.

  Actions with parameters that occur in dynamic laws get exactly the instances
  those laws produce (guards prune them); other actions range over the full
  sort product.

  Raises:
      BudgetExceeded: more than `budget` variable assignments enumerated
  """
  counter = _Budget(budget)
  fluents = sorted(
    GroundAtom(schema.name, args)
    for schema in spec.fluent_schemas
    for args in _product(spec, schema.sorts, counter)
  )

  dynamic = set()
  for law in spec.dynamic_laws:
    var_sorts = _typing(spec, [law.action], list(law.effects), law.body, law.pos)
    for binding in _assignments(var_sorts, spec.sorts, law.body, counter):
      action = GroundAction(law.action.name, _args(law.action, binding))
      effects = tuple(sorted(set(_literal(e, binding) for e in law.effects)))
      dynamic.add(GroundDynamicLaw(action, effects, _body(law.body, binding)))

  with_laws = {law.action.name for law in spec.dynamic_laws}
  actions = {law.action for law in dynamic}
  for schema in spec.action_schemas:
    if not schema.sorts or schema.name not in with_laws:
      actions.update(GroundAction(schema.name, a) for a in _product(spec, schema.sorts, counter))

  static = set()
  for law in spec.static_laws:
    var_sorts = _typing(spec, [], [law.head], law.body, law.pos)
    for binding in _assignments(var_sorts, spec.sorts, law.body, counter):
      static.add(GroundStaticLaw(_literal(law.head, binding), _body(law.body, binding)))

  execs = set()
  for law in spec.exec_conditions:
    var_sorts = _typing(spec, [law.action], [], law.body, law.pos)
    for binding in _assignments(var_sorts, spec.sorts, law.body, counter):
      action = GroundAction(law.action.name, _args(law.action, binding))
      if action in actions:
        execs.add(GroundExecCondition(action, _body(law.body, binding)))

  return GroundDomain(
    fluents=tuple(fluents),
    actions=tuple(sorted(actions)),
    dynamic_laws=tuple(sorted(dynamic)),
    static_laws=tuple(sorted(static)),
    exec_conditions=tuple(sorted(execs)),
    spec=spec,
  )


# ---- policies ----


@dataclass(frozen=True, order=True)
class RuleRef:
  """One ground instance `rule_id@index` of a schematic rule."""

  rule_id: str
  index: int = 0

  def __str__(self) -> str:
    return f'{self.rule_id}@{self.index}'


@dataclass(frozen=True)
class GroundHead:
  """permitted(a), obl(a) or obl(-a), possibly negated."""
  kind: HeadKind
  action: GroundAction
  positive: bool = True
  action_positive: bool = True

  def complement(self) -> 'GroundHead':
    """Same head with the outer sign flipped."""
    return GroundHead(self.kind, self.action, not self.positive, self.action_positive)

  def conflicts_with(self, other: 'GroundHead') -> bool:
    """Complementary heads, or obl(a) against obl(-a)."""
    if other == self.complement():
      return True
    return (
      self.kind is HeadKind.OBL
      and other.kind is HeadKind.OBL
      and self.positive
      and other.positive
      and self.action == other.action
      and self.action_positive != other.action_positive
    )

  def __str__(self) -> str:
    inner = str(self.action) if self.action_positive else f'-{self.action}'
    text = f'{self.kind.value}({inner})'
    return text if self.positive else f'-{text}'


@dataclass(frozen=True)
class GroundRule:
  """One rule instance; `defeasible` for defaults."""
  ref: RuleRef
  head: GroundHead
  body: tuple[GroundLiteral, ...] = ()
  defeasible: bool = False

  @property
  def rule_id(self) -> str:
    """Schematic rule the instance came from."""
    return self.ref.rule_id

  def __str__(self) -> str:
    keyword, normally = ('default', 'normally ') if self.defeasible else ('rule', '')
    body = f' if {", ".join(str(b) for b in self.body)}' if self.body else ''
    return f'{keyword} {self.ref}: {normally}{self.head}{body}.'


@dataclass(frozen=True)
class GroundPolicy:
  """Ground rule instances, preferences between defaults, and penalty settings."""
  strict_rules: tuple[GroundRule, ...] = ()
  defeasible_rules: tuple[GroundRule, ...] = ()
  preferences: frozenset[tuple[str, str]] = frozenset()
  rule_penalties: dict[str, int] = field(default_factory=dict)
  default_penalty: int = 2
  weak_penalty: int = 0
  max_penalty: Optional[int] = None

  def prefers(self, stronger: str, weaker: str) -> bool:
    """True when `prefer stronger weaker.` was declared."""
    return (stronger, weaker) in self.preferences

  def rules(self) -> tuple[GroundRule, ...]:
    """Strict instances followed by defeasible ones."""
    return self.strict_rules + self.defeasible_rules


def _ground_rule(rule: Rule, dom: GroundDomain, counter: _Budget) -> list[GroundRule]:
  head: Head = rule.head
  var_sorts = _typing(dom.spec, [head.action], [], rule.body, rule.pos)
  instances = []
  for binding in _assignments(var_sorts, dom.spec.sorts, rule.body, counter):
    action = GroundAction(head.action.name, _args(head.action, binding))
    if not dom.has_action(action):
      continue
    ground_head = GroundHead(head.kind, action, head.positive, head.action_positive)
    ref = RuleRef(rule.id, len(instances))
    instances.append(GroundRule(ref, ground_head, _body(rule.body, binding), rule.defeasible))
  return instances


def ground_policy(
  spec: PolicySpec, dom: GroundDomain, budget: int = DEFAULT_GROUND_BUDGET
) -> GroundPolicy:
  """Ground each rule; instance `id@k` inherits the penalty of `id`.

  Raises:
      GroundingError: head names an undeclared action, body an unknown fluent
  """
  counter = _Budget(budget)
  strict = [g for rule in spec.strict_rules for g in _ground_rule(rule, dom, counter)]
  defeasible = [g for rule in spec.defeasible_rules for g in _ground_rule(rule, dom, counter)]
  return GroundPolicy(
    strict_rules=tuple(strict),
    defeasible_rules=tuple(defeasible),
    preferences=frozenset(spec.preferences),
    rule_penalties=dict(spec.rule_penalties),
    default_penalty=spec.default_penalty,
    weak_penalty=spec.weak_penalty,
    max_penalty=spec.max_penalty,
  )


# ---- problem / plan terms ----


def ground_literals(lits: list[Literal], dom: GroundDomain) -> list[GroundLiteral]:
  """Resolve literals of a problem file against the ground fluents."""
  resolved = []
  for lit in lits:
    ground = GroundLiteral(lit.atom.name, lit.atom.args, lit.positive)
    if not dom.has_fluent(ground.atom):
      raise GroundingError(
        f"unknown fluent '{ground.atom}'", line=lit.pos.line, column=lit.pos.column
      )
    resolved.append(ground)
  return resolved


def resolve_action(term: Term, dom: GroundDomain) -> GroundAction:
  """Map a ground term from `--plan` to a declared action.

  Raises:
      GroundingError: no declared action matches the term
  """
  action = GroundAction(term.name, term.args)
  if not dom.has_action(action):
    raise GroundingError(f"unknown action '{action}'", line=term.pos.line, column=term.pos.column)
  return action


def format_ground(dom: GroundDomain, policy: Optional[GroundPolicy] = None) -> list[str]:
  """Render the ground program, one fact or law per line, in the fixed order."""

  def cond(body) -> str:
    return f' if {", ".join(str(b) for b in body)}' if body else ''

  lines = [f'fluent {f}.' for f in dom.fluents]
  lines += [f'action {a}.' for a in dom.actions]
  lines += [
    f'causes {law.action}: {", ".join(str(e) for e in law.effects)}{cond(law.body)}.'
    for law in dom.dynamic_laws
  ]
  lines += [f'static {law.head}{cond(law.body)}.' for law in dom.static_laws]
  lines += [f'exec {law.action}{cond(law.body)}.' for law in dom.exec_conditions]
  if policy is not None:
    lines += [str(rule) for rule in policy.rules()]
    lines += [f'prefer {s} {w}.' for s, w in sorted(policy.preferences)]
  return lines
