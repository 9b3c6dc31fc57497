"""Lark-based front end for .dom, .pol and .prb files.

The grammar is compiled once (LALR, contextual lexer). The transformer turns
parse trees into the nodes of `penplan.dsl.ast`; the `_build_*` helpers then
check the declarations against each other and raise `DslError` with the
1-based line and column of the offending construct.
"""

from pathlib import Path
from typing import Iterable, TextIO, Union

from lark import Lark, Token, Transformer
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, VisitError

from penplan.dsl.ast import (
  Body,
  DomainSpec,
  DynamicLaw,
  ExecCondition,
  Guard,
  Head,
  HeadKind,
  Literal,
  Mode,
  PolicySpec,
  Pos,
  ProblemSpec,
  Rule,
  Schema,
  StaticLaw,
  Term,
  body_literals,
)
from penplan.dsl.sorts import check_term, infer_variable_sorts
from penplan.errors import DslError

_GRAMMAR_FILE = Path(__file__).parent / 'penplan.lark'

_lark_parser = Lark(
  _GRAMMAR_FILE.read_text(encoding='utf-8'),
  parser='lalr',
  start=['domain', 'policy', 'problem', 'plan'],
  propagate_positions=True,
  maybe_placeholders=True,
)

PENALTY_SCALE = range(1, 4)

Source = Union[str, TextIO]


def _pos(token: Token) -> Pos:
  return Pos(token.line or 1, token.column or 1)


def _error(message: str, pos: Pos) -> DslError:
  return DslError(message, line=pos.line, column=pos.column)


# ---- parse tree -> ast nodes ----


class _SortDecl:
  def __init__(self, name: Token, constants: list[Token]):
    self.name = name
    self.constants = constants


class _Declaration:
  """`fluent`/`action` schema, `prefer`, `penalty ...` items before validation."""

  def __init__(self, kind: str, pos: Pos, *values):
    self.kind = kind
    self.pos = pos
    self.values = values


class _SpecTransformer(Transformer):
  # shared

  def term(self, items) -> Term:
    tokens = [t for t in items if t is not None]
    return Term(str(tokens[0]), tuple(str(t) for t in tokens[1:]), _pos(tokens[0]))

  def lit(self, items) -> Literal:
    tokens = [t for t in items if t is not None]
    positive = tokens[0].type != 'NEG'
    if not positive:
      tokens = tokens[1:]
    atom = Term(str(tokens[0]), tuple(str(t) for t in tokens[1:]), _pos(tokens[0]))
    return Literal(atom, positive)

  def guard(self, items) -> Guard:
    left, right = items
    return Guard(str(left), str(right), _pos(left))

  def lits(self, items) -> list[Literal]:
    return list(items)

  def body(self, items) -> Body:
    return tuple(items)

  # domain

  def schema(self, items) -> Schema:
    tokens = [t for t in items if t is not None]
    return Schema(str(tokens[0]), tuple(str(t) for t in tokens[1:]), _pos(tokens[0]))

  def sort_decl(self, items) -> _SortDecl:
    return _SortDecl(items[0], list(items[1:]))

  def fluent_decl(self, items) -> _Declaration:
    return _Declaration('fluent', items[0].pos, items[0])

  def action_decl(self, items) -> _Declaration:
    return _Declaration('action', items[0].pos, items[0])

  def dynamic_law(self, items) -> DynamicLaw:
    action, effects = items[0], items[1]
    body = items[2] if len(items) > 2 and items[2] is not None else ()
    return DynamicLaw(action, tuple(effects), body, action.pos)

  def static_law(self, items) -> StaticLaw:
    return StaticLaw(items[0], items[1], items[0].pos)

  def exec_law(self, items) -> ExecCondition:
    return ExecCondition(items[0], items[1], items[0].pos)

  def domain(self, items) -> list:
    return list(items)

  # policy

  def permitted_head(self, items) -> Head:
    neg, action = items
    return Head(HeadKind.PERMITTED, action, positive=neg is None)

  def obl_head(self, items) -> Head:
    neg, inner_neg, action = items
    return Head(HeadKind.OBL, action, positive=neg is None, action_positive=inner_neg is None)

  def _rule(self, items, defeasible: bool) -> Rule:
    name = items[0]
    normally = any(isinstance(i, Token) and i.type == 'NORMALLY' for i in items)
    if defeasible and not normally:
      raise _error(f"default rule '{name}' requires 'normally'", _pos(name))
    if not defeasible and normally:
      raise _error(f"'normally' is not allowed in strict rule '{name}'", _pos(name))
    head = next(i for i in items if isinstance(i, Head))
    body = next((i for i in items if isinstance(i, tuple)), ())
    return Rule(str(name), head, body, defeasible, _pos(name))

  def strict_rule(self, items) -> Rule:
    return self._rule(items, defeasible=False)

  def default_rule(self, items) -> Rule:
    return self._rule(items, defeasible=True)

  def prefer(self, items) -> _Declaration:
    stronger, weaker = items
    return _Declaration('prefer', _pos(stronger), str(stronger), str(weaker), _pos(weaker))

  def rule_penalty(self, items) -> _Declaration:
    rule_id, value = items
    return _Declaration('penalty', _pos(rule_id), str(rule_id), int(value), _pos(value))

  def default_penalty(self, items) -> _Declaration:
    return _Declaration('penalty_default', _pos(items[0]), int(items[0]))

  def weak_penalty(self, items) -> _Declaration:
    return _Declaration('penalty_weak', _pos(items[0]), int(items[0]))

  def max_penalty(self, items) -> _Declaration:
    return _Declaration('max_penalty', _pos(items[0]), int(items[0]))

  def policy(self, items) -> list:
    return list(items)

  # problem

  def init_decl(self, items) -> list[Literal]:
    return items[0] if items and items[0] is not None else []

  def goal_decl(self, items) -> list[Literal]:
    return items[0] if items and items[0] is not None else []

  def horizon_decl(self, items) -> Token:
    return items[0]

  def mode_decl(self, items) -> Token:
    return items[0]

  def problem(self, items) -> tuple:
    return tuple(items)

  # plan

  def plan(self, items) -> list[Term]:
    return [t for t in items if t is not None]


_transformer = _SpecTransformer()


def _syntax_error(err: UnexpectedInput, text: str) -> DslError:
  line, column = getattr(err, 'line', None), getattr(err, 'column', None)
  if not isinstance(line, int) or line < 1:
    lines = text.split('\n')
    line, column = len(lines), len(lines[-1]) + 1
  token = getattr(err, 'token', None)
  if isinstance(err, UnexpectedCharacters):
    detail = f"unexpected character '{err.char}'"
  elif isinstance(err, UnexpectedEOF) or token is None or token.type == '$END':
    detail = 'unexpected end of input'
  else:
    detail = f"unexpected '{token}'"
  return DslError(f'syntax error: {detail}', line=line, column=column or 1)


def _parse(source: Source, start: str):
  text = source if isinstance(source, str) else source.read()
  try:
    tree = _lark_parser.parse(text, start=start)
  except UnexpectedInput as e:
    raise _syntax_error(e, text) from e
  try:
    return _transformer.transform(tree)
  except VisitError as e:
    # Lark wraps exceptions raised from transformer callbacks.
    if isinstance(e.orig_exc, DslError):
      raise e.orig_exc from None
    raise


# ---- validation ----


def _build_domain(items: list) -> DomainSpec:
  spec = DomainSpec()
  declared: set[str] = set()
  constants: dict[str, str] = {}

  for item in items:
    if isinstance(item, _SortDecl):
      name = str(item.name)
      if name in spec.sorts:
        raise _error(f"duplicate declaration of sort '{name}'", _pos(item.name))
      for const in item.constants:
        if str(const) in constants:
          raise _error(f"duplicate declaration of constant '{const}'", _pos(const))
        constants[str(const)] = name
      spec.sorts[name] = tuple(str(c) for c in item.constants)
    elif isinstance(item, _Declaration):
      schema = item.values[0]
      if schema.name in declared:
        raise _error(f"duplicate declaration of '{schema.name}'", schema.pos)
      declared.add(schema.name)
      target = spec.fluent_schemas if item.kind == 'fluent' else spec.action_schemas
      target.append(schema)
    elif isinstance(item, DynamicLaw):
      spec.dynamic_laws.append(item)
    elif isinstance(item, StaticLaw):
      spec.static_laws.append(item)
    elif isinstance(item, ExecCondition):
      spec.exec_conditions.append(item)

  for schema in [*spec.fluent_schemas, *spec.action_schemas]:
    for sort in schema.sorts:
      if sort not in spec.sorts:
        raise _error(f"undeclared sort '{sort}'", schema.pos)

  fluents, actions = spec.fluent_signature(), spec.action_signature()

  def check_law(action_terms: Iterable[Term], lits: Iterable[Literal], body: Body, pos: Pos):
    typed = []
    for term in action_terms:
      typed += check_term(term, actions, constants, 'action')
    for lit in [*lits, *body_literals(body)]:
      typed += check_term(lit.atom, fluents, constants, 'fluent')
    infer_variable_sorts(typed, body, pos, constants)

  for law in spec.dynamic_laws:
    check_law([law.action], law.effects, law.body, law.pos)
  for law in spec.static_laws:
    check_law([], [law.head], law.body, law.pos)
  for law in spec.exec_conditions:
    check_law([law.action], [], law.body, law.pos)
  return spec


def _build_policy(items: list) -> PolicySpec:
  spec = PolicySpec()
  ids: dict[str, Rule] = {}
  preferences: list[_Declaration] = []
  penalties: list[_Declaration] = []
  seen_settings: set[str] = set()

  for item in items:
    if isinstance(item, Rule):
      if item.id in ids:
        raise _error(f"duplicate rule id '{item.id}'", item.pos)
      ids[item.id] = item
      (spec.defeasible_rules if item.defeasible else spec.strict_rules).append(item)
    elif item.kind == 'prefer':
      preferences.append(item)
    elif item.kind == 'penalty':
      penalties.append(item)
    else:
      if item.kind in seen_settings:
        raise _error(f"duplicate declaration of '{item.kind.replace('_', ' ')}'", item.pos)
      seen_settings.add(item.kind)
      value = item.values[0]
      if item.kind == 'penalty_default':
        if value not in PENALTY_SCALE:
          raise _error('penalty out of range 1-3', item.pos)
        spec.default_penalty = value
      elif value < 0:
        raise _error(f"{item.kind.replace('_', ' ')} must be non-negative", item.pos)
      elif item.kind == 'penalty_weak':
        spec.weak_penalty = value
      else:
        spec.max_penalty = value

  for pref in preferences:
    stronger, weaker, weaker_pos = pref.values
    for rule_id, pos in ((stronger, pref.pos), (weaker, weaker_pos)):
      if rule_id not in ids:
        raise _error(f"unknown rule id '{rule_id}'", pos)
      if not ids[rule_id].defeasible:
        raise _error(f"preference names strict rule '{rule_id}'", pos)
    spec.preferences.append((stronger, weaker))

  for pen in penalties:
    rule_id, value, value_pos = pen.values
    if value not in PENALTY_SCALE:
      raise _error('penalty out of range 1-3', value_pos)
    if rule_id not in ids:
      raise _error(f"unknown rule id '{rule_id}'", pen.pos)
    if rule_id in spec.rule_penalties:
      raise _error(f"duplicate penalty for '{rule_id}'", pen.pos)
    spec.rule_penalties[rule_id] = value
  return spec


def _ground_literals(lits: list[Literal]) -> list[Literal]:
  for lit in lits:
    if lit.atom.variables():
      raise _error(f"variables are not allowed in a problem: '{lit}'", lit.pos)
  return lits


def _build_problem(items: tuple) -> ProblemSpec:
  init, goal, horizon, mode = (*items, None)[:4]
  spec = ProblemSpec(init=_ground_literals(init), goal=_ground_literals(goal))
  seen = {}
  for lit in spec.init:
    if seen.setdefault(lit.atom, lit.positive) != lit.positive:
      raise _error(f"inconsistent init: both '{lit.atom}' and '-{lit.atom}'", lit.pos)
  spec.horizon = int(horizon)
  if spec.horizon < 0:
    raise _error('negative horizon', _pos(horizon))
  if mode is not None:
    spec.mode = Mode(str(mode))
  return spec


# ---- public entry points ----


def parse_domain(source: Source) -> DomainSpec:
  """Parse a .dom file into a validated DomainSpec.

  Raises:
      DslError: syntax error, undeclared sort/constant, duplicate declaration,
          untyped variable
  """
  return _build_domain(_parse(source, 'domain'))


def parse_policy(source: Source) -> PolicySpec:
  """Parse a .pol file; omitted settings default to penalty 2, weak 0, no cap."""
  return _build_policy(_parse(source, 'policy'))


def parse_problem(source: Source) -> ProblemSpec:
  """Parse a .prb file; mode defaults to normal."""
  return _build_problem(_parse(source, 'problem'))


def parse_plan(source: Source) -> list[Term]:
  """Parse a `;`-separated list of ground action terms (empty string = empty plan)."""
  terms = _parse(source, 'plan')
  for term in terms:
    if term.variables():
      raise _error(f"variables are not allowed in a plan: '{term}'", term.pos)
  return terms


__all__ = [
  'PENALTY_SCALE',
  'parse_domain',
  'parse_plan',
  'parse_policy',
  'parse_problem',
]
