"""Transition diagram: complete states, executability and successors.

Semantics: direct effects of the fired dynamic laws plus static closure win
over inertia; closure may never contradict a direct effect. Exactly one
elementary action happens per step.
"""

from dataclasses import dataclass
from typing import Iterable

from penplan.dsl.ast import ProblemSpec
from penplan.errors import TransitionError
from penplan.ground import (
  GroundAction,
  GroundDomain,
  GroundLiteral,
  complement,
  ground_literals,
)


@dataclass(frozen=True)
class State:
  """Complete, consistent set of ground fluent literals."""

  literals: frozenset[GroundLiteral]

  def holds(self, lit: GroundLiteral) -> bool:
    """True when `lit` is in the state."""
    return lit in self.literals

  def holds_all(self, lits: Iterable[GroundLiteral]) -> bool:
    """True when every literal is in the state."""
    return all(lit in self.literals for lit in lits)

  def sorted(self) -> list[GroundLiteral]:
    """Literals ordered by atom."""
    return sorted(self.literals)

  def __str__(self) -> str:
    return '{' + ', '.join(str(lit) for lit in self.sorted()) + '}'


@dataclass(frozen=True)
class Trajectory:
  """States s0..sn and the n actions between them."""
  states: tuple[State, ...]
  actions: tuple[GroundAction, ...] = ()

  @property
  def last(self) -> State:
    """Final state."""
    return self.states[-1]

  def __len__(self) -> int:
    return len(self.actions)


def _saturate(
  derived: set[GroundLiteral],
  defaults: list[GroundLiteral],
  dom: GroundDomain,
  reason: str,
) -> None:
  def current() -> set[GroundLiteral]:
    return derived | {d for d in defaults if complement(d) not in derived}

  support = current()
  changed = True
  while changed:
    changed = False
    for law in dom.static_laws:
      if law.head in derived or not all(b in support for b in law.body):
        continue
      if complement(law.head) in derived:
        raise TransitionError(reason)
      derived.add(law.head)
      support = current()
      changed = True


def _close(
  fixed: set[GroundLiteral],
  defaults: Iterable[GroundLiteral],
  dom: GroundDomain,
  reason: str,
) -> frozenset[GroundLiteral]:
  """Static closure of `fixed`; defaults fill the rest.

  Closure first runs on the fixed literals alone, then again with the
  defaults that survive. A default survives unless its complement is fixed or
  derived.
  """
  derived = set(fixed)
  for lit in derived:
    if complement(lit) in derived:
      raise TransitionError(reason)
  defaults = list(defaults)
  _saturate(derived, [], dom, reason)
  _saturate(derived, defaults, dom, reason)
  result = frozenset(derived | {d for d in defaults if complement(d) not in derived})
  for law in dom.static_laws:
    if all(b in result for b in law.body) and law.head not in result:
      raise TransitionError(reason)
  return result


def initial_state(prb: ProblemSpec, dom: GroundDomain) -> State:
  """Closed-world completion of the init literals, then static closure.

  Raises:
      TransitionError: 'inconsistent initial state'
      GroundingError: init names an unknown fluent
  """
  explicit = set(ground_literals(prb.init, dom))
  mentioned = {lit.atom for lit in explicit}
  defaults = [GroundLiteral.of(f, False) for f in dom.fluents if f not in mentioned]
  return State(_close(explicit, defaults, dom, 'inconsistent initial state'))


def executable_in(s: State, a: GroundAction, dom: GroundDomain) -> bool:
  """True iff the body of every exec condition for `a` holds in `s`."""
  return all(s.holds_all(cond.body) for cond in dom.exec_conditions_for(a))


def successor(s: State, a: GroundAction, dom: GroundDomain) -> State:
  """Apply `a` in `s`.

  Raises:
      TransitionError: 'not executable' or 'inconsistent effects'
  """
  if not executable_in(s, a, dom):
    raise TransitionError('not executable')
  effects = set()
  for law in dom.laws_for(a):
    if s.holds_all(law.body):
      effects.update(law.effects)
  return State(_close(effects, s.literals, dom, 'inconsistent effects'))


def simulate(s0: State, plan: Iterable[GroundAction], dom: GroundDomain) -> Trajectory:
  """Fold `successor` along the plan.

  Raises:
      TransitionError: first failing step, annotated with its 0-based index
  """
  states, actions = [s0], []
  for i, action in enumerate(plan):
    try:
      states.append(successor(states[-1], action, dom))
    except TransitionError as e:
      raise TransitionError(e.reason, step=i) from None
    actions.append(action)
  return Trajectory(tuple(states), tuple(actions))


def satisfies(s: State, goal: Iterable[GroundLiteral]) -> bool:
  """True when every goal literal holds in `s`."""
  return s.holds_all(goal)


def state_violations(s: State, dom: GroundDomain) -> list[str]:
  """Completeness, consistency and closure problems of `s` (empty when valid)."""
  problems = []
  for atom in dom.fluents:
    pos, neg = GroundLiteral.of(atom, True), GroundLiteral.of(atom, False)
    if pos in s.literals and neg in s.literals:
      problems.append(f'inconsistent: {atom}')
    elif pos not in s.literals and neg not in s.literals:
      problems.append(f'incomplete: {atom}')
  for law in dom.static_laws:
    if s.holds_all(law.body) and not s.holds(law.head):
      problems.append(f'not closed: {law.head}')
  return problems
