"""Policy conclusions at a state.

Rule bodies only mention fluent literals, so evaluation is two passes: strict
rules first, then defeasible rules whose complement no strict rule concluded
and that no preferred conflicting default defeats.
"""

import itertools
from dataclasses import dataclass, field
from typing import Optional

from penplan.dsl.ast import HeadKind
from penplan.errors import BudgetExceeded, PolicyError
from penplan.ground import (
  GroundAction,
  GroundDomain,
  GroundHead,
  GroundLiteral,
  GroundPolicy,
  GroundRule,
  RuleRef,
)
from penplan.transition import State, state_violations

DEFAULT_STATE_BOUND = 20


@dataclass(frozen=True, order=True)
class Obligation:
  """obl(a) when `positive`, obl(-a) otherwise."""

  action: GroundAction
  positive: bool = True

  def __str__(self) -> str:
    inner = str(self.action) if self.positive else f'-{self.action}'
    return f'obl({inner})'


@dataclass
class AuthEntailment:
  """Authorization conclusions for one action and the rule instances behind them."""

  permitted: bool = False
  not_permitted: bool = False
  permitted_by: list[RuleRef] = field(default_factory=list)
  forbidden_by: list[RuleRef] = field(default_factory=list)


@dataclass
class VerdictSet:
  """Conclusions at one state, keyed by action or obligation."""
  auth: dict[GroundAction, AuthEntailment] = field(default_factory=dict)
  obligations: dict[Obligation, list[RuleRef]] = field(default_factory=dict)
  waived: dict[Obligation, list[RuleRef]] = field(default_factory=dict)
  fired: list[tuple[RuleRef, GroundHead]] = field(default_factory=list)

  def entailment(self, action: GroundAction) -> AuthEntailment:
    """Authorization entry for `action`; empty when no rule mentions it."""
    return self.auth.get(action, AuthEntailment())

  def entailed_permitted(self, action: GroundAction) -> bool:
    """permitted(action) is concluded."""
    return self.entailment(action).permitted

  def entailed_not_permitted(self, action: GroundAction) -> bool:
    """-permitted(action) is concluded."""
    return self.entailment(action).not_permitted


def _fires(rule: GroundRule, s: State) -> bool:
  return s.holds_all(rule.body)


def _check_conflicts(rules: list[GroundRule], kind: str) -> None:
  for a, b in itertools.combinations(rules, 2):
    if a.head.conflicts_with(b.head):
      raise PolicyError(kind, (str(a.ref), str(b.ref)))


def _conclude(verdicts: VerdictSet, rule: GroundRule) -> None:
  head = rule.head
  verdicts.fired.append((rule.ref, head))
  if head.kind is HeadKind.PERMITTED:
    entry = verdicts.auth.setdefault(head.action, AuthEntailment())
    if head.positive:
      entry.permitted = True
      entry.permitted_by.append(rule.ref)
    else:
      entry.not_permitted = True
      entry.forbidden_by.append(rule.ref)
    return
  target = verdicts.obligations if head.positive else verdicts.waived
  target.setdefault(Obligation(head.action, head.action_positive), []).append(rule.ref)


def evaluate_state(p: GroundPolicy, s: State) -> VerdictSet:
  """Compute the policy conclusions entailed at `s`.

  A default is blocked only by a strict conclusion of its exact complement,
  and defeated by any preferred conflicting default whose body holds.

  Raises:
      PolicyError: 'inconsistent' when strict conclusions conflict or obl(a)
          and obl(-a) are both entailed, 'non_categorical' when two
          conflicting defaults both survive
  """
  strict = [r for r in p.strict_rules if _fires(r, s)]
  _check_conflicts(strict, PolicyError.INCONSISTENT)
  concluded = {r.head for r in strict}

  applicable = [d for d in p.defeasible_rules if _fires(d, s)]
  survivors = [
    d
    for d in applicable
    if d.head.complement() not in concluded
    and not any(
      other.head.conflicts_with(d.head) and p.prefers(other.rule_id, d.rule_id)
      for other in applicable
    )
  ]
  _check_conflicts(survivors, PolicyError.NON_CATEGORICAL)
  for r, d in itertools.product(strict, survivors):
    if r.head.conflicts_with(d.head):
      raise PolicyError(PolicyError.INCONSISTENT, (str(r.ref), str(d.ref)))

  verdicts = VerdictSet()
  for rule in [*strict, *survivors]:
    _conclude(verdicts, rule)
  return verdicts


def enumerate_states(dom: GroundDomain, bound: int = DEFAULT_STATE_BOUND) -> list[State]:
  """Every complete, consistent, statically closed state of the diagram.

  Raises:
      BudgetExceeded: more than `bound` ground fluents
  """
  if len(dom.fluents) > bound:
    raise BudgetExceeded(
      f'state space too large for exhaustive check: {len(dom.fluents)} fluents > {bound}'
    )
  states = []
  for values in itertools.product((False, True), repeat=len(dom.fluents)):
    lits = frozenset(GroundLiteral.of(f, v) for f, v in zip(dom.fluents, values))
    state = State(lits)
    if not state_violations(state, dom):
      states.append(state)
  return states


def check_categorical(
  p: GroundPolicy,
  dom: GroundDomain,
  bound: int = DEFAULT_STATE_BOUND,
  states: Optional[list[State]] = None,
) -> list[tuple[State, PolicyError]]:
  """Evaluate the policy at every state; return the states where it errors."""
  findings = []
  for state in enumerate_states(dom, bound) if states is None else states:
    try:
      evaluate_state(p, state)
    except PolicyError as e:
      findings.append((state, e))
  return findings
