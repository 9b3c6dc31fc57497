"""Compliance classification of events and trajectories.

Authorization compliance is three-valued (strong / weak / non-compliant);
obligation compliance is binary.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional

from penplan.ground import GroundAction, GroundHead, GroundPolicy, RuleRef
from penplan.policy_eval import Obligation, VerdictSet, evaluate_state
from penplan.transition import State, Trajectory


class AuthClass(str, Enum):
  """Authorization class of a single event."""
  STRONG = 'strong'
  WEAK = 'weak'
  NON_COMPLIANT = 'non_compliant'


class OblClass(str, Enum):
  """Obligation class of a single event."""
  COMPLIANT = 'compliant'
  NON_COMPLIANT = 'non_compliant'


@dataclass(frozen=True)
class ObligationViolation:
  """An obligation instance the performed action fails to meet."""
  rule: RuleRef
  obligation: Obligation

  def __str__(self) -> str:
    return f'{self.rule} / {self.obligation}'


@dataclass(frozen=True)
class EventVerdict:
  """Classification of one action at one state.

  Attributes:
      auth_rules: Every rule instance behind a strong or non-compliant class,
          in rule order
      fired: (rule instance, head) of every conclusion drawn at the state
  """

  action: GroundAction
  auth_class: AuthClass
  auth_rules: tuple[RuleRef, ...] = ()
  obl_violations: tuple[ObligationViolation, ...] = ()
  fired: tuple[tuple[RuleRef, GroundHead], ...] = field(default=(), compare=False)

  @property
  def auth_rule(self) -> Optional[RuleRef]:
    """First justifying rule instance, if any."""
    return self.auth_rules[0] if self.auth_rules else None

  @property
  def obl_class(self) -> OblClass:
    """Non-compliant when any obligation instance is violated."""
    return OblClass.NON_COMPLIANT if self.obl_violations else OblClass.COMPLIANT


@dataclass(frozen=True)
class TrajectoryVerdict:
  """Per-step verdicts of a plan and its overall classes."""
  steps: tuple[EventVerdict, ...]
  auth_overall: AuthClass
  obl_overall: OblClass

  @property
  def compliant(self) -> bool:
    """Obligation-compliant and never auth-non-compliant."""
    return (
      self.obl_overall is OblClass.COMPLIANT and self.auth_overall is not AuthClass.NON_COMPLIANT
    )


def classify_auth(v: VerdictSet, a: GroundAction) -> AuthClass:
  """Non-compliant if not-permitted is entailed, strong if permitted is, weak otherwise."""
  if v.entailed_not_permitted(a):
    return AuthClass.NON_COMPLIANT
  if v.entailed_permitted(a):
    return AuthClass.STRONG
  return AuthClass.WEAK


def classify_obl(v: VerdictSet, a: GroundAction) -> list[ObligationViolation]:
  """Unmet obl(e) with e != a, and obl(-e) with e == a; one entry per producing rule."""
  violations = []
  for obligation, refs in sorted(v.obligations.items()):
    performed = obligation.action == a
    if performed != obligation.positive:
      violations.extend(ObligationViolation(ref, obligation) for ref in refs)
  return violations


def classify_event(p: GroundPolicy, s: State, a: GroundAction) -> EventVerdict:
  """Evaluate the policy at `s` and classify performing `a` there."""
  verdicts = evaluate_state(p, s)
  auth = classify_auth(verdicts, a)
  entry = verdicts.entailment(a)
  rules = {
    AuthClass.NON_COMPLIANT: entry.forbidden_by,
    AuthClass.STRONG: entry.permitted_by,
  }.get(auth, [])
  violations = tuple(classify_obl(verdicts, a))
  return EventVerdict(a, auth, tuple(rules), violations, tuple(verdicts.fired))


def aggregate(steps: Iterable[EventVerdict]) -> TrajectoryVerdict:
  """Lift per-event verdicts to a plan; an empty plan is strongly compliant."""
  steps = tuple(steps)
  classes = {ev.auth_class for ev in steps}
  if AuthClass.NON_COMPLIANT in classes:
    auth = AuthClass.NON_COMPLIANT
  elif AuthClass.WEAK in classes:
    auth = AuthClass.WEAK
  else:
    auth = AuthClass.STRONG
  obl = OblClass.NON_COMPLIANT if any(ev.obl_violations for ev in steps) else OblClass.COMPLIANT
  return TrajectoryVerdict(steps, auth, obl)


def classify_trajectory(p: GroundPolicy, t: Trajectory) -> TrajectoryVerdict:
  """Classify each (state, action) event of `t` and aggregate."""
  return aggregate(classify_event(p, s, a) for s, a in zip(t.states, t.actions))
