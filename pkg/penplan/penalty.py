"""Per-step penalties and plan totals.

Penalties are on a 1-3 scale (low, medium, high). A violation whose rule has no
declared penalty costs `default_penalty`; a weakly compliant step costs
`weak_penalty`.
"""

from dataclasses import dataclass
from enum import IntEnum
from typing import Iterable, Optional

from pydantic import BaseModel, Field, field_validator

from penplan.compliance import (
  AuthClass,
  EventVerdict,
  TrajectoryVerdict,
  classify_trajectory,
)
from penplan.dsl.ast import DEFAULT_PENALTY, DEFAULT_WEAK_PENALTY, PolicySpec
from penplan.ground import GroundAction, GroundPolicy, RuleRef
from penplan.transition import Trajectory


class PenaltyLevel(IntEnum):
  """Penalty scale shared by rule penalties and the default."""
  LOW = 1
  MEDIUM = 2
  HIGH = 3


class PenaltyConfig(BaseModel):
  """Rule penalties plus the defaults applied to undeclared rules and weak steps."""

  rule_penalties: dict[str, int] = Field(default_factory=dict)
  default_penalty: int = Field(default=DEFAULT_PENALTY, ge=1, le=3)
  weak_penalty: int = Field(default=DEFAULT_WEAK_PENALTY, ge=0)
  max_penalty: Optional[int] = Field(default=None, ge=0)

  @field_validator('rule_penalties')
  @classmethod
  def _on_scale(cls, value: dict[str, int]) -> dict[str, int]:
    for rule_id, penalty in value.items():
      if penalty not in {level.value for level in PenaltyLevel}:
        raise ValueError(f"penalty for '{rule_id}' out of range 1-3")
    return value

  @classmethod
  def from_policy(cls, policy: PolicySpec | GroundPolicy) -> 'PenaltyConfig':
    """Penalty settings as declared in the policy file."""
    return cls(
      rule_penalties=dict(policy.rule_penalties),
      default_penalty=policy.default_penalty,
      weak_penalty=policy.weak_penalty,
      max_penalty=policy.max_penalty,
    )

  def with_overrides(
    self,
    default_penalty: Optional[int] = None,
    weak_penalty: Optional[int] = None,
    max_penalty: Optional[int] = None,
  ) -> 'PenaltyConfig':
    """Command line flags win over policy-file settings."""
    updates = {
      'default_penalty': default_penalty,
      'weak_penalty': weak_penalty,
      'max_penalty': max_penalty,
    }
    merged = {**self.model_dump(), **{k: v for k, v in updates.items() if v is not None}}
    return PenaltyConfig(**merged)

  def penalty_for(self, rule_id: str) -> int:
    """Declared penalty of `rule_id`, or the default penalty."""
    return self.rule_penalties.get(rule_id, self.default_penalty)


@dataclass(frozen=True)
class ScoredPlan:
  """A plan with its per-step penalties, total and (optionally) verdicts."""
  actions: tuple[GroundAction, ...]
  step_penalties: tuple[int, ...]
  total: int
  verdict: Optional[TrajectoryVerdict] = None

  def __post_init__(self):
    if len(self.actions) != len(self.step_penalties):
      raise ValueError('step penalties do not match plan length')
    if self.total != sum(self.step_penalties):
      raise ValueError(f'total {self.total} != sum of step penalties')

  def __len__(self) -> int:
    return len(self.actions)

  def sort_key(self) -> tuple:
    """Selection order: total, then length, then actions."""
    return (self.total, len(self.actions), self.actions)


def charged_auth_rule(ev: EventVerdict, cfg: PenaltyConfig) -> Optional[RuleRef]:
  """The forbidding instance a non-compliant step is charged for.

  That is the instance with the highest penalty, the first one among ties, so
  adding a rule that forbids the step never lowers its cost.
  """
  if ev.auth_class is not AuthClass.NON_COMPLIANT or not ev.auth_rules:
    return None
  return max(ev.auth_rules, key=lambda ref: cfg.penalty_for(ref.rule_id))


def step_penalty(ev: EventVerdict, cfg: PenaltyConfig) -> int:
  """Authorization cost plus one charge per violated obligation instance."""
  total = 0
  if ev.auth_class is AuthClass.NON_COMPLIANT:
    rule = charged_auth_rule(ev, cfg)
    total += cfg.penalty_for(rule.rule_id) if rule else cfg.default_penalty
  elif ev.auth_class is AuthClass.WEAK:
    total += cfg.weak_penalty
  for violation in ev.obl_violations:
    total += cfg.penalty_for(violation.rule.rule_id)
  return total


def total_penalty(steps: Iterable[int]) -> int:
  """Sum of per-step penalties; 0 for an empty plan."""
  return sum(steps)


def score_plan(p: GroundPolicy, cfg: PenaltyConfig, t: Trajectory) -> ScoredPlan:
  """Classify every step of `t` and attach its penalties and verdicts."""
  verdict = classify_trajectory(p, t)
  steps = tuple(step_penalty(ev, cfg) for ev in verdict.steps)
  return ScoredPlan(t.actions, steps, total_penalty(steps), verdict)


def penalty_levels(scored: ScoredPlan, cfg: PenaltyConfig) -> dict[str, int]:
  """Count the plan's infractions per level (low / medium / high).

  Raises:
      ValueError: the plan carries no per-step verdicts
  """
  if scored.verdict is None:
    raise ValueError('plan has no per-step verdicts')
  counts = {level.name.lower(): 0 for level in PenaltyLevel}
  for ev in scored.verdict.steps:
    values = [cfg.penalty_for(v.rule.rule_id) for v in ev.obl_violations]
    if ev.auth_class is AuthClass.NON_COMPLIANT:
      rule = charged_auth_rule(ev, cfg)
      values.append(cfg.penalty_for(rule.rule_id) if rule else cfg.default_penalty)
    for value in values:
      counts[PenaltyLevel(value).name.lower()] += 1
  return counts


def is_disabled(total: int, cfg: PenaltyConfig) -> bool:
  """The agent is disabled once a configured penalty cap is exceeded."""
  return cfg.max_penalty is not None and total > cfg.max_penalty
