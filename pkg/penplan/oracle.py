"""Brute-force reference planner used to cross-check `best_plan`.

Generates every action sequence up to the horizon with itertools.product,
rejects the ones `simulate` refuses, and scores the rest with a straight-line
evaluation of the policy. Nothing here calls the planner or the
compliance/penalty modules.
"""

import itertools
from typing import Optional

from penplan.dsl.ast import HeadKind, Mode
from penplan.errors import BudgetExceeded, PolicyError, TransitionError
from penplan.ground import GroundAction, GroundPolicy, GroundRule, ground_literals
from penplan.penalty import ScoredPlan
from penplan.planner import PlanQuery, PlanResult
from penplan.transition import State, initial_state, simulate

DEFAULT_ORACLE_BOUND = 10**6


def _opposed(x: GroundRule, y: GroundRule) -> bool:
  hx, hy = x.head, y.head
  if hx.kind != hy.kind or hx.action != hy.action:
    return False
  if hx.action_positive == hy.action_positive:
    return hx.positive != hy.positive
  return hx.kind is HeadKind.OBL and hx.positive and hy.positive


def _negates(x: GroundRule, y: GroundRule) -> bool:
  hx, hy = x.head, y.head
  return (
    hx.kind == hy.kind
    and hx.action == hy.action
    and hx.action_positive == hy.action_positive
    and hx.positive != hy.positive
  )


def _conclusions(p: GroundPolicy, s: State) -> list[GroundRule]:
  strict = [r for r in p.strict_rules if all(b in s.literals for b in r.body)]
  for x, y in itertools.combinations(strict, 2):
    if _opposed(x, y):
      raise PolicyError(PolicyError.INCONSISTENT, (str(x.ref), str(y.ref)))
  holding = [d for d in p.defeasible_rules if all(b in s.literals for b in d.body)]
  kept = []
  for d in holding:
    if any(_negates(r, d) for r in strict):
      continue
    beaten = False
    for other in holding:
      if _opposed(d, other) and (other.rule_id, d.rule_id) in p.preferences:
        beaten = True
    if not beaten:
      kept.append(d)
  for x, y in itertools.combinations(kept, 2):
    if _opposed(x, y):
      raise PolicyError(PolicyError.NON_CATEGORICAL, (str(x.ref), str(y.ref)))
  for x in strict:
    for y in kept:
      if _opposed(x, y):
        raise PolicyError(PolicyError.INCONSISTENT, (str(x.ref), str(y.ref)))
  return strict + kept


def _event_cost(q: PlanQuery, s: State, a: GroundAction) -> int:
  cfg = q.config
  fired = _conclusions(q.policy, s)
  cost = 0
  perms = [r for r in fired if r.head.kind is HeadKind.PERMITTED and r.head.action == a]
  denied = [r for r in perms if not r.head.positive]
  if denied:
    cost += max(cfg.rule_penalties.get(r.rule_id, cfg.default_penalty) for r in denied)
  elif not perms:
    cost += cfg.weak_penalty
  for r in fired:
    if r.head.kind is not HeadKind.OBL or not r.head.positive:
      continue
    done = r.head.action == a
    if done != r.head.action_positive:
      cost += cfg.rule_penalties.get(r.rule_id, cfg.default_penalty)
  return cost


def brute_force_best(q: PlanQuery, bound: int = DEFAULT_ORACLE_BOUND) -> PlanResult:
  """Same contract as `best_plan`, computed by exhaustive generate-and-test.

  The returned ScoredPlan carries no per-step verdicts.

  Raises:
      BudgetExceeded: |actions|^horizon above `bound`
  """
  actions = q.domain.actions
  horizon = q.problem.horizon
  if len(actions) ** horizon > bound:
    raise BudgetExceeded(f'oracle bound exceeded: {len(actions)}^{horizon} > {bound}')

  s0 = initial_state(q.problem, q.domain)
  goal = ground_literals(q.problem.goal, q.domain)
  cap = None if q.problem.mode is Mode.EMERGENCY else q.config.max_penalty

  best: Optional[tuple] = None
  considered = rejected = 0
  for n in range(horizon + 1):
    for seq in itertools.product(actions, repeat=n):
      try:
        t = simulate(s0, seq, q.domain)
      except TransitionError:
        continue
      if not all(g in t.last.literals for g in goal):
        continue
      considered += 1
      costs = tuple(_event_cost(q, s, a) for s, a in zip(t.states, seq))
      total = sum(costs)
      if cap is not None and total > cap:
        rejected += 1
        continue
      key = (total, n, seq)
      if best is None or key < best[0]:
        best = (key, costs)

  plan = None
  if best is not None:
    (total, _, seq), costs = best
    plan = ScoredPlan(seq, costs, total, verdict=None)
  return PlanResult(best=plan, considered=considered, rejected_by_cap=rejected, mode=q.problem.mode)
