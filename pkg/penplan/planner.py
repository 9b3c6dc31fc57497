"""Bounded plan enumeration and minimal-penalty selection.

Plans are ordered by (total penalty, length, actions). In normal mode plans over
`max_penalty` are inadmissible; emergency mode lifts the cap but still
minimizes the penalty.
"""

from dataclasses import dataclass
from typing import Iterator, Optional

from penplan.compliance import EventVerdict, aggregate, classify_event
from penplan.dsl.ast import Mode, ProblemSpec
from penplan.errors import BudgetExceeded, TransitionError
from penplan.ground import GroundAction, GroundDomain, GroundLiteral, GroundPolicy, ground_literals
from penplan.penalty import PenaltyConfig, ScoredPlan, step_penalty, total_penalty
from penplan.transition import State, initial_state, satisfies, successor

DEFAULT_SEARCH_BUDGET = 10**7


@dataclass(frozen=True)
class PlanQuery:
  """Everything a search needs: ground inputs, penalties, problem and budgets."""
  domain: GroundDomain
  policy: GroundPolicy
  config: PenaltyConfig
  problem: ProblemSpec
  search_budget: int = DEFAULT_SEARCH_BUDGET
  prune: bool = False

  @property
  def emergency(self) -> bool:
    """Emergency mode ignores the penalty cap."""
    return self.problem.mode is Mode.EMERGENCY

  def admissible(self, total: int) -> bool:
    """Whether a plan with this total may be selected under the query's mode."""
    cap = self.config.max_penalty
    return self.emergency or cap is None or total <= cap


@dataclass(frozen=True)
class PlanResult:
  """Best admissible plan (or None) and how many plans were seen and capped."""
  best: Optional[ScoredPlan]
  considered: int = 0
  rejected_by_cap: int = 0
  mode: Mode = Mode.NORMAL


class _Search:
  """Depth-first walk over the transition diagram from the initial state.

  `cutoff`, when set, stops descending into prefixes whose accumulated
  penalty already exceeds it. Penalties are non-negative, so no plan under
  the cutoff is lost.
  """

  def __init__(self, q: PlanQuery):
    self.q = q
    self.goal: list[GroundLiteral] = ground_literals(q.problem.goal, q.domain)
    self.cutoff: Optional[int] = None
    self.nodes = 0

  def _visit(self) -> None:
    self.nodes += 1
    if self.nodes > self.q.search_budget:
      raise BudgetExceeded(f'search budget exceeded: more than {self.q.search_budget} nodes')

  def plans(self) -> Iterator[ScoredPlan]:
    s0 = initial_state(self.q.problem, self.q.domain)
    yield from self._walk(s0, (), (), ())

  def _walk(
    self,
    s: State,
    actions: tuple[GroundAction, ...],
    events: tuple[EventVerdict, ...],
    penalties: tuple[int, ...],
  ) -> Iterator[ScoredPlan]:
    self._visit()
    if satisfies(s, self.goal):
      yield ScoredPlan(actions, penalties, total_penalty(penalties), aggregate(events))
    if len(actions) >= self.q.problem.horizon:
      return
    spent = total_penalty(penalties)
    for a in self.q.domain.actions:
      try:
        nxt = successor(s, a, self.q.domain)
      except TransitionError:
        continue
      ev = classify_event(self.q.policy, s, a)
      cost = step_penalty(ev, self.q.config)
      if self.cutoff is not None and spent + cost > self.cutoff:
        continue
      yield from self._walk(nxt, actions + (a,), events + (ev,), penalties + (cost,))


def enumerate_plans(q: PlanQuery) -> list[ScoredPlan]:
  """Every goal-achieving plan of length 0..horizon, in selection order.

  Raises:
      BudgetExceeded: more than `q.search_budget` search nodes visited
  """
  return sorted(_Search(q).plans(), key=ScoredPlan.sort_key)


def best_plan(q: PlanQuery) -> PlanResult:
  """Minimal plan under (total, length, actions) among admissible ones.

  With `q.prune` the search drops prefixes that already cost more than the
  best admissible plan found (or the cap, in normal mode); counts then cover
  only the plans actually visited.
  """
  search = _Search(q)
  if q.prune and not q.emergency:
    search.cutoff = q.config.max_penalty
  best, considered, rejected = None, 0, 0
  for plan in search.plans():
    considered += 1
    if not q.admissible(plan.total):
      rejected += 1
      continue
    if best is None or plan.sort_key() < best.sort_key():
      best = plan
      if q.prune:
        search.cutoff = best.total
  mode = q.problem.mode
  return PlanResult(best=best, considered=considered, rejected_by_cap=rejected, mode=mode)
