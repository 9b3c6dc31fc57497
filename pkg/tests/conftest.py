"""Shared fixtures: the shipped scenarios, parsed and grounded."""

from dataclasses import dataclass, replace
from pathlib import Path

import pytest

from penplan.dsl import ProblemSpec, parse_domain, parse_policy, parse_problem
from penplan.ground import GroundAction, GroundDomain, GroundPolicy, ground_domain, ground_policy
from penplan.penalty import PenaltyConfig
from penplan.planner import PlanQuery

SCENARIOS = Path(__file__).resolve().parent.parent / 'scenarios'
SCENARIO_NAMES = ['drone-mini', 'drone-delivery', 'self-driving-car']


def scenario_paths(name: str) -> tuple[str, str, str]:
  base = SCENARIOS / name / name
  return tuple(str(base.with_suffix(ext)) for ext in ('.dom', '.pol', '.prb'))


@dataclass
class Scenario:
  domain: GroundDomain
  policy: GroundPolicy
  problem: ProblemSpec
  config: PenaltyConfig

  def query(self, **changes) -> PlanQuery:
    """PlanQuery with optional problem fields (horizon, mode) or config overrides replaced."""
    problem_fields = {k: changes.pop(k) for k in ('horizon', 'mode') if k in changes}
    config_fields = {
      k: changes.pop(k) for k in ('max_penalty', 'default_penalty', 'weak_penalty') if k in changes
    }
    return PlanQuery(
      domain=self.domain,
      policy=self.policy,
      config=self.config.model_copy(update=config_fields),
      problem=replace(self.problem, **problem_fields),
      **changes,
    )

  def action(self, text: str) -> GroundAction:
    name, _, rest = text.partition('(')
    args = tuple(a.strip() for a in rest.rstrip(')').split(',')) if rest else ()
    return GroundAction(name, args)


def load_scenario(name: str) -> Scenario:
  dom_path, pol_path, prb_path = scenario_paths(name)
  domain = ground_domain(parse_domain(Path(dom_path).read_text()))
  policy_spec = parse_policy(Path(pol_path).read_text())
  return Scenario(
    domain=domain,
    policy=ground_policy(policy_spec, domain),
    problem=parse_problem(Path(prb_path).read_text()),
    config=PenaltyConfig.from_policy(policy_spec),
  )


@pytest.fixture
def drone_mini() -> Scenario:
  return load_scenario('drone-mini')


@pytest.fixture
def drone_delivery() -> Scenario:
  return load_scenario('drone-delivery')


@pytest.fixture
def car() -> Scenario:
  return load_scenario('self-driving-car')


@pytest.fixture(params=SCENARIO_NAMES)
def scenario(request) -> Scenario:
  return load_scenario(request.param)
