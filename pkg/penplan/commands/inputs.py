"""Shared options and input loading for the subcommands."""

from dataclasses import dataclass
from typing import Optional

import click

from penplan import console
from penplan.dsl import (
  DomainSpec,
  PolicySpec,
  ProblemSpec,
  parse_domain,
  parse_policy,
  parse_problem,
)
from penplan.ground import GroundDomain, GroundPolicy, ground_domain, ground_policy
from penplan.penalty import PenaltyConfig
from penplan.planner import PlanQuery
from penplan.report import Run
from penplan.settings import Settings

json_option = click.option(
  '--json', 'as_json', is_flag=True, help='Write the JSON report to stdout'
)
trace_option = click.option('--trace', is_flag=True, help='Print phase timings to stderr')
budget_option = click.option(
  '--budget', type=click.IntRange(min=1), default=None, help='Search / state budget override'
)
prune_option = click.option(
  '--prune', is_flag=True, help='Skip prefixes costlier than the best plan found so far'
)


def penalty_options(f):
  """--max-penalty, --default-penalty and --weak-penalty; flags win over the policy file."""
  f = click.option('--weak-penalty', type=click.IntRange(min=0), default=None)(f)
  f = click.option('--default-penalty', type=click.IntRange(1, 3), default=None)(f)
  f = click.option('--max-penalty', type=click.IntRange(min=0), default=None)(f)
  return f


@dataclass
class Inputs:
  """Parsed and ground inputs of one subcommand."""
  domain_spec: DomainSpec
  policy_spec: PolicySpec
  domain: GroundDomain
  policy: GroundPolicy
  problem: Optional[ProblemSpec] = None


def load_inputs(
  run: Run,
  settings: Settings,
  domain_path: str,
  policy_path: str,
  problem_path: Optional[str] = None,
) -> Inputs:
  """Parse and ground the input files, attributing errors to the file at fault."""
  console.progress(f'Loading {domain_path}, {policy_path}')
  domain_spec = run.load(domain_path, parse_domain)
  policy_spec = run.load(policy_path, parse_policy)
  problem = run.load(problem_path, parse_problem) if problem_path else None

  with run.stage('ground', domain_path) as out:
    domain = ground_domain(domain_spec, settings.ground_budget)
    out.update(fluents=len(domain.fluents), actions=len(domain.actions))
  with run.stage('ground', policy_path) as out:
    policy = ground_policy(policy_spec, domain, settings.ground_budget)
    out.update(rules=len(policy.rules()))
  console.success(f'Grounded {len(domain.fluents)} fluents, {len(domain.actions)} actions')
  return Inputs(domain_spec, policy_spec, domain, policy, problem)


def penalty_config(
  inputs: Inputs,
  max_penalty: Optional[int],
  default_penalty: Optional[int],
  weak_penalty: Optional[int],
) -> PenaltyConfig:
  """Policy-file penalties with the command line flags applied on top."""
  return PenaltyConfig.from_policy(inputs.policy_spec).with_overrides(
    default_penalty=default_penalty, weak_penalty=weak_penalty, max_penalty=max_penalty
  )


def plan_query(
  inputs: Inputs,
  settings: Settings,
  config: PenaltyConfig,
  budget: Optional[int] = None,
  prune: bool = False,
) -> PlanQuery:
  """`--budget` wins over the configured search budget."""
  return PlanQuery(
    domain=inputs.domain,
    policy=inputs.policy,
    config=config,
    problem=inputs.problem,
    search_budget=budget or settings.search_budget,
    prune=prune,
  )
