"""Front end for domain, policy and problem files."""

from penplan.dsl.ast import DomainSpec, Mode, PolicySpec, ProblemSpec
from penplan.dsl.parser import parse_domain, parse_plan, parse_policy, parse_problem
from penplan.dsl.printer import format_domain, format_policy, format_problem

__all__ = [
  'DomainSpec',
  'Mode',
  'PolicySpec',
  'ProblemSpec',
  'format_domain',
  'format_policy',
  'format_problem',
  'parse_domain',
  'parse_plan',
  'parse_policy',
  'parse_problem',
]
