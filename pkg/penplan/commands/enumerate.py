"""`penplan enumerate`: every goal-achieving plan in selection order."""

import click

from penplan import console
from penplan.errors import EXIT_NO_PLAN
from penplan.planner import enumerate_plans
from penplan.report import Run

from .inputs import (
  budget_option,
  json_option,
  load_inputs,
  penalty_config,
  penalty_options,
  plan_query,
  trace_option,
)


@click.command('enumerate')
@click.argument('domain_path')
@click.argument('policy_path')
@click.argument('problem_path')
@json_option
@penalty_options
@budget_option
@trace_option
@click.pass_obj
def enumerate_cmd(
  settings,
  domain_path,
  policy_path,
  problem_path,
  as_json,
  max_penalty,
  default_penalty,
  weak_penalty,
  budget,
  trace,
):
  """List goal-achieving plans by (total, length, actions)."""
  with Run('enumerate', as_json, trace) as run:
    inputs = load_inputs(run, settings, domain_path, policy_path, problem_path)
    cfg = penalty_config(inputs, max_penalty, default_penalty, weak_penalty)
    query = plan_query(inputs, settings, cfg, budget)
    with run.stage('search', problem_path, policy_path) as out:
      plans = enumerate_plans(query)
      out.update(plans=len(plans))

    rows = [
      {'actions': [str(a) for a in p.actions], 'total': p.total, 'length': len(p)} for p in plans
    ]
    run.report.result = {'plans': rows, 'count': len(rows)}
    run.text = [
      f'{row["total"]:>4} {row["length"]:>4}  {"; ".join(row["actions"]) or "(empty)"}'
      for row in rows
    ]
    run.text.append(f'plans: {len(rows)}')
    if not plans:
      run.exit_code = EXIT_NO_PLAN
      console.warning('No goal-achieving plan within the horizon')
