"""`penplan plan`: pick the admissible plan with minimal total penalty."""

import click

from penplan import console
from penplan.errors import EXIT_NO_PLAN
from penplan.planner import best_plan
from penplan.report import Run, plan_result_payload, step_lines

from .inputs import (
  budget_option,
  json_option,
  load_inputs,
  penalty_config,
  penalty_options,
  plan_query,
  prune_option,
  trace_option,
)


@click.command('plan')
@click.argument('domain_path')
@click.argument('policy_path')
@click.argument('problem_path')
@json_option
@penalty_options
@budget_option
@prune_option
@trace_option
@click.pass_obj
def plan(
  settings,
  domain_path,
  policy_path,
  problem_path,
  as_json,
  max_penalty,
  default_penalty,
  weak_penalty,
  budget,
  prune,
  trace,
):
  """Find the best plan for PROBLEM_PATH under the policy."""
  with Run('plan', as_json, trace) as run:
    inputs = load_inputs(run, settings, domain_path, policy_path, problem_path)
    cfg = penalty_config(inputs, max_penalty, default_penalty, weak_penalty)
    query = plan_query(inputs, settings, cfg, budget, prune)

    problem = query.problem
    console.progress(f'Searching plans up to horizon {problem.horizon} ({problem.mode.value})')
    with run.stage('search', problem_path, policy_path) as out:
      result = best_plan(query)
      out.update(considered=result.considered, rejected_by_cap=result.rejected_by_cap)

    run.report.result = plan_result_payload(result, cfg)
    if result.best is None:
      run.exit_code = EXIT_NO_PLAN
      reason = (
        'all plans exceed max_penalty' if result.rejected_by_cap else 'no plan within horizon'
      )
      console.warning(f'No plan: {reason}')
      run.text = [
        f'no plan ({reason})',
        f'considered: {result.considered}  rejected_by_cap: {result.rejected_by_cap}',
      ]
      return

    best = result.best
    console.success(f'Best plan has {len(best)} steps, total penalty {best.total}')
    run.text = [
      f'plan: {"; ".join(str(a) for a in best.actions) or "(empty)"}',
      *step_lines(best, cfg),
      f'total: {best.total}  length: {len(best)}  mode: {result.mode.value}',
      f'considered: {result.considered}  rejected_by_cap: {result.rejected_by_cap}',
    ]
