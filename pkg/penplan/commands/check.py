"""`penplan check`: classify and score a given plan."""

import click

from penplan import console
from penplan.dsl import parse_plan
from penplan.errors import EXIT_NONCOMPLIANT
from penplan.ground import resolve_action
from penplan.penalty import is_disabled, penalty_levels, score_plan
from penplan.report import Run, scored_plan_payload, step_lines
from penplan.transition import initial_state, simulate

from .inputs import json_option, load_inputs, penalty_config, penalty_options, trace_option


@click.command('check')
@click.argument('domain_path')
@click.argument('policy_path')
@click.argument('problem_path')
@click.option('--plan', 'plan_text', required=True, help='Semicolon-separated ground actions')
@json_option
@penalty_options
@trace_option
@click.pass_obj
def check(
  settings,
  domain_path,
  policy_path,
  problem_path,
  plan_text,
  as_json,
  max_penalty,
  default_penalty,
  weak_penalty,
  trace,
):
  """Report per-step compliance and the penalty of --plan."""
  with Run('check', as_json, trace) as run:
    inputs = load_inputs(run, settings, domain_path, policy_path, problem_path)
    cfg = penalty_config(inputs, max_penalty, default_penalty, weak_penalty)
    with run.stage('parse', '--plan'):
      actions = [resolve_action(term, inputs.domain) for term in parse_plan(plan_text)]
    with run.stage('init', problem_path):
      s0 = initial_state(inputs.problem, inputs.domain)
    with run.stage('simulate', problem_path, policy_path, steps=len(actions)) as out:
      trajectory = simulate(s0, actions, inputs.domain)
      scored = score_plan(inputs.policy, cfg, trajectory)
      out.update(total=scored.total)

    verdict = scored.verdict
    disabled = is_disabled(scored.total, cfg)
    run.report.result = {
      'plan': scored_plan_payload(scored, cfg),
      'auth': verdict.auth_overall.value,
      'obl': verdict.obl_overall.value,
      'compliant': verdict.compliant,
      'total': scored.total,
      'levels': penalty_levels(scored, cfg),
      'disabled': disabled,
      'fired': [[f'{ref}: {head}' for ref, head in ev.fired] for ev in verdict.steps],
    }
    run.text = [
      *step_lines(scored, cfg),
      f'auth: {verdict.auth_overall.value}  obl: {verdict.obl_overall.value}',
      f'total: {scored.total}',
    ]
    if disabled:
      run.text.append('disabled: true')
      console.warning(f'Total penalty {scored.total} exceeds max_penalty {cfg.max_penalty}')
    if not verdict.compliant:
      run.exit_code = EXIT_NONCOMPLIANT
