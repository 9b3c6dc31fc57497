"""`penplan validate`: exhaustive categoricity check of a policy."""

import click

from penplan import console
from penplan.errors import EXIT_NONCOMPLIANT
from penplan.policy_eval import check_categorical, enumerate_states
from penplan.report import Run

from .inputs import budget_option, json_option, load_inputs, trace_option


@click.command('validate')
@click.argument('domain_path')
@click.argument('policy_path')
@json_option
@budget_option
@trace_option
@click.pass_obj
def validate(settings, domain_path, policy_path, as_json, budget, trace):
  """Evaluate the policy in every state of the domain."""
  with Run('validate', as_json, trace) as run:
    inputs = load_inputs(run, settings, domain_path, policy_path)
    bound = budget or settings.state_bound
    with run.stage('validate', domain_path) as out:
      states = enumerate_states(inputs.domain, bound)
      findings = check_categorical(inputs.policy, inputs.domain, bound, states)
      out.update(states=len(states), findings=len(findings))

    run.report.result = {
      'categorical': not findings,
      'states_checked': len(states),
      'findings': [{'state': str(state), 'error': str(err)} for state, err in findings],
    }
    run.text = [f'{state}: {err}' for state, err in findings]
    run.text.append(f'states checked: {len(states)}  findings: {len(findings)}')
    if findings:
      run.exit_code = EXIT_NONCOMPLIANT
      console.warning(f'Policy is not categorical in {len(findings)} state(s)')
    else:
      console.success('Policy is categorical')
