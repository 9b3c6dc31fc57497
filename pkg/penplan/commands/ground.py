"""`penplan ground`: print the ground program."""

import click

from penplan.ground import format_ground
from penplan.report import Run

from .inputs import json_option, load_inputs, trace_option


@click.command('ground')
@click.argument('domain_path')
@click.argument('policy_path')
@json_option
@trace_option
@click.pass_obj
def ground(settings, domain_path, policy_path, as_json, trace):
  """Expand the domain and policy over their sorts."""
  with Run('ground', as_json, trace) as run:
    inputs = load_inputs(run, settings, domain_path, policy_path)
    program = format_ground(inputs.domain, inputs.policy)
    run.report.result = {'program': program}
    run.text = program
