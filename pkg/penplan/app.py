"""Command-line entry point for the policy-aware planner."""

import click

from penplan import console
from penplan.commands import register_commands
from penplan.errors import EXIT_INPUT_ERROR, PenplanError
from penplan.settings import load_settings


@click.group()
@click.option('--config', 'config_path', default=None, help='Path to config.yaml')
@click.option('-v', '--verbose', is_flag=True, help='Show progress lines on stderr')
@click.pass_context
def cli(ctx: click.Context, config_path: str | None, verbose: bool):
  """Plan under authorization and obligation policies with minimal total penalty."""
  console.set_verbose(verbose)
  try:
    ctx.obj = load_settings(config_path)
  except PenplanError as e:
    console.error(str(e))
    ctx.exit(EXIT_INPUT_ERROR)


register_commands(cli)


def main():
  """Console script entry point."""
  cli()


if __name__ == '__main__':
  main()
