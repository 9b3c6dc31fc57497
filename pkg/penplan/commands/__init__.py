# penplan subcommands

import click

from .check import check
from .enumerate import enumerate_cmd
from .ground import ground
from .plan import plan
from .validate import validate


def register_commands(group: click.Group) -> None:
  """Attach every subcommand to the `penplan` group."""
  group.add_command(plan)
  group.add_command(check)
  group.add_command(validate)
  group.add_command(enumerate_cmd)
  group.add_command(ground)
