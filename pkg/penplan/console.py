"""Status lines on stderr; stdout is reserved for results."""

import click

_verbose = False


def set_verbose(enabled: bool) -> None:
  """Show progress and success lines (`-v`)."""
  global _verbose
  _verbose = enabled


def progress(message: str) -> None:
  """Status line shown in verbose mode only."""
  if _verbose:
    click.echo(f'🔧 {message}', err=True)


def success(message: str) -> None:
  """Completion line shown in verbose mode only."""
  if _verbose:
    click.echo(f'✅ {message}', err=True)


def warning(message: str) -> None:
  """Always shown."""
  click.echo(f'⚠️  {message}', err=True)


def error(message: str) -> None:
  """Always shown; diagnostics go through here."""
  click.echo(f'❌ {message}', err=True)
