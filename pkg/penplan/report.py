"""Run reports: input digests, result payload, diagnostics and exit codes.

Every subcommand runs inside a `Run`. Library errors raised in the block become
diagnostics with the exit code their class carries; the report is then written
as JSON (`--json`) or as the text lines the command collected.
"""

import hashlib
from contextlib import contextmanager
from typing import Any, Callable, Iterator, Optional, TypeVar

import click
from pydantic import BaseModel, Field

from penplan import console
from penplan.compliance import AuthClass, EventVerdict
from penplan.errors import EXIT_OK, PenplanError, PolicyError
from penplan.penalty import PenaltyConfig, ScoredPlan, charged_auth_rule
from penplan.planner import PlanResult
from penplan.trace import RunTrace

T = TypeVar('T')


class InputFile(BaseModel):
  """An input path and the sha256 of its bytes."""
  path: str
  sha256: str


class Diagnostic(BaseModel):
  """One error with its file position, when known."""
  file: Optional[str] = None
  line: Optional[int] = None
  column: Optional[int] = None
  message: str

  @classmethod
  def from_error(cls, e: PenplanError) -> 'Diagnostic':
    """Diagnostic carrying the location of `e`."""
    return cls(file=e.path, line=e.line, column=e.column, message=e.message)

  def __str__(self) -> str:
    where = ':'.join(str(p) for p in (self.file, self.line, self.column) if p is not None)
    return f'{where}: {self.message}' if where else self.message


class RunReport(BaseModel):
  """The `--json` document written by every subcommand."""
  command: str
  inputs: list[InputFile] = Field(default_factory=list)
  result: dict[str, Any] = Field(default_factory=dict)
  diagnostics: list[Diagnostic] = Field(default_factory=list)


def scored_plan_payload(scored: ScoredPlan, cfg: Optional[PenaltyConfig] = None) -> dict[str, Any]:
  """JSON view of a plan; steps are numbered from 1.

  With `cfg`, a non-compliant step names the forbidding rule it was charged for;
  without it, the first one.
  """

  def auth_rule(ev: EventVerdict) -> Optional[str]:
    rule = ev.auth_rule
    if cfg is not None and ev.auth_class is AuthClass.NON_COMPLIANT:
      rule = charged_auth_rule(ev, cfg)
    return str(rule) if rule else None

  payload: dict[str, Any] = {
    'actions': [str(a) for a in scored.actions],
    'length': len(scored),
    'total': scored.total,
  }
  if scored.verdict is not None:
    payload['steps'] = [
      {
        'step': i,
        'action': str(ev.action),
        'auth': ev.auth_class.value,
        'auth_rule': auth_rule(ev),
        'obl_violations': [
          {'rule': str(v.rule), 'literal': str(v.obligation)} for v in ev.obl_violations
        ],
        'penalty': penalty,
      }
      for i, (ev, penalty) in enumerate(zip(scored.verdict.steps, scored.step_penalties), 1)
    ]
  return payload


def plan_result_payload(result: PlanResult, cfg: Optional[PenaltyConfig] = None) -> dict[str, Any]:
  """JSON view of a search result."""
  return {
    'mode': result.mode.value,
    'found': result.best is not None,
    'plan': scored_plan_payload(result.best, cfg) if result.best is not None else None,
    'considered': result.considered,
    'rejected_by_cap': result.rejected_by_cap,
  }


def step_lines(scored: ScoredPlan, cfg: Optional[PenaltyConfig] = None) -> list[str]:
  """Text table of per-step verdicts."""
  lines = []
  for step in scored_plan_payload(scored, cfg).get('steps', []):
    auth = step['auth'] + (f' ({step["auth_rule"]})' if step['auth_rule'] else '')
    obl = ', '.join(f'{v["rule"]} {v["literal"]}' for v in step['obl_violations']) or '-'
    lines.append(f'{step["step"]:>3}  {step["action"]:<24} {auth:<22} {obl:<28} {step["penalty"]}')
  return lines


class Run:
  """One CLI invocation: collects inputs, result and diagnostics."""

  def __init__(self, command: str, as_json: bool = False, trace: bool = False):
    self.report = RunReport(command=command)
    self.as_json = as_json
    self.text: list[str] = []
    self.exit_code = EXIT_OK
    self.trace = RunTrace(command) if trace else None

  def read(self, path: str) -> str:
    """Read an input file and record its digest."""
    try:
      with open(path, 'rb') as f:
        raw = f.read()
      text = raw.decode('utf-8')
    except (OSError, UnicodeDecodeError):
      raise PenplanError(f'cannot read {path}', path=path) from None
    self.report.inputs.append(InputFile(path=path, sha256=hashlib.sha256(raw).hexdigest()))
    return text

  def load(self, path: str, parse: Callable[[str], T]) -> T:
    """Read `path` and parse it, attributing parse errors to the file."""
    text = self.read(path)
    with self.stage('parse', path, file=path):
      return parse(text)

  @contextmanager
  def stage(
    self,
    name: str,
    path: Optional[str] = None,
    policy_path: Optional[str] = None,
    **inputs: Any,
  ) -> Iterator[dict]:
    """Attribute errors to `path` and time the block when tracing.

    A `PolicyError` raised in the block is attributed to `policy_path` instead
    when one is given.
    """
    try:
      if self.trace is None:
        yield {}
      else:
        with self.trace.span(name, **inputs) as outputs:
          yield outputs
    except PenplanError as e:
      if e.path is None:
        e.path = policy_path if policy_path and isinstance(e, PolicyError) else path
      raise

  def __enter__(self) -> 'Run':
    return self

  def __exit__(self, exc_type, exc, tb) -> bool:
    if exc is not None and not isinstance(exc, PenplanError):
      return False
    if exc is not None:
      self.report.diagnostics.append(Diagnostic.from_error(exc))
      self.exit_code = exc.exit_code
    self._emit()
    raise click.exceptions.Exit(self.exit_code)

  def _emit(self) -> None:
    for diagnostic in self.report.diagnostics:
      console.error(str(diagnostic))
    if self.as_json:
      click.echo(self.report.model_dump_json(indent=2))
    else:
      for line in self.text:
        click.echo(line)
    if self.trace is not None:
      self.trace.complete('OK' if self.exit_code == EXIT_OK else 'ERROR')
      for line in self.trace.lines():
        click.echo(line, err=True)
