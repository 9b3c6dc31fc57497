"""Sort checking of schematic terms against fluent/action signatures."""

from typing import Iterable

from penplan.dsl.ast import Body, Pos, Term, body_guards, is_variable
from penplan.errors import DslError, PenplanError


def _fail(error: type[PenplanError], message: str, pos: Pos) -> PenplanError:
  return error(message, line=pos.line, column=pos.column)


def check_term(
  term: Term,
  signatures: dict[str, tuple[str, ...]],
  sort_of_constant: dict[str, str],
  kind: str,
  error: type[PenplanError] = DslError,
) -> list[tuple[str, str]]:
  """Check one term and return its (variable, sort) occurrences.

  Args:
      term: Fluent atom or action term
      signatures: Name -> argument sorts for the term's kind
      sort_of_constant: Constant -> its sort
      kind: 'fluent' or 'action', used in messages
      error: Exception class to raise

  Returns:
      (variable, sort) pairs in argument order
  """
  if term.name not in signatures:
    raise _fail(error, f"unknown {kind} '{term.name}'", term.pos)
  sorts = signatures[term.name]
  if len(sorts) != len(term.args):
    raise _fail(
      error,
      f"{kind} '{term.name}' expects {len(sorts)} argument(s), got {len(term.args)}",
      term.pos,
    )
  typed = []
  for arg, sort in zip(term.args, sorts):
    if is_variable(arg):
      typed.append((arg, sort))
      continue
    if arg not in sort_of_constant:
      raise _fail(error, f"undeclared constant '{arg}'", term.pos)
    if sort_of_constant[arg] != sort:
      raise _fail(
        error,
        f"constant '{arg}' is of sort '{sort_of_constant[arg]}', expected '{sort}'",
        term.pos,
      )
  return typed


def infer_variable_sorts(
  occurrences: Iterable[tuple[str, str]],
  body: Body,
  pos: Pos,
  sort_of_constant: dict[str, str],
  error: type[PenplanError] = DslError,
) -> dict[str, str]:
  """Merge typed occurrences and make sure guards only use typed variables.

  Raises:
      error: 'conflicting sorts' or 'untyped variable'
  """
  sorts: dict[str, str] = {}
  for var, sort in occurrences:
    if sorts.setdefault(var, sort) != sort:
      raise _fail(error, f"conflicting sorts for variable '{var}'", pos)
  for guard in body_guards(body):
    for arg in (guard.left, guard.right):
      if is_variable(arg):
        if arg not in sorts:
          raise _fail(error, f"untyped variable '{arg}'", guard.pos)
      elif arg not in sort_of_constant:
        raise _fail(error, f"undeclared constant '{arg}'", guard.pos)
  return sorts
