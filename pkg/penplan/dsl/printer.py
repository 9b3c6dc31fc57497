"""Pretty-printers producing text the parser accepts back."""

from penplan.dsl.ast import Body, DomainSpec, PolicySpec, ProblemSpec, Rule, Schema


def _join(items) -> str:
  return ', '.join(str(i) for i in items)


def _if(body: Body) -> str:
  return f' if {_join(body)}' if body else ''


def _schema(schema: Schema) -> str:
  return f'{schema.name}({", ".join(schema.sorts)})' if schema.sorts else schema.name


def format_domain(spec: DomainSpec) -> str:
  """Render a domain back to `.dom` syntax."""
  lines = [f'sort {name} {{ {_join(consts)} }}.' for name, consts in spec.sorts.items()]
  lines += [f'fluent {_schema(s)}.' for s in spec.fluent_schemas]
  lines += [f'action {_schema(s)}.' for s in spec.action_schemas]
  lines += [
    f'causes {law.action}: {_join(law.effects)}{_if(law.body)}.' for law in spec.dynamic_laws
  ]
  lines += [f'static {law.head}{_if(law.body)}.' for law in spec.static_laws]
  lines += [f'exec {law.action}{_if(law.body)}.' for law in spec.exec_conditions]
  return '\n'.join(lines) + '\n'


def format_rule(rule: Rule) -> str:
  """Render one schematic rule."""
  keyword, normally = ('default', 'normally ') if rule.defeasible else ('rule', '')
  return f'{keyword} {rule.id}: {normally}{rule.head}{_if(rule.body)}.'


def format_policy(spec: PolicySpec) -> str:
  """Render a policy with explicit default and weak penalties."""
  lines = [format_rule(r) for r in spec.rules()]
  lines += [f'prefer {stronger} {weaker}.' for stronger, weaker in spec.preferences]
  lines += [f'penalty {rule_id} = {value}.' for rule_id, value in spec.rule_penalties.items()]
  lines.append(f'penalty default = {spec.default_penalty}.')
  lines.append(f'penalty weak = {spec.weak_penalty}.')
  if spec.max_penalty is not None:
    lines.append(f'max_penalty = {spec.max_penalty}.')
  return '\n'.join(lines) + '\n'


def format_problem(spec: ProblemSpec) -> str:
  """Render a problem back to `.prb` syntax."""
  return (
    f'init {_join(spec.init)}.\n'
    f'goal {_join(spec.goal)}.\n'
    f'horizon {spec.horizon}.\n'
    f'mode {spec.mode.value}.\n'
  )
