import random

import pytest

from penplan.dsl import parse_domain, parse_policy
from penplan.errors import BudgetExceeded, PolicyError
from penplan.ground import GroundAction, GroundLiteral, ground_domain, ground_policy
from penplan.policy_eval import Obligation, check_categorical, enumerate_states, evaluate_state
from penplan.transition import State, initial_state, successor

TWO_FLUENTS = 'fluent a. fluent b. action go. action stay.'


def state(**values: bool) -> State:
  return State(frozenset(GroundLiteral(name, (), v) for name, v in values.items()))


def setup(policy_text: str, domain_text: str = TWO_FLUENTS):
  dom = ground_domain(parse_domain(domain_text))
  return dom, ground_policy(parse_policy(policy_text), dom)


def test_drone_mini_initial_state(drone_mini):
  s0 = initial_state(drone_mini.problem, drone_mini.domain)
  verdicts = evaluate_state(drone_mini.policy, s0)
  cruise = drone_mini.action('cruise(base,cust)')
  assert verdicts.entailed_not_permitted(cruise)
  assert [str(r) for r in verdicts.entailment(cruise).forbidden_by] == ['p1@0']
  assert not verdicts.entailed_permitted(drone_mini.action('ascend'))
  assert verdicts.obligations == {}


def test_drone_mini_obligation_over_customer(drone_mini):
  dom = drone_mini.domain
  s = initial_state(drone_mini.problem, dom)
  for a in ('ascend', 'cruise(base,cust)'):
    s = successor(s, drone_mini.action(a), dom)
  verdicts = evaluate_state(drone_mini.policy, s)
  descend = Obligation(drone_mini.action('descend'))
  assert [str(ref) for ref in verdicts.obligations[descend]] == ['p2@0']
  assert str(descend) == 'obl(descend)'


def test_strict_conflict_is_inconsistent():
  _, policy = setup('rule r1: permitted(go). rule r2: -permitted(go).')
  with pytest.raises(PolicyError) as info:
    evaluate_state(policy, state(a=True, b=True))
  assert info.value.kind == PolicyError.INCONSISTENT
  assert info.value.rules == ('r1@0', 'r2@0')


def test_obligation_and_its_negation_conflict():
  _, policy = setup('rule r1: obl(go) if a. rule r2: obl(-go) if a.')
  with pytest.raises(PolicyError, match='inconsistent'):
    evaluate_state(policy, state(a=True, b=False))
  evaluate_state(policy, state(a=False, b=False))


def test_strict_rule_blocks_conflicting_default():
  _, policy = setup('rule r1: -permitted(go) if a. default d1: normally permitted(go).')
  verdicts = evaluate_state(policy, state(a=True, b=False))
  assert verdicts.entailed_not_permitted(GroundAction('go'))
  assert not verdicts.entailed_permitted(GroundAction('go'))
  verdicts = evaluate_state(policy, state(a=False, b=False))
  assert verdicts.entailed_permitted(GroundAction('go'))


def test_preference_resolves_default_conflict():
  _, policy = setup(
    'default d1: normally permitted(go).\n'
    'default d2: normally -permitted(go) if b.\n'
    'prefer d2 d1.\n'
  )
  verdicts = evaluate_state(policy, state(a=False, b=True))
  assert verdicts.entailed_not_permitted(GroundAction('go'))
  assert not verdicts.entailed_permitted(GroundAction('go'))


def test_unresolved_default_conflict_is_non_categorical():
  _, policy = setup('default d1: normally permitted(go). default d2: normally -permitted(go) if b.')
  with pytest.raises(PolicyError) as info:
    evaluate_state(policy, state(a=False, b=True))
  assert info.value.kind == PolicyError.NON_CATEGORICAL


def test_waived_obligation():
  _, policy = setup('rule r1: -obl(go) if a.')
  verdicts = evaluate_state(policy, state(a=True, b=False))
  assert verdicts.obligations == {}
  assert Obligation(GroundAction('go')) in verdicts.waived


def test_enumerate_states_respects_closure():
  dom = ground_domain(parse_domain('fluent a. fluent b. static b if a.'))
  states = enumerate_states(dom)
  assert len(states) == 3


def test_check_categorical_drone_mini(drone_mini):
  assert check_categorical(drone_mini.policy, drone_mini.domain) == []


def test_check_categorical_lists_every_offending_state():
  dom, policy = setup(
    'rule r1: permitted(go). rule r2: -permitted(go).',
    'fluent a. fluent b. fluent c. fluent d. action go.',
  )
  findings = check_categorical(policy, dom)
  assert len(findings) == 16
  assert all(err.kind == PolicyError.INCONSISTENT for _, err in findings)


def test_state_bound():
  names = ' '.join(f'fluent f{i}.' for i in range(25))
  dom = ground_domain(parse_domain(names))
  with pytest.raises(BudgetExceeded, match='state space too large'):
    enumerate_states(dom, bound=20)


def test_strict_and_default_obligations_on_opposite_actions_are_inconsistent():
  dom, policy = setup('rule s: obl(go). default d: normally obl(-go).', 'fluent a. action go.')
  findings = check_categorical(policy, dom)
  assert len(findings) == 2
  assert all(err.kind == PolicyError.INCONSISTENT for _, err in findings)
  assert findings[0][1].rules == ('s@0', 'd@0')


def test_strict_waiver_blocks_default_obligation():
  _, policy = setup('rule s: -obl(go) if a. default d: normally obl(go).')
  verdicts = evaluate_state(policy, state(a=True, b=False))
  assert verdicts.obligations == {}
  assert [str(r) for r in verdicts.waived[Obligation(GroundAction('go'))]] == ['s@0']
  verdicts = evaluate_state(policy, state(a=False, b=False))
  assert [str(r) for r in verdicts.obligations[Obligation(GroundAction('go'))]] == ['d@0']


def test_blocked_default_still_defeats_weaker_default():
  _, policy = setup(
    'rule s: -obl(go) if a.\n'
    'default d1: normally obl(go).\n'
    'default d2: normally obl(-go).\n'
    'prefer d1 d2.\n'
  )
  verdicts = evaluate_state(policy, state(a=True, b=False))
  assert verdicts.obligations == {}
  verdicts = evaluate_state(policy, state(a=False, b=False))
  assert list(verdicts.obligations) == [Obligation(GroundAction('go'))]


def test_fired_lists_every_conclusion():
  _, policy = setup('rule r1: permitted(go) if a. default d1: normally obl(stay).')
  verdicts = evaluate_state(policy, state(a=True, b=False))
  assert [f'{ref}: {head}' for ref, head in verdicts.fired] == [
    'r1@0: permitted(go)',
    'd1@0: obl(stay)',
  ]


HEADS = ['permitted({a})', '-permitted({a})', 'obl({a})', 'obl(-{a})', '-obl({a})']
BODIES = ['', ' if a', ' if -a', ' if b', ' if a, -b', ' if c']
MONO_DOMAIN = 'fluent a. fluent b. fluent c. action go. action stay.'


def _rule(rng: random.Random, name: str, keyword: str, actions=('go', 'stay')) -> str:
  head = rng.choice(HEADS).format(a=rng.choice(actions))
  normally = 'normally ' if keyword == 'default' else ''
  return f'{keyword} {name}: {normally}{head}{rng.choice(BODIES)}.'


def _conclusions(policy, s):
  try:
    return set(evaluate_state(policy, s).fired)
  except PolicyError:
    return None


def test_adding_a_strict_rule_keeps_strict_conclusions():
  """Strict conclusions only grow when a strict rule is added, unless evaluation fails."""
  rng = random.Random(5)
  dom = ground_domain(parse_domain(MONO_DOMAIN))
  states = enumerate_states(dom)
  checked = 0
  for _ in range(300):
    lines = [_rule(rng, f's{i}', 'rule') for i in range(rng.randint(0, 3))]
    extended = [*lines, _rule(rng, 'extra', 'rule')]
    smaller = ground_policy(parse_policy('\n'.join(lines)), dom)
    larger = ground_policy(parse_policy('\n'.join(extended)), dom)
    for s in states:
      before, after = _conclusions(smaller, s), _conclusions(larger, s)
      if before is None or after is None:
        continue
      assert before <= after
      checked += 1
  assert checked > 0


def test_unmentioned_action_has_no_authorization():
  rng = random.Random(8)
  dom = ground_domain(parse_domain(MONO_DOMAIN))
  states = enumerate_states(dom)
  stay = GroundAction('stay')
  for _ in range(200):
    lines = [
      _rule(rng, f'r{i}', rng.choice(['rule', 'default']), ('go',))
      for i in range(rng.randint(1, 4))
    ]
    policy = ground_policy(parse_policy('\n'.join(lines)), dom)
    for s in states:
      try:
        verdicts = evaluate_state(policy, s)
      except PolicyError:
        continue
      assert not verdicts.entailed_permitted(stay)
      assert not verdicts.entailed_not_permitted(stay)
