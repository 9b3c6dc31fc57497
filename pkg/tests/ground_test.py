import itertools
import random

import pytest

from penplan.dsl import parse_domain, parse_policy
from penplan.dsl.ast import HeadKind
from penplan.errors import BudgetExceeded, GroundingError
from penplan.ground import (
  GroundAction,
  GroundAtom,
  GroundHead,
  GroundLiteral,
  RuleRef,
  complement,
  format_ground,
  ground_domain,
  ground_policy,
)


def test_drone_mini_ground_actions(drone_mini):
  assert [str(a) for a in drone_mini.domain.actions] == [
    'ascend',
    'cruise(base,cust)',
    'cruise(cust,base)',
    'descend',
    'drop',
  ]


def test_drone_mini_ground_fluents(drone_mini):
  assert [str(f) for f in drone_mini.domain.fluents] == [
    'at(base)',
    'at(cust)',
    'delivered',
    'high',
  ]


def test_guards_prune_law_instances(drone_mini):
  cruise = [law for law in drone_mini.domain.dynamic_laws if law.action.name == 'cruise']
  assert len(cruise) == 2
  assert all(law.action.args[0] != law.action.args[1] for law in cruise)


def test_actions_without_laws_range_over_sorts():
  dom = ground_domain(parse_domain('sort s { a, b }. action go(s, s).'))
  assert len(dom.actions) == 4


def test_rule_instances_are_numbered(drone_mini):
  p1 = [r for r in drone_mini.policy.strict_rules if r.rule_id == 'p1']
  assert [str(r.ref) for r in p1] == ['p1@0', 'p1@1']
  assert [str(r.head.action) for r in p1] == ['cruise(base,cust)', 'cruise(cust,base)']


def test_policy_carries_declared_penalties(drone_mini):
  assert drone_mini.policy.rule_penalties['p1'] == 3
  assert drone_mini.policy.default_penalty == 2
  assert drone_mini.config.penalty_for('p1') == 3
  assert drone_mini.config.penalty_for('unknown') == 2


def test_rule_instances_outside_the_domain_are_dropped():
  dom = ground_domain(
    parse_domain(
      'sort s { a, b }. fluent at(s). action go(s). causes go(X): at(X) if -at(X), X != b.'
    )
  )
  assert [str(a) for a in dom.actions] == ['go(a)']
  policy = ground_policy(parse_policy('rule r: permitted(go(X)).'), dom)
  assert [str(r.head.action) for r in policy.strict_rules] == ['go(a)']


def test_unknown_action_in_rule_head(drone_mini):
  with pytest.raises(GroundingError, match="unknown action 'fly'"):
    ground_policy(parse_policy('rule r: permitted(fly).'), drone_mini.domain)


def test_unknown_fluent_in_rule_body(drone_mini):
  with pytest.raises(GroundingError, match="unknown fluent 'windy'"):
    ground_policy(parse_policy('rule r: permitted(ascend) if windy.'), drone_mini.domain)


def test_grounding_budget():
  spec = parse_domain('sort s { a, b, c, d }. fluent f(s, s, s).')
  with pytest.raises(BudgetExceeded, match='domain too large'):
    ground_domain(spec, budget=10)


def test_head_conflicts():
  go = GroundAction('go')
  permitted = GroundHead(HeadKind.PERMITTED, go)
  assert permitted.conflicts_with(permitted.complement())
  assert not permitted.conflicts_with(permitted)
  obl = GroundHead(HeadKind.OBL, go)
  obl_not = GroundHead(HeadKind.OBL, go, action_positive=False)
  assert obl.conflicts_with(obl_not)
  assert obl.conflicts_with(obl.complement())
  assert not obl.conflicts_with(permitted)


def test_rule_ref_rendering():
  assert str(RuleRef('p2', 0)) == 'p2@0'


def test_format_ground(drone_mini):
  lines = format_ground(drone_mini.domain, drone_mini.policy)
  assert 'fluent at(base).' in lines
  assert 'action cruise(base,cust).' in lines
  assert 'causes cruise(base,cust): -at(base), at(cust) if at(base).' in lines
  assert 'exec drop if at(cust).' in lines
  assert 'rule p1@0: -permitted(cruise(base,cust)) if -high.' in lines
  assert lines == format_ground(drone_mini.domain, drone_mini.policy)


def test_ground_atoms_sort_by_name_then_args():
  atoms = [GroundAtom('b'), GroundAtom('a', ('y',)), GroundAtom('a', ('x',))]
  assert sorted(atoms) == [GroundAtom('a', ('x',)), GroundAtom('a', ('y',)), GroundAtom('b')]


def test_complement_flips_sign():
  high = GroundLiteral('high')
  assert str(complement(high)) == '-high'
  assert str(complement(GroundLiteral('at', ('base',), False))) == 'at(base)'
  assert complement(complement(high)) == high


def test_drone_delivery_cruise_instances(drone_delivery):
  cruise = [a for a in drone_delivery.domain.actions if a.name == 'cruise']
  assert len(cruise) == 6
  rule = [r for r in drone_delivery.policy.strict_rules if r.rule_id == 'safe_height']
  assert len(rule) == 6
  assert [r.ref.index for r in rule] == list(range(6))


def test_instances_match_satisfying_assignments():
  """A rule has one instance per variable assignment its guards allow."""
  rng = random.Random(31)
  for _ in range(100):
    consts = [f'c{i}' for i in range(rng.randint(1, 4))]
    dom = ground_domain(parse_domain(f'sort s {{ {", ".join(consts)} }}. action go(s, s).'))
    options = ['X != Y', f'X != {rng.choice(consts)}', f'Y != {rng.choice(consts)}']
    guards = [g for g in options if rng.random() < 0.5]
    body = f' if {", ".join(guards)}' if guards else ''
    policy = ground_policy(parse_policy(f'rule r: permitted(go(X, Y)){body}.'), dom)

    def allowed(x: str, y: str) -> bool:
      binding = {'X': x, 'Y': y}
      for guard in guards:
        left, right = (binding.get(part, part) for part in guard.split(' != '))
        if left == right:
          return False
      return True

    expected = [(x, y) for x, y in itertools.product(consts, repeat=2) if allowed(x, y)]
    assert [r.head.action.args for r in policy.strict_rules] == expected
