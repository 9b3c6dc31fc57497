import random

import pytest

from penplan.dsl import Mode, parse_domain, parse_policy, parse_problem
from penplan.errors import BudgetExceeded, PolicyError, TransitionError
from penplan.ground import ground_domain, ground_policy
from penplan.oracle import brute_force_best
from penplan.penalty import PenaltyConfig
from penplan.planner import PlanQuery, best_plan
from penplan.policy_eval import check_categorical
from penplan.transition import initial_state


def assert_same(result, expected):
  if expected.best is None:
    assert result.best is None
  else:
    assert result.best is not None
    assert result.best.actions == expected.best.actions
    assert result.best.total == expected.best.total
    assert len(result.best) == len(expected.best)
  assert result.considered == expected.considered
  assert result.rejected_by_cap == expected.rejected_by_cap
  assert result.mode == expected.mode


def _key(result):
  return None if result.best is None else result.best.sort_key()


def test_fixtures_agree_with_oracle(scenario):
  q = scenario.query()
  assert_same(best_plan(q), brute_force_best(q))


@pytest.mark.parametrize(
  'changes',
  [
    {'horizon': 2, 'max_penalty': 2},
    {'horizon': 2, 'mode': Mode.EMERGENCY},
    {'horizon': 3, 'weak_penalty': 1},
    {'horizon': 0},
  ],
)
def test_drone_mini_variants_agree_with_oracle(drone_mini, changes):
  q = drone_mini.query(**changes)
  assert_same(best_plan(q), brute_force_best(q))


def test_oracle_empty_plan(drone_mini):
  drone_mini.problem = parse_problem('init at(base). goal -high. horizon 0.')
  result = brute_force_best(drone_mini.query())
  assert result.best.actions == ()
  assert result.best.total == 0


def test_oracle_bound(drone_mini):
  with pytest.raises(BudgetExceeded, match='oracle bound exceeded'):
    brute_force_best(drone_mini.query(horizon=4), bound=100)


def _lit(rng: random.Random, fluents: list[str]) -> str:
  return rng.choice(['', '-']) + rng.choice(fluents)


def _lits(rng: random.Random, fluents: list[str], k: int) -> str:
  chosen = rng.sample(fluents, k)
  return ', '.join(rng.choice(['', '-']) + f for f in chosen)


def _random_domain(rng: random.Random) -> tuple[str, list[str]]:
  fluents = [f'f{i}' for i in range(rng.randint(2, 6))]
  actions = [f'a{i}' for i in range(rng.randint(2, 5))]
  lines = [f'fluent {f}.' for f in fluents] + [f'action {a}.' for a in actions]
  for a in actions:
    for _ in range(rng.randint(1, 2)):
      body = f' if {_lits(rng, fluents, 1)}' if rng.random() < 0.5 else ''
      lines.append(f'causes {a}: {_lits(rng, fluents, rng.randint(1, 2))}{body}.')
    if rng.random() < 0.3:
      lines.append(f'exec {a} if {_lit(rng, fluents)}.')
  if rng.random() < 0.4:
    head, cond = rng.sample(fluents, 2)
    lines.append(f'static {rng.choice(["", "-"])}{head} if {rng.choice(["", "-"])}{cond}.')
  return '\n'.join(lines), actions


def _random_policy(rng: random.Random, fluents: list[str], actions: list[str]) -> str:
  heads = ['permitted({a})', '-permitted({a})', 'obl({a})', 'obl(-{a})']
  lines, defaults = [], []
  for i in range(rng.randint(1, 3)):
    head = rng.choice(heads).format(a=rng.choice(actions))
    body = f' if {_lits(rng, fluents, rng.randint(1, 2))}' if rng.random() < 0.7 else ''
    if rng.random() < 0.35:
      lines.append(f'default r{i}: normally {head}{body}.')
      defaults.append(f'r{i}')
    else:
      lines.append(f'rule r{i}: {head}{body}.')
    if rng.random() < 0.8:
      lines.append(f'penalty r{i} = {rng.randint(1, 3)}.')
  if len(defaults) >= 2:
    lines.append(f'prefer {defaults[0]} {defaults[1]}.')
  if rng.random() < 0.3:
    lines.append(f'max_penalty = {rng.randint(0, 4)}.')
  if rng.random() < 0.3:
    lines.append(f'penalty weak = {rng.randint(0, 1)}.')
  return '\n'.join(lines)


def _random_query(rng: random.Random) -> PlanQuery | None:
  domain_text, actions = _random_domain(rng)
  dom = ground_domain(parse_domain(domain_text))
  fluents = [str(f) for f in dom.fluents]
  policy_spec = parse_policy(_random_policy(rng, fluents, actions))
  policy = ground_policy(policy_spec, dom)
  if check_categorical(policy, dom):
    return None
  init = _lits(rng, fluents, rng.randint(0, len(fluents)))
  goal = _lits(rng, fluents, rng.randint(1, 2))
  mode = rng.choice(['normal', 'normal', 'emergency'])
  problem = parse_problem(f'init {init}. goal {goal}. horizon {rng.randint(0, 5)}. mode {mode}.')
  try:
    initial_state(problem, dom)
  except TransitionError:
    return None
  return PlanQuery(dom, policy, PenaltyConfig.from_policy(policy_spec), problem)


def test_random_domains_agree_with_oracle():
  """Planner and brute-force oracle pick the same plan on seeded random domains."""
  rng = random.Random(20240501)
  checked = 0
  while checked < 50:
    q = _random_query(rng)
    if q is None:
      continue
    expected = brute_force_best(q)
    assert_same(best_plan(q), expected)
    pruned = best_plan(PlanQuery(q.domain, q.policy, q.config, q.problem, prune=True))
    assert _key(pruned) == _key(expected)
    checked += 1


def test_two_forbidding_rules_agree_with_oracle(drone_mini):
  text = 'rule p0: -permitted(cruise(X, Y)) if -high.\npenalty p0 = 1.\n'
  spec = parse_policy(text + 'rule p1: -permitted(cruise(X, Y)) if -high.\npenalty p1 = 3.\n')
  q = PlanQuery(
    drone_mini.domain,
    ground_policy(spec, drone_mini.domain),
    PenaltyConfig.from_policy(spec),
    parse_problem('init at(base), -high. goal delivered. horizon 2.'),
  )
  expected = brute_force_best(q)
  assert expected.best.total == 3
  assert_same(best_plan(q), expected)


def test_strict_and_default_obligation_clash_in_both_searches():
  dom = ground_domain(parse_domain('fluent a. action go. causes go: a.'))
  spec = parse_policy('rule s: obl(go). default d: normally obl(-go).')
  q = PlanQuery(
    dom,
    ground_policy(spec, dom),
    PenaltyConfig.from_policy(spec),
    parse_problem('init -a. goal a. horizon 1.'),
  )
  for search in (best_plan, brute_force_best):
    with pytest.raises(PolicyError) as info:
      search(q)
    assert info.value.kind == PolicyError.INCONSISTENT
