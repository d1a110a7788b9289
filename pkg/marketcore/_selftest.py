"""Seeded randomized cross-checks shared by the tests and `marketcore selftest`.

Each suite draws instances from numpy's default_rng(seed) and compares two
independent computations of the same fact.
"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import collections
import itertools
import logging

import numpy as np
import pandas as pd

from marketcore import assignment
from marketcore import auction
from marketcore import equilibrium
from marketcore import errors
from marketcore import multiunit
from marketcore import numerics
from marketcore import tugame
from marketcore import value_function

SuiteResult = collections.namedtuple(
    'SuiteResult', ('name', 'seed', 'trials', 'passed', 'failures'))

DEFAULT_SEED = 20260101


def random_table(rng, domain, name=None, step=4):
  """A random monotone integer table over C(domain)."""
  values = {}
  for y in auction.box(domain):
    below = [values[y[:j] + (v - 1,) + y[j + 1:]]
             for j, v in enumerate(y) if v > 0]
    values[y] = max(below or [0]) + int(rng.integers(0, step))
  return auction.ValuationTable(domain, values, name=name)


def random_multiunit_auction(rng, max_items=3, max_agents=3, max_units=2):
  num_items = int(rng.integers(1, max_items + 1))
  num_agents = int(rng.integers(1, max_agents + 1))
  endowment = tuple(
      int(v) for v in rng.integers(1, max_units + 1, size=num_items))
  tables = [random_table(rng, endowment, name=str(k + 1))
            for k in range(num_agents)]
  return auction.MultiUnitAuction(endowment, tables)


def random_allocation(rng, auction_):
  """Splits every item's units uniformly at random among the agents."""
  h = auction_.num_agents
  split = [rng.multinomial(w, [1.0 / h] * h) for w in auction_.endowment]
  return tuple(
      tuple(int(split[j][k]) for j in range(auction_.num_items))
      for k in range(h))


def random_game(rng, n, max_worth=20):
  worths = {}
  for mask in range(1, 2**n):
    s = tugame.coalition_of_mask(mask, n)
    if len(s) > 1:
      worths[s] = int(rng.integers(0, max_worth + 1))
  if not any(worths.values()):
    worths[tuple(range(1, n + 1))] = max_worth
  return tugame.TUGame(n, worths, allow_small=n < 3)


def exhaustive_games(n=3, worths=(0, 1, 2)):
  """Every game on n players with non-singleton worths drawn from `worths`."""
  coalitions = [s for s in (tugame.coalition_of_mask(m, n)
                            for m in range(1, 2**n)) if len(s) > 1]
  for values in itertools.product(worths, repeat=len(coalitions)):
    if any(values):
      yield tugame.TUGame(n, dict(zip(coalitions, values)))


def random_assignment_game(rng, size, max_value=9):
  rows = []
  for _ in range(size):
    row = [0] * size
    while not any(row):
      row = [int(v) for v in rng.integers(0, max_value + 1, size=size)]
    rows.append(row)
  return assignment.AssignmentGame(rows)


def random_lp(rng, max_vars=20, max_rows=10):
  """A random feasible, bounded LP built around a known feasible point."""
  n = int(rng.integers(1, max_vars + 1))
  m = int(rng.integers(1, max_rows + 1))
  x0 = rng.integers(0, 4, size=n)
  rows = []
  for _ in range(m):
    a = [int(v) for v in rng.integers(-5, 6, size=n)]
    lhs = int(np.dot(a, x0))
    relation = (numerics.LE, numerics.GE, numerics.EQ)[int(rng.integers(0, 3))]
    slack = int(rng.integers(0, 3))
    rhs = {numerics.LE: lhs + slack, numerics.GE: lhs - slack,
           numerics.EQ: lhs}[relation]
    rows.append((a, relation, rhs))
  rows.append(([1] * n, numerics.LE, int(np.sum(x0)) + 10))
  sense = (numerics.MAXIMIZE, numerics.MINIMIZE)[int(rng.integers(0, 2))]
  objective = [int(v) for v in rng.integers(-5, 6, size=n)]
  return numerics.linear_program(sense, objective, rows)


def random_system(rng, max_vars=6, max_rows=8):
  """A random constraint system, feasible or not."""
  n = int(rng.integers(1, max_vars + 1))
  m = int(rng.integers(1, max_rows + 1))
  rows = []
  for _ in range(m):
    a = [int(v) for v in rng.integers(-3, 4, size=n)]
    relation = (numerics.LE, numerics.GE, numerics.EQ)[int(rng.integers(0, 3))]
    rows.append((a, relation, int(rng.integers(-4, 5))))
  bounds = [None if rng.random() < 0.3 else 0 for _ in range(n)]
  return numerics.linear_program(numerics.MAXIMIZE, [0] * n, rows, bounds)


def beale_lp():
  """Beale's LP, on which the textbook pivot rule cycles forever."""
  return numerics.linear_program(
      numerics.MAXIMIZE,
      [numerics.Rat(3, 4), -150, numerics.Rat(1, 50), -6],
      [([numerics.Rat(1, 4), -60, numerics.Rat(-1, 25), 9], numerics.LE, 0),
       ([numerics.Rat(1, 2), -90, numerics.Rat(-1, 50), 3], numerics.LE, 0),
       ([0, 0, 1, 0], numerics.LE, 1)])


def _optimal_and_certified(spec):
  solution = numerics.lp_solve(spec)
  if solution.status != numerics.OPTIMAL:
    return False
  report = numerics.certify(spec, solution)
  return (report.primal_feasible and report.dual_feasible and
          report.complementary_slackness and
          report.primal_objective == report.dual_objective ==
          solution.objective)


def check_lp_duality(rng, trials):
  failures = []
  for t in range(trials):
    if not _optimal_and_certified(random_lp(rng)):
      failures.append('random LP #{}'.format(t))
  if not _optimal_and_certified(beale_lp()):
    failures.append('Beale LP')
  return failures


def check_farkas(rng, trials):
  failures = []
  for t in range(trials):
    spec = random_system(rng)
    result = numerics.farkas_certificate(spec)
    solvable = numerics.lp_solve(spec).status != numerics.INFEASIBLE
    if result.feasible != solvable:
      failures.append(
          'system #{}: certificate and phase one disagree'.format(t))
    elif result.feasible and not numerics.is_feasible_point(spec, result.point):
      failures.append('system #{}: point is infeasible'.format(t))
    elif not result.feasible and not numerics.check_farkas(
        spec, result.multipliers):
      failures.append('system #{}: multipliers fail'.format(t))
  return failures


def _perturbed(rng, auction_, prices):
  if prices is None or rng.random() < 0.5:
    prices = [int(v) for v in rng.integers(0, 6, size=auction_.num_items)]
    if not any(prices):
      prices[0] = 1
    return tuple(prices)
  prices = list(prices)
  j = int(rng.integers(0, len(prices)))
  prices[j] += int(rng.integers(-2, 3))
  return tuple(prices)


def check_constrained_agreement(rng, trials):
  failures = []
  for t in range(trials):
    auction_ = random_multiunit_auction(rng)
    vf = value_function.build_value_function(auction_)
    verdict = equilibrium.decide_with_value_function(vf)
    candidates = []
    if verdict.exists:
      candidates.append((verdict.witness.prices, verdict.witness.allocation))
    prices = verdict.witness.prices if verdict.exists else None
    candidates.append(
        (_perturbed(rng, auction_, prices), random_allocation(rng, auction_)))
    for p, x in candidates:
      constrained = equilibrium.verify_equilibrium(auction_, p, x)
      unconstrained = equilibrium.verify_equilibrium(
          auction_, p, x, mode=equilibrium.UNCONSTRAINED)
      if constrained.holds != unconstrained.holds:
        failures.append('auction #{} at p={}'.format(
            t, [str(v) for v in p]))
    if verdict.exists and not equilibrium.is_dual_optimal(verdict.witness, vf):
      failures.append('auction #{}: certificate not dual optimal'.format(t))
  return failures


def _game_label(game):
  return '{}: {}'.format(game, [(list(s), str(v))
                                for s, v in game.positive_worths()])


def _core_agreement(game, failures):
  verdict = tugame.decide_matching_core(game)
  oracle = tugame.brute_force_matching_core(game)
  if verdict.nonempty != oracle.nonempty:
    failures.append('{} pipeline={} oracle={}'.format(
        _game_label(game), verdict.nonempty, oracle.nonempty))
    return
  if verdict.nonempty and not tugame.is_in_matching_core(
      game, verdict.outcome).holds:
    failures.append('{} outcome not in core'.format(_game_label(game)))
  if tugame.classical_core_point(game) is not None and not verdict.nonempty:
    failures.append('{} classical core but empty matching core'.format(
        _game_label(game)))


def check_core_equivalence(rng, trials, exhaustive=True):
  failures = []
  for _ in range(trials):
    game = random_game(rng, int(rng.integers(3, 6)))
    _core_agreement(game, failures)
  if exhaustive:
    for game in exhaustive_games():
      _core_agreement(game, failures)
  return failures


def check_core_duality(rng, trials):
  """Price-system and dual-program cross-checks on small induced auctions."""
  failures = []
  for _ in range(trials):
    game = random_game(rng, int(rng.integers(3, 5)))
    induced = tugame.induce_bundle_auction(game)
    vf = tugame.build_induced_value_function(induced)
    verdict = equilibrium.decide_with_value_function(vf)
    if not equilibrium.check_price_system_agreement(vf, verdict):
      failures.append('{} price system disagrees'.format(_game_label(game)))
    if verdict.exists and not equilibrium.is_dual_optimal(verdict.witness, vf):
      failures.append('{} certificate not dual optimal'.format(
          _game_label(game)))
  return failures


def check_core_round_trip(rng, trials):
  failures = []
  for _ in range(trials):
    game = random_game(rng, int(rng.integers(3, 6)))
    oracle = tugame.brute_force_matching_core(game)
    if not oracle.nonempty:
      continue
    induced = tugame.induce_bundle_auction(game)
    try:
      prices, allocation = tugame.outcome_to_equilibrium(
          game, oracle.outcome, induced)
      outcome = tugame.extract_outcome(game, induced, prices, allocation)
    except errors.Error as e:
      failures.append('{}: {}'.format(_game_label(game), e))
      continue
    if not tugame.is_in_matching_core(game, outcome).holds:
      failures.append('{}: round trip left the core'.format(_game_label(game)))
    report = equilibrium.verify_equilibrium(induced.auction, prices,
                                            allocation)
    if any(report.surplus):
      failures.append('{}: nonzero surplus'.format(_game_label(game)))
  return failures


def check_unit_expansion(rng, trials):
  failures = []
  for t in range(trials):
    auction_ = random_multiunit_auction(rng, max_items=2, max_agents=3)
    try:
      verdict = multiunit.decide_existence_multiunit(auction_,
                                                     cross_check=True)
      if not verdict.exists:
        continue
      expansion = multiunit.expand(auction_)
      q, y = multiunit.push_equilibrium(expansion, verdict.witness.prices,
                                        verdict.witness.allocation)
      p, x = multiunit.pull_equilibrium(expansion, q, y)
    except errors.Error as e:
      failures.append('auction #{}: {}'.format(t, e))
      continue
    if p != tuple(verdict.witness.prices):
      failures.append('auction #{}: prices changed on round trip'.format(t))
    if not equilibrium.verify_equilibrium(auction_, p, x).holds:
      failures.append('auction #{}: pulled pair does not verify'.format(t))
  return failures


def check_assignment(rng, trials):
  failures = []
  for t in range(trials):
    game = random_assignment_game(rng, int(rng.integers(2, 5)))
    try:
      certificate = assignment.existence_pathway(game)
    except errors.Error as e:
      failures.append('matrix #{}: {}'.format(t, e))
      continue
    auction_ = assignment.to_bundle_auction(game)
    if not equilibrium.verify_equilibrium(auction_, certificate.prices,
                                          certificate.allocation).holds:
      failures.append('matrix #{}: certificate does not verify'.format(t))
    vf = value_function.build_value_function(auction_)
    if assignment.assignment_lp(game).objective != vf.value(
        auction_.endowment):
      failures.append('matrix #{}: LP value differs from V(e)'.format(t))
  return failures


_SUITES = collections.OrderedDict([
    ('lp-duality', (check_lp_duality, 1000)),
    ('farkas', (check_farkas, 500)),
    ('constrained-agreement', (check_constrained_agreement, 300)),
    ('unit-expansion', (check_unit_expansion, 200)),
    ('assignment', (check_assignment, 100)),
    ('core-equivalence', (check_core_equivalence, 500)),
    ('core-duality', (check_core_duality, 200)),
    ('core-round-trip', (check_core_round_trip, 200)),
])


def suite_names():
  return list(_SUITES)


def run_suite(name, seed=DEFAULT_SEED, trials=None):
  """Runs one named suite and returns its SuiteResult."""
  if name not in _SUITES:
    raise errors.ModelError('unknown suite {!r}; choose from {}'.format(
        name, ', '.join(_SUITES)))
  check, default_trials = _SUITES[name]
  trials = default_trials if trials is None else trials
  rng = np.random.default_rng(seed)
  logging.debug('selftest %s: seed %d, %d trials', name, seed, trials)
  failures = check(rng, trials)
  for failure in failures:
    logging.info('selftest %s failed: %s', name, failure)
  return SuiteResult(name, seed, trials, not failures, tuple(failures))


def summary_frame(results):
  return pd.DataFrame(
      [(r.name, r.seed, r.trials, 'pass' if r.passed else 'FAIL',
        len(r.failures)) for r in results],
      columns=['suite', 'seed', 'trials', 'result', 'failures'])
