# Copyright 2026 The marketcore Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Nonnegative TU games, their matching core, and induced bundle auctions.

A game on players N = {1..n} induces a bundle auction with one item per
player and one buyer per nonempty coalition S; buyer S values any bundle
whose support covers S at v(S). The matching core of the game is nonempty
iff the induced auction has a market equilibrium, and zero-profit
equilibria in canonical form are exactly core outcomes with payoffs equal
to prices.

Coalitions are numbered by binary mask: buyer i (0-based) stands for the
coalition whose mask is i + 1, bit j meaning player j + 1.
"""

from __future__ import absolute_import as _
from __future__ import division as _
from __future__ import print_function as _

import collections as _collections
import logging as _logging
import numbers as _numbers

from marketcore import _config
from marketcore import auction as _auction
from marketcore import equilibrium as _equilibrium
from marketcore import errors as _errors
from marketcore import numerics as _numerics
from marketcore import value_function as _value_function

__all__ = [
    'CoreCheck', 'CoreVerdict', 'InducedAuction', 'MatchingOutcome', 'TUGame',
    'brute_force_matching_core', 'build_induced_value_function',
    'canonicalize_equilibrium', 'classical_core_point', 'coalition_of_mask',
    'decide_matching_core', 'extract_outcome', 'induce_bundle_auction',
    'is_in_matching_core', 'mask_of', 'matching_outcome',
    'normalize_prohibited', 'outcome_to_equilibrium', 'partitions',
    'prohibit', 'zero_profit_reprice'
]

MatchingOutcome = _collections.namedtuple('MatchingOutcome',
                                          ('partition', 'payoffs'))

CoreCheck = _collections.namedtuple('CoreCheck',
                                    ('holds', 'coalition', 'reason'))

CoreVerdict = _collections.namedtuple(
    'CoreVerdict', ('nonempty', 'outcome', 'equilibrium', 'existence'))

InducedAuction = _collections.namedtuple('InducedAuction',
                                         ('game', 'auction', 'coalitions'))


def coalition_of_mask(mask, n):
  """The 1-based players whose bits are set in `mask`."""
  return tuple(j + 1 for j in range(n) if mask >> j & 1)


def mask_of(coalition):
  mask = 0
  for j in coalition:
    mask |= 1 << (j - 1)
  return mask


def _coalition(members, n):
  members = tuple(sorted(set(members)))
  if not members:
    raise _errors.ModelError('coalitions must be nonempty')
  for j in members:
    if (isinstance(j, bool) or not isinstance(j, _numbers.Integral) or
        not 1 <= j <= n):
      raise _errors.ModelError('player {!r} outside 1..{}'.format(j, n))
  return tuple(int(j) for j in members)


class TUGame(object):
  """A nonnegative TU game with zero singleton worths.

  Attributes:
    n: the number of players.
  """

  def __init__(self, n, worths, allow_small=False):
    """Builds a game.

    Args:
      n: number of players; at least 3, or 2 with `allow_small`.
      worths: mapping from coalitions (iterables of 1-based players) to
        worths. Missing coalitions are worth 0.
      allow_small: accept n = 2.

    Raises:
      ModelError: if a worth is negative, a singleton is worth something,
        every worth is 0, or n is too small.
    """
    if isinstance(n, bool) or not isinstance(n, _numbers.Integral):
      raise _errors.ModelError(
          'player count must be an int, got {!r}'.format(n))
    if n < (2 if allow_small else 3):
      raise _errors.ModelError(
          'a TU game needs at least 3 players, got {} (n = 2 needs '
          'allow_small)'.format(n))
    self.n = int(n)
    self.allow_small = allow_small
    self._worths = {}
    for members, value in worths.items():
      members = _coalition(members, n)
      value = _numerics.to_rat(value)
      if value < 0:
        raise _errors.ModelError('negative worth {} for {}'.format(
            value, list(members)))
      if len(members) == 1 and value != 0:
        raise _errors.ModelError('singleton {} must be worth 0, got {}'.format(
            list(members), value))
      if value:
        self._worths[members] = value
    if not self._worths:
      raise _errors.ModelError('some coalition must have positive worth')

  @property
  def num_coalitions(self):
    return 2**self.n - 1

  def worth(self, coalition):
    return self._worths.get(_coalition(coalition, self.n), _numerics.Rat(0))

  def coalitions(self):
    """All nonempty coalitions in mask order."""
    return [
        coalition_of_mask(mask, self.n)
        for mask in range(1, self.num_coalitions + 1)
    ]

  def positive_worths(self):
    return sorted(self._worths.items(), key=lambda kv: mask_of(kv[0]))

  def __repr__(self):
    return 'TUGame(n={}, positive={})'.format(self.n, len(self._worths))


def prohibit(game, coalitions):
  """Returns `game` with every listed coalition's worth set to 0."""
  banned = set(_coalition(s, game.n) for s in coalitions)
  worths = {s: v for s, v in game.positive_worths() if s not in banned}
  return TUGame(game.n, worths, allow_small=game.allow_small)


def matching_outcome(partition, payoffs, n):
  """Validates an outcome and puts it in canonical form.

  Args:
    partition: iterable of coalitions (1-based players).
    payoffs: n nonnegative numbers.
    n: the player count.

  Returns:
    MatchingOutcome with blocks as sorted tuples, ordered by their smallest
    player, and payoffs as Fractions.

  Raises:
    ModelError: if the blocks do not partition N or a payoff is negative.
  """
  blocks = sorted((_coalition(s, n) for s in partition), key=lambda s: s[0])
  seen = [j for s in blocks for j in s]
  if sorted(seen) != list(range(1, n + 1)):
    raise _errors.ModelError('{} is not a partition of 1..{}'.format(
        [list(s) for s in blocks], n))
  payoffs = tuple(_numerics.to_rat(v) for v in payoffs)
  if len(payoffs) != n:
    raise _errors.ModelError('{} payoffs for {} players'.format(
        len(payoffs), n))
  if any(v < 0 for v in payoffs):
    raise _errors.ModelError('payoffs must be nonnegative: {}'.format(
        [str(v) for v in payoffs]))
  return MatchingOutcome(tuple(blocks), payoffs)


def _total(payoffs, coalition):
  return sum((payoffs[j - 1] for j in coalition), _numerics.Rat(0))


def is_in_matching_core(game, outcome):
  """Checks an outcome against the matching-core conditions.

  Realized blocks must split their worth exactly and every coalition must
  receive at least its worth.

  Args:
    game: a TUGame.
    outcome: a MatchingOutcome (it is validated first).

  Returns:
    CoreCheck(holds, coalition, reason); when `holds` is false, `coalition`
    is the first violated coalition and `reason` is 'block' (a realized
    block not paid its worth) or 'blocking' (a coalition paid less than its
    worth).

  Raises:
    ModelError: if the outcome is malformed.
  """
  outcome = matching_outcome(outcome.partition, outcome.payoffs, game.n)
  for block in outcome.partition:
    if _total(outcome.payoffs, block) != game.worth(block):
      return CoreCheck(False, block, 'block')
  for s in game.coalitions():
    if _total(outcome.payoffs, s) < game.worth(s):
      return CoreCheck(False, s, 'blocking')
  return CoreCheck(True, None, None)


def induce_bundle_auction(game, budgets=None):
  """Builds the bundle auction induced by a TU game.

  Args:
    game: a TUGame.
    budgets: optional _config.Budgets; `max_players` bounds n.

  Returns:
    InducedAuction(game, auction, coalitions), where buyer i values bundle x
    at v(coalitions[i]) when the coalition lies inside the support of x and
    at 0 otherwise. Singleton buyers value everything at 0.
  """
  budgets = _config.resolve(budgets)
  _config.check('induced auction players', game.n, budgets.max_players)
  coalitions = tuple(game.coalitions())
  domain = _auction.box(_auction.ones(game.n))
  tables = []
  for s in coalitions:
    target = _auction.coalition_bundle(s, game.n)
    worth = game.worth(s)
    zero = _numerics.Rat(0)
    values = {x: worth if _auction.leq(target, x) else zero for x in domain}
    name = '{' + ','.join(str(j) for j in s) + '}'
    tables.append(_auction.ValuationTable(_auction.ones(game.n), values,
                                          name=name, check=False))
  auction = _auction.BundleAuction(tables, game.n)
  _logging.debug('induced auction: %d buyers, %d items', len(tables), game.n)
  return InducedAuction(game, auction, coalitions)


def build_induced_value_function(induced, budgets=None):
  """V of an induced auction by coalition packing.

  Every buyer takes its coalition or nothing; unused items go to the
  matching singleton buyers, so witnesses are canonical at e.
  """
  game = induced.game
  targets = [_auction.coalition_bundle(s, game.n) for s in induced.coalitions]
  worths = [game.worth(s) for s in induced.coalitions]
  leftover = [(1 << j) - 1 for j in range(game.n)]
  return _value_function.build_packing_value_function(
      induced.auction, targets, worths, leftover_agents=leftover,
      budgets=budgets)


def partitions(n):
  """All partitions of 1..n, in lexicographic restricted-growth order."""
  labels = [0] * n

  def grow(i, top):
    if i == n:
      blocks = [[] for _ in range(top + 1)]
      for j, b in enumerate(labels):
        blocks[b].append(j + 1)
      yield tuple(tuple(b) for b in blocks)
      return
    for b in range(top + 2):
      labels[i] = b
      for p in grow(i + 1, max(top, b)):
        yield p

  if n == 0:
    return
  for p in grow(1, 0):
    yield p


def _payoff_system(game, blocks):
  n = game.n
  rows = []
  for s in blocks:
    rows.append((_auction.coalition_bundle(s, n), _numerics.EQ,
                 game.worth(s)))
  for s in game.coalitions():
    rows.append((_auction.coalition_bundle(s, n), _numerics.GE,
                 game.worth(s)))
  return _numerics.linear_program(_numerics.MAXIMIZE, [0] * n, rows)


def classical_core_point(game):
  """A payoff in the classical core (grand coalition only), or None."""
  result = _numerics.farkas_certificate(
      _payoff_system(game, [tuple(range(1, game.n + 1))]))
  return result.point if result.feasible else None


def brute_force_matching_core(game, budgets=None):
  """Decides matching-core nonemptiness by enumerating partitions.

  Only partitions of maximal total worth can carry a core payoff, so the
  payoff system is solved for those alone, in restricted-growth order.

  Args:
    game: a TUGame.
    budgets: optional _config.Budgets; `oracle_players` bounds n.

  Returns:
    CoreVerdict with `equilibrium` and `existence` unset.
  """
  budgets = _config.resolve(budgets)
  _config.check('core oracle players', game.n, budgets.oracle_players)
  scored = []
  for blocks in partitions(game.n):
    total = sum((game.worth(s) for s in blocks), _numerics.Rat(0))
    scored.append((total, blocks))
  best = max(total for total, _ in scored)
  tried = 0
  for total, blocks in scored:
    if total != best:
      continue
    tried += 1
    result = _numerics.farkas_certificate(_payoff_system(game, blocks))
    if result.feasible:
      _logging.debug('core oracle: feasible after %d of %d partitions', tried,
                     len(scored))
      return CoreVerdict(True, matching_outcome(blocks, result.point, game.n),
                         None, None)
  _logging.debug('core oracle: %d efficient partitions, none feasible', tried)
  return CoreVerdict(False, None, None, None)


def _require_equilibrium(induced, prices, allocation):
  report = _equilibrium.verify_equilibrium(induced.auction, prices, allocation)
  if not report.holds:
    raise _errors.NotAnEquilibriumError(
        'not a market equilibrium of the induced auction', report)
  return report


def _targets(induced):
  n = induced.game.n
  return [_auction.coalition_bundle(s, n) for s in induced.coalitions]


def _non_canonical(allocation, targets):
  return [
      k for k, (x, t) in enumerate(zip(allocation, targets))
      if any(x) and x != t
  ]


def canonicalize_equilibrium(game, induced, prices, allocation):
  """Rewrites an equilibrium so every buyer holds its coalition or nothing.

  A buyer holding more than its coalition sheds the extra items, which must
  be free, to the singleton buyers of those items. A buyer whose holding
  does not cover its coalition values it at 0, so its items are free too;
  it drops to 0 and releases them to the singleton buyers.

  Args:
    game: the TUGame.
    induced: its InducedAuction.
    prices: an equilibrium price vector.
    allocation: the matching equilibrium allocation.

  Returns:
    The rewritten allocation, an equilibrium at the same prices.

  Raises:
    NotAnEquilibriumError: if the input does not verify.
  """
  del game
  _require_equilibrium(induced, prices, allocation)
  prices = tuple(_numerics.to_rat(v) for v in prices)
  n = induced.auction.num_items
  targets = _targets(induced)
  bundles = [list(x) for x in allocation]
  pending = _non_canonical(allocation, targets)
  while pending:
    k = pending[0]
    target = targets[k]
    held = bundles[k]
    covers = _auction.leq(target, held)
    released = [j for j in range(n) if held[j] and not (covers and target[j])]
    for j in released:
      if prices[j] != 0:
        raise _errors.SolverError('item {} released at price {}'.format(
            j + 1, prices[j]))
      single = (1 << j) - 1
      if bundles[single][j]:
        raise _errors.SolverError('singleton buyer already holds item {}'
                                  .format(j + 1))
      held[j] = 0
      bundles[single][j] = 1
    current = [tuple(b) for b in bundles]
    remaining = _non_canonical(current, targets)
    if len(remaining) >= len(pending):
      raise _errors.SolverError('canonicalization made no progress')
    pending = remaining
  result = tuple(tuple(b) for b in bundles)
  if not _equilibrium.verify_equilibrium(induced.auction, prices,
                                         result).holds:
    raise _errors.SolverError('canonical allocation does not verify')
  return result


def zero_profit_reprice(game, induced, prices, allocation):
  """Raises prices until every buyer earns exactly 0.

  Each active coalition S spreads its surplus v(S) - p.e^S evenly over its
  members: q_j = p_j + (v(S) - p.e^S) / |S| for j in S.

  Args:
    game: the TUGame.
    induced: its InducedAuction.
    prices: an equilibrium price vector.
    allocation: a canonical equilibrium allocation.

  Returns:
    The new price tuple q; (q, allocation) is a zero-profit equilibrium.

  Raises:
    NotAnEquilibriumError: if the input does not verify or is not canonical.
  """
  _require_equilibrium(induced, prices, allocation)
  targets = _targets(induced)
  if _non_canonical(allocation, targets):
    raise _errors.NotAnEquilibriumError('allocation is not canonical')
  q = [_numerics.to_rat(v) for v in prices]
  for s, x in zip(induced.coalitions, allocation):
    if not any(x):
      continue
    surplus = game.worth(s) - _auction.dot(prices, x)
    for j in s:
      q[j - 1] += surplus / len(s)
  q = tuple(q)
  report = _equilibrium.verify_equilibrium(induced.auction, q, allocation)
  if not report.holds or any(report.surplus):
    raise _errors.SolverError('repriced pair is not a zero-profit equilibrium')
  return q


def extract_outcome(game, induced, prices, allocation):
  """Reads a core outcome off a canonical zero-profit equilibrium.

  The active coalitions form the partition; prices are the payoffs.

  Raises:
    NotAnEquilibriumError: if the input does not verify, earns a buyer a
      nonzero profit, or is not canonical.
  """
  report = _require_equilibrium(induced, prices, allocation)
  if any(report.surplus):
    raise _errors.NotAnEquilibriumError('equilibrium is not zero-profit',
                                        report)
  if _non_canonical(allocation, _targets(induced)):
    raise _errors.NotAnEquilibriumError('allocation is not canonical', report)
  blocks = [s for s, x in zip(induced.coalitions, allocation) if any(x)]
  outcome = matching_outcome(blocks, prices, game.n)
  check = is_in_matching_core(game, outcome)
  if not check.holds:
    raise _errors.SolverError('extracted outcome violates {} {}'.format(
        check.reason, list(check.coalition)))
  return outcome


def outcome_to_equilibrium(game, outcome, induced=None):
  """Turns a core outcome into a zero-profit equilibrium.

  Buyer S receives e^S if S is a block of the partition and 0 otherwise;
  prices are the payoffs.

  Args:
    game: the TUGame.
    outcome: a MatchingOutcome in the matching core.
    induced: the InducedAuction, built if omitted.

  Returns:
    (prices, allocation).

  Raises:
    OutcomeError: if the outcome is not in the core or pays nobody.
  """
  check = is_in_matching_core(game, outcome)
  if not check.holds:
    raise _errors.OutcomeError(
        'outcome violates {} coalition {}'.format(check.reason,
                                                  list(check.coalition)),
        coalition=check.coalition)
  if not any(outcome.payoffs):
    raise _errors.OutcomeError('the zero payoff is not a price vector')
  if induced is None:
    induced = induce_bundle_auction(game)
  blocks = set(matching_outcome(outcome.partition, outcome.payoffs,
                                game.n).partition)
  n = game.n
  allocation = tuple(
      _auction.coalition_bundle(s, n) if s in blocks else _auction.zeros(n)
      for s in induced.coalitions)
  prices = tuple(_numerics.to_rat(v) for v in outcome.payoffs)
  report = _equilibrium.verify_equilibrium(induced.auction, prices, allocation)
  if not report.holds or any(report.surplus):
    raise _errors.SolverError('core outcome did not map to an equilibrium')
  return prices, allocation


def normalize_prohibited(game, prohibited, outcome):
  """Splits realized prohibited coalitions into singletons.

  Args:
    game: a TUGame; prohibited coalitions are zeroed before checking.
    prohibited: iterable of coalitions.
    outcome: a MatchingOutcome in the core of the zeroed game.

  Returns:
    A core outcome whose partition contains no prohibited coalition.

  Raises:
    OutcomeError: if `outcome` is not in the core of the zeroed game.
  """
  zeroed = prohibit(game, prohibited)
  check = is_in_matching_core(zeroed, outcome)
  if not check.holds:
    raise _errors.OutcomeError(
        'outcome violates {} coalition {}'.format(check.reason,
                                                  list(check.coalition)),
        coalition=check.coalition)
  banned = set(_coalition(s, game.n) for s in prohibited)
  blocks = []
  for s in matching_outcome(outcome.partition, outcome.payoffs,
                            game.n).partition:
    if s in banned:
      blocks.extend((j,) for j in s)
    else:
      blocks.append(s)
  normalized = matching_outcome(blocks, outcome.payoffs, game.n)
  if not is_in_matching_core(zeroed, normalized).holds:
    raise _errors.SolverError('split outcome left the core')
  return normalized


def decide_matching_core(game, budgets=None, prohibited=(),
                         oracle_check=False):
  """Decides whether the matching core of a game is nonempty.

  Induces the bundle auction, decides equilibrium existence, and on success
  canonicalizes, reprices to zero profit and reads off a core outcome.

  Args:
    game: a TUGame.
    budgets: optional _config.Budgets.
    prohibited: coalitions that may not form; their worth is zeroed and
      realized ones are split into singletons.
    oracle_check: also run `brute_force_matching_core` and require the same
      answer.

  Returns:
    CoreVerdict. `existence` always holds the auction's ExistenceVerdict;
    its refutation is the emptiness evidence.

  Raises:
    BudgetExceededError: if the game is too large.
    SolverError: on an internal inconsistency.
  """
  prohibited = tuple(prohibited)
  if prohibited:
    game = prohibit(game, prohibited)
  induced = induce_bundle_auction(game, budgets)
  vf = build_induced_value_function(induced, budgets)
  existence = _equilibrium.decide_with_value_function(vf, budgets)
  if not existence.exists:
    verdict = CoreVerdict(False, None, None, existence)
  else:
    witness = existence.witness
    allocation = canonicalize_equilibrium(game, induced, witness.prices,
                                          witness.allocation)
    prices = zero_profit_reprice(game, induced, witness.prices, allocation)
    outcome = extract_outcome(game, induced, prices, allocation)
    if prohibited:
      outcome = normalize_prohibited(game, prohibited, outcome)
    certificate = _equilibrium.EquilibriumCertificate(
        prices=prices,
        allocation=allocation,
        surplus=(_numerics.Rat(0),) * len(allocation),
        feasible=True,
        profit_maximal=True,
        zero_profit=True)
    verdict = CoreVerdict(True, outcome, certificate, existence)
  _logging.debug('matching core of %s: nonempty=%s', game, verdict.nonempty)
  if oracle_check:
    oracle = brute_force_matching_core(game, budgets)
    if oracle.nonempty != verdict.nonempty:
      raise _errors.SolverError(
          'core oracle says nonempty={}, pipeline says {}'.format(
              oracle.nonempty, verdict.nonempty))
  return verdict
