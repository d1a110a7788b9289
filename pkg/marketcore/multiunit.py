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
"""Multi-unit auctions as bundle auctions over individual units.

Each item j with w_j units becomes w_j distinct unit-items (the group I_j),
and every agent values a set of units by what the units add up to. The
existence decision itself runs directly on C(2w); the expansion maps
equilibria in both directions.
"""

from __future__ import absolute_import as _
from __future__ import division as _
from __future__ import print_function as _

import collections as _collections
import logging as _logging

from marketcore import _config
from marketcore import auction as _auction
from marketcore import equilibrium as _equilibrium
from marketcore import errors as _errors
from marketcore import numerics as _numerics
from marketcore import value_function as _value_function

__all__ = [
    'UnitExpansion', 'aggregate', 'decide_existence_multiunit', 'expand',
    'pull_equilibrium', 'push_equilibrium'
]


class UnitExpansion(
    _collections.namedtuple('UnitExpansion', ('source', 'groups', 'target'))):
  """A multi-unit auction and its unit-level bundle auction.

  Fields:
    source: the MultiUnitAuction.
    groups: per source item j, the tuple of 0-based unit indices I_j.
    target: the BundleAuction over M = sum_j w_j unit-items.
  """

  @property
  def num_units(self):
    return sum(len(group) for group in self.groups)

  def item_of(self, unit):
    for j, group in enumerate(self.groups):
      if unit in group:
        return j
    raise _errors.ModelError('unit {} outside 0..{}'.format(
        unit, self.num_units - 1))


def aggregate(expansion, y):
  """x(y): units per source item, x_j = sum of y(k) over k in I_j."""
  if len(y) != expansion.num_units:
    raise _errors.ModelError('expected {} units, got {}'.format(
        expansion.num_units, len(y)))
  return tuple(sum(y[k] for k in group) for group in expansion.groups)


def _clip(y):
  return tuple(min(v, 1) for v in y)


def expand(auction, budgets=None):
  """Builds the unit expansion of a multi-unit auction.

  Unit-items are numbered consecutively, item by item: with w = (2, 1) the
  groups are I_1 = {0, 1} and I_2 = {2}. Agent i values a unit bundle y at
  f^i(x(min(y, 1))).

  Args:
    auction: a MultiUnitAuction.
    budgets: optional _config.Budgets; `expansion_units` bounds M.

  Returns:
    A UnitExpansion.

  Raises:
    BudgetExceededError: if M is over budget.
  """
  budgets = _config.resolve(budgets)
  num_units = sum(auction.endowment)
  _config.check('unit expansion', num_units, budgets.expansion_units)
  groups = []
  start = 0
  for w in auction.endowment:
    groups.append(tuple(range(start, start + w)))
    start += w
  groups = tuple(groups)
  skeleton = UnitExpansion(auction, groups, None)
  unit_domain = _auction.box(_auction.ones(num_units))
  tables = []
  for agent in range(auction.num_agents):
    values = {
        y: _auction.effective_value(auction, agent,
                                    aggregate(skeleton, _clip(y)))
        for y in unit_domain
    }
    tables.append(_auction.ValuationTable(
        _auction.ones(num_units), values,
        name=auction.valuations[agent].name, check=False))
  target = _auction.BundleAuction(tables, num_units)
  _logging.debug('expanded %s into %d unit-items', auction, num_units)
  return skeleton._replace(target=target)


def _require_equilibrium(auction, prices, allocation, what):
  report = _equilibrium.verify_equilibrium(auction, prices, allocation)
  if not report.holds:
    raise _errors.NotAnEquilibriumError(
        '{} is not a market equilibrium'.format(what), report)
  return report


def push_equilibrium(expansion, prices, allocation):
  """Maps an equilibrium of the source onto the expansion.

  Every unit of item j is priced p_j. Units of each item are handed out in
  agent order: agent 1 takes the first X^1_j units of I_j, agent 2 the next
  X^2_j, and so on.

  Args:
    expansion: a UnitExpansion.
    prices: an equilibrium price vector of the source.
    allocation: the matching equilibrium allocation of the source.

  Returns:
    (q, Y), an equilibrium of the expansion.

  Raises:
    NotAnEquilibriumError: if (prices, allocation) does not verify.
  """
  source = expansion.source
  _require_equilibrium(source, prices, allocation, 'source pair')
  prices = tuple(_numerics.to_rat(v) for v in prices)
  q = [None] * expansion.num_units
  for j, group in enumerate(expansion.groups):
    for k in group:
      q[k] = prices[j]
  bundles = [[0] * expansion.num_units for _ in range(source.num_agents)]
  for j, group in enumerate(expansion.groups):
    cursor = 0
    for agent, x in enumerate(allocation):
      for k in group[cursor:cursor + x[j]]:
        bundles[agent][k] = 1
      cursor += x[j]
  q = tuple(q)
  pushed = tuple(tuple(b) for b in bundles)
  report = _equilibrium.verify_equilibrium(expansion.target, q, pushed)
  if not report.holds:
    raise _errors.SolverError('pushed pair does not verify on the expansion')
  return q, pushed


def _holder(allocation, unit):
  for agent, y in enumerate(allocation):
    if y[unit]:
      return agent
  return None


def pull_equilibrium(expansion, prices, allocation):
  """Maps an equilibrium of the expansion back onto the source.

  Item j is priced at the cheapest of its units, p_j = min q_k over I_j.
  Units of one item held by different agents always trade at one price at
  an equilibrium. A single agent holding several units of an item may pay
  different unit prices, and the minimum still clears the source.

  Args:
    expansion: a UnitExpansion.
    prices: M unit prices.
    allocation: H unit bundles.

  Returns:
    (p, X) with p_j the minimum price of the units of item j and X^i_j the
    number of units of item j agent i holds.

  Raises:
    ArbitrageError: if a unit's holder could swap it for a cheaper unit of
      the same item that they do not hold.
    NotAnEquilibriumError: if (prices, allocation) does not verify, or the
      pulled pair does not verify on the source.
  """
  target = expansion.target
  q = tuple(_numerics.to_rat(v) for v in prices)
  report = _equilibrium.verify_equilibrium(target, q, allocation)
  if not report.feasible:
    raise _errors.NotAnEquilibriumError('unit allocation is not feasible',
                                        report)
  allocation = _auction.allocation(allocation, expansion.num_units)
  for j, group in enumerate(expansion.groups):
    for hi in group:
      holder = _holder(allocation, hi)
      for lo in group:
        if q[hi] > q[lo] and _holder(allocation, lo) != holder:
          raise _errors.ArbitrageError(
              'agent {} pays {} for unit {} of item {} while unit {} costs '
              '{}'.format(holder + 1, q[hi], hi + 1, j + 1, lo + 1, q[lo]),
              item=j, expensive_unit=hi, holder=holder, cheap_unit=lo)
  if not report.holds:
    raise _errors.NotAnEquilibriumError('unit pair is not a market '
                                        'equilibrium', report)
  p = tuple(min(q[k] for k in group) for group in expansion.groups)
  pulled = tuple(aggregate(expansion, y) for y in allocation)
  for j, group in enumerate(expansion.groups):
    if any(q[k] != p[j] for k in group):
      _logging.debug('item %d priced at its cheapest unit, %s', j + 1, p[j])
  source_report = _equilibrium.verify_equilibrium(expansion.source, p, pulled)
  if not source_report.holds:
    raise _errors.NotAnEquilibriumError(
        'pulled pair is not a market equilibrium of the source',
        source_report)
  return p, pulled


def decide_existence_multiunit(auction, budgets=None, cross_check=False):
  """Decides equilibrium existence for a multi-unit auction.

  Runs the existence LP on C(2w) directly.

  Args:
    auction: a MultiUnitAuction.
    budgets: optional _config.Budgets.
    cross_check: also decide the unit expansion and require the same
      answer; a witness is pushed onto the expansion and verified there.

  Returns:
    An ExistenceVerdict.

  Raises:
    BudgetExceededError: if V, the LP or (with cross_check) the expansion
      is too large.
    SolverError: if the cross-check disagrees.
  """
  vf = _value_function.build_value_function(auction, budgets)
  verdict = _equilibrium.decide_with_value_function(vf, budgets)
  if cross_check:
    expansion = expand(auction, budgets)
    expanded = _equilibrium.decide_existence(expansion.target, budgets)
    if expanded.exists != verdict.exists:
      raise _errors.SolverError(
          'direct verdict {} disagrees with the unit expansion'.format(
              verdict.exists))
    if verdict.exists:
      push_equilibrium(expansion, verdict.witness.prices,
                       verdict.witness.allocation)
    _logging.debug('cross-check against %d-unit expansion passed',
                   expansion.num_units)
  return verdict
