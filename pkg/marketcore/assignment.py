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
"""Assignment games: unit-demand bundle auctions with as many agents as items.

Agent i values a nonempty bundle at its best single item, max_{j in x}
a[i][j], and the empty bundle at 0. These auctions always have a market
equilibrium.
"""

from __future__ import absolute_import as _
from __future__ import division as _
from __future__ import print_function as _

import logging as _logging

from marketcore import _config
from marketcore import auction as _auction
from marketcore import equilibrium as _equilibrium
from marketcore import errors as _errors
from marketcore import numerics as _numerics

__all__ = [
    'AssignmentGame', 'assignment_allocation', 'assignment_lp',
    'existence_pathway', 'is_flat_price_case', 'to_bundle_auction'
]


class AssignmentGame(object):
  """A square matrix of nonnegative values, a[i][j] = f^i(e^j).

  Attributes:
    matrix: tuple of H rows of H Fractions.
    num_items: columns in the input, before zero padding.
  """

  def __init__(self, matrix):
    """Builds a game.

    Args:
      matrix: H rows of L numbers with L <= H; missing columns are padded
        with zero-valued items.

    Raises:
      ModelError: if the matrix is empty, ragged, wider than tall, has a
        negative entry, or a row without a positive entry.
    """
    rows = [tuple(_numerics.to_rat(v) for v in row) for row in matrix]
    if not rows or not rows[0]:
      raise _errors.ModelError('an assignment game needs a nonempty matrix')
    width = len(rows[0])
    if any(len(row) != width for row in rows):
      raise _errors.ModelError('assignment matrix rows differ in length')
    if width > len(rows):
      raise _errors.ModelError(
          '{} items for {} agents; only column padding is supported'.format(
              width, len(rows)))
    for i, row in enumerate(rows):
      if any(v < 0 for v in row):
        raise _errors.ModelError('row {} has a negative entry'.format(i + 1))
      if not any(row):
        raise _errors.ModelError('row {} has no positive entry'.format(i + 1))
    pad = (_numerics.Rat(0),) * (len(rows) - width)
    self.matrix = tuple(row + pad for row in rows)
    self.num_items = width

  @property
  def size(self):
    return len(self.matrix)

  def row_max(self, i):
    return max(self.matrix[i])

  def value(self, i, x):
    """f^i(x): the best item of x, or 0 for the empty bundle."""
    return max([self.matrix[i][j] for j, v in enumerate(x) if v] or
               [_numerics.Rat(0)])


def to_bundle_auction(game, budgets=None):
  """The bundle auction of an assignment game (tables over C(e))."""
  budgets = _config.resolve(budgets)
  size = game.size
  _config.check('assignment tables', 2**size * size, budgets.table_cells)
  domain = _auction.box(_auction.ones(size))
  tables = [
      _auction.ValuationTable(
          _auction.ones(size), {x: game.value(i, x) for x in domain},
          name=str(i + 1)) for i in range(size)
  ]
  return _auction.BundleAuction(tables, size)


def assignment_lp(game):
  """Solves the assignment LP and checks that the optimum is a matching.

  Variables x[i][j] (row-major) in [0, 1] with at most one item per agent
  and one agent per item. The optimal basic solution is a vertex of a
  totally unimodular system, hence 0/1.

  Returns:
    An optimal LPSolution.

  Raises:
    SolverError: if the optimum is not integral.
  """
  size = game.size
  objective = [v for row in game.matrix for v in row]
  rows = []
  for i in range(size):
    rows.append(([1 if k // size == i else 0 for k in range(size * size)],
                 _numerics.LE, 1))
  for j in range(size):
    rows.append(([1 if k % size == j else 0 for k in range(size * size)],
                 _numerics.LE, 1))
  solution = _numerics.lp_solve(
      _numerics.linear_program(_numerics.MAXIMIZE, objective, rows))
  if solution.status != _numerics.OPTIMAL:
    raise _errors.SolverError('assignment LP ended {}'.format(solution.status))
  if any(v not in (0, 1) for v in solution.primal):
    raise _errors.SolverError('assignment LP optimum is fractional')
  _logging.debug('assignment LP: value %s', solution.objective)
  return solution


def assignment_allocation(game, solution):
  """One item per agent: the LP matching, completed arbitrarily.

  Agents the LP leaves unmatched take the unmatched items in index order;
  the total value cannot drop since values are nonnegative.
  """
  size = game.size
  item_of = [None] * size
  taken = set()
  for k, v in enumerate(solution.primal):
    if v:
      item_of[k // size] = k % size
      taken.add(k % size)
  free = iter(j for j in range(size) if j not in taken)
  for i in range(size):
    if item_of[i] is None:
      item_of[i] = next(free)
  return tuple(_auction.unit_bundle(j, size) for j in item_of)


def is_flat_price_case(game, solution):
  """True iff some efficient matching gives every agent its best item.

  Equivalently the LP optimum equals the sum of the row maxima.
  """
  best = sum((game.row_max(i) for i in range(game.size)), _numerics.Rat(0))
  return solution.objective == best


def existence_pathway(game, budgets=None):
  """Produces a verified equilibrium certificate for an assignment game.

  If an efficient matching gives every agent its best item, one flat price
  c = min_i f^i(X^i) on every item supports it. Otherwise the general
  existence test runs and must succeed.

  Args:
    game: an AssignmentGame.
    budgets: optional _config.Budgets.

  Returns:
    An EquilibriumCertificate that verifies.

  Raises:
    SolverError: if no equilibrium is found or the certificate fails.
  """
  auction = to_bundle_auction(game, budgets)
  solution = assignment_lp(game)
  if is_flat_price_case(game, solution):
    allocation = assignment_allocation(game, solution)
    level = min(game.value(i, x) for i, x in enumerate(allocation))
    prices = (level,) * game.size
    report = _equilibrium.verify_equilibrium(auction, prices, allocation)
    certificate = _equilibrium.EquilibriumCertificate(
        prices=prices,
        allocation=allocation,
        surplus=report.surplus,
        feasible=report.feasible,
        profit_maximal=not report.violations,
        zero_profit=not any(report.surplus))
    _logging.debug('assignment game: flat price %s', level)
  else:
    verdict = _equilibrium.decide_existence(auction, budgets)
    if not verdict.exists:
      raise _errors.SolverError('assignment game without an equilibrium')
    certificate = verdict.witness
    _logging.debug('assignment game: prices from the existence LP')
  if not (certificate.feasible and certificate.profit_maximal):
    raise _errors.SolverError('assignment certificate does not verify')
  return certificate
