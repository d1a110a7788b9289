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
"""The maximum value function V over C(2w).

V(x) is the best total value obtainable by splitting x among all agents. It
is built agent by agent:

  W_0 = 0,  W_k(x) = max over y <= m(x, w) of f^k(y) + W_{k-1}(x - y),

and every layer keeps its optimal choices, so a witness allocation for any
point is read back on demand. Unused units in a witness go to a designated
agent; values are nondecreasing, so this keeps the total.
"""

from __future__ import absolute_import as _
from __future__ import division as _
from __future__ import print_function as _

import collections as _collections
import logging as _logging

import pandas as _pd

from marketcore import _config
from marketcore import auction as _auction
from marketcore import errors as _errors
from marketcore import numerics as _numerics

__all__ = [
    'ValueFunction', 'WeakMonotonicityReport', 'build_packing_value_function',
    'build_value_function', 'check_weak_monotonicity', 'dump_value_table',
    'efficient_allocation', 'value_table_frame'
]

WeakMonotonicityReport = _collections.namedtuple(
    'WeakMonotonicityReport', ('axis_flags', 'strict_step', 'holds'))


class ValueFunction(object):
  """Exact V(x) and a witness allocation for every x in C(2w).

  Attributes:
    auction: the MultiUnitAuction the table was built for.
    points: every bundle of C(2w), in lexicographic order.
  """

  def __init__(self, auction, values, backtrack):
    self.auction = auction
    self.points = _auction.box(self.upper)
    self._values = values
    self._backtrack = backtrack
    self._witnesses = {}

  @property
  def endowment(self):
    return self.auction.endowment

  @property
  def upper(self):
    return tuple(2 * w for w in self.auction.endowment)

  def __contains__(self, x):
    return tuple(x) in self._values

  def value(self, x):
    """V(x); x must lie in C(2w)."""
    x = tuple(x)
    if x not in self._values:
      raise _errors.ModelError('bundle {} is outside C({})'.format(
          list(x), list(self.upper)))
    return self._values[x]

  def witness(self, x):
    """An allocation in F(x) attaining V(x)."""
    self.value(x)
    x = tuple(x)
    if x not in self._witnesses:
      self._witnesses[x] = self._backtrack(x)
    return self._witnesses[x]


def _table_points(auction, budgets):
  points = _auction.box(tuple(2 * w for w in auction.endowment))
  _config.check('value table', len(points), budgets.table_cells)
  return points


def _backtrack(x, choose, leftover_agents, num_agents):
  rem = x
  bundles = [None] * num_agents
  for k in range(num_agents - 1, -1, -1):
    y = choose(k, rem)
    bundles[k] = y
    rem = _auction.subtract(rem, y)
  for j, r in enumerate(rem):
    if r:
      k = leftover_agents[j]
      b = list(bundles[k])
      b[j] += r
      bundles[k] = tuple(b)
  return tuple(bundles)


def build_value_function(auction, budgets=None):
  """Computes V on C(2w) for any multi-unit auction.

  Ties among optimal bundles for the current agent go to the
  lexicographically smallest bundle; leftover units go to the first agent.

  Args:
    auction: a MultiUnitAuction.
    budgets: optional _config.Budgets; `table_cells` bounds |C(2w)|.

  Returns:
    A ValueFunction.

  Raises:
    BudgetExceededError: if the table would be too large.
  """
  budgets = _config.resolve(budgets)
  points = _table_points(auction, budgets)
  w = auction.endowment
  zero = _numerics.Rat(0)
  prev = dict.fromkeys(points, zero)
  choices = []
  for k, table in enumerate(auction.valuations):
    clamped = {y: table.value(y) for y in _auction.box(w)}
    cur = {}
    choice = {}
    for x in points:
      best = None
      best_y = None
      for y in _auction.box(_auction.meet(x, w)):
        v = clamped[y] + prev[tuple(a - b for a, b in zip(x, y))]
        if best is None or v > best:
          best, best_y = v, y
      cur[x] = best
      choice[x] = best_y
    prev = cur
    choices.append(choice)
    _logging.debug('value function: agent %d of %d done', k + 1,
                   auction.num_agents)
  leftover = [0] * auction.num_items

  def backtrack(x):
    return _backtrack(x, lambda k, rem: choices[k][rem], leftover,
                      auction.num_agents)

  return ValueFunction(auction, prev, backtrack)


def build_packing_value_function(auction, targets, worths,
                                 leftover_agents=None, budgets=None):
  """Computes V on C(2w) for single-minded agents.

  Agent k must value a bundle x at worths[k] when targets[k] <= m(x, w) and
  at 0 otherwise, so an optimal split hands each agent either its target or
  nothing. The recursion is W_k(x) = max(W_{k-1}(x),
  worths[k] + W_{k-1}(x - targets[k])).

  Args:
    auction: a MultiUnitAuction with single-minded valuations.
    targets: per-agent target bundles.
    worths: per-agent values of their targets.
    leftover_agents: per item, the agent who receives unused units; defaults
      to agent 0 for every item.
    budgets: optional _config.Budgets.

  Returns:
    A ValueFunction equal to the one `build_value_function` computes.
  """
  budgets = _config.resolve(budgets)
  points = _table_points(auction, budgets)
  if len(targets) != auction.num_agents or len(worths) != auction.num_agents:
    raise _errors.ModelError('need one target and worth per agent')
  zero = _numerics.Rat(0)
  empty = _auction.zeros(auction.num_items)
  prev = dict.fromkeys(points, zero)
  taken = []
  for target, worth in zip(targets, worths):
    worth = _numerics.to_rat(worth)
    took = set()
    taken.append(took)
    if worth <= 0:
      continue
    cur = dict(prev)
    for x in points:
      if _auction.leq(target, x):
        v = worth + prev[_auction.subtract(x, target)]
        if v > cur[x]:
          cur[x] = v
          took.add(x)
    prev = cur
  if leftover_agents is None:
    leftover_agents = [0] * auction.num_items

  def choose(k, rem):
    return targets[k] if rem in taken[k] else empty

  def backtrack(x):
    return _backtrack(x, choose, leftover_agents, auction.num_agents)

  _logging.debug('packing value function: %d points, V(2w) = %s', len(points),
                 prev[points[-1]])
  return ValueFunction(auction, prev, backtrack)


def efficient_allocation(vf, x=None):
  """Returns an allocation in F(x) attaining V(x); x defaults to w."""
  if x is None:
    x = vf.endowment
  return vf.witness(x)


def check_weak_monotonicity(vf):
  """Tests Weak Monotonicity of V at the endowment w.

  Args:
    vf: a ValueFunction (its table covers w + e^j and w + e).

  Returns:
    WeakMonotonicityReport: per-axis flags V(w + e^j) >= V(w), the strict
    flag V(w + e) > V(w), and `holds`, true iff all of them are.
  """
  w = vf.endowment
  base = vf.value(w)
  axis_flags = tuple(
      vf.value(_auction.add(w, _auction.unit_bundle(j, len(w)))) >= base
      for j in range(len(w)))
  strict = vf.value(_auction.add(w, _auction.ones(len(w)))) > base
  return WeakMonotonicityReport(axis_flags, strict, all(axis_flags) and strict)


def value_table_frame(vf):
  """The V table as a DataFrame: columns x_1..x_L and V (fraction strings)."""
  num_items = len(vf.endowment)
  rows = [list(x) + [_numerics.format_rat(vf.value(x))] for x in vf.points]
  columns = ['x_{}'.format(j + 1) for j in range(num_items)] + ['V']
  return _pd.DataFrame(rows, columns=columns)


def dump_value_table(vf, path):
  value_table_frame(vf).to_csv(path, index=False)
