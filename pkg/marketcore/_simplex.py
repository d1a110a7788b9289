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
"""Dense simplex tableau over exact rationals.

Pivoting follows Bland's rule (smallest improving column enters, ties in the
ratio test go to the smallest basic column), so every run terminates.
"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import logging

OPTIMAL = 'optimal'
UNBOUNDED = 'unbounded'


class Tableau(object):
  """A tableau in canonical form with respect to `basis`.

  Attributes:
    rows: list of m rows, each a list of n Fractions (B^-1 A).
    rhs: list of m Fractions (B^-1 b), all nonnegative.
    basis: list of m column indices; basis[i] is basic in row i.
    pivots: number of pivots performed so far.
  """

  def __init__(self, rows, rhs, basis, num_columns):
    self.rows = rows
    self.rhs = rhs
    self.basis = basis
    self.num_columns = num_columns
    self.pivots = 0

  def pivot(self, r, c):
    row = self.rows[r]
    piv = row[c]
    if piv != 1:
      row[:] = [a / piv for a in row]
      self.rhs[r] /= piv
    for i, other in enumerate(self.rows):
      if i == r:
        continue
      f = other[c]
      if f:
        other[:] = [a - f * b if b else a for a, b in zip(other, row)]
        self.rhs[i] -= f * self.rhs[r]
    self.basis[r] = c
    self.pivots += 1

  def _basic_costs(self, costs):
    return [costs[b] for b in self.basis]

  def reduced_cost(self, costs, cb, j):
    total = costs[j]
    for i, c in enumerate(cb):
      if c:
        total -= c * self.rows[i][j]
    return total

  def objective(self, costs):
    return sum(costs[b] * v for b, v in zip(self.basis, self.rhs))

  def maximize(self, costs, blocked=frozenset()):
    """Runs primal simplex iterations until optimal or unbounded."""
    while True:
      cb = self._basic_costs(costs)
      in_basis = set(self.basis)
      entering = None
      for j in range(self.num_columns):
        if j in in_basis or j in blocked:
          continue
        if self.reduced_cost(costs, cb, j) > 0:
          entering = j
          break
      if entering is None:
        return OPTIMAL
      leaving = None
      best = None
      for i, row in enumerate(self.rows):
        a = row[entering]
        if a > 0:
          key = (self.rhs[i] / a, self.basis[i])
          if best is None or key < best:
            best = key
            leaving = i
      if leaving is None:
        logging.debug('simplex: column %d is an unbounded ray', entering)
        return UNBOUNDED
      self.pivot(leaving, entering)

  def row_duals(self, costs, identity_columns):
    """Returns c_B B^-1 read off the columns of the starting identity."""
    cb = self._basic_costs(costs)
    duals = []
    for col in identity_columns:
      total = 0
      for i, c in enumerate(cb):
        if c:
          total += c * self.rows[i][col]
      duals.append(total)
    return duals

  def drive_out(self, artificial):
    """Pivots zero-level artificial columns out of the basis where possible.

    Rows whose only nonzero entries sit in artificial columns are redundant
    and keep their artificial basic at zero.
    """
    for i in range(len(self.rows)):
      if self.basis[i] not in artificial:
        continue
      row = self.rows[i]
      for j, a in enumerate(row):
        if a and j not in artificial:
          self.pivot(i, j)
          break

  def values(self):
    x = [0] * self.num_columns
    for b, v in zip(self.basis, self.rhs):
      x[b] = v
    return x
