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
"""Integer allocation problems: bundles, valuations, auctions.

A bundle is a tuple of nonnegative ints, one multiplicity per item type.
Item indices are 0-based in Python and 1-based wherever a user names items
(coalitions, JSON documents).
"""

from __future__ import absolute_import as _
from __future__ import division as _
from __future__ import print_function as _

import itertools as _itertools
import numbers as _numbers

from marketcore import errors as _errors
from marketcore import numerics as _numerics

__all__ = [
    'BundleAuction', 'MultiUnitAuction', 'ValuationTable', 'add', 'allocation',
    'box', 'bundle', 'coalition_bundle', 'dot', 'effective_value',
    'is_feasible', 'leq', 'meet', 'ones', 'price_vector', 'profit',
    'subtract', 'support_indicator', 'unit_bundle', 'zeros'
]


def bundle(values):
  """Validates and returns `values` as a bundle (tuple of ints >= 0)."""
  out = []
  for v in values:
    if (isinstance(v, bool) or not isinstance(v, _numbers.Integral) or
        v < 0):
      raise _errors.ModelError('bundle entries must be nonnegative ints: '
                               '{!r}'.format(values))
    out.append(int(v))
  return tuple(out)


def zeros(num_items):
  return (0,) * num_items


def ones(num_items):
  return (1,) * num_items


def unit_bundle(j, num_items):
  """The bundle holding one unit of (0-based) item j."""
  return tuple(1 if k == j else 0 for k in range(num_items))


def _check_lengths(x, y):
  if len(x) != len(y):
    raise _errors.ModelError('bundle length mismatch: {} vs {}'.format(
        len(x), len(y)))


def meet(x, y):
  """Componentwise minimum of two bundles."""
  _check_lengths(x, y)
  return tuple(min(a, b) for a, b in zip(x, y))


def add(x, y):
  _check_lengths(x, y)
  return tuple(a + b for a, b in zip(x, y))


def subtract(x, y):
  _check_lengths(x, y)
  return tuple(a - b for a, b in zip(x, y))


def leq(x, y):
  """True iff x <= y componentwise."""
  _check_lengths(x, y)
  return all(a <= b for a, b in zip(x, y))


def dot(p, x):
  _check_lengths(p, x)
  return sum((a * b for a, b in zip(p, x)), _numerics.Rat(0))


def support_indicator(x):
  """The 0/1 bundle marking the positive coordinates of x."""
  return tuple(1 if v > 0 else 0 for v in x)


def coalition_bundle(coalition, num_items):
  """The indicator bundle of a set of 1-based item indices.

  Args:
    coalition: iterable of item indices in 1..num_items.
    num_items: the number of item types L.

  Returns:
    The 0/1 bundle with ones exactly at the members of `coalition`.

  Raises:
    ModelError: if an index is out of range.
  """
  members = set(coalition)
  for j in members:
    if not 1 <= j <= num_items:
      raise _errors.ModelError('item {} outside 1..{}'.format(j, num_items))
  return tuple(1 if j + 1 in members else 0 for j in range(num_items))


def box(upper):
  """All bundles y <= upper, in lexicographic order."""
  return [tuple(y) for y in _itertools.product(*(range(u + 1) for u in upper))]


def _lower_covers(y):
  for j, v in enumerate(y):
    if v > 0:
      yield y[:j] + (v - 1,) + y[j + 1:]


class ValuationTable(object):
  """One agent's nonnegative, nondecreasing values over C(domain).

  Attributes:
    domain: the bundle bounding the table (the endowment).
    name: the agent label used in reports.
  """

  def __init__(self, domain, values, name=None, check=True):
    """Builds a table.

    Args:
      domain: bundle; the table covers every y <= domain.
      values: dict mapping each such y to a number.
      name: optional agent label.
      check: validate coverage, nonnegativity and monotonicity.

    Raises:
      ModelError: if `check` is set and an invariant fails.
    """
    self.domain = bundle(domain)
    self.name = name
    self._values = {tuple(y): _numerics.to_rat(v) for y, v in values.items()}
    if check:
      self._validate()

  def _validate(self):
    for y in box(self.domain):
      if y not in self._values:
        raise _errors.ModelError('{}: no value for bundle {}'.format(
            self.name, list(y)))
      v = self._values[y]
      if v < 0:
        raise _errors.ModelError('{}: negative value {} at {}'.format(
            self.name, v, list(y)))
      for z in _lower_covers(y):
        if self._values[z] > v:
          raise _errors.ModelError(
              '{}: value decreases from {} to {}'.format(
                  self.name, list(z), list(y)))
    if len(self._values) != len(box(self.domain)):
      raise _errors.ModelError('{}: bundles outside C({})'.format(
          self.name, list(self.domain)))

  @classmethod
  def from_entries(cls, domain, entries, name=None):
    """Completes values given on some bundles to a monotone table.

    Every bundle y receives the largest stored value among stored y' <= y,
    or 0 if there is none.

    Args:
      domain: bundle bounding the table.
      entries: dict mapping bundles <= domain to values.
      name: optional agent label.

    Returns:
      A validated ValuationTable.

    Raises:
      ModelError: if an entry lies outside the domain, is negative, or is
        smaller than the value of a stored sub-bundle.
    """
    domain = bundle(domain)
    stored = {}
    for y, v in entries.items():
      y = bundle(y)
      if len(y) != len(domain) or not leq(y, domain):
        raise _errors.ModelError('{}: bundle {} outside C({})'.format(
            name, list(y), list(domain)))
      stored[y] = _numerics.to_rat(v)
      if stored[y] < 0:
        raise _errors.ModelError('{}: negative value at {}'.format(
            name, list(y)))
    values = {}
    for y in box(domain):
      below = max([values[z] for z in _lower_covers(y)] or
                  [_numerics.Rat(0)])
      if y in stored:
        if stored[y] < below:
          raise _errors.ModelError(
              '{}: value {} at {} is below a sub-bundle value {}'.format(
                  name, stored[y], list(y), below))
        values[y] = stored[y]
      else:
        values[y] = below
    return cls(domain, values, name=name, check=False)

  def value(self, y):
    """The stored value at y, which must lie in C(domain)."""
    return self._values[tuple(y)]

  def items(self):
    return sorted(self._values.items())


class MultiUnitAuction(object):
  """An integer allocation problem whose values depend on m(x, w) only.

  Attributes:
    endowment: the aggregate endowment w, every entry >= 1.
    valuations: tuple of ValuationTable, one per agent, over C(w).
  """

  def __init__(self, endowment, valuations):
    self.endowment = bundle(endowment)
    self.valuations = tuple(valuations)
    if not self.endowment:
      raise _errors.ModelError('an auction needs at least one item type')
    if not self.valuations:
      raise _errors.ModelError('an auction needs at least one agent')
    if min(self.endowment) < 1:
      raise _errors.ModelError('every endowment entry must be >= 1')
    for table in self.valuations:
      if table.domain != self.endowment:
        raise _errors.ModelError(
            'valuation {} covers C({}), endowment is {}'.format(
                table.name, list(table.domain), list(self.endowment)))

  @property
  def num_items(self):
    return len(self.endowment)

  @property
  def num_agents(self):
    return len(self.valuations)

  @property
  def is_bundle_auction(self):
    return all(w == 1 for w in self.endowment)

  def agent_name(self, agent):
    name = self.valuations[agent].name
    return str(agent + 1) if name is None else str(name)

  def __repr__(self):
    return '{}(items={}, agents={}, endowment={})'.format(
        type(self).__name__, self.num_items, self.num_agents,
        list(self.endowment))


class BundleAuction(MultiUnitAuction):
  """A multi-unit auction with one unit of every item."""

  def __init__(self, valuations, num_items=None):
    valuations = tuple(valuations)
    if num_items is None:
      if not valuations:
        raise _errors.ModelError('an auction needs at least one agent')
      num_items = len(valuations[0].domain)
    super(BundleAuction, self).__init__(ones(num_items), valuations)


def allocation(bundles, num_items):
  """Validates a per-agent list of bundles of length `num_items`."""
  out = tuple(bundle(b) for b in bundles)
  for b in out:
    if len(b) != num_items:
      raise _errors.ModelError('allocation bundle {} has length {}, '
                               'expected {}'.format(list(b), len(b), num_items))
  return out


def price_vector(values):
  """Validates a price vector: nonnegative entries, not all zero."""
  p = tuple(_numerics.to_rat(v) for v in values)
  if any(v < 0 for v in p):
    raise _errors.ModelError('prices must be nonnegative: {}'.format(
        [str(v) for v in p]))
  if not any(p):
    raise _errors.ModelError('the zero vector is not a price vector')
  return p


def _check_agent(auction, agent):
  if not 0 <= agent < auction.num_agents:
    raise _errors.ModelError('agent {} outside 0..{}'.format(
        agent, auction.num_agents - 1))


def effective_value(auction, agent, x):
  """f^agent(x) = table value at m(x, w); defined for every bundle x."""
  _check_agent(auction, agent)
  return auction.valuations[agent].value(meet(x, auction.endowment))


def is_feasible(auction, allocation_):
  """True iff the bundles sum exactly to the endowment."""
  if len(allocation_) != auction.num_agents:
    raise _errors.ModelError('allocation has {} bundles for {} agents'.format(
        len(allocation_), auction.num_agents))
  total = zeros(auction.num_items)
  for b in allocation_:
    total = add(total, b)
  return total == auction.endowment


def profit(auction, agent, x, prices):
  """Value minus payment for `agent` buying x at `prices`."""
  return effective_value(auction, agent, x) - dot(prices, x)
