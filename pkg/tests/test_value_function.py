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
"""Tests for marketcore.value_function."""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import io
import itertools
import os
import shutil
import tempfile
import unittest

import numpy as np

from marketcore import _config
from marketcore import _selftest
from marketcore import auction
from marketcore import errors
from marketcore import instances
from marketcore import numerics
from marketcore import tugame
from marketcore import value_function

Rat = numerics.Rat


def _two_unit_auction():
  first = auction.ValuationTable.from_entries((2,), {(1,): 3, (2,): 5}, '1')
  second = auction.ValuationTable.from_entries((2,), {(1,): 4}, '2')
  return auction.MultiUnitAuction((2,), [first, second])


def _additive_agent(num_items):
  domain = auction.ones(num_items)
  values = {y: sum(y) for y in auction.box(domain)}
  return auction.BundleAuction([auction.ValuationTable(domain, values)])


def _splits(total, parts):
  if parts == 1:
    yield (total,)
    return
  for first in range(total + 1):
    for rest in _splits(total - first, parts - 1):
      yield (first,) + rest


def _best_split_value(market, x):
  """max over every allocation of x of the summed effective values."""
  h = market.num_agents
  best = None
  for split in itertools.product(*[list(_splits(v, h)) for v in x]):
    bundles = [tuple(part[k] for part in split) for k in range(h)]
    earned = sum((auction.effective_value(market, k, b)
                  for k, b in enumerate(bundles)), Rat(0))
    best = earned if best is None else max(best, earned)
  return best


class ValueFunctionTest(unittest.TestCase):

  def assertWitnessesAttainValues(self, vf):
    market = vf.auction
    for x in vf.points:
      bundles = vf.witness(x)
      self.assertEqual(market.num_agents, len(bundles))
      total = auction.zeros(market.num_items)
      for b in bundles:
        total = auction.add(total, b)
      self.assertEqual(x, total)
      earned = sum((auction.effective_value(market, k, b)
                    for k, b in enumerate(bundles)), Rat(0))
      self.assertEqual(vf.value(x), earned, msg=str(x))

  def testTwoUnitValues(self):
    vf = value_function.build_value_function(_two_unit_auction())
    self.assertEqual([(0,), (1,), (2,), (3,), (4,)], vf.points)
    self.assertEqual([0, 4, 7, 9, 9], [vf.value(x) for x in vf.points])
    self.assertWitnessesAttainValues(vf)
    self.assertEqual(((1,), (1,)), value_function.efficient_allocation(vf))

  def testOutsideTableRaises(self):
    vf = value_function.build_value_function(_two_unit_auction())
    self.assertNotIn((5,), vf)
    self.assertIn((4,), vf)
    with self.assertRaises(errors.ModelError):
      vf.value((5,))

  def testBudget(self):
    with self.assertRaises(errors.BudgetExceededError) as cm:
      value_function.build_value_function(
          _two_unit_auction(), _config.resolve(table_cells=4))
    self.assertEqual(5, cm.exception.required)
    self.assertEqual(4, cm.exception.allowed)

  def testAdditiveAgentIsNotWeaklyMonotonic(self):
    vf = value_function.build_value_function(_additive_agent(3))
    self.assertEqual(Rat(3), vf.value((1, 1, 1)))
    self.assertEqual(Rat(3), vf.value((2, 2, 2)))
    report = value_function.check_weak_monotonicity(vf)
    self.assertEqual((True, True, True), report.axis_flags)
    self.assertFalse(report.strict_step)
    self.assertFalse(report.holds)

  def testTwoUnitIsWeaklyMonotonic(self):
    vf = value_function.build_value_function(_two_unit_auction())
    self.assertTrue(value_function.check_weak_monotonicity(vf).holds)

  def testRandomWitnesses(self):
    rng = np.random.default_rng(7)
    for _ in range(20):
      market = _selftest.random_multiunit_auction(rng)
      self.assertWitnessesAttainValues(
          value_function.build_value_function(market))

  def testMatchesExhaustiveSplits(self):
    rng = np.random.default_rng(5)
    for _ in range(6):
      market = _selftest.random_multiunit_auction(rng)
      vf = value_function.build_value_function(market)
      for x in vf.points:
        self.assertEqual(_best_split_value(market, x), vf.value(x),
                         msg='{} at {}'.format(market, x))


class PackingValueFunctionTest(unittest.TestCase):

  def testTriplesGame(self):
    game = instances.load_bundled('alkan5').model
    induced = tugame.induce_bundle_auction(game)
    vf = tugame.build_induced_value_function(induced)
    self.assertEqual(Rat(30), vf.value(auction.ones(5)))
    self.assertEqual(Rat(90), vf.value((2,) * 5))
    self.assertWitnessesCanonical(induced, vf)

  def assertWitnessesCanonical(self, induced, vf):
    n = induced.game.n
    for k, (s, b) in enumerate(
        zip(induced.coalitions, vf.witness(auction.ones(n)))):
      if len(s) > 1:
        self.assertIn(b, (auction.zeros(n), auction.coalition_bundle(s, n)),
                      msg='buyer {}'.format(k))

  def testAgreesWithGenericRecursion(self):
    rng = np.random.default_rng(11)
    for n in (3, 4):
      for _ in range(3):
        game = _selftest.random_game(rng, n, max_worth=6)
        induced = tugame.induce_bundle_auction(game)
        packed = tugame.build_induced_value_function(induced)
        generic = value_function.build_value_function(induced.auction)
        self.assertEqual(generic.points, packed.points)
        for x in generic.points:
          self.assertEqual(generic.value(x), packed.value(x), msg=str(x))
        self.assertWitnessesCanonical(induced, packed)

  def testEightPlayerGameFitsDefaultBudget(self):
    game = tugame.TUGame(8, {(1, 2): 10, (3, 4): 10, (5, 6): 10, (7, 8): 10,
                             (1, 3, 5): 12})
    induced = tugame.induce_bundle_auction(game)
    vf = tugame.build_induced_value_function(induced)
    self.assertEqual(3**8, len(vf.points))
    self.assertEqual(Rat(40), vf.value(auction.ones(8)))
    self.assertEqual(Rat(52), vf.value((2,) * 8))
    self.assertWitnessesCanonical(induced, vf)

  def testNeedsOneTargetPerAgent(self):
    market = _two_unit_auction()
    with self.assertRaises(errors.ModelError):
      value_function.build_packing_value_function(market, [(1,)], [3])


class ValueTableExportTest(unittest.TestCase):

  def setUp(self):
    self.tmpdir = tempfile.mkdtemp()

  def tearDown(self):
    shutil.rmtree(self.tmpdir)

  def testFrame(self):
    vf = value_function.build_value_function(_two_unit_auction())
    frame = value_function.value_table_frame(vf)
    self.assertEqual(['x_1', 'V'], list(frame.columns))
    self.assertEqual(['0', '4', '7', '9', '9'], list(frame['V']))

  def testCsv(self):
    vf = value_function.build_value_function(_additive_agent(2))
    path = os.path.join(self.tmpdir, 'v.csv')
    value_function.dump_value_table(vf, path)
    with io.open(path, encoding='utf-8') as f:
      lines = f.read().splitlines()
    self.assertEqual('x_1,x_2,V', lines[0])
    self.assertEqual('0,0,0', lines[1])
    self.assertEqual('2,2,2', lines[-1])
    self.assertEqual(10, len(lines))


if __name__ == '__main__':
  unittest.main()
