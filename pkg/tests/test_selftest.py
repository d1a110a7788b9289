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
"""Tests for the randomized cross-check suites."""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import unittest
from unittest import mock

import numpy as np

from marketcore import _selftest
from marketcore import equilibrium
from marketcore import errors
from marketcore import tugame

# Small trial counts keep each suite quick; `marketcore selftest` runs the
# full defaults.
_TRIALS = {
    'lp-duality': 40,
    'farkas': 40,
    'constrained-agreement': 15,
    'unit-expansion': 10,
    'assignment': 8,
    'core-equivalence': 8,
    'core-duality': 6,
    'core-round-trip': 8,
}


class SuitesTest(unittest.TestCase):

  def testEverySuitePasses(self):
    self.assertEqual(sorted(_TRIALS), sorted(_selftest.suite_names()))
    for name in _selftest.suite_names():
      with self.subTest(suite=name):
        result = _selftest.run_suite(name, seed=1234, trials=_TRIALS[name])
        self.assertEqual((), result.failures)
        self.assertTrue(result.passed)
        self.assertEqual(1234, result.seed)

  def testCoreEquivalenceLeavesDualityToItsOwnSuite(self):
    with mock.patch.object(equilibrium, 'check_price_system_agreement') as ps, \
        mock.patch.object(equilibrium, 'is_dual_optimal') as dual:
      failures = _selftest.check_core_equivalence(
          np.random.default_rng(2), 6, exhaustive=False)
    self.assertEqual([], failures)
    ps.assert_not_called()
    dual.assert_not_called()

  def testSeedIsReproducible(self):
    first = _selftest.random_lp(np.random.default_rng(99))
    second = _selftest.random_lp(np.random.default_rng(99))
    self.assertEqual(first, second)

  def testUnknownSuite(self):
    with self.assertRaises(errors.ModelError):
      _selftest.run_suite('fuzz')

  def testExhaustiveGames(self):
    games = list(_selftest.exhaustive_games())
    self.assertEqual(3**4 - 1, len(games))
    for game in games:
      self.assertIsInstance(game, tugame.TUGame)

  def testSummaryFrame(self):
    results = [
        _selftest.SuiteResult('farkas', 1, 3, True, ()),
        _selftest.SuiteResult('lp-duality', 1, 3, False, ('random LP #0',)),
    ]
    frame = _selftest.summary_frame(results)
    self.assertEqual(['pass', 'FAIL'], list(frame['result']))
    self.assertEqual([0, 1], list(frame['failures']))


if __name__ == '__main__':
  unittest.main()
