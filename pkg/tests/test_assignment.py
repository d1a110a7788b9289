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
"""Tests for marketcore.assignment."""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import unittest

import numpy as np

from marketcore import _selftest
from marketcore import assignment
from marketcore import equilibrium
from marketcore import errors
from marketcore import numerics
from marketcore import value_function

Rat = numerics.Rat


class AssignmentGameTest(unittest.TestCase):

  def testValidation(self):
    for matrix in ([], [[]], [[1, 2]], [[1, 2], [3]], [[1, -1], [1, 1]],
                   [[0, 0], [1, 1]]):
      with self.assertRaises(errors.ModelError, msg=str(matrix)):
        assignment.AssignmentGame(matrix)

  def testPadsMissingItems(self):
    game = assignment.AssignmentGame([[3], [2]])
    self.assertEqual(2, game.size)
    self.assertEqual(1, game.num_items)
    self.assertEqual(((Rat(3), Rat(0)), (Rat(2), Rat(0))), game.matrix)

  def testUnitDemandValue(self):
    game = assignment.AssignmentGame([[4, 2, 1], [4, 3, 0], [1, 1, 2]])
    self.assertEqual(Rat(2), game.value(0, (0, 1, 1)))
    self.assertEqual(Rat(4), game.value(0, (1, 1, 1)))
    self.assertEqual(Rat(0), game.value(0, (0, 0, 0)))
    self.assertEqual(Rat(4), game.row_max(1))


class ExistencePathwayTest(unittest.TestCase):

  def assertVerifies(self, game, certificate):
    market = assignment.to_bundle_auction(game)
    self.assertTrue(
        equilibrium.verify_equilibrium(market, certificate.prices,
                                       certificate.allocation).holds)
    self.assertTrue(certificate.feasible)
    self.assertTrue(certificate.profit_maximal)

  def testDiagonal(self):
    game = assignment.AssignmentGame([[3, 1], [1, 3]])
    solution = assignment.assignment_lp(game)
    self.assertEqual(Rat(6), solution.objective)
    self.assertTrue(assignment.is_flat_price_case(game, solution))
    certificate = assignment.existence_pathway(game)
    self.assertEqual((Rat(3), Rat(3)), certificate.prices)
    self.assertEqual(((1, 0), (0, 1)), certificate.allocation)
    self.assertVerifies(game, certificate)

  def testIdenticalRows(self):
    game = assignment.AssignmentGame([[2, 2], [2, 2]])
    certificate = assignment.existence_pathway(game)
    self.assertEqual((Rat(2), Rat(2)), certificate.prices)
    self.assertTrue(certificate.zero_profit)
    self.assertVerifies(game, certificate)

  def testIdentity(self):
    game = assignment.AssignmentGame([[1, 0], [0, 1]])
    self.assertEqual(Rat(2), assignment.assignment_lp(game).objective)
    self.assertEqual((Rat(1), Rat(1)),
                     assignment.existence_pathway(game).prices)

  def testSingleAgent(self):
    game = assignment.AssignmentGame([[5]])
    certificate = assignment.existence_pathway(game)
    self.assertEqual((Rat(5),), certificate.prices)
    self.assertEqual(((1,),), certificate.allocation)

  def testNonFlatMatrix(self):
    game = assignment.AssignmentGame([[4, 2, 1], [4, 3, 0], [1, 1, 2]])
    solution = assignment.assignment_lp(game)
    self.assertEqual(Rat(9), solution.objective)
    self.assertFalse(assignment.is_flat_price_case(game, solution))
    self.assertVerifies(game, assignment.existence_pathway(game))

  def testPaddedGame(self):
    game = assignment.AssignmentGame([[3], [2]])
    solution = assignment.assignment_lp(game)
    self.assertEqual(Rat(3), solution.objective)
    allocation = assignment.assignment_allocation(game, solution)
    self.assertEqual(((1, 0), (0, 1)), allocation)
    self.assertVerifies(game, assignment.existence_pathway(game))

  def testLpMatchesValueFunction(self):
    game = assignment.AssignmentGame([[4, 2, 1], [4, 3, 0], [1, 1, 2]])
    market = assignment.to_bundle_auction(game)
    vf = value_function.build_value_function(market)
    self.assertEqual(vf.value(market.endowment),
                     assignment.assignment_lp(game).objective)

  def testRandomGames(self):
    self.assertEqual(
        [], _selftest.check_assignment(np.random.default_rng(13), 10))


if __name__ == '__main__':
  unittest.main()
