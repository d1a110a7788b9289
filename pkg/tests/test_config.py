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
"""Tests for the enumeration budgets."""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import os
import unittest
from unittest import mock

from marketcore import _config
from marketcore import errors


class BudgetsTest(unittest.TestCase):

  def testDefaults(self):
    with mock.patch.dict(os.environ, {}, clear=True):
      budgets = _config.default_budgets()
    self.assertEqual(10**6, budgets.table_cells)
    self.assertEqual(8, budgets.oracle_players)

  def testEnvironmentOverride(self):
    with mock.patch.dict(os.environ, {'MARKETCORE_BUDGET_CELLS': '500'}):
      self.assertEqual(500, _config.default_budgets().table_cells)
    with mock.patch.dict(os.environ, {'MARKETCORE_MAX_PLAYERS': 'many'}):
      with self.assertRaises(errors.ModelError):
        _config.default_budgets()

  def testResolveOverrides(self):
    base = _config.resolve(table_cells=7)
    self.assertEqual(7, base.table_cells)
    self.assertEqual(7, _config.resolve(base, lp_columns=None).table_cells)
    with self.assertRaises(errors.ModelError):
      _config.resolve(max_players=0)

  def testCheck(self):
    _config.check('table', 5, 5)
    with self.assertRaises(errors.BudgetExceededError) as cm:
      _config.check('table', 6, 5)
    self.assertEqual('table', cm.exception.what)
    self.assertIn('6', str(cm.exception))


if __name__ == '__main__':
  unittest.main()
