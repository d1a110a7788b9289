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
"""Enumeration budgets.

Defaults can be overridden through the environment, e.g.
MARKETCORE_BUDGET_CELLS=5000000, or per call by passing a Budgets value.
"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import collections
import os

from marketcore import errors

Budgets = collections.namedtuple(
    'Budgets', ('table_cells', 'max_players', 'oracle_players',
                'expansion_units', 'lp_columns'))

_DEFAULTS = Budgets(
    table_cells=10**6,
    max_players=10,
    oracle_players=8,
    expansion_units=12,
    lp_columns=200000)

_ENV_KEYS = {
    'table_cells': 'MARKETCORE_BUDGET_CELLS',
    'max_players': 'MARKETCORE_MAX_PLAYERS',
    'oracle_players': 'MARKETCORE_ORACLE_PLAYERS',
    'expansion_units': 'MARKETCORE_EXPANSION_UNITS',
    'lp_columns': 'MARKETCORE_LP_COLUMNS',
}


def _validate(budgets):
  for name, value in budgets._asdict().items():
    if int(value) <= 0:
      raise errors.ModelError('budget {} must be positive, got {}'.format(
          name, value))
  return budgets


def default_budgets():
  """Returns the default budgets with environment overrides applied."""
  overrides = {}
  for field, key in _ENV_KEYS.items():
    raw = os.environ.get(key, '')
    if raw:
      try:
        overrides[field] = int(raw)
      except ValueError:
        raise errors.ModelError('{}={!r} is not an integer'.format(key, raw))
  return _validate(_DEFAULTS._replace(**overrides))


def resolve(budgets=None, **overrides):
  """Returns `budgets` (or the defaults) with keyword overrides applied."""
  if budgets is None:
    budgets = default_budgets()
  overrides = {k: v for k, v in overrides.items() if v is not None}
  return _validate(budgets._replace(**overrides))


def check(what, required, allowed):
  """Raises BudgetExceededError if `required` exceeds `allowed`."""
  if required > allowed:
    raise errors.BudgetExceededError(what, required, allowed)
