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
"""Common error types used across marketcore."""

from __future__ import absolute_import as _
from __future__ import division as _
from __future__ import print_function as _


class Error(Exception):
  """Base class for all marketcore errors."""


class ParseError(Error):
  """Malformed numeric literal or instance document."""


class ModelError(Error):
  """Auction, valuation, game or outcome data that violates its invariants."""


class BudgetExceededError(Error):
  """An enumeration would exceed the configured budget."""

  def __init__(self, what, required, allowed):
    super(BudgetExceededError, self).__init__(
        '{} needs {} entries, budget allows {}'.format(what, required, allowed))
    self.what = what
    self.required = required
    self.allowed = allowed


class SolverError(Error):
  """The exact LP engine produced a result that failed post-validation."""


class CertificateError(Error):
  """A price vector or certificate failed validation."""


class NotAnEquilibriumError(Error):
  """An operation that requires an equilibrium received something else."""

  def __init__(self, message, report=None):
    super(NotAnEquilibriumError, self).__init__(message)
    self.report = report


class ArbitrageError(NotAnEquilibriumError):
  """Two units of one item trade at different prices across agents."""

  def __init__(self, message, item, expensive_unit, holder, cheap_unit):
    super(ArbitrageError, self).__init__(message)
    self.item = item
    self.expensive_unit = expensive_unit
    self.holder = holder
    self.cheap_unit = cheap_unit


class OutcomeError(Error):
  """A matching outcome is not in the core where membership is required."""

  def __init__(self, message, coalition=None):
    super(OutcomeError, self).__init__(message)
    self.coalition = coalition

