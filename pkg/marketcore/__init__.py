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
"""Exact market equilibria for indivisible goods and matching cores."""

from __future__ import absolute_import as _
from __future__ import division as _
from __future__ import print_function as _

from marketcore import assignment
from marketcore import auction
from marketcore import cli
from marketcore import equilibrium
from marketcore import errors
from marketcore import instances
from marketcore import multiunit
from marketcore import numerics
from marketcore import tugame
from marketcore import value_function

__all__ = [
    'assignment', 'auction', 'cli', 'equilibrium', 'instances', 'multiunit',
    'numerics', 'tugame', 'value_function'
]

__version__ = '0.1.0'
