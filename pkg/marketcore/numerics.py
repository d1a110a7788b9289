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
"""Exact rationals and an exact two-phase simplex solver.

Every real quantity in marketcore is a `fractions.Fraction`. Linear programs
are solved with a dense tableau (see `_simplex`) and come back with both
primal and dual values, so optimality can be checked exactly with `certify`.

Example:

  from marketcore import numerics
  lp = numerics.linear_program(
      numerics.MAXIMIZE, [1, 1],
      [numerics.Constraint([1, 2], numerics.LE, 4)])
  numerics.lp_solve(lp).objective  # Fraction(4, 1)
"""

from __future__ import absolute_import as _
from __future__ import division as _
from __future__ import print_function as _

import collections as _collections
import fractions as _fractions
import logging as _logging
import numbers as _numbers
import re as _re

from marketcore import _simplex
from marketcore import errors as _errors

__all__ = [
    'Constraint', 'EQ', 'FarkasResult', 'GE', 'INFEASIBLE', 'LE',
    'LinearProgramSpec', 'LPSolution', 'MAXIMIZE', 'MINIMIZE', 'OPTIMAL',
    'OptimalityReport', 'Rat', 'UNBOUNDED', 'certify', 'check_farkas',
    'farkas_certificate', 'format_rat', 'is_feasible_point', 'linear_program',
    'lp_solve', 'rat_from_decimal_string', 'to_rat'
]

Rat = _fractions.Fraction

MAXIMIZE = 'maximize'
MINIMIZE = 'minimize'
LE = '<='
EQ = '=='
GE = '>='

OPTIMAL = _simplex.OPTIMAL
UNBOUNDED = _simplex.UNBOUNDED
INFEASIBLE = 'infeasible'

_DECIMAL_RE = _re.compile(r'^[+-]?(\d+(\.\d*)?|\.\d+)$')
_FRACTION_RE = _re.compile(r'^([+-]?\d+)/([+-]?\d+)$')

_FLIPPED = {LE: GE, GE: LE, EQ: EQ}


def rat_from_decimal_string(s):
  """Parses a decimal, integer or "a/b" literal into an exact Fraction.

  Args:
    s: the literal, e.g. '30', '-0.5' or '45/3'. Surrounding whitespace is
      ignored; exponents, 'inf' and 'nan' are rejected.

  Returns:
    The exact value as a Fraction in canonical form.

  Raises:
    ParseError: on malformed text or a zero denominator.
  """
  if not isinstance(s, str):
    raise _errors.ParseError('expected a string literal, got {!r}'.format(s))
  text = s.strip()
  match = _FRACTION_RE.match(text)
  if match:
    num, den = int(match.group(1)), int(match.group(2))
    if den == 0:
      raise _errors.ParseError('zero denominator in {!r}'.format(s))
    return Rat(num, den)
  if _DECIMAL_RE.match(text):
    return Rat(text)
  raise _errors.ParseError('malformed number {!r}'.format(s))


def to_rat(value):
  """Coerces an int, Fraction or literal string to a Fraction.

  Floats are refused; they cannot carry exact decimal input.
  """
  if isinstance(value, bool):
    raise _errors.ParseError('booleans are not numbers here')
  if isinstance(value, Rat):
    return value
  if isinstance(value, _numbers.Integral):
    return Rat(int(value))
  if isinstance(value, _numbers.Rational):
    return Rat(value.numerator, value.denominator)
  if isinstance(value, str):
    return rat_from_decimal_string(value)
  raise _errors.ParseError('cannot read {!r} as an exact number'.format(value))


def format_rat(value):
  """Formats a rational as 'a/b', or 'a' when integral."""
  return str(to_rat(value))


Constraint = _collections.namedtuple('Constraint',
                                     ('coefficients', 'relation', 'rhs'))


class LinearProgramSpec(
    _collections.namedtuple(
        'LinearProgramSpec',
        ('sense', 'objective', 'constraints', 'lower_bounds'))):
  """A linear program over exact rationals.

  Fields:
    sense: MAXIMIZE or MINIMIZE.
    objective: tuple of Fractions, one per variable.
    constraints: tuple of Constraint(coefficients, relation, rhs).
    lower_bounds: tuple with a Fraction per variable, or None for a free
      variable.
  """

  @property
  def num_variables(self):
    return len(self.objective)


LPSolution = _collections.namedtuple(
    'LPSolution', ('status', 'primal', 'duals', 'objective', 'pivots'))

FarkasResult = _collections.namedtuple('FarkasResult',
                                       ('feasible', 'point', 'multipliers'))

OptimalityReport = _collections.namedtuple(
    'OptimalityReport',
    ('primal_feasible', 'dual_feasible', 'complementary_slackness',
     'primal_objective', 'dual_objective'))


def linear_program(sense, objective, constraints, lower_bounds=None):
  """Builds a validated LinearProgramSpec.

  Args:
    sense: MAXIMIZE or MINIMIZE.
    objective: sequence of numbers (anything `to_rat` accepts).
    constraints: iterable of Constraint or (coefficients, relation, rhs).
    lower_bounds: optional sequence; None entries mark free variables.
      Defaults to 0 for every variable.

  Returns:
    A LinearProgramSpec holding Fractions only.

  Raises:
    ModelError: if a row length or relation is wrong.
  """
  if sense not in (MAXIMIZE, MINIMIZE):
    raise _errors.ModelError('unknown objective sense {!r}'.format(sense))
  objective = tuple(to_rat(c) for c in objective)
  n = len(objective)
  rows = []
  for k, con in enumerate(constraints):
    coefficients, relation, rhs = con
    coefficients = tuple(to_rat(a) for a in coefficients)
    if len(coefficients) != n:
      raise _errors.ModelError(
          'constraint {} has {} coefficients, expected {}'.format(
              k, len(coefficients), n))
    if relation not in _FLIPPED:
      raise _errors.ModelError('unknown relation {!r}'.format(relation))
    rows.append(Constraint(coefficients, relation, to_rat(rhs)))
  if lower_bounds is None:
    bounds = (Rat(0),) * n
  else:
    bounds = tuple(None if b is None else to_rat(b) for b in lower_bounds)
    if len(bounds) != n:
      raise _errors.ModelError('expected {} lower bounds, got {}'.format(
          n, len(bounds)))
  return LinearProgramSpec(sense, objective, tuple(rows), bounds)


class _StandardForm(object):
  """The spec rewritten as A'z (rel) b', b' >= 0, z >= 0, plus a tableau."""

  def __init__(self, spec):
    self.spec = spec
    # Structural columns: one per bounded variable, two per free variable.
    self.var_columns = []
    num_structural = 0
    for lb in spec.lower_bounds:
      if lb is None:
        self.var_columns.append((num_structural, num_structural + 1))
        num_structural += 2
      else:
        self.var_columns.append((num_structural, None))
        num_structural += 1
    self.num_structural = num_structural

    rows = []
    rhs = []
    relations = []
    self.signs = []
    for con in spec.constraints:
      row = [Rat(0)] * num_structural
      shift = Rat(0)
      for a, lb, (plus, minus) in zip(con.coefficients, spec.lower_bounds,
                                      self.var_columns):
        row[plus] = a
        if minus is not None:
          row[minus] = -a
        elif lb:
          shift += a * lb
      b = con.rhs - shift
      relation = con.relation
      sign = 1
      if b < 0 or (b == 0 and relation == GE):
        row = [-a for a in row]
        b = -b
        relation = _FLIPPED[relation]
        sign = -1
      rows.append(row)
      rhs.append(b)
      relations.append(relation)
      self.signs.append(sign)

    m = len(rows)
    num_slack = sum(1 for r in relations if r != EQ)
    num_artificial = sum(1 for r in relations if r != LE)
    width = num_structural + num_slack + num_artificial
    full_rows = []
    basis = []
    self.identity_columns = []
    self.artificial = set()
    slack_col = num_structural
    art_col = num_structural + num_slack
    for i, (row, relation) in enumerate(zip(rows, relations)):
      full = row + [Rat(0)] * (width - num_structural)
      if relation == LE:
        full[slack_col] = Rat(1)
        basis.append(slack_col)
        self.identity_columns.append(slack_col)
        slack_col += 1
      else:
        if relation == GE:
          full[slack_col] = Rat(-1)
          slack_col += 1
        full[art_col] = Rat(1)
        basis.append(art_col)
        self.identity_columns.append(art_col)
        self.artificial.add(art_col)
        art_col += 1
      full_rows.append(full)
    self.width = width
    self.num_rows = m
    self.tableau = _simplex.Tableau(full_rows, rhs, basis, width)

  def phase_one_costs(self):
    return [Rat(-1) if j in self.artificial else Rat(0)
            for j in range(self.width)]

  def phase_two_costs(self):
    costs = [Rat(0)] * self.width
    flip = -1 if self.spec.sense == MINIMIZE else 1
    for c, (plus, minus) in zip(self.spec.objective, self.var_columns):
      costs[plus] = flip * c
      if minus is not None:
        costs[minus] = -flip * c
    return costs

  def primal(self):
    z = self.tableau.values()
    x = []
    for lb, (plus, minus) in zip(self.spec.lower_bounds, self.var_columns):
      if minus is not None:
        x.append(Rat(z[plus] - z[minus]))
      else:
        x.append(Rat(z[plus] + lb))
    return tuple(x)

  def original_duals(self, costs):
    raw = self.tableau.row_duals(costs, self.identity_columns)
    return tuple(Rat(sign * y) for sign, y in zip(self.signs, raw))


def _phase_one(spec):
  """Returns (standard form, feasible flag, Farkas multipliers or None)."""
  form = _StandardForm(spec)
  if not form.artificial:
    return form, True, None
  costs = form.phase_one_costs()
  form.tableau.maximize(costs)
  value = form.tableau.objective(costs)
  _logging.debug('phase one: value %s after %d pivots', value,
                 form.tableau.pivots)
  if value < 0:
    return form, False, form.original_duals(costs)
  form.tableau.drive_out(form.artificial)
  return form, True, None


def lp_solve(spec):
  """Solves a linear program exactly.

  Args:
    spec: a LinearProgramSpec (see `linear_program`).

  Returns:
    An LPSolution. When status is OPTIMAL, `primal` holds one value per
    variable, `duals` one value per constraint (sign convention of the
    standard dual of `spec.sense`) and `objective` the exact optimum; for
    INFEASIBLE and UNBOUNDED those fields are None.
  """
  form, feasible, _ = _phase_one(spec)
  if not feasible:
    return LPSolution(INFEASIBLE, None, None, None, form.tableau.pivots)
  costs = form.phase_two_costs()
  status = form.tableau.maximize(costs, blocked=form.artificial)
  if status == UNBOUNDED:
    return LPSolution(UNBOUNDED, None, None, None, form.tableau.pivots)
  primal = form.primal()
  duals = form.original_duals(costs)
  if spec.sense == MINIMIZE:
    duals = tuple(-y for y in duals)
  objective = sum((c * x for c, x in zip(spec.objective, primal)), Rat(0))
  _logging.debug('lp_solve: %d x %d optimal at %s after %d pivots',
                 len(spec.constraints), spec.num_variables, objective,
                 form.tableau.pivots)
  return LPSolution(OPTIMAL, primal, duals, objective, form.tableau.pivots)


def farkas_certificate(spec):
  """Decides feasibility of the constraint system of `spec`.

  The objective is ignored.

  Args:
    spec: a LinearProgramSpec.

  Returns:
    FarkasResult(feasible=True, point=x, multipliers=None) with x satisfying
    every constraint, or FarkasResult(feasible=False, point=None,
    multipliers=y) where y passes `check_farkas`.
  """
  form, feasible, multipliers = _phase_one(spec)
  if feasible:
    return FarkasResult(True, form.primal(), None)
  return FarkasResult(False, None, multipliers)


def _row_dot(con, x):
  return sum((a * v for a, v in zip(con.coefficients, x)), Rat(0))


def _satisfies(con, x):
  lhs = _row_dot(con, x)
  if con.relation == LE:
    return lhs <= con.rhs
  if con.relation == GE:
    return lhs >= con.rhs
  return lhs == con.rhs


def _column_products(spec, y):
  return [
      sum((yi * con.coefficients[j] for yi, con in zip(y, spec.constraints)),
          Rat(0)) for j in range(spec.num_variables)
  ]


def is_feasible_point(spec, x):
  """True iff x meets every bound and constraint of `spec` exactly."""
  for v, lb in zip(x, spec.lower_bounds):
    if lb is not None and v < lb:
      return False
  return all(_satisfies(con, x) for con in spec.constraints)


def check_farkas(spec, y):
  """Checks that multipliers y prove the constraints of `spec` infeasible.

  The conditions are: y_i >= 0 on <= rows, y_i <= 0 on >= rows; y.A_j >= 0
  for bounded variables and y.A_j = 0 for free ones; and
  y.b < sum_j (y.A_j) lb_j. Any feasible x would give y.A x <= y.b, which
  these conditions rule out.
  """
  if len(y) != len(spec.constraints):
    return False
  for yi, con in zip(y, spec.constraints):
    if con.relation == LE and yi < 0:
      return False
    if con.relation == GE and yi > 0:
      return False
  products = _column_products(spec, y)
  floor = Rat(0)
  for yaj, lb in zip(products, spec.lower_bounds):
    if lb is None:
      if yaj != 0:
        return False
    else:
      if yaj < 0:
        return False
      floor += yaj * lb
  yb = sum((yi * con.rhs for yi, con in zip(y, spec.constraints)), Rat(0))
  return yb < floor


def certify(spec, solution):
  """Checks an optimal LPSolution exactly.

  Args:
    spec: the LinearProgramSpec that was solved.
    solution: an LPSolution with status OPTIMAL.

  Returns:
    An OptimalityReport. The solution is a proven optimum iff primal and
    dual feasibility and complementary slackness all hold, in which case the
    two objective values coincide.
  """
  x, y = solution.primal, solution.duals
  primal_ok = is_feasible_point(spec, x)
  maximize = spec.sense == MAXIMIZE
  dual_ok = True
  for yi, con in zip(y, spec.constraints):
    if con.relation == LE and (yi < 0 if maximize else yi > 0):
      dual_ok = False
    if con.relation == GE and (yi > 0 if maximize else yi < 0):
      dual_ok = False
  reduced = [
      c - yaj for c, yaj in zip(spec.objective, _column_products(spec, y))
  ]
  dual_objective = sum((yi * con.rhs for yi, con in zip(y, spec.constraints)),
                       Rat(0))
  slack_ok = True
  for d, lb, v in zip(reduced, spec.lower_bounds, x):
    if lb is None:
      if d != 0:
        dual_ok = False
      continue
    if maximize and d > 0 or not maximize and d < 0:
      dual_ok = False
    dual_objective += d * lb
    if d * (v - lb) != 0:
      slack_ok = False
  for yi, con in zip(y, spec.constraints):
    if yi * (_row_dot(con, x) - con.rhs) != 0:
      slack_ok = False
  primal_objective = sum((c * v for c, v in zip(spec.objective, x)), Rat(0))
  return OptimalityReport(primal_ok, dual_ok, slack_ok, primal_objective,
                          dual_objective)
