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
"""Existence, recovery and verification of market equilibria.

An auction with endowment w has a market equilibrium iff V(w) is the optimum
of the existence LP

  maximize   sum_x a(x) V(x)
  subject to sum_x a(x) x = w,  sum_x a(x) = 1,  a >= 0,  x in C(2w).

At equality the duals of the w rows are supporting prices p, i.e.
V(w) - p.w >= V(x) - p.x on C(2w); an efficient allocation at w together
with p is then an equilibrium. Otherwise the optimal mixture a improves on
V(w) and refutes existence.

Typical use:

  verdict = equilibrium.decide_existence(auction)
  if verdict.exists:
    report = equilibrium.verify_equilibrium(
        auction, verdict.witness.prices, verdict.witness.allocation)
"""

from __future__ import absolute_import as _
from __future__ import division as _
from __future__ import print_function as _

import collections as _collections
import logging as _logging

from marketcore import _config
from marketcore import auction as _auction
from marketcore import errors as _errors
from marketcore import numerics as _numerics
from marketcore import value_function as _value_function

__all__ = [
    'CONSTRAINED', 'EquilibriumCertificate', 'EquilibriumReport',
    'ExistenceVerdict', 'IMPROVING_MIXTURE', 'NO_NONZERO_PRICE', 'Refutation',
    'UNCONSTRAINED', 'Violation', 'WEAK_MONOTONICITY_CAVEAT',
    'assemble_certificate', 'check_price_system_agreement',
    'decide_existence', 'decide_with_value_function', 'existence_lp',
    'improving_mixture', 'is_dual_optimal', 'is_improving_mixture',
    'price_system', 'recover_prices', 'search_nonzero_prices',
    'supporting_violations', 'surplus_program', 'verify_equilibrium'
]

CONSTRAINED = 'constrained'
UNCONSTRAINED = 'unconstrained'

IMPROVING_MIXTURE = 'improving_mixture'
NO_NONZERO_PRICE = 'no_nonzero_price'

WEAK_MONOTONICITY_CAVEAT = (
    'V is not weakly monotonic at the endowment; price-vector existence not '
    'certified by the dual, decided by a nonzero-price search instead')

Violation = _collections.namedtuple('Violation', ('agent', 'deviation', 'gain'))

Refutation = _collections.namedtuple('Refutation', ('kind', 'mixture'))

ExistenceVerdict = _collections.namedtuple(
    'ExistenceVerdict',
    ('exists', 'lp_optimum', 'value_at_endowment', 'weak_monotonicity',
     'witness', 'refutation', 'caveat'))

EquilibriumCertificate = _collections.namedtuple(
    'EquilibriumCertificate',
    ('prices', 'allocation', 'surplus', 'feasible', 'profit_maximal',
     'zero_profit'))


class EquilibriumReport(
    _collections.namedtuple(
        'EquilibriumReport',
        ('mode', 'feasible', 'prices_valid', 'clamping_holds', 'surplus',
         'violations'))):
  """Outcome of `verify_equilibrium`.

  Fields:
    mode: CONSTRAINED or UNCONSTRAINED.
    feasible: the bundles sum to the endowment.
    prices_valid: prices are nonnegative and not all zero.
    clamping_holds: unconstrained mode only (None otherwise); every deviation
      x in C(2w) earns no more than its clamp m(x, w).
    surplus: per-agent profit at the allocation.
    violations: one Violation per agent with a strictly better deviation.
  """

  @property
  def holds(self):
    return (self.feasible and self.prices_valid and not self.violations and
            self.clamping_holds is not False)


def _endowment_rows(vf):
  w = vf.endowment
  rows = []
  for j in range(len(w)):
    rows.append(([x[j] for x in vf.points], _numerics.EQ, w[j]))
  rows.append(([1] * len(vf.points), _numerics.EQ, 1))
  return rows


def existence_lp(vf, budgets=None):
  """Builds the existence LP over C(2w).

  Args:
    vf: a ValueFunction.
    budgets: optional _config.Budgets; `lp_columns` bounds |C(2w)|.

  Returns:
    A LinearProgramSpec with one variable per point of C(2w) (in
    `vf.points` order), L endowment rows and one convexity row.
  """
  budgets = _config.resolve(budgets)
  _config.check('existence LP', len(vf.points), budgets.lp_columns)
  return _numerics.linear_program(_numerics.MAXIMIZE,
                                  [vf.value(x) for x in vf.points],
                                  _endowment_rows(vf))


def price_system(vf, nonnegative=False, objective=None):
  """The supporting-price system V(w) - p.w >= V(x) - p.x on C(2w).

  Written as p.(x - w) >= V(x) - V(w), one row per x != w.

  Args:
    vf: a ValueFunction.
    nonnegative: restrict p >= 0; otherwise p is free.
    objective: optional objective over p (defaults to zero).

  Returns:
    A LinearProgramSpec in the L price variables. The row for point
    `vf.points[k]` is row k, skipping w itself.
  """
  w = vf.endowment
  base = vf.value(w)
  rows = []
  for x in vf.points:
    if x == w:
      continue
    rows.append((_auction.subtract(x, w), _numerics.GE, vf.value(x) - base))
  bounds = [0 if nonnegative else None] * len(w)
  return _numerics.linear_program(_numerics.MAXIMIZE,
                                  objective or [0] * len(w), rows, bounds)


def improving_mixture(vf, multipliers):
  """Turns Farkas multipliers of `price_system(vf)` into a mixture.

  Args:
    vf: the ValueFunction the system was built from.
    multipliers: one value per row, as returned by `farkas_certificate`.

  Returns:
    Tuple of (x, weight) pairs with positive weights summing to 1 such that
    sum weight * x = w and sum weight * V(x) > V(w).

  Raises:
    CertificateError: if the multipliers are not a Farkas certificate.
  """
  w = vf.endowment
  points = [x for x in vf.points if x != w]
  if len(points) != len(multipliers):
    raise _errors.CertificateError('expected {} multipliers, got {}'.format(
        len(points), len(multipliers)))
  weights = [-y for y in multipliers]
  total = sum(weights, _numerics.Rat(0))
  if total <= 0 or any(t < 0 for t in weights):
    raise _errors.CertificateError('multipliers do not define a mixture')
  mixture = tuple(
      (x, t / total) for x, t in zip(points, weights) if t)
  if not is_improving_mixture(vf, mixture):
    raise _errors.CertificateError('mixture does not improve on V(w)')
  return mixture


def is_improving_mixture(vf, mixture):
  """True iff `mixture` averages to w, sums to 1 and beats V(w)."""
  w = vf.endowment
  if any(weight < 0 for _, weight in mixture):
    return False
  if sum((weight for _, weight in mixture), _numerics.Rat(0)) != 1:
    return False
  for j in range(len(w)):
    if sum((weight * x[j] for x, weight in mixture), _numerics.Rat(0)) != w[j]:
      return False
  value = sum((weight * vf.value(x) for x, weight in mixture),
              _numerics.Rat(0))
  return value > vf.value(w)


def supporting_violations(vf, prices):
  """Points x of C(2w) with V(x) - p.x > V(w) - p.w."""
  w = vf.endowment
  base = vf.value(w) - _auction.dot(prices, w)
  return [x for x in vf.points if vf.value(x) - _auction.dot(prices, x) > base]


def recover_prices(vf, solution):
  """Reads supporting prices off the duals of an optimal existence LP.

  Args:
    vf: the ValueFunction the LP was built from.
    solution: an optimal LPSolution of `existence_lp(vf)` whose objective
      equals V(w).

  Returns:
    Tuple of L Fractions, nonnegative and supporting V at w. They are
    nonzero whenever V is weakly monotonic at w; otherwise they may be zero.

  Raises:
    CertificateError: if the solution is not optimal at V(w).
    SolverError: if the duals fail validation.
  """
  w = vf.endowment
  if (solution.status != _numerics.OPTIMAL or
      solution.objective != vf.value(w)):
    raise _errors.CertificateError(
        'prices exist only when the LP optimum equals V(w)')
  prices = tuple(solution.duals[:len(w)])
  if any(v < 0 for v in prices):
    raise _errors.SolverError('negative dual price {}'.format(
        [str(v) for v in prices]))
  bad = supporting_violations(vf, prices)
  if bad:
    raise _errors.SolverError('dual prices do not support V at {}'.format(
        list(bad[0])))
  if not any(prices) and _value_function.check_weak_monotonicity(vf).holds:
    raise _errors.SolverError('zero dual prices under weak monotonicity')
  return prices


def search_nonzero_prices(vf):
  """Maximizes sum p over nonnegative supporting prices.

  Every equilibrium price vector lies in this polyhedron, and the x = 0 row
  bounds it, so a zero maximum means no nonzero supporting price exists.

  Returns:
    A nonzero price tuple, or None.
  """
  spec = price_system(vf, nonnegative=True, objective=[1] * len(vf.endowment))
  solution = _numerics.lp_solve(spec)
  if solution.status != _numerics.OPTIMAL:
    raise _errors.SolverError('nonzero-price search ended {}'.format(
        solution.status))
  _logging.debug('nonzero-price search: max sum p = %s', solution.objective)
  if solution.objective > 0:
    return solution.primal
  return None


def _best_deviation(auction, agent, held, prices, candidates):
  current = _auction.profit(auction, agent, held, prices)
  best, best_x = current, None
  for x in candidates:
    gain = _auction.profit(auction, agent, x, prices)
    if gain > best:
      best, best_x = gain, x
  if best_x is None:
    return current, None
  return current, Violation(agent, best_x, best - current)


def verify_equilibrium(auction, prices, allocation, mode=CONSTRAINED):
  """Checks a price/allocation pair against every agent's best response.

  Constrained mode tries every deviation x <= w. Unconstrained mode tries
  every x in C(2w) and also checks that each of them earns no more than its
  clamp m(x, w); since values only depend on m(x, w), that extends the check
  to every bundle, so both modes agree.

  Args:
    auction: a MultiUnitAuction.
    prices: L numbers.
    allocation: H bundles of length L.
    mode: CONSTRAINED or UNCONSTRAINED.

  Returns:
    An EquilibriumReport; `holds` is the verdict.

  Raises:
    ModelError: on dimension mismatch or an unknown mode.
  """
  if mode not in (CONSTRAINED, UNCONSTRAINED):
    raise _errors.ModelError('unknown verification mode {!r}'.format(mode))
  prices = tuple(_numerics.to_rat(v) for v in prices)
  if len(prices) != auction.num_items:
    raise _errors.ModelError('{} prices for {} items'.format(
        len(prices), auction.num_items))
  allocation = _auction.allocation(allocation, auction.num_items)
  feasible = _auction.is_feasible(auction, allocation)
  prices_valid = all(v >= 0 for v in prices) and any(prices)
  w = auction.endowment
  if mode == CONSTRAINED:
    candidates = _auction.box(w)
  else:
    candidates = _auction.box(tuple(2 * v for v in w))
  clamping = None
  if mode == UNCONSTRAINED:
    clamping = all(
        _auction.dot(prices, x) >= _auction.dot(prices, _auction.meet(x, w))
        for x in candidates)
  surplus = []
  violations = []
  for agent, held in enumerate(allocation):
    current, violation = _best_deviation(auction, agent, held, prices,
                                         candidates)
    surplus.append(current)
    if violation is not None:
      violations.append(violation)
  report = EquilibriumReport(mode, feasible, prices_valid, clamping,
                             tuple(surplus), tuple(violations))
  _logging.debug('verify_equilibrium(%s): holds=%s, %d violations', mode,
                 report.holds, len(violations))
  return report


def assemble_certificate(auction, prices, vf):
  """Pairs supporting prices with the efficient allocation at w.

  Args:
    auction: the auction `vf` was built for.
    prices: a supporting price vector (see `recover_prices`).
    vf: its ValueFunction.

  Returns:
    An EquilibriumCertificate whose flags come from `verify_equilibrium`.

  Raises:
    CertificateError: if the prices are zero or negative.
  """
  try:
    prices = _auction.price_vector(prices)
  except _errors.ModelError as e:
    raise _errors.CertificateError(str(e))
  allocation = _value_function.efficient_allocation(vf)
  report = verify_equilibrium(auction, prices, allocation)
  return EquilibriumCertificate(
      prices=prices,
      allocation=allocation,
      surplus=report.surplus,
      feasible=report.feasible,
      profit_maximal=not report.violations,
      zero_profit=all(m == 0 for m in report.surplus))


def surplus_program(vf, num_agents=None):
  """The dual program of the equilibrium conditions.

  minimize sum_i m(i) + p.w  s.t.  sum_i m(i) + p.x >= V(x) on C(2w),
  p >= 0, m free. Variables are m(1..H) followed by p(1..L).
  """
  if num_agents is None:
    num_agents = vf.auction.num_agents
  w = vf.endowment
  rows = [([1] * num_agents + list(x), _numerics.GE, vf.value(x))
          for x in vf.points]
  bounds = [None] * num_agents + [0] * len(w)
  return _numerics.linear_program(_numerics.MINIMIZE,
                                  [1] * num_agents + list(w), rows, bounds)


def is_dual_optimal(certificate, vf):
  """True iff (p, m) of `certificate` solves `surplus_program(vf)` exactly."""
  spec = surplus_program(vf, len(certificate.surplus))
  point = tuple(certificate.surplus) + tuple(certificate.prices)
  if not _numerics.is_feasible_point(spec, point):
    return False
  solution = _numerics.lp_solve(spec)
  if solution.status != _numerics.OPTIMAL:
    return False
  value = sum((c * v for c, v in zip(spec.objective, point)), _numerics.Rat(0))
  return value == solution.objective


def check_price_system_agreement(vf, verdict):
  """Cross-checks a verdict against the supporting-price system.

  The system with free prices is solvable iff the existence LP optimum
  equals V(w); its Farkas multipliers must form an improving mixture.
  """
  result = _numerics.farkas_certificate(price_system(vf))
  at_value = verdict.lp_optimum == verdict.value_at_endowment
  if result.feasible != at_value:
    return False
  if not result.feasible:
    return is_improving_mixture(vf, improving_mixture(vf, result.multipliers))
  return not supporting_violations(vf, result.point)


def _mixture_from_primal(vf, primal):
  return tuple((x, a) for x, a in zip(vf.points, primal) if a)


def decide_with_value_function(vf, budgets=None):
  """Decides equilibrium existence for the auction a ValueFunction covers.

  Args:
    vf: a ValueFunction over C(2w).
    budgets: optional _config.Budgets.

  Returns:
    An ExistenceVerdict. When `exists`, `witness` is a certificate that
    verifies; otherwise `refutation` is either an improving mixture or, when
    only the zero vector supports V at w, Refutation(NO_NONZERO_PRICE, ()).

  Raises:
    SolverError: on an internal inconsistency of the LP engine.
  """
  auction = vf.auction
  w = vf.endowment
  wm = _value_function.check_weak_monotonicity(vf)
  caveat = None
  if not wm.holds:
    caveat = WEAK_MONOTONICITY_CAVEAT
    _logging.warning('%s: %s', auction, caveat)
  spec = existence_lp(vf, budgets)
  solution = _numerics.lp_solve(spec)
  if solution.status != _numerics.OPTIMAL:
    raise _errors.SolverError('existence LP ended {}'.format(solution.status))
  value = vf.value(w)
  _logging.debug('existence LP optimum %s, V(w) = %s', solution.objective,
                 value)
  if solution.objective != value:
    mixture = _mixture_from_primal(vf, solution.primal)
    if not is_improving_mixture(vf, mixture):
      raise _errors.SolverError('LP optimum is not an improving mixture')
    return ExistenceVerdict(False, solution.objective, value, wm, None,
                            Refutation(IMPROVING_MIXTURE, mixture), caveat)
  prices = recover_prices(vf, solution)
  if not any(prices):
    prices = search_nonzero_prices(vf)
    if prices is None:
      return ExistenceVerdict(False, solution.objective, value, wm, None,
                              Refutation(NO_NONZERO_PRICE, ()), caveat)
  certificate = assemble_certificate(auction, prices, vf)
  if not (certificate.feasible and certificate.profit_maximal):
    raise _errors.SolverError('assembled certificate does not verify')
  return ExistenceVerdict(True, solution.objective, value, wm, certificate,
                          None, caveat)


def decide_existence(auction, budgets=None):
  """Decides whether a bundle auction has a market equilibrium.

  Args:
    auction: a MultiUnitAuction with endowment e.
    budgets: optional _config.Budgets.

  Returns:
    An ExistenceVerdict (see `decide_with_value_function`).

  Raises:
    ModelError: if the endowment is not e.
    BudgetExceededError: if V or the LP would be too large.
  """
  if not auction.is_bundle_auction:
    raise _errors.ModelError(
        'decide_existence needs w = e; use decide_existence_multiunit')
  vf = _value_function.build_value_function(auction, budgets)
  return decide_with_value_function(vf, budgets)
