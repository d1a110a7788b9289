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
"""The `marketcore` command.

  marketcore solve --input alkan5.json --output verdict.json
  marketcore verify --input pair3.json --certificate outcome.json
  marketcore expand --input multiunit.json --output expanded.json
  marketcore selftest --seed 42 --suite core-equivalence

Exit status: 0 when the answer is positive (equilibrium exists, core
nonempty, candidate verifies, suites pass), 3 when the analysis succeeded
with a negative answer, 1 on any error.
"""

from __future__ import absolute_import as _
from __future__ import division as _
from __future__ import print_function as _

import argparse as _argparse
import io as _io
import logging as _logging
import sys as _sys

from marketcore import _config
from marketcore import _selftest
from marketcore import assignment as _assignment
from marketcore import equilibrium as _equilibrium
from marketcore import errors as _errors
from marketcore import instances as _instances
from marketcore import multiunit as _multiunit
from marketcore import numerics as _numerics
from marketcore import tugame as _tugame
from marketcore import value_function as _value_function

__all__ = [
    'EXIT_ERROR', 'EXIT_NEGATIVE', 'EXIT_OK', 'build_parser', 'cmd_expand',
    'cmd_selftest', 'cmd_solve', 'cmd_verify', 'main'
]

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NEGATIVE = 3


def _budgets(args):
  return _config.resolve(table_cells=getattr(args, 'budget_cells', None))


def _emit(args, document, out):
  text = _instances.dumps(document)
  if getattr(args, 'output', None):
    with _io.open(args.output, 'w', encoding='utf-8') as f:
      f.write(text + '\n')
  else:
    print(text, file=out)


def _auction_summary(verdict):
  if verdict.exists:
    return 'equilibrium EXISTS; LP optimum = V(w) = {}; prices {}'.format(
        verdict.value_at_endowment,
        [_numerics.format_rat(v) for v in verdict.witness.prices])
  if verdict.refutation.kind == _equilibrium.NO_NONZERO_PRICE:
    return 'NO equilibrium; only zero prices support V(w)={}'.format(
        verdict.value_at_endowment)
  return 'NO equilibrium; LP optimum {} > V(w)={}'.format(
      verdict.lp_optimum, verdict.value_at_endowment)


def _solve_auction(args, instance, budgets, out):
  auction = instance.model
  vf = _value_function.build_value_function(auction, budgets)
  if args.dump_value_table:
    _value_function.dump_value_table(vf, args.dump_value_table)
  if instance.kind == _instances.MULTIUNIT_AUCTION and args.oracle_check:
    verdict = _multiunit.decide_existence_multiunit(auction, budgets,
                                                    cross_check=True)
  else:
    verdict = _equilibrium.decide_with_value_function(vf, budgets)
  if args.oracle_check and not _equilibrium.check_price_system_agreement(
      vf, verdict):
    raise _errors.SolverError('price system disagrees with the LP verdict')
  print(_auction_summary(verdict), file=out)
  if verdict.caveat:
    print('caveat: ' + verdict.caveat, file=out)
  return verdict.exists, _instances.verdict_to_json(verdict)


def _solve_game(args, instance, budgets, out):
  game = instance.model
  verdict = _tugame.decide_matching_core(
      game, budgets, prohibited=instance.prohibited,
      oracle_check=args.oracle_check)
  if args.dump_value_table:
    zeroed = _tugame.prohibit(game, instance.prohibited)
    induced = _tugame.induce_bundle_auction(zeroed, budgets)
    _value_function.dump_value_table(
        _tugame.build_induced_value_function(induced, budgets),
        args.dump_value_table)
  existence = verdict.existence
  if verdict.nonempty:
    outcome = verdict.outcome
    print('matching core NONEMPTY; partition {}, payoffs {}'.format(
        [list(s) for s in outcome.partition],
        [_numerics.format_rat(v) for v in outcome.payoffs]), file=out)
  elif existence.refutation.kind == _equilibrium.NO_NONZERO_PRICE:
    print('matching core EMPTY; only zero prices support V(e)={}'.format(
        existence.value_at_endowment), file=out)
  else:
    print('matching core EMPTY; LP optimum {} > V(e)={}'.format(
        existence.lp_optimum, existence.value_at_endowment), file=out)
  return verdict.nonempty, _instances.core_verdict_to_json(verdict)


def _solve_assignment(args, instance, budgets, out):
  game = instance.model
  certificate = _assignment.existence_pathway(game, budgets)
  if args.dump_value_table or args.oracle_check:
    auction = _assignment.to_bundle_auction(game, budgets)
    vf = _value_function.build_value_function(auction, budgets)
    if args.dump_value_table:
      _value_function.dump_value_table(vf, args.dump_value_table)
    if (args.oracle_check and _assignment.assignment_lp(game).objective !=
        vf.value(auction.endowment)):
      raise _errors.SolverError('assignment LP value differs from V(e)')
  print('equilibrium EXISTS; prices {}'.format(
      [_numerics.format_rat(v) for v in certificate.prices]), file=out)
  document = {'exists': True}
  document.update(_instances.certificate_to_json(certificate))
  return True, document


def cmd_solve(args, out=None):
  """Decides the instance in --input; returns the exit status."""
  out = out or _sys.stdout
  instance = _instances.load_instance(args.input, allow_small=args.allow_n2)
  budgets = _budgets(args)
  if instance.kind == _instances.TU_GAME:
    positive, document = _solve_game(args, instance, budgets, out)
  elif instance.kind == _instances.ASSIGNMENT_GAME:
    positive, document = _solve_assignment(args, instance, budgets, out)
  else:
    positive, document = _solve_auction(args, instance, budgets, out)
  document['type'] = instance.kind
  _emit(args, document, out)
  return EXIT_OK if positive else EXIT_NEGATIVE


def cmd_verify(args, out=None):
  """Checks the candidate in --certificate against --input."""
  out = out or _sys.stdout
  instance = _instances.load_instance(args.input, allow_small=args.allow_n2)
  with _io.open(args.certificate, encoding='utf-8') as f:
    candidate = _instances.loads(f.read())
  if instance.kind == _instances.TU_GAME:
    game = instance.model
    outcome = _instances.outcome_from_json(candidate, game.n)
    if instance.prohibited:
      game = _tugame.prohibit(game, instance.prohibited)
    check = _tugame.is_in_matching_core(game, outcome)
    if check.holds:
      print('outcome is in the matching core', file=out)
      return EXIT_OK
    print('outcome NOT in the matching core: {} coalition {}'.format(
        check.reason, list(check.coalition)), file=out)
    return EXIT_NEGATIVE
  if instance.kind == _instances.ASSIGNMENT_GAME:
    auction = _assignment.to_bundle_auction(instance.model, _budgets(args))
  else:
    auction = instance.model
  prices, allocation = _instances.candidate_from_json(candidate,
                                                      auction.num_items)
  report = _equilibrium.verify_equilibrium(auction, prices, allocation)
  unconstrained = _equilibrium.verify_equilibrium(
      auction, prices, allocation, mode=_equilibrium.UNCONSTRAINED)
  if report.holds != unconstrained.holds:
    raise _errors.SolverError('constrained and unconstrained checks disagree')
  if report.holds:
    print('candidate IS a market equilibrium', file=out)
    return EXIT_OK
  print('candidate is NOT a market equilibrium', file=out)
  if not report.feasible:
    print('  allocation does not sum to the endowment', file=out)
  if not report.prices_valid:
    print('  prices must be nonnegative and not all zero', file=out)
  for v in report.violations:
    print('  agent {} gains {} by switching to {}'.format(
        v.agent + 1, v.gain, list(v.deviation)), file=out)
  return EXIT_NEGATIVE


def cmd_expand(args, out=None):
  """Writes the unit expansion of a multi-unit auction."""
  out = out or _sys.stdout
  instance = _instances.load_instance(args.input)
  if instance.kind not in (_instances.BUNDLE_AUCTION,
                           _instances.MULTIUNIT_AUCTION):
    raise _errors.ModelError('expand needs an auction, got {}'.format(
        instance.kind))
  expansion = _multiunit.expand(instance.model, _budgets(args))
  _emit(args, _instances.expansion_to_json(expansion), out)
  return EXIT_OK


def cmd_selftest(args, out=None):
  """Runs the randomized cross-check suites."""
  out = out or _sys.stdout
  names = args.suite or _selftest.suite_names()
  results = [
      _selftest.run_suite(name, seed=args.seed, trials=args.trials)
      for name in names
  ]
  print(_selftest.summary_frame(results).to_string(index=False), file=out)
  for result in results:
    for failure in result.failures:
      print('{} (seed {}): {}'.format(result.name, result.seed, failure),
            file=out)
  return EXIT_OK if all(r.passed for r in results) else EXIT_NEGATIVE


def build_parser():
  parser = _argparse.ArgumentParser(
      prog='marketcore',
      description='Exact market-equilibrium and matching-core solver.')
  parser.add_argument('-v', '--verbose', action='store_true',
                      help='log solver progress at DEBUG level')
  sub = parser.add_subparsers(dest='command')
  sub.required = True

  def common(p):
    p.add_argument('--input', required=True, help='instance JSON file')
    p.add_argument('--budget-cells', type=int, default=None,
                   help='override the |C(2w)| x H value-table budget')
    p.add_argument('--allow-n2', action='store_true',
                   help='accept two-player TU games')

  solve = sub.add_parser('solve', help='decide an instance')
  common(solve)
  solve.add_argument('--output', help='write the JSON result here')
  solve.add_argument('--dump-value-table', metavar='CSV',
                     help='write the V table as CSV')
  solve.add_argument('--oracle-check', action='store_true',
                     help='cross-check against an independent method')
  solve.set_defaults(handler=cmd_solve)

  verify = sub.add_parser('verify', help='check a candidate certificate')
  common(verify)
  verify.add_argument('--certificate', required=True,
                      help='candidate prices/allocation or outcome JSON')
  verify.set_defaults(handler=cmd_verify)

  expand = sub.add_parser('expand', help='expand a multi-unit auction')
  common(expand)
  expand.add_argument('--output', help='write the expanded auction here')
  expand.set_defaults(handler=cmd_expand)

  selftest = sub.add_parser('selftest', help='run randomized cross-checks')
  selftest.add_argument('--seed', type=int, default=_selftest.DEFAULT_SEED)
  selftest.add_argument('--suite', action='append',
                        choices=_selftest.suite_names(),
                        help='suite to run; repeatable (default: all)')
  selftest.add_argument('--trials', type=int, default=None,
                        help='override the per-suite trial count')
  selftest.set_defaults(handler=cmd_selftest)
  return parser


def main(argv=None):
  args = build_parser().parse_args(argv)
  _logging.basicConfig(
      level=_logging.DEBUG if args.verbose else _logging.WARNING,
      format='%(levelname)s %(module)s: %(message)s')
  try:
    return args.handler(args)
  except (_errors.Error, IOError, OSError) as e:
    print('error: {}: {}'.format(type(e).__name__, e), file=_sys.stderr)
    return EXIT_ERROR


if __name__ == '__main__':
  _sys.exit(main())
