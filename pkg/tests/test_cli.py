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
"""Tests for the marketcore command."""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import contextlib
import io
import json
import os
import shutil
import tempfile
import unittest
from unittest import mock

from marketcore import _resources
from marketcore import cli
from marketcore import equilibrium
from marketcore import numerics
from marketcore import tugame
from marketcore import value_function


class CliTest(unittest.TestCase):

  def setUp(self):
    self.tmpdir = tempfile.mkdtemp()

  def tearDown(self):
    shutil.rmtree(self.tmpdir)

  def _bundled(self, name):
    path = os.path.join(self.tmpdir, name + '.json')
    with open(path, 'wb') as f:
      f.write(_resources.get_data(name + '.json'))
    return path

  def _write(self, filename, document):
    path = os.path.join(self.tmpdir, filename)
    with io.open(path, 'w', encoding='utf-8') as f:
      if isinstance(document, str):
        f.write(document)
      else:
        f.write(json.dumps(document))
    return path

  def _run(self, argv):
    args = cli.build_parser().parse_args(argv)
    out = io.StringIO()
    code = args.handler(args, out=out)
    return code, out.getvalue()

  def _main(self, argv):
    err = io.StringIO()
    with contextlib.redirect_stderr(err):
      code = cli.main(argv)
    return code, err.getvalue()

  def _read(self, path):
    with io.open(path, encoding='utf-8') as f:
      return json.load(f)

  def testSolveEmptyCore(self):
    code, text = self._run(['solve', '--input', self._bundled('alkan5')])
    self.assertEqual(cli.EXIT_NEGATIVE, code)
    self.assertIn('matching core EMPTY; LP optimum 50 > V(e)=30', text)

  def testSolveEmptyCoreWithOnlyZeroPrices(self):
    existence = equilibrium.ExistenceVerdict(
        exists=False,
        lp_optimum=numerics.Rat(10),
        value_at_endowment=numerics.Rat(10),
        weak_monotonicity=value_function.WeakMonotonicityReport(
            (True, True, True), False, False),
        witness=None,
        refutation=equilibrium.Refutation(equilibrium.NO_NONZERO_PRICE, ()),
        caveat=equilibrium.WEAK_MONOTONICITY_CAVEAT)
    empty = tugame.CoreVerdict(False, None, None, existence)
    with mock.patch.object(tugame, 'decide_matching_core',
                           return_value=empty):
      code, text = self._run(['solve', '--input', self._bundled('pair3')])
    self.assertEqual(cli.EXIT_NEGATIVE, code)
    self.assertIn('matching core EMPTY; only zero prices support V(e)=10',
                  text)
    self.assertNotIn('LP optimum', text)

  def testSolveNonemptyCoreWritesOutput(self):
    output = os.path.join(self.tmpdir, 'verdict.json')
    code, text = self._run(
        ['solve', '--input', self._bundled('pair3'), '--output', output])
    self.assertEqual(cli.EXIT_OK, code)
    self.assertIn('matching core NONEMPTY; partition [[1, 2], [3]]', text)
    document = self._read(output)
    self.assertEqual('tu_game', document['type'])
    self.assertTrue(document['nonempty'])
    self.assertEqual([[1, 2], [3]], document['outcome']['partition'])

  def testSolveTwoSidedWithOracle(self):
    code, _ = self._run([
        'solve', '--input', self._bundled('two_sided_2x2'), '--oracle-check'
    ])
    self.assertEqual(cli.EXIT_OK, code)

  def testSolveUnanimityPrintsCaveat(self):
    code, text = self._run(['solve', '--input', self._bundled('unanimity2')])
    self.assertEqual(cli.EXIT_OK, code)
    self.assertIn('equilibrium EXISTS', text)
    self.assertIn('caveat: ', text)

  def testSolveAssignment(self):
    code, text = self._run(
        ['solve', '--input', self._bundled('assignment_2x2'),
         '--oracle-check'])
    self.assertEqual(cli.EXIT_OK, code)
    self.assertIn("equilibrium EXISTS; prices ['3', '3']", text)

  def testSolveMultiUnitWithCrossCheck(self):
    code, text = self._run([
        'solve', '--input', self._bundled('multiunit_two_buyers'),
        '--oracle-check'
    ])
    self.assertEqual(cli.EXIT_OK, code)
    self.assertIn("prices ['5']", text)

  def testDumpValueTable(self):
    csv = os.path.join(self.tmpdir, 'v.csv')
    code, _ = self._run([
        'solve', '--input', self._bundled('pair3'), '--dump-value-table', csv
    ])
    self.assertEqual(cli.EXIT_OK, code)
    with io.open(csv, encoding='utf-8') as f:
      lines = f.read().splitlines()
    self.assertEqual('x_1,x_2,x_3,V', lines[0])
    self.assertEqual(28, len(lines))

  def testBudgetExceeded(self):
    code, err = self._main(
        ['solve', '--input', self._bundled('alkan5'), '--budget-cells', '10'])
    self.assertEqual(cli.EXIT_ERROR, code)
    self.assertIn('BudgetExceededError', err)

  def testMalformedInput(self):
    path = self._write('broken.json', '{"type": "tu_game", ')
    code, err = self._main(['solve', '--input', path])
    self.assertEqual(cli.EXIT_ERROR, code)
    self.assertIn('ParseError', err)

  def testMissingInput(self):
    code, _ = self._main(
        ['solve', '--input', os.path.join(self.tmpdir, 'absent.json')])
    self.assertEqual(cli.EXIT_ERROR, code)

  def testSmallGameNeedsFlag(self):
    path = self._write('two.json', {
        'type': 'tu_game',
        'players': 2,
        'worths': [{'coalition': [1, 2], 'value': '4'}]
    })
    code, _ = self._main(['solve', '--input', path])
    self.assertEqual(cli.EXIT_ERROR, code)
    code, _ = self._run(['solve', '--input', path, '--allow-n2'])
    self.assertEqual(cli.EXIT_OK, code)

  def testVerifyOutcome(self):
    game = self._bundled('pair3')
    good = self._write('good.json', {
        'partition': [[1, 2], [3]],
        'payoffs': ['5', '5', '0']
    })
    code, text = self._run(['verify', '--input', game, '--certificate', good])
    self.assertEqual(cli.EXIT_OK, code)
    self.assertIn('outcome is in the matching core', text)
    short = self._write('short.json', {
        'partition': [[1, 2], [3]],
        'payoffs': ['4', '4', '0']
    })
    code, text = self._run(['verify', '--input', game, '--certificate', short])
    self.assertEqual(cli.EXIT_NEGATIVE, code)
    self.assertIn('NOT in the matching core: block coalition [1, 2]', text)

  def testVerifyNegativePayoff(self):
    game = self._bundled('pair3')
    bad = self._write('bad.json', {
        'partition': [[1, 2], [3]],
        'payoffs': ['11', '-1', '0']
    })
    code, err = self._main(['verify', '--input', game, '--certificate', bad])
    self.assertEqual(cli.EXIT_ERROR, code)
    self.assertIn('ModelError', err)

  def testVerifyTriplesOutcome(self):
    candidate = self._write('triple.json', {
        'partition': [[1, 2, 3], [4], [5]],
        'payoffs': ['10', '10', '10', '0', '0']
    })
    code, text = self._run([
        'verify', '--input', self._bundled('alkan5'), '--certificate',
        candidate
    ])
    self.assertEqual(cli.EXIT_NEGATIVE, code)
    self.assertIn('blocking coalition [1, 2, 4]', text)

  def testSolveThenVerify(self):
    for name in ('pair3', 'unanimity2', 'assignment_3x3'):
      instance = self._bundled(name)
      output = os.path.join(self.tmpdir, name + '.out.json')
      code, _ = self._run(['solve', '--input', instance, '--output', output])
      self.assertEqual(cli.EXIT_OK, code)
      code, _ = self._run(
          ['verify', '--input', instance, '--certificate', output])
      self.assertEqual(cli.EXIT_OK, code, msg=name)

  def testVerifyPricesTooHigh(self):
    candidate = self._write('high.json', {
        'prices': ['4', '4'],
        'allocation': [[1, 0], [0, 1]]
    })
    code, text = self._run([
        'verify', '--input', self._bundled('assignment_2x2'), '--certificate',
        candidate
    ])
    self.assertEqual(cli.EXIT_NEGATIVE, code)
    self.assertIn('candidate is NOT a market equilibrium', text)
    self.assertIn('agent 1 gains 1 by switching to [0, 0]', text)

  def testExpand(self):
    output = os.path.join(self.tmpdir, 'expanded.json')
    code, _ = self._run([
        'expand', '--input', self._bundled('multiunit_two_buyers'),
        '--output', output
    ])
    self.assertEqual(cli.EXIT_OK, code)
    document = self._read(output)
    self.assertEqual([[1, 2]], document['groups'])
    self.assertEqual(2, len(document['agents']))

  def testExpandNeedsAuction(self):
    code, err = self._main(['expand', '--input', self._bundled('pair3')])
    self.assertEqual(cli.EXIT_ERROR, code)
    self.assertIn('ModelError', err)

  def testSelftest(self):
    code, text = self._run([
        'selftest', '--seed', '42', '--suite', 'farkas', '--suite',
        'lp-duality', '--trials', '5'
    ])
    self.assertEqual(cli.EXIT_OK, code)
    self.assertIn('farkas', text)
    self.assertIn('lp-duality', text)
    self.assertIn('pass', text)


if __name__ == '__main__':
  unittest.main()
