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
"""JSON instance documents and result serialization.

Numbers are exact: values may be written as strings ("30", "0.5", "45/3")
or as JSON integers and decimals, which are read without binary floats.
Items and players are 1-based in every document.
"""

from __future__ import absolute_import as _
from __future__ import division as _
from __future__ import print_function as _

import collections as _collections
import io as _io
import json as _json

from marketcore import _resources
from marketcore import assignment as _assignment
from marketcore import auction as _auction
from marketcore import errors as _errors
from marketcore import numerics as _numerics
from marketcore import tugame as _tugame

__all__ = [
    'ASSIGNMENT_GAME', 'BUNDLE_AUCTION', 'Instance', 'MULTIUNIT_AUCTION',
    'TU_GAME', 'auction_to_json', 'candidate_from_json', 'certificate_to_json',
    'core_verdict_to_json', 'dumps', 'expansion_to_json', 'load_bundled',
    'load_instance', 'loads', 'outcome_from_json', 'outcome_to_json',
    'parse_instance', 'report_to_json', 'verdict_to_json'
]

BUNDLE_AUCTION = 'bundle_auction'
MULTIUNIT_AUCTION = 'multiunit_auction'
TU_GAME = 'tu_game'
ASSIGNMENT_GAME = 'assignment_game'

Instance = _collections.namedtuple('Instance', ('kind', 'model', 'prohibited'))


def loads(text):
  """Parses JSON, reading decimals exactly."""
  try:
    return _json.loads(text, parse_float=_numerics.rat_from_decimal_string)
  except ValueError as e:
    raise _errors.ParseError('malformed JSON: {}'.format(e))


def dumps(document):
  return _json.dumps(document, indent=2, sort_keys=True)


def _require(document, key, kind):
  if not isinstance(document, dict) or key not in document:
    raise _errors.ParseError('{} document needs "{}"'.format(kind, key))
  return document[key]


def _int(value, what):
  if isinstance(value, bool) or not isinstance(value, int):
    raise _errors.ParseError('{} must be an integer, got {!r}'.format(
        what, value))
  return value


def _rat(value):
  try:
    return _numerics.to_rat(value)
  except _errors.ParseError:
    raise
  except (TypeError, ValueError) as e:
    raise _errors.ParseError(str(e))


def _valuations(document, domain, kind):
  tables = []
  for k, agent in enumerate(_require(document, 'agents', kind)):
    name = agent.get('id', k + 1) if isinstance(agent, dict) else None
    entries = {}
    for entry in _require(agent, 'values', kind):
      bundle = tuple(_int(v, 'bundle entry')
                     for v in _require(entry, 'bundle', kind))
      entries[bundle] = _rat(_require(entry, 'value', kind))
    tables.append(_auction.ValuationTable.from_entries(domain, entries, name))
  return tables


def _parse_bundle_auction(document):
  num_items = _int(_require(document, 'items', BUNDLE_AUCTION), 'items')
  if num_items < 1:
    raise _errors.ModelError('an auction needs at least one item type')
  tables = _valuations(document, _auction.ones(num_items), BUNDLE_AUCTION)
  return _auction.BundleAuction(tables, num_items)


def _parse_multiunit_auction(document):
  endowment = tuple(
      _int(v, 'endowment entry')
      for v in _require(document, 'endowment', MULTIUNIT_AUCTION))
  if 'items' in document and document['items'] != len(endowment):
    raise _errors.ModelError('items = {} but endowment has {} entries'.format(
        document['items'], len(endowment)))
  if not endowment or min(endowment) < 1:
    raise _errors.ModelError('every endowment entry must be >= 1')
  tables = _valuations(document, endowment, MULTIUNIT_AUCTION)
  return _auction.MultiUnitAuction(endowment, tables)


def _coalition(value):
  return tuple(_int(j, 'player') for j in value)


def _parse_tu_game(document, allow_small):
  n = _int(_require(document, 'players', TU_GAME), 'players')
  worths = {}
  for entry in document.get('worths', []):
    coalition = _coalition(_require(entry, 'coalition', TU_GAME))
    worths[coalition] = _rat(_require(entry, 'value', TU_GAME))
  prohibited = tuple(_coalition(s) for s in document.get('prohibited', []))
  return _tugame.TUGame(n, worths, allow_small=allow_small), prohibited


def parse_instance(document, allow_small=False):
  """Builds the model a parsed instance document describes.

  Args:
    document: the parsed JSON object.
    allow_small: accept two-player TU games.

  Returns:
    Instance(kind, model, prohibited); `prohibited` is only non-empty for
    TU games.

  Raises:
    ParseError: on a missing field or malformed number.
    ModelError: if the model violates its invariants.
  """
  kind = _require(document, 'type', 'instance')
  if kind == BUNDLE_AUCTION:
    return Instance(kind, _parse_bundle_auction(document), ())
  if kind == MULTIUNIT_AUCTION:
    return Instance(kind, _parse_multiunit_auction(document), ())
  if kind == TU_GAME:
    game, prohibited = _parse_tu_game(document, allow_small)
    return Instance(kind, game, prohibited)
  if kind == ASSIGNMENT_GAME:
    matrix = [[_rat(v) for v in row]
              for row in _require(document, 'matrix', kind)]
    return Instance(kind, _assignment.AssignmentGame(matrix), ())
  raise _errors.ParseError('unknown instance type {!r}'.format(kind))


def load_instance(path, allow_small=False):
  with _io.open(path, encoding='utf-8') as f:
    return parse_instance(loads(f.read()), allow_small=allow_small)


def load_bundled(name, allow_small=False):
  """Parses one of the instances shipped in marketcore/data."""
  text = _resources.get_data(name + '.json').decode('utf-8')
  return parse_instance(loads(text), allow_small=allow_small)


def _fmt(value):
  return _numerics.format_rat(value)


def _fmts(values):
  return [_fmt(v) for v in values]


def _bundles(allocation):
  return [list(x) for x in allocation]


def certificate_to_json(certificate):
  return {
      'prices': _fmts(certificate.prices),
      'allocation': _bundles(certificate.allocation),
      'surplus': _fmts(certificate.surplus),
      'feasible': certificate.feasible,
      'profit_maximal': certificate.profit_maximal,
      'zero_profit': certificate.zero_profit,
  }


def verdict_to_json(verdict):
  """An ExistenceVerdict as a JSON object."""
  wm = verdict.weak_monotonicity
  document = {
      'exists': verdict.exists,
      'lp_optimum': _fmt(verdict.lp_optimum),
      'V_e': _fmt(verdict.value_at_endowment),
      'weak_monotonicity': {
          'axis': list(wm.axis_flags),
          'strict_step': wm.strict_step,
          'holds': wm.holds,
      },
  }
  if verdict.caveat:
    document['caveat'] = verdict.caveat
  if verdict.witness is not None:
    document.update(certificate_to_json(verdict.witness))
  if verdict.refutation is not None:
    document['refutation'] = {
        'kind': verdict.refutation.kind,
        'alpha': [{'x': list(x), 'weight': _fmt(weight)}
                  for x, weight in verdict.refutation.mixture],
    }
  return document


def outcome_to_json(outcome):
  return {
      'partition': [list(s) for s in outcome.partition],
      'payoffs': _fmts(outcome.payoffs),
  }


def outcome_from_json(document, n):
  if 'outcome' in document:
    document = document['outcome']
  partition = [_coalition(s) for s in _require(document, 'partition',
                                                'outcome')]
  payoffs = [_rat(v) for v in _require(document, 'payoffs', 'outcome')]
  return _tugame.matching_outcome(partition, payoffs, n)


def candidate_from_json(document, num_items):
  """Reads (prices, allocation) from a certificate or verdict document."""
  prices = [_rat(v) for v in _require(document, 'prices', 'certificate')]
  allocation = [[_int(v, 'allocation entry') for v in x]
                for x in _require(document, 'allocation', 'certificate')]
  return tuple(prices), _auction.allocation(allocation, num_items)


def core_verdict_to_json(verdict, coalitions=None):
  document = {'nonempty': verdict.nonempty}
  if verdict.outcome is not None:
    document['outcome'] = outcome_to_json(verdict.outcome)
  if verdict.equilibrium is not None:
    document['equilibrium'] = certificate_to_json(verdict.equilibrium)
    if coalitions is not None:
      document['equilibrium']['buyers'] = [list(s) for s in coalitions]
  if verdict.existence is not None:
    document['existence'] = verdict_to_json(verdict.existence)
  return document


def report_to_json(report):
  """An EquilibriumReport as a JSON object (agents and items 1-based)."""
  return {
      'holds': report.holds,
      'mode': report.mode,
      'feasible': report.feasible,
      'prices_valid': report.prices_valid,
      'surplus': _fmts(report.surplus),
      'violations': [{
          'agent': v.agent + 1,
          'deviation': list(v.deviation),
          'gain': _fmt(v.gain)
      } for v in report.violations],
  }


def auction_to_json(auction):
  """A bundle auction as an instance document listing every table entry."""
  agents = []
  for k, table in enumerate(auction.valuations):
    agents.append({
        'id': table.name if table.name is not None else k + 1,
        'values': [{'bundle': list(y), 'value': _fmt(v)}
                   for y, v in table.items()],
    })
  if auction.is_bundle_auction:
    return {'type': BUNDLE_AUCTION, 'items': auction.num_items,
            'agents': agents}
  return {'type': MULTIUNIT_AUCTION, 'items': auction.num_items,
          'endowment': list(auction.endowment), 'agents': agents}


def expansion_to_json(expansion):
  """The expanded bundle auction plus the 1-based unit groups."""
  document = auction_to_json(expansion.target)
  document['groups'] = [[k + 1 for k in group] for group in expansion.groups]
  return document
