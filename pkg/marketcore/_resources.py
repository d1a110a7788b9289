"""Fetches bundled instance files."""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import json
import pkgutil

_cache = {}


def get_data(relative_path):
  """Gets raw bytes of a file under marketcore/data."""
  key = 'data/' + relative_path
  if key in _cache:
    return _cache[key]
  data = pkgutil.get_data('marketcore', key)
  if data is None:
    raise IOError('no bundled resource ' + key)
  _cache[key] = data
  return data


def load_expected(name):
  """Loads the `<name>.expected.json` sidecar of a bundled instance."""
  return json.loads(get_data(name + '.expected.json').decode('utf-8'))


def bundled_names():
  return ('alkan5', 'pair3', 'pairs4', 'two_sided_2x2', 'assignment_2x2',
          'assignment_3x3', 'unanimity2', 'multiunit_two_buyers')
