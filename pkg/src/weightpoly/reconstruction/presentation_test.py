# Copyright 2025 Google LLC.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import copy

from absl.testing import absltest
import numpy as np
from weightpoly import errors
from weightpoly.algebra import characters
from weightpoly.algebra import root_datum
from weightpoly.reconstruction import presentation

_SC = root_datum.Lattice.SIMPLY_CONNECTED
_SHEAR = np.array([[1, 1], [0, 1]], dtype=np.int64)


def _sheared_a2(highest_weights_prime=None):
  datum_prime = root_datum.construct('A2', _SC)
  datum = root_datum.image_under(datum_prime, _SHEAR)
  return presentation.build_matched_presentation(
      datum, datum_prime, _SHEAR, highest_weights_prime
  )


class MatchedPresentationTest(absltest.TestCase):

  def test_not_unimodular(self):
    with self.assertRaises(ValueError):
      presentation.MatchedPresentation(
          2, np.array([[2, 0], [0, 1]], dtype=np.int64)
      )

  def test_shape(self):
    with self.assertRaises(errors.DimensionError):
      presentation.MatchedPresentation(3, np.eye(2, dtype=np.int64))

  def test_mismatched_pair_is_named(self):
    chi = characters.FormalCharacter.from_weights(1, [(1,), (-1,)])
    other = characters.FormalCharacter.from_weights(1, [(1,), (-3,)])
    with self.assertRaisesRegex(
        errors.IncompatiblePresentationError, "'standard'"
    ):
      presentation.MatchedPresentation(
          1,
          np.ones((1, 1), dtype=np.int64),
          (presentation.MatchedIrrep('standard', chi, other),),
      )

  def test_inverse(self):
    mp = _sheared_a2()
    inverse = mp.inverse()
    np.testing.assert_array_equal(inverse.matrix, [[1, -1], [0, 1]])
    self.assertEqual(inverse.irreps[0].weights, mp.irreps[0].weights_prime)
    self.assertEqual(inverse.apply(mp.apply((3, -2))), (3, -2))

  def test_apply_transpose(self):
    mp = _sheared_a2()
    self.assertEqual(mp.apply((2, -1)), (1, -1))
    self.assertEqual(mp.apply_transpose((1, 0)), (1, 1))

  def test_find(self):
    datum_prime = root_datum.construct('A2', _SC)
    delta_prime = root_datum.find_simple_system(datum_prime)
    mp = _sheared_a2([(1, 0), (1, 1)])
    self.assertEqual(mp.find((1, 1), delta_prime).label, 'V[1, 1]#1')
    with self.assertRaises(errors.MissingDataError):
      mp.find((2, 2), delta_prime)

  def test_matrix_is_read_only(self):
    mp = _sheared_a2()
    with self.assertRaises(ValueError):
      mp.matrix[0, 0] = 5


class JsonTest(absltest.TestCase):

  def test_round_trip(self):
    mp = _sheared_a2([(1, 0)])
    data = mp.to_json_dict()
    self.assertEqual(data['M'], [[1, 1], [0, 1]])
    self.assertEqual(data['irreps'][0]['label'], 'V[1, 0]#0')
    parsed = presentation.MatchedPresentation.from_json_dict(data)
    np.testing.assert_array_equal(parsed.matrix, mp.matrix)
    self.assertEqual(parsed.irreps, mp.irreps)

  def test_missing_field(self):
    with self.assertRaisesRegex(ValueError, "'irreps'"):
      presentation.MatchedPresentation.from_json_dict({'rank': 1, 'M': [[1]]})

  def test_bad_matrix(self):
    with self.assertRaisesRegex(ValueError, 'Field "M"'):
      presentation.MatchedPresentation.from_json_dict(
          {'rank': 2, 'M': [[1, 0]], 'irreps': []}
      )

  def test_bad_weights(self):
    data = _sheared_a2([(1, 0)]).to_json_dict()
    data['irreps'][0]['weights'][0]['weight'] = [1]
    with self.assertRaisesRegex(ValueError, r'irreps\[0\]\.weights'):
      presentation.MatchedPresentation.from_json_dict(data)

  def test_perturbed_weight(self):
    data = _sheared_a2([(1, 0)]).to_json_dict()
    perturbed = copy.deepcopy(data)
    perturbed['irreps'][0]['weights'][0]['weight'][0] += 1
    with self.assertRaisesRegex(
        errors.IncompatiblePresentationError, r'V\[1, 0\]#0'
    ):
      presentation.MatchedPresentation.from_json_dict(perturbed)


class BuildMatchedPresentationTest(absltest.TestCase):

  def test_default_is_steinberg_weight(self):
    mp = _sheared_a2()
    self.assertLen(mp.irreps, 1)
    self.assertEqual(mp.irreps[0].weights_prime.dimension, 27)
    self.assertEqual(mp.irreps[0].label, 'V[2, 2]#0')

  def test_rank_mismatch(self):
    with self.assertRaises(errors.DimensionError):
      presentation.build_matched_presentation(
          root_datum.construct('A2', _SC),
          root_datum.construct('A1', _SC),
          np.eye(2, dtype=np.int64),
      )

  def test_wrong_matrix(self):
    datum = root_datum.construct('A2', _SC)
    with self.assertRaises(errors.IncompatiblePresentationError):
      presentation.build_matched_presentation(
          datum, datum, [[1, 0], [0, -1]]
      )


if __name__ == '__main__':
  absltest.main()
