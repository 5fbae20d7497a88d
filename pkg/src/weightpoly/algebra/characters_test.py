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

import itertools

from absl.testing import absltest
from absl.testing import parameterized
from weightpoly import errors
from weightpoly.algebra import characters
from weightpoly.algebra import root_datum
from weightpoly.algebra import weyl
from weightpoly.geometry import lattice

_SC = root_datum.Lattice.SIMPLY_CONNECTED
_ADJ = root_datum.Lattice.ADJOINT
_GL = root_datum.Lattice.GL_VARIANT


def _setup(label, which=_SC):
  datum = root_datum.construct(label, which)
  delta = root_datum.find_simple_system(datum)
  return datum, delta, weyl.generate(datum, delta)


def _small_dominant(datum, delta, bound):
  box = range(-2 * bound, 2 * bound + 1)
  for x in itertools.product(box, repeat=datum.rank):
    pairings = [lattice.pairing(x, c) for c in delta.coroots]
    if all(0 <= v <= bound for v in pairings) and all(
        abs(c) <= bound for c in x[len(delta.simples):]
    ):
      yield x


class FormalCharacterTest(absltest.TestCase):

  def test_zero_terms_are_dropped(self):
    chi = characters.FormalCharacter(1, {(1,): 2, (0,): 0})
    self.assertEqual(chi.support, {(1,)})
    self.assertEqual(chi.dimension, 2)
    self.assertEqual(chi.multiplicity((5,)), 0)

  def test_arithmetic(self):
    a = characters.FormalCharacter.from_weights(1, [(1,), (-1,), (1,)])
    b = characters.FormalCharacter.monomial((1,))
    self.assertEqual((a - b).terms, {(1,): 1, (-1,): 1})
    self.assertEqual((a + b).multiplicity((1,)), 3)
    self.assertFalse(a - a)
    self.assertEqual(b.scale(-2).terms, {(1,): -2})
    self.assertEqual((b * b).terms, {(2,): 1})

  def test_rank_mismatch(self):
    a = characters.FormalCharacter.monomial((1,))
    b = characters.FormalCharacter.monomial((1, 0))
    with self.assertRaises(errors.DimensionError):
      _ = a + b
    with self.assertRaises(errors.DimensionError):
      characters.multiply(a, b)
    with self.assertRaises(errors.DimensionError):
      characters.FormalCharacter(2, {(1,): 1})

  def test_json(self):
    chi = characters.FormalCharacter(1, {(1,): 1, (-1,): 1})
    data = chi.to_json_dict()
    self.assertEqual(
        data,
        {'terms': [{'weight': [-1], 'mult': 1}, {'weight': [1], 'mult': 1}]},
    )
    self.assertEqual(characters.FormalCharacter.from_json_dict(data), chi)

  def test_json_errors(self):
    with self.assertRaisesRegex(ValueError, 'terms'):
      characters.FormalCharacter.from_json_dict({})
    with self.assertRaisesRegex(ValueError, 'weight'):
      characters.FormalCharacter.from_json_dict(
          {'terms': [{'weight': 'x', 'mult': 1}]}
      )
    with self.assertRaisesRegex(ValueError, 'mult'):
      characters.FormalCharacter.from_json_dict(
          {'terms': [{'weight': [1], 'mult': 1.5}]}
      )

  def test_transform_by_weyl_group(self):
    datum, _, group = _setup('A2')
    adjoint = characters.adjoint_character(datum)
    for w in group:
      self.assertEqual(adjoint.transform(w.matrix), adjoint)


class WeightSetTest(parameterized.TestCase):

  def test_a1(self):
    datum, delta, _ = _setup('A1')
    self.assertEqual(
        characters.weight_set(datum, delta, (3,)),
        {(3,), (1,), (-1,), (-3,)},
    )

  def test_a2_standard(self):
    datum, delta, _ = _setup('A2')
    self.assertEqual(
        characters.weight_set(datum, delta, (1, 0)),
        {(1, 0), (-1, 1), (0, -1)},
    )

  def test_not_dominant(self):
    datum, delta, _ = _setup('A2')
    with self.assertRaises(errors.PreconditionError):
      characters.weight_set(datum, delta, (-1, 0))

  def test_torus(self):
    datum, delta, _ = _setup('T2')
    for method in characters.WeightSetMethod:
      self.assertEqual(
          characters.weight_set(datum, delta, (3, -1), method=method),
          {(3, -1)},
      )

  @parameterized.parameters(
      ('A1', _SC),
      ('A2', _SC),
      ('A2', _ADJ),
      ('A2', _GL),
      ('B2', _SC),
      ('G2', _SC),
      ('A3', _SC),
      ('A1xA1', _SC),
  )
  def test_methods_agree(self, label, which):
    datum, delta, _ = _setup(label, which)
    for lam in _small_dominant(datum, delta, 1):
      self.assertEqual(
          characters.weight_set(
              datum, delta, lam, method=characters.WeightSetMethod.SATURATION
          ),
          characters.weight_set(
              datum, delta, lam, method=characters.WeightSetMethod.HULL_COSET
          ),
          msg=f'{label} {lam}',
      )


class FreudenthalTest(parameterized.TestCase):

  def test_a2_adjoint(self):
    datum, delta, _ = _setup('A2')
    chi = characters.freudenthal_multiplicities(datum, delta, (1, 1))
    self.assertLen(chi.support, 7)
    self.assertEqual(chi.multiplicity((0, 0)), 2)
    self.assertEqual(chi.dimension, 8)
    self.assertEqual(chi, characters.adjoint_character(datum))

  def test_g2(self):
    datum, delta, _ = _setup('G2')
    adjoint = characters.freudenthal_multiplicities(datum, delta, (0, 1))
    self.assertLen(adjoint.support, 13)
    self.assertEqual(adjoint.dimension, 14)
    self.assertEqual(adjoint, characters.adjoint_character(datum))
    short = characters.freudenthal_multiplicities(datum, delta, (1, 0))
    self.assertLen(short.support, 7)
    self.assertEqual(short.dimension, 7)

  @parameterized.parameters(
      ('A3', _SC, (1, 0, 1), 15, 3),
      ('B2', _SC, (0, 2), 10, 2),
      ('B2', _SC, (1, 0), 5, 1),
      ('B2', _SC, (0, 1), 4, 0),
  )
  def test_examples(self, label, which, lam, dimension, zero_mult):
    datum, delta, _ = _setup(label, which)
    chi = characters.freudenthal_multiplicities(datum, delta, lam)
    self.assertEqual(chi.dimension, dimension)
    self.assertEqual(chi.multiplicity(lattice.zero(datum.rank)), zero_mult)

  @parameterized.parameters(
      ('A2', _SC),
      ('A2', _GL),
      ('B2', _SC),
      ('G2', _SC),
      ('A3', _SC),
      ('A2xT1', _ADJ),
  )
  def test_weyl_dimension_formula(self, label, which):
    datum, delta, group = _setup(label, which)
    for lam in _small_dominant(datum, delta, 2):
      chi = characters.freudenthal_multiplicities(datum, delta, lam)
      self.assertEqual(
          chi.dimension,
          characters.weyl_dimension(datum, delta, lam),
          msg=f'{label} {lam}',
      )
      self.assertTrue(characters.is_w_invariant(group, chi))
      self.assertEqual(characters.highest_weight(chi, delta), lam)

  def test_a2_dimensions(self):
    datum, delta, _ = _setup('A2')
    for a, b in itertools.product(range(4), repeat=2):
      self.assertEqual(
          characters.weyl_dimension(datum, delta, (a, b)),
          (a + 1) * (b + 1) * (a + b + 2) // 2,
      )

  def test_invariant_form_is_w_invariant(self):
    datum, _, group = _setup('B2')
    vectors = [(1, 0), (0, 1), (2, -3), (-1, 4)]
    for w in group:
      for x, y in itertools.product(vectors, repeat=2):
        self.assertEqual(
            characters.invariant_form(datum, w.apply(x), w.apply(y)),
            characters.invariant_form(datum, x, y),
        )


class DecomposeTest(parameterized.TestCase):

  def test_a1_tensor_square(self):
    datum, delta, group = _setup('A1')
    v1 = characters.freudenthal_multiplicities(datum, delta, (1,))
    result = characters.decompose(datum, delta, group, v1 * v1)
    self.assertEqual(
        {label.highest_weight: n for label, n in result.items()},
        {(2,): 1, (0,): 1},
    )

  def test_a2_standard_times_dual(self):
    datum, delta, group = _setup('A2')
    v = characters.freudenthal_multiplicities(datum, delta, (1, 0))
    v_dual = characters.freudenthal_multiplicities(datum, delta, (0, 1))
    result = characters.decompose(datum, delta, group, v * v_dual)
    self.assertEqual(
        {label.highest_weight: n for label, n in result.items()},
        {(1, 1): 1, (0, 0): 1},
    )

  def test_signed_combination(self):
    datum, delta, group = _setup('B2')
    a = characters.freudenthal_multiplicities(datum, delta, (1, 0))
    b = characters.freudenthal_multiplicities(datum, delta, (0, 2))
    result = characters.decompose(datum, delta, group, a.scale(3) - b)
    self.assertEqual(
        {label.highest_weight: n for label, n in result.items()},
        {(1, 0): 3, (0, 2): -1},
    )

  def test_not_invariant(self):
    datum, delta, group = _setup('A1')
    with self.assertRaises(errors.PreconditionError):
      characters.decompose(
          datum, delta, group, characters.FormalCharacter.monomial((1,))
      )


class HighestWeightTest(absltest.TestCase):

  def test_adjoint(self):
    datum, delta, _ = _setup('A2')
    self.assertEqual(
        characters.highest_weight(
            characters.adjoint_character(datum), delta
        ),
        (1, 1),
    )

  def test_reducible_support(self):
    datum, delta, _ = _setup('A1')
    chi = characters.freudenthal_multiplicities(
        datum, delta, (1,)
    ) + characters.FormalCharacter.monomial((0,))
    with self.assertRaises(errors.InconsistencyError):
      characters.highest_weight(chi, delta)

  def test_label_requires_dominance(self):
    _, delta, _ = _setup('A2')
    with self.assertRaises(errors.PreconditionError):
      characters.IrreducibleLabel((-1, 0), delta)


if __name__ == '__main__':
  absltest.main()
