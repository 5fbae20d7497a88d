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

from fractions import Fraction

from absl.testing import absltest
from absl.testing import parameterized
import numpy as np
from weightpoly import errors
from weightpoly.algebra import root_datum
from weightpoly.geometry import lattice

_SC = root_datum.Lattice.SIMPLY_CONNECTED
_ADJ = root_datum.Lattice.ADJOINT
_GL = root_datum.Lattice.GL_VARIANT

_FIXTURES = (
    ('A1', _SC, 1, 2),
    ('A1', _ADJ, 1, 2),
    ('A1', _GL, 2, 2),
    ('A2', _SC, 2, 6),
    ('A2', _ADJ, 2, 6),
    ('A2', _GL, 3, 6),
    ('A3', _SC, 3, 12),
    ('A4', _SC, 4, 20),
    ('B2', _SC, 2, 8),
    ('B3', _SC, 3, 18),
    ('C3', _ADJ, 3, 18),
    ('D4', _SC, 4, 24),
    ('G2', _SC, 2, 12),
    ('A1xA1', _SC, 2, 4),
    ('A2xT1', _ADJ, 3, 6),
    ('T2', _SC, 2, 0),
)


def _a2():
  return root_datum.construct('A2', _SC)


class ConstructTest(parameterized.TestCase):

  @parameterized.parameters(*_FIXTURES)
  def test_fixture_is_valid(self, label, which, rank, num_roots):
    datum = root_datum.construct(label, which)
    self.assertEqual(datum.rank, rank)
    self.assertLen(datum.roots, num_roots)
    self.assertEmpty(root_datum.validate(datum))

  def test_a1(self):
    sc = root_datum.construct('A1', 'simply_connected')
    self.assertEqual(sc.roots, ((2,), (-2,)))
    self.assertEqual(sc.coroots, ((1,), (-1,)))
    adj = root_datum.construct('A1', 'adjoint')
    self.assertEqual(adj.roots, ((1,), (-1,)))
    self.assertEqual(adj.coroots, ((2,), (-2,)))

  def test_a2_simple_roots_lead(self):
    datum = _a2()
    self.assertEqual(datum.roots[:3], ((2, -1), (-1, 2), (1, 1)))
    self.assertEqual(datum.coroots[:2], ((1, 0), (0, 1)))

  def test_long_and_short_pairings(self):
    b2 = root_datum.construct('B2', _SC)
    self.assertEqual(b2.roots[:2], ((2, -2), (-1, 2)))
    g2 = root_datum.construct('G2', _SC)
    self.assertEqual(g2.roots[:2], ((2, -1), (-3, 2)))
    # The highest root of G2 is 3 alpha_1 + 2 alpha_2.
    self.assertTrue(g2.is_root((0, 1)))

  def test_gl_variant(self):
    datum = root_datum.construct('A1', _GL)
    self.assertEqual(datum.roots, ((1, -1), (-1, 1)))
    self.assertFalse(datum.is_semisimple)

  @parameterized.parameters('E8', 'A0', 'B1', 'G3', 'A2xQ1', '')
  def test_unknown_label(self, label):
    with self.assertRaises(ValueError):
      root_datum.construct(label, _SC)

  def test_gl_variant_requires_type_a(self):
    with self.assertRaises(ValueError):
      root_datum.construct('B2', _GL)

  def test_unknown_lattice(self):
    with self.assertRaises(ValueError):
      root_datum.construct('A2', 'intermediate')

  def test_direct_product(self):
    a1 = root_datum.construct('A1', _SC)
    product = root_datum.direct_product(a1, a1)
    self.assertEqual(product.rank, 2)
    self.assertCountEqual(product.roots, [(2, 0), (-2, 0), (0, 2), (0, -2)])
    self.assertEmpty(root_datum.validate(product))

  def test_image_under_preserves_validity(self):
    image = root_datum.image_under(_a2(), np.array([[1, 1], [0, 1]]))
    self.assertEmpty(root_datum.validate(image))
    self.assertTrue(image.is_root((1, -1)))

  def test_image_under_rejects_non_unimodular(self):
    with self.assertRaises(ValueError):
      root_datum.image_under(_a2(), np.array([[2, 0], [0, 1]]))


class ValidateTest(absltest.TestCase):

  def test_non_reduced(self):
    datum = root_datum.RootDatum(
        rank=1,
        roots=((1,), (-1,), (2,), (-2,)),
        coroots=((2,), (-2,), (1,), (-1,)),
    )
    kinds = {v.kind for v in root_datum.validate(datum)}
    self.assertIn(root_datum.ViolationKind.REDUCED, kinds)

  def test_torus(self):
    datum = root_datum.RootDatum(rank=2, roots=(), coroots=())
    self.assertEmpty(root_datum.validate(datum))

  def test_swapped_coroots(self):
    datum = _a2()
    coroots = list(datum.coroots)
    coroots[0], coroots[1] = coroots[1], coroots[0]
    broken = root_datum.RootDatum(datum.rank, datum.roots, tuple(coroots))
    self.assertNotEmpty(root_datum.validate(broken))

  def test_reports_all_violations(self):
    datum = root_datum.RootDatum(rank=1, roots=((1,),), coroots=((1,),))
    kinds = {v.kind for v in root_datum.validate(datum)}
    self.assertIn(root_datum.ViolationKind.PAIRING, kinds)
    self.assertIn(root_datum.ViolationKind.NEGATION, kinds)

  def test_mismatched_lengths(self):
    with self.assertRaises(ValueError):
      root_datum.RootDatum(rank=1, roots=((2,),), coroots=())
    with self.assertRaises(errors.DimensionError):
      root_datum.RootDatum(rank=2, roots=((2,),), coroots=((1,),))

  def test_json(self):
    datum = _a2()
    self.assertEqual(
        root_datum.RootDatum.from_json_dict(datum.to_json_dict()), datum
    )
    with self.assertRaisesRegex(ValueError, 'coroots'):
      root_datum.RootDatum.from_json_dict({'rank': 1, 'roots': [[2], [-2]]})
    with self.assertRaisesRegex(ValueError, 'roots'):
      root_datum.RootDatum.from_json_dict(
          {'rank': 1, 'roots': [['a']], 'coroots': [[1]]}
      )


class SimpleSystemTest(parameterized.TestCase):

  def test_a1(self):
    datum = root_datum.construct('A1', _SC)
    delta = root_datum.find_simple_system(datum, seed=(1,))
    self.assertEqual(delta.simples, ((2,),))

  def test_a2_with_seed(self):
    delta = root_datum.find_simple_system(_a2(), seed=(1, 1))
    self.assertCountEqual(delta.simples, [(2, -1), (-1, 2)])

  def test_default_is_standard(self):
    for label in ('A2', 'B2', 'G2', 'A3', 'D4'):
      datum = root_datum.construct(label, _SC)
      delta = root_datum.find_simple_system(datum)
      self.assertEqual(delta.simples, datum.roots[: datum.rank])

  def test_degenerate_seed_is_perturbed(self):
    # (1, 2) is orthogonal to alpha_1 = (2, -1).
    delta = root_datum.find_simple_system(_a2(), seed=(1, 2))
    self.assertLen(delta.simples, 2)
    self.assertIn((-1, 2), delta.positives)

  def test_torus(self):
    datum = root_datum.construct('T2', _SC)
    delta = root_datum.find_simple_system(datum)
    self.assertEqual(delta.simples, ())
    self.assertEqual(root_datum.two_rho(delta), (0, 0))
    self.assertEqual(
        root_datum.dominance((0, 0), delta), root_datum.Dominance.DOMINANT
    )

  def test_invalid_datum(self):
    datum = root_datum.RootDatum(rank=1, roots=((1,),), coroots=((1,),))
    with self.assertRaises(errors.PreconditionError):
      root_datum.find_simple_system(datum)

  @parameterized.parameters(*_FIXTURES)
  def test_positive_half(self, label, which, rank, num_roots):
    del rank
    datum = root_datum.construct(label, which)
    delta = root_datum.find_simple_system(datum)
    positives = set(delta.positives)
    negatives = {lattice.negate(r) for r in positives}
    self.assertLen(positives, num_roots // 2)
    self.assertEmpty(positives & negatives)
    self.assertEqual(positives | negatives, set(datum.roots))

  @parameterized.parameters(*_FIXTURES)
  def test_two_rho_is_strongly_dominant(self, label, which, rank, num_roots):
    del rank
    datum = root_datum.construct(label, which)
    delta = root_datum.find_simple_system(datum)
    two_rho = root_datum.two_rho(delta)
    for coroot in delta.coroots:
      self.assertEqual(lattice.pairing(two_rho, coroot), 2)
    if num_roots:
      self.assertEqual(
          root_datum.dominance(two_rho, delta),
          root_datum.Dominance.STRONGLY_DOMINANT,
      )
    rho_check = root_datum.rho_check(delta)
    for simple in delta.simples:
      self.assertEqual(lattice.pairing(simple, rho_check), 1)

  def test_two_rho_values(self):
    a1 = root_datum.construct('A1', _SC)
    self.assertEqual(
        root_datum.two_rho(root_datum.find_simple_system(a1)), (2,)
    )
    self.assertEqual(
        root_datum.two_rho(root_datum.find_simple_system(_a2())), (2, 2)
    )

  def test_coefficients(self):
    delta = root_datum.find_simple_system(_a2())
    self.assertEqual(delta.coefficients((1, 1)), (1, 1))
    self.assertEqual(
        delta.coefficients((1, 0)), (Fraction(2, 3), Fraction(1, 3))
    )
    self.assertFalse(delta.in_root_lattice((1, 0)))
    gl = root_datum.construct('A1', _GL)
    self.assertIsNone(
        root_datum.find_simple_system(gl).coefficients((1, 0))
    )

  def test_apply_into_image_datum(self):
    shear = np.array([[1, 1], [0, 1]], dtype=np.int64)
    image = root_datum.image_under(_a2(), shear)
    delta = root_datum.find_simple_system(_a2())
    moved = delta.apply(lambda x: lattice.apply_matrix(shear, x), image)
    self.assertIs(moved.datum, image)
    self.assertCountEqual(moved.simples, [(1, -1), (1, 2)])
    with self.assertRaises(ValueError):
      delta.apply(lambda x: lattice.apply_matrix(shear, x))

  def test_rejects_non_simple_system(self):
    with self.assertRaises(ValueError):
      root_datum.SimpleSystem(_a2(), ((2, -1), (1, 1)))


class SimpleSystemContainingTest(parameterized.TestCase):

  @parameterized.parameters((1, 1), (2, -1), (-1, -1), (1, -2))
  def test_a2(self, *root):
    delta = root_datum.simple_system_containing(_a2(), root)
    self.assertIn(root, delta.simples)
    self.assertLen(delta.positives, 3)

  def test_every_root_of_g2(self):
    datum = root_datum.construct('G2', _SC)
    for root in datum.roots:
      delta = root_datum.simple_system_containing(datum, root)
      self.assertIn(root, delta.simples)

  def test_a1_negative(self):
    datum = root_datum.construct('A1', _SC)
    delta = root_datum.simple_system_containing(datum, (-2,))
    self.assertEqual(delta.simples, ((-2,),))

  def test_not_a_root(self):
    with self.assertRaises(ValueError):
      root_datum.simple_system_containing(_a2(), (1, 0))


class DominanceTest(parameterized.TestCase):

  @parameterized.parameters(
      ((1, 1), root_datum.Dominance.STRONGLY_DOMINANT),
      ((1, 0), root_datum.Dominance.DOMINANT),
      ((-1, 3), root_datum.Dominance.NOT_DOMINANT),
  )
  def test_a2(self, x, expected):
    delta = root_datum.find_simple_system(_a2())
    self.assertEqual(root_datum.dominance(x, delta), expected)


class LevelZeroSubsystemTest(parameterized.TestCase):

  def test_strongly_dominant(self):
    datum = _a2()
    delta = root_datum.find_simple_system(datum)
    sub = root_datum.level_zero_subsystem(datum, delta, (1, 1))
    self.assertEqual((sub.phi0, sub.p0, sub.delta0), ((), (), ()))

  def test_wall(self):
    datum = _a2()
    delta = root_datum.find_simple_system(datum)
    sub = root_datum.level_zero_subsystem(datum, delta, (1, 0))
    self.assertEqual(sub.delta0, ((-1, 2),))
    self.assertEqual(sub.p0, ((-1, 2),))
    self.assertCountEqual(sub.phi0, [(-1, 2), (1, -2)])

  def test_origin(self):
    datum = _a2()
    delta = root_datum.find_simple_system(datum)
    sub = root_datum.level_zero_subsystem(datum, delta, (0, 0))
    self.assertCountEqual(sub.phi0, datum.roots)
    self.assertEqual(sub.delta0, delta.simples)

  def test_not_dominant(self):
    datum = _a2()
    delta = root_datum.find_simple_system(datum)
    with self.assertRaises(errors.PreconditionError):
      root_datum.level_zero_subsystem(datum, delta, (-1, 1))

  @parameterized.parameters('A3', 'B3', 'C3', 'G2')
  def test_phi0_is_a_root_datum(self, label):
    datum = root_datum.construct(label, _SC)
    delta = root_datum.find_simple_system(datum)
    zero = (0,) * datum.rank
    fundamental = [tuple(e) for e in np.eye(datum.rank, dtype=int).tolist()]
    for x0 in [zero] + fundamental:
      sub = root_datum.level_zero_subsystem(datum, delta, x0)
      self.assertEmpty(root_datum.validate(sub.as_datum()))


if __name__ == '__main__':
  absltest.main()
