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
import itertools

from absl.testing import absltest
from absl.testing import parameterized
from weightpoly import errors
from weightpoly.algebra import characters
from weightpoly.algebra import root_datum
from weightpoly.algebra import weyl
from weightpoly.geometry import lattice
from weightpoly.geometry import polytope

_SC = root_datum.Lattice.SIMPLY_CONNECTED
_ADJ = root_datum.Lattice.ADJOINT
_GL = root_datum.Lattice.GL_VARIANT

_SQUARE = ((1, 1), (1, -1), (-1, 1), (-1, -1))


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


def _endpoints(edges):
  return sorted(e.endpoints for e in edges)


class EdgeDescriptorTest(absltest.TestCase):

  def test_canonical_order(self):
    edge = polytope.EdgeDescriptor((2,), (-2,))
    self.assertEqual(edge.endpoints, ((-2,), (2,)))
    self.assertEqual(edge.lattice_count, 5)
    self.assertEqual(edge, polytope.EdgeDescriptor((-2,), (2,), root=(2,)))
    self.assertEqual(edge.other((2,)), (-2,))

  def test_degenerate(self):
    with self.assertRaises(ValueError):
      polytope.EdgeDescriptor((1, 1), (1, 1))
    with self.assertRaises(ValueError):
      polytope.EdgeDescriptor((1, 1), (0, 1)).other((5, 5))

  def test_json(self):
    self.assertEqual(
        polytope.EdgeDescriptor((1, 1), (-1, 2)).to_json_dict(),
        {'a': [-1, 2], 'b': [1, 1], 'lattice_count': 2},
    )


class ExtremePointsTest(absltest.TestCase):

  def test_square_with_interior(self):
    points = set(itertools.product((-1, 0, 1), repeat=2))
    self.assertEqual(polytope.extreme_points(points), set(_SQUARE))

  def test_collinear(self):
    points = [(0, 0), (1, 1), (3, 3), (2, 2)]
    self.assertEqual(polytope.extreme_points(points), {(0, 0), (3, 3)})

  def test_singleton(self):
    self.assertEqual(polytope.extreme_points([(4,)]), {(4,)})

  def test_non_midpoint_interior(self):
    points = [(0, 0), (3, 0), (0, 3), (1, 1)]
    self.assertEqual(
        polytope.extreme_points(points), {(0, 0), (3, 0), (0, 3)}
    )


class VerticesTest(parameterized.TestCase):

  def test_a1(self):
    _, delta, group = _setup('A1')
    self.assertEqual(
        polytope.vertices(group, delta, (3,), cross_check=True),
        {(3,), (-3,)},
    )

  def test_a2_hexagon(self):
    _, delta, group = _setup('A2')
    result = polytope.vertices(group, delta, (1, 1), cross_check=True)
    self.assertLen(result, 6)
    self.assertNotIn((0, 0), result)

  def test_g2_adjoint(self):
    datum, delta, group = _setup('G2')
    result = polytope.vertices(group, delta, (0, 1), cross_check=True)
    self.assertLen(result, 6)
    self.assertLessEqual(result, set(datum.roots))
    weights = characters.weight_set(datum, delta, (0, 1))
    self.assertLen(weights, 13)
    self.assertEqual(polytope.extreme_points(weights), result)

  def test_not_dominant(self):
    _, delta, group = _setup('A2')
    with self.assertRaises(errors.PreconditionError):
      polytope.vertices(group, delta, (1, -1))


class EdgesTheoremTest(parameterized.TestCase):

  @parameterized.parameters(
      ('A2', _SC, (1, 1), (1, 1), [((-1, 2), (1, 1)), ((1, 1), (2, -1))]),
      ('A2', _SC, (1, 0), (1, 0), [((-1, 1), (1, 0)), ((0, -1), (1, 0))]),
      ('A1', _ADJ, (1,), (1,), [((-1,), (1,))]),
  )
  def test_examples(self, label, which, lam, x0, expected):
    datum, delta, group = _setup(label, which)
    edges = polytope.edges_theorem(datum, delta, group, lam, x0)
    self.assertEqual(_endpoints(edges), expected)
    for edge in edges:
      self.assertTrue(datum.is_root(edge.root))

  def test_not_a_vertex(self):
    datum, delta, group = _setup('A2')
    with self.assertRaises(ValueError):
      polytope.edges_theorem(datum, delta, group, (1, 1), (0, 0))

  def test_non_dominant_vertex(self):
    datum, delta, group = _setup('A2')
    edges = polytope.edges_theorem(datum, delta, group, (1, 0), (0, -1))
    self.assertEqual(
        _endpoints(edges), [((-1, 1), (0, -1)), ((0, -1), (1, 0))]
    )

  def test_edge_count_matches_delta_x0(self):
    datum, delta, group = _setup('G2')
    x0 = (0, 1)
    edges = polytope.edges_theorem(datum, delta, group, x0, x0)
    self.assertLen(edges, len(weyl.delta_of_x0(datum, delta, x0)))
    self.assertLen(edges, 2)
    sub = root_datum.level_zero_subsystem(datum, delta, x0)
    self.assertEqual(sub.delta0, ((2, -1),))


class SupportingFunctionalTest(parameterized.TestCase):

  def test_simple_root_outside_delta0(self):
    datum, delta, _ = _setup('A2')
    y = polytope.supporting_functional(datum, delta, (1, 1), (2, -1))
    self.assertEqual(y, (Fraction(1, 2), Fraction(1)))
    self.assertEqual(lattice.pairing((2, -1), y), 0)
    self.assertEqual(lattice.pairing((-1, 2), y), Fraction(3, 2))

  def test_rank_one(self):
    datum, delta, _ = _setup('A1')
    self.assertEqual(
        polytope.supporting_functional(datum, delta, (1,), (2,)), (0,)
    )

  def test_w0_conjugate(self):
    datum, delta, _ = _setup('A2')
    y = polytope.supporting_functional(datum, delta, (1, 0), (1, 1))
    self.assertEqual(y, (Fraction(1, 2), Fraction(-1, 2)))
    self.assertEqual(lattice.pairing((1, 1), y), 0)
    self.assertGreater(lattice.pairing((2, -1), y), 0)

  def test_not_in_delta_x0(self):
    datum, delta, _ = _setup('A2')
    with self.assertRaises(ValueError):
      polytope.supporting_functional(datum, delta, (1, 0), (-1, 2))

  @parameterized.parameters(
      ('A2', _SC), ('B2', _SC), ('G2', _SC), ('A3', _SC), ('A2', _GL)
  )
  def test_sign_conditions_and_faces(self, label, which):
    datum, delta, group = _setup(label, which)
    for x0 in _small_dominant(datum, delta, 1):
      orbit = weyl.orbit(group, x0)
      roots = weyl.delta_of_x0(datum, delta, x0)
      for alpha in roots:
        y = polytope.supporting_functional(datum, delta, x0, alpha)
        for beta in roots:
          value = lattice.pairing(beta, y)
          self.assertGreaterEqual(value, 0)
          self.assertEqual(value == 0, beta == alpha)
        x1 = root_datum.reflect(x0, alpha, datum.coroot_of(alpha))
        self.assertEqual(polytope.supporting_face(orbit, y), {x0, x1})


class EdgesOracleTest(absltest.TestCase):

  def test_square(self):
    edges = polytope.edges_oracle(_SQUARE, (1, 1))
    self.assertEqual(
        _endpoints(edges), [((-1, 1), (1, 1)), ((1, -1), (1, 1))]
    )

  def test_hexagon_matches_theorem(self):
    datum, delta, group = _setup('A2')
    weights = characters.weight_set(datum, delta, (1, 1))
    self.assertEqual(
        polytope.edges_oracle(weights, (1, 1)),
        polytope.edges_theorem(datum, delta, group, (1, 1), (1, 1)),
    )

  def test_singleton(self):
    self.assertEqual(polytope.edges_oracle([(0, 0)], (0, 0)), [])

  def test_not_extreme(self):
    with self.assertRaises(ValueError):
      polytope.edges_oracle(set(itertools.product((-1, 0, 1), repeat=2)),
                            (0, 0))


class BuildPolytopeTest(parameterized.TestCase):

  def test_a2_hexagon(self):
    datum, delta, group = _setup('A2')
    result = polytope.build_polytope(
        datum, delta, group, (1, 1), cross_check=True
    )
    self.assertLen(result.weights, 7)
    self.assertLen(result.vertices, 6)
    self.assertLen(result.edges, 6)
    for edges in result.edges_at.values():
      self.assertLen(edges, 2)
    report = result.to_json_dict()
    self.assertEqual(report['lambda'], [1, 1])
    self.assertLen(report['vertices'], 6)
    self.assertEqual(report['vertices'], sorted(report['vertices']))

  def test_trivial(self):
    datum, delta, group = _setup('A1')
    result = polytope.build_polytope(
        datum, delta, group, (0,), cross_check=True
    )
    self.assertEqual(result.vertices, {(0,)})
    self.assertEqual(result.edges, [])

  def test_g2_regular(self):
    datum, delta, group = _setup('G2')
    lam = root_datum.two_rho(delta)
    result = polytope.build_polytope(
        datum, delta, group, lam, cross_check=True, max_workers=2
    )
    self.assertLen(result.vertices, 12)
    for edges in result.edges_at.values():
      self.assertLen(edges, 2)

  def test_g2_adjoint(self):
    datum, delta, group = _setup('G2')
    result = polytope.build_polytope(
        datum, delta, group, (0, 1), cross_check=True
    )
    self.assertLen(result.weights, 13)
    self.assertLen(result.vertices, 6)
    for edges in result.edges_at.values():
      self.assertLen(edges, 2)

  @parameterized.parameters(
      ('A1', _SC, 2),
      ('A1', _ADJ, 2),
      ('A2', _SC, 2),
      ('A2', _ADJ, 2),
      ('A1xA1', _SC, 2),
      ('B2', _SC, 2),
      ('G2', _SC, 2),
      ('A3', _SC, 1),
      ('A1', _GL, 2),
      ('A2', _GL, 1),
  )
  def test_theorem_matches_oracle(self, label, which, bound):
    datum, delta, group = _setup(label, which)
    for lam in _small_dominant(datum, delta, bound):
      result = polytope.build_polytope(
          datum, delta, group, lam, cross_check=True
      )
      for x0, edges in result.edges_at.items():
        self.assertLen(
            edges,
            len(set(e.other(x0) for e in edges)),
            msg=f'{label} {lam} {x0}',
        )
        for edge in edges:
          coroot = datum.coroot_of(edge.root)
          on_edge = [p for p in edge.lattice_points() if p in result.weights]
          self.assertLen(on_edge, abs(lattice.pairing(x0, coroot)) + 1)


if __name__ == '__main__':
  absltest.main()
