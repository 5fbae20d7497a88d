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

"""Weight polytopes: vertices and edges of the hull of an irreducible's weights.

Edges at a vertex are produced two independent ways:

*   `edges_theorem` reads them off the root datum. At a vertex x0 that is
    dominant for Delta, the edges are the segments [x0, s_alpha(x0)] for
    alpha in Delta(x0) = W_0 (Delta minus Delta_0). Every vertex is dominant
    for some W-conjugate of Delta, which is used at the other vertices.
*   `edges_oracle` only sees a finite point set. A pair of vertices spans an
    edge iff some functional is maximal on exactly those two vertices, which
    is decided as an exact rational feasibility problem.

`build_polytope` assembles the theorem edges at every vertex and, with
`cross_check=True`, insists that the oracle agrees.
"""

from collections.abc import Collection, Mapping, Sequence
import concurrent.futures
import dataclasses
from fractions import Fraction
import itertools
from typing import Any

from absl import logging
import immutabledict
import tqdm.auto
from weightpoly import errors
from weightpoly.algebra import characters
from weightpoly.algebra import root_datum
from weightpoly.algebra import weyl
from weightpoly.geometry import lattice
from weightpoly.typing import LatticeVector, RationalVector  # pylint: disable=g-importing-member

DEFAULT_MAX_WORKERS = 4


@dataclasses.dataclass(frozen=True, order=True)
class EdgeDescriptor:
  """A segment [a, b] between two distinct lattice points, a < b.

  Attributes:
    a: Lexicographically smaller endpoint.
    b: Lexicographically larger endpoint.
    lattice_count: Number of lattice points on the closed segment.
    root: The root alpha with b - a parallel to alpha, when known. Ignored by
      comparisons.
  """

  a: LatticeVector
  b: LatticeVector
  lattice_count: int = dataclasses.field(init=False)
  root: LatticeVector | None = dataclasses.field(default=None, compare=False)

  def __post_init__(self):
    a, b = sorted(
        (lattice.lattice_vector(self.a), lattice.lattice_vector(self.b))
    )
    if a == b:
      raise ValueError(f'Edge endpoints must differ: {a=} {b=}.')
    if len(a) != len(b):
      raise errors.DimensionError(f'Endpoints {a} and {b} differ in rank.')
    object.__setattr__(self, 'a', a)
    object.__setattr__(self, 'b', b)
    object.__setattr__(
        self, 'lattice_count', len(lattice.lattice_points_on_segment(a, b))
    )

  @property
  def endpoints(self) -> tuple[LatticeVector, LatticeVector]:
    return self.a, self.b

  def other(self, x: Sequence[int]) -> LatticeVector:
    """Returns the endpoint that is not x."""
    x = tuple(x)
    if x == self.a:
      return self.b
    if x == self.b:
      return self.a
    raise ValueError(f'{x} is not an endpoint of [{self.a}, {self.b}].')

  def lattice_points(self) -> list[LatticeVector]:
    return lattice.lattice_points_on_segment(self.a, self.b)

  def to_json_dict(self) -> dict[str, Any]:
    return {
        'a': list(self.a),
        'b': list(self.b),
        'lattice_count': self.lattice_count,
    }


@dataclasses.dataclass(frozen=True)
class WeightPolytope:
  """The hull of the weights of an irreducible, by vertices and edges.

  Attributes:
    highest_weight: lambda.
    weights: The weight set of the irreducible.
    vertices: The vertices of the hull, i.e. W.lambda.
    edges_at: For each vertex, the edges containing it, sorted.
  """

  highest_weight: LatticeVector
  weights: frozenset[LatticeVector]
  vertices: frozenset[LatticeVector]
  edges_at: Mapping[LatticeVector, tuple[EdgeDescriptor, ...]]

  def __post_init__(self):
    if not self.vertices <= self.weights:
      raise ValueError('Every vertex must be a weight.')
    for x0, edges in self.edges_at.items():
      if x0 not in self.vertices:
        raise ValueError(f'Edges are attached to a non-vertex {x0}.')
      for edge in edges:
        if x0 not in edge.endpoints or not (
            set(edge.endpoints) <= self.vertices
        ):
          raise ValueError(f'Edge {edge.endpoints} does not fit vertex {x0}.')
    object.__setattr__(
        self,
        'edges_at',
        immutabledict.immutabledict(
            {x: tuple(sorted(e)) for x, e in sorted(self.edges_at.items())}
        ),
    )

  @property
  def edges(self) -> list[EdgeDescriptor]:
    """Every edge once, sorted."""
    unique = {}
    for edges in self.edges_at.values():
      for edge in edges:
        unique.setdefault(edge, edge)
    return sorted(unique.values())

  def to_json_dict(self) -> dict[str, Any]:
    return {
        'lambda': list(self.highest_weight),
        'vertices': [list(v) for v in sorted(self.vertices)],
        'edges': [edge.to_json_dict() for edge in self.edges],
    }


def extreme_points(
    points: Collection[Sequence[int]],
) -> frozenset[LatticeVector]:
  """Returns the vertices of the convex hull of a finite point set.

  A midpoint of two other points is never extreme, so those are dropped first;
  every survivor is then tested exactly against the hull of the remaining
  survivors.
  """
  points = {lattice.lattice_vector(p) for p in points}
  survivors = []
  for p in points:
    doubled = lattice.scale(2, p)
    if not any(
        q != p and lattice.subtract(doubled, q) in points for q in points
    ):
      survivors.append(p)
  if len(survivors) <= 1:
    return frozenset(survivors)
  return frozenset(
      p
      for p in survivors
      if not lattice.hull_membership(p, [q for q in survivors if q != p])
  )


def vertices(
    group: weyl.WeylGroup,
    delta: root_datum.SimpleSystem,
    highest_weight: Sequence[int],
    *,
    cross_check: bool = False,
) -> frozenset[LatticeVector]:
  """Returns the vertices of the weight polytope, the orbit W.lambda.

  Args:
    group: The Weyl group.
    delta: A simple system `highest_weight` is dominant for.
    highest_weight: lambda.
    cross_check: Also confirm by exact hull tests that the orbit is exactly
      the set of extreme points.

  Raises:
    PreconditionError: If lambda is not dominant.
    InconsistencyError: If the cross-check fails.
  """
  root_datum.require_dominant(highest_weight, delta)
  orbit = weyl.orbit(group, highest_weight)
  if cross_check and extreme_points(orbit) != orbit:
    raise errors.InconsistencyError(
        f'Some point of W.{tuple(highest_weight)} is not extreme.'
    )
  return orbit


def _chamber_of(
    group: weyl.WeylGroup,
    delta: root_datum.SimpleSystem,
    x0: LatticeVector,
) -> root_datum.SimpleSystem:
  """Returns w^-1(Delta), where w(x0) is dominant; x0 is dominant for it."""
  if root_datum.is_dominant(x0, delta):
    return delta
  _, w = weyl.dominant_representative(group, delta, x0)
  return delta.apply(w.inverse().apply)


def _supporting_functionals(
    datum: root_datum.RootDatum,
    delta: root_datum.SimpleSystem,
    x0: LatticeVector,
) -> dict[LatticeVector, RationalVector]:
  """Returns a functional separating each alpha of Delta(x0) from the rest.

  For alpha in Delta minus Delta_0 the functional is
  rho^v - 1/2 <alpha, rho^v> alpha^v; the remaining roots of Delta(x0) are
  W_0-conjugates w(alpha_0) of those and get w(y_0).
  """
  sub = root_datum.level_zero_subsystem(datum, delta, x0)
  delta0 = set(sub.delta0)
  rho_check = root_datum.rho_check(delta)
  functionals = {}
  for alpha in delta.simples:
    if alpha in delta0:
      continue
    half = Fraction(lattice.pairing(alpha, rho_check), 2)
    functionals[alpha] = lattice.subtract(
        rho_check, lattice.scale(half, datum.coroot_of(alpha))
    )
  targets = weyl.delta_of_x0(datum, delta, x0)
  if len(functionals) < len(targets):
    base = dict(functionals)
    for w, (alpha0, y0) in itertools.product(
        weyl.w0_subgroup(datum, delta, x0), base.items()
    ):
      functionals.setdefault(tuple(w.apply(alpha0)), tuple(w.apply_dual(y0)))
  for alpha in targets:
    y = functionals[alpha]
    for beta in targets:
      value = lattice.pairing(beta, y)
      if value < 0 or (value == 0) != (beta == alpha):
        raise errors.InconsistencyError(
            f'Functional {y} for {alpha} fails at {beta}: {value=}.'
        )
  return {alpha: functionals[alpha] for alpha in targets}


def supporting_functional(
    datum: root_datum.RootDatum,
    delta: root_datum.SimpleSystem,
    x0: Sequence[int],
    alpha: Sequence[int],
) -> RationalVector:
  """Returns y with <beta, y> >= 0 on Delta(x0), vanishing only at alpha.

  Args:
    datum: The root datum.
    delta: A simple system x0 is dominant for.
    x0: The vertex.
    alpha: A root in Delta(x0).

  Raises:
    PreconditionError: If x0 is not dominant for `delta`.
    ValueError: If alpha is not in Delta(x0).
  """
  x0 = lattice.lattice_vector(x0)
  root_datum.require_dominant(x0, delta)
  functionals = _supporting_functionals(datum, delta, x0)
  if (alpha := tuple(alpha)) not in functionals:
    raise ValueError(f'{alpha} is not in Delta({x0}).')
  return functionals[alpha]


def supporting_face(
    points: Collection[LatticeVector], y: Sequence[Fraction]
) -> frozenset[LatticeVector]:
  """Returns the points of `points` on which <., y> is maximal."""
  values = {p: lattice.pairing(p, y) for p in points}
  top = max(values.values())
  return frozenset(p for p, v in values.items() if v == top)


def edges_theorem(
    datum: root_datum.RootDatum,
    delta: root_datum.SimpleSystem,
    group: weyl.WeylGroup,
    highest_weight: Sequence[int],
    x0: Sequence[int],
) -> list[EdgeDescriptor]:
  """Returns the edges at a vertex, one per root of Delta(x0).

  Each edge is also confirmed to be the face cut out by the supporting
  functional of its root: the face is the whole segment and never the single
  point x0.

  Raises:
    PreconditionError: If lambda is not dominant.
    ValueError: If x0 is not a vertex.
    InconsistencyError: If two roots give the same edge or a face check fails.
  """
  orbit = vertices(group, delta, highest_weight)
  x0 = lattice.lattice_vector(x0)
  if x0 not in orbit:
    raise ValueError(
        f'{x0} is not a vertex of the polytope of {tuple(highest_weight)}.'
    )
  local = _chamber_of(group, delta, x0)
  edges = []
  for alpha, y in sorted(_supporting_functionals(datum, local, x0).items()):
    x1 = root_datum.reflect(x0, alpha, datum.coroot_of(alpha))
    face = supporting_face(orbit, y)
    if face != {x0, x1}:
      raise errors.InconsistencyError(
          f'Face of {y} at {x0} is {sorted(face)}, expected [{x0}, {x1}].'
      )
    edges.append(EdgeDescriptor(x0, x1, root=alpha))
  if len(set(edges)) != len(edges):
    raise errors.InconsistencyError(f'Two roots give the same edge at {x0}.')
  logging.debug('%d theorem edges at %s.', len(edges), x0)
  return sorted(edges)


def _edge_system(
    x0: LatticeVector,
    x1: LatticeVector,
    others: Collection[LatticeVector],
) -> lattice.HalfSpaceSystem:
  """Unknowns (y, c): <x0, y> = <x1, y> = c and <v, y> <= c - 1 otherwise."""
  constraints = [
      lattice.Constraint.eq(x0 + (-1,), 0),
      lattice.Constraint.eq(x1 + (-1,), 0),
  ]
  constraints.extend(lattice.Constraint.le(v + (-1,), -1) for v in others)
  return lattice.HalfSpaceSystem(len(x0) + 1, tuple(constraints))


def _feasible(system: lattice.HalfSpaceSystem) -> bool:
  try:
    point = lattice.rational_feasible(system)
  except errors.ResourceError as e:
    logging.warning('%s; retrying with the simplex engine.', e)
    point = lattice.rational_feasible(
        system, engine=lattice.FeasibilityEngine.SIMPLEX
    )
  return point is not None


def edges_oracle(
    weights: Collection[Sequence[int]], x0: Sequence[int]
) -> list[EdgeDescriptor]:
  """Returns the edges at x0 of the hull of `weights`, by exact LP alone.

  Raises:
    ValueError: If x0 is not a vertex of the hull.
  """
  return edges_among_vertices(
      extreme_points(weights), lattice.lattice_vector(x0)
  )


def edges_among_vertices(
    hull_vertices: frozenset[LatticeVector], x0: LatticeVector
) -> list[EdgeDescriptor]:
  """Like `edges_oracle`, for points already known to be the hull vertices."""
  if x0 not in hull_vertices:
    raise ValueError(f'{x0} is not extreme in the given point set.')
  edges = []
  for x1 in sorted(hull_vertices - {x0}):
    others = [v for v in hull_vertices if v not in (x0, x1)]
    if _feasible(_edge_system(x0, x1, others)):
      edges.append(EdgeDescriptor(x0, x1))
  return sorted(edges)


def build_polytope(
    datum: root_datum.RootDatum,
    delta: root_datum.SimpleSystem,
    group: weyl.WeylGroup,
    highest_weight: Sequence[int],
    *,
    cross_check: bool = False,
    max_workers: int = DEFAULT_MAX_WORKERS,
    progress_bar: bool = False,
) -> WeightPolytope:
  """Computes the weight polytope of the irreducible of highest weight lambda.

  Args:
    datum: The root datum.
    delta: A simple system lambda is dominant for.
    group: The Weyl group.
    highest_weight: lambda.
    cross_check: If True, confirm the vertices by hull tests and the edges at
      every vertex by `edges_oracle`.
    max_workers: Number of parallel workers for the per-vertex work.
    progress_bar: If True, show a progress bar.

  Returns:
    The polytope, with edges sorted canonically.

  Raises:
    PreconditionError: If lambda is not dominant.
    InconsistencyError: If a cross-check fails.
  """
  lam = lattice.lattice_vector(highest_weight)
  weights = characters.weight_set(datum, delta, lam)
  orbit = vertices(group, delta, lam)
  if cross_check:
    hull_vertices = extreme_points(weights)
    if hull_vertices != orbit:
      raise errors.InconsistencyError(
          f'Hull vertices {sorted(hull_vertices)} differ from W.{lam}.'
      )

  def edges_at(x0: LatticeVector) -> tuple[EdgeDescriptor, ...]:
    edges = edges_theorem(datum, delta, group, lam, x0)
    if cross_check:
      oracle = edges_among_vertices(hull_vertices, x0)
      if set(oracle) != set(edges):
        raise errors.InconsistencyError(
            f'Edges at {x0} disagree: theorem {[e.endpoints for e in edges]},'
            f' oracle {[e.endpoints for e in oracle]}.'
        )
    return tuple(edges)

  ordered = sorted(orbit)
  with concurrent.futures.ThreadPoolExecutor(
      max_workers=max_workers
  ) as executor:
    futures = [executor.submit(edges_at, x0) for x0 in ordered]
    futures_as_completed = tqdm.auto.tqdm(
        concurrent.futures.as_completed(futures),
        total=len(futures),
        disable=not progress_bar,
    )
    for future in futures_as_completed:
      if (exception := future.exception()) is not None:
        executor.shutdown(wait=False, cancel_futures=True)
        raise exception

    result = WeightPolytope(
        highest_weight=lam,
        weights=weights,
        vertices=orbit,
        edges_at={x0: f.result() for x0, f in zip(ordered, futures)},
    )
  logging.info(
      'Polytope of %s: %d weights, %d vertices, %d edges.',
      lam,
      len(weights),
      len(orbit),
      len(result.edges),
  )
  return result
