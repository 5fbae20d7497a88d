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

"""Candidate roots and coroots from irreducible characters alone.

No root datum is known here. Each character's support is peeled into hull
layers: layer 0 is the vertex set of the hull of the support, layer k the
vertex set of what is left after removing the earlier layers. Along every
edge of a layer, the unique indivisible difference x0 - u with u a weight on
the edge is a candidate root alpha, and the number of weights on the edge
gives an equation <x0, alpha^v> = c. Coroots solve those equations.

Layer 0 edges are edges of a genuine weight polytope, so their roots are
accepted outright. Inner layers are accepted one at a time, and only while
they stay consistent with everything found so far; the first rejected layer
ends the search.
"""

import collections
from collections.abc import Sequence
import dataclasses
from typing import Any

from absl import logging
import numpy as np
from weightpoly import errors
from weightpoly.algebra import characters
from weightpoly.algebra import root_datum
from weightpoly.geometry import lattice
from weightpoly.geometry import polytope
from weightpoly.reconstruction import reconstruct
from weightpoly.typing import LatticeVector  # pylint: disable=g-importing-member

# (vertex, string length) pairs, one per edge a root was read from.
_Equations = dict[LatticeVector, list[tuple[LatticeVector, int]]]


@dataclasses.dataclass(frozen=True)
class BlindResult:
  """Candidate root data recovered from characters.

  Attributes:
    rank: Rank of the character lattice.
    roots: The recovered roots, sorted.
    coroots: The coroot of each root, or None where the string equations do
      not determine it.
    layers: Number of hull layers accepted.
    rejected_layer: Index of the first layer that failed to extend the roots
      consistently, if any.
    saturated: Whether the roots are stable under every recovered
      reflection.
  """

  rank: int
  roots: tuple[LatticeVector, ...] = ()
  coroots: tuple[LatticeVector | None, ...] = ()
  layers: int = 0
  rejected_layer: int | None = None
  saturated: bool = True

  @property
  def underdetermined(self) -> tuple[LatticeVector, ...]:
    return tuple(r for r, c in zip(self.roots, self.coroots) if c is None)

  @property
  def coroots_determined(self) -> bool:
    return not self.underdetermined

  @property
  def complete(self) -> bool:
    return (
        self.saturated
        and self.coroots_determined
        and self.rejected_layer is None
    )

  def as_datum(self, label: str = 'blind') -> root_datum.RootDatum:
    """Returns the candidate as a root datum.

    Raises:
      MissingDataError: If some coroot is undetermined.
    """
    if not self.coroots_determined:
      raise errors.MissingDataError(
          f'Coroots of {self.underdetermined} are undetermined.'
      )
    return root_datum.RootDatum(self.rank, self.roots, self.coroots, label)

  def to_json_dict(self) -> dict[str, Any]:
    return {
        'rank': self.rank,
        'roots': [list(r) for r in self.roots],
        'coroots': [None if c is None else list(c) for c in self.coroots],
        'flags': {
            'saturated': self.saturated,
            'coroots_determined': self.coroots_determined,
            'rejected_layer': self.rejected_layer,
            'layers': self.layers,
        },
    }


def hull_layers(
    support: frozenset[LatticeVector],
) -> list[frozenset[LatticeVector]]:
  """Peels a finite point set into successive hull vertex sets."""
  layers = []
  remaining = set(support)
  while remaining:
    layer = polytope.extreme_points(remaining)
    layers.append(layer)
    remaining -= layer
  return layers


def string_length(
    x0: LatticeVector,
    edge: polytope.EdgeDescriptor,
    support: frozenset[LatticeVector],
) -> int:
  """Number of weights on the edge, less one: <x0, alpha^v> for its root."""
  return sum(1 for u in edge.lattice_points() if u in support) - 1


def _read_layer(
    layer: frozenset[LatticeVector],
    support: frozenset[LatticeVector],
    equations: _Equations,
) -> None:
  if len(layer) < 2:
    return
  for x0 in sorted(layer):
    for edge in polytope.edges_among_vertices(layer, x0):
      alpha = reconstruct.root_from_edge(x0, edge, support)
      equations[alpha].append((x0, string_length(x0, edge, support)))


def solve_coroot(
    alpha: LatticeVector,
    equations: _Equations,
    rank: int,
) -> LatticeVector | None:
  """Solves <x, alpha^v> = c over the equations of alpha and of -alpha.

  Returns:
    The coroot, or None if the equations leave it undetermined.

  Raises:
    InconsistencyError: If the equations have no solution, or no integral
      one.
  """
  rows = [alpha]
  rhs = [2]
  for x, c in equations.get(alpha, ()):
    rows.append(x)
    rhs.append(c)
  for x, c in equations.get(lattice.negate(alpha), ()):
    rows.append(x)
    rhs.append(-c)
  result = lattice.solve_linear_system(rows, rhs, rank)
  if not result.consistent:
    raise errors.InconsistencyError(
        f'String lengths at {rows[1:]} are inconsistent for {alpha}.'
    )
  if result.solution is None:
    return None
  if any(v.denominator != 1 for v in result.solution):
    raise errors.InconsistencyError(
        f'Coroot of {alpha} solves to {result.solution}, which is not'
        ' integral.'
    )
  return tuple(int(v) for v in result.solution)


def _reflection_matrix(alpha, coroot) -> np.ndarray:
  return np.eye(len(alpha), dtype=np.int64) - np.outer(
      np.asarray(alpha, dtype=np.int64), np.asarray(coroot, dtype=np.int64)
  )


def _is_saturated(coroots: dict[LatticeVector, LatticeVector | None]) -> bool:
  roots = set(coroots)
  return all(
      root_datum.reflect(beta, alpha, coroot) in roots
      for alpha, coroot in coroots.items()
      if coroot is not None
      for beta in roots
  )


def _accepts(
    rank: int,
    accepted: dict[LatticeVector, LatticeVector | None],
    candidates: dict[LatticeVector, LatticeVector | None],
    inputs: Sequence[characters.FormalCharacter],
) -> str | None:
  """Returns why an inner layer is rejected, or None if it is accepted."""
  if any(c is None for c in candidates.values()):
    return 'some coroots are undetermined'
  enlarged = {**accepted, **candidates}
  if any(c is None for c in enlarged.values()):
    return 'earlier coroots are undetermined'
  datum = root_datum.RootDatum(
      rank, tuple(enlarged), tuple(enlarged.values())
  )
  if violations := root_datum.validate(datum):
    return violations[0].message
  for alpha, coroot in candidates.items():
    matrix = _reflection_matrix(alpha, coroot)
    if any(chi.transform(matrix) != chi for chi in inputs):
      return f'the reflection in {alpha} does not fix the characters'
  return None


def blind_reconstruct(
    rank: int,
    inputs: Sequence[characters.FormalCharacter],
) -> BlindResult:
  """Recovers candidate (Phi, Phi^v) from irreducible characters.

  Args:
    rank: Rank d of the unlabeled character lattice.
    inputs: Characters of irreducible representations of one unknown split
      reductive group.

  Returns:
    The candidate roots and coroots with completeness flags. Coroots that the
    string lengths leave underdetermined are flagged, not guessed.

  Raises:
    DimensionError: If a character has the wrong rank.
    PreconditionError: If a character is zero or has a negative multiplicity.
    InconsistencyError: If the outer layer's string data is inconsistent.
  """
  for i, chi in enumerate(inputs):
    if chi.rank != rank:
      raise errors.DimensionError(
          f'Character {i} has rank {chi.rank}, expected {rank=}.'
      )
    if not chi or any(m < 0 for m in chi.terms.values()):
      raise errors.PreconditionError(
          f'Character {i} is not the character of a representation.'
      )
  peeled = [(chi.support, hull_layers(chi.support)) for chi in inputs]
  depth = max((len(layers) for _, layers in peeled), default=0)

  accepted: dict[LatticeVector, LatticeVector | None] = {}
  rejected_layer = None
  layers = 0
  for k in range(depth):
    equations: _Equations = collections.defaultdict(list)
    try:
      for support, chi_layers in peeled:
        if k < len(chi_layers):
          _read_layer(chi_layers[k], support, equations)
      candidates = {
          alpha: solve_coroot(alpha, equations, rank)
          for alpha in sorted(equations)
          if alpha not in accepted
      }
    except errors.InconsistencyError:
      if k == 0:
        raise
      logging.info('Layer %d is inconsistent; stopping.', k)
      rejected_layer = k
      break
    if k > 0 and candidates:
      if reason := _accepts(rank, accepted, candidates, inputs):
        logging.info('Layer %d rejected: %s.', k, reason)
        rejected_layer = k
        break
    for alpha, coroot in candidates.items():
      if coroot is None:
        logging.warning('Coroot of %s is underdetermined.', alpha)
    accepted.update(candidates)
    layers += 1

  roots = tuple(sorted(accepted))
  result = BlindResult(
      rank=rank,
      roots=roots,
      coroots=tuple(accepted[r] for r in roots),
      layers=layers,
      rejected_layer=rejected_layer,
      saturated=_is_saturated(accepted),
  )
  logging.info(
      'Recovered %d roots from %d characters over %d layers.',
      len(roots),
      len(inputs),
      layers,
  )
  return result
