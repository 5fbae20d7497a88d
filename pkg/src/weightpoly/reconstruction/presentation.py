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

"""Matched presentations: a torus map plus corresponding irreducible characters.

A `MatchedPresentation` stands in for an isomorphism of character rings
compatible with an isomorphism of tori. It holds the matrix M of the map
X(T') -> X(T) and pairs of characters, one over X(T') and one over X(T), that
are asserted to correspond. Construction checks that M is unimodular and
that M carries every primed character onto its partner.
"""

from collections.abc import Mapping, Sequence
import dataclasses
from typing import Any

from absl import logging
import numpy as np
from weightpoly import errors
from weightpoly import typing
from weightpoly.algebra import characters
from weightpoly.algebra import root_datum
from weightpoly.algebra import weyl
from weightpoly.geometry import lattice
from weightpoly.typing import IntMatrix, LatticeVector  # pylint: disable=g-importing-member


@dataclasses.dataclass(frozen=True)
class MatchedIrrep:
  """A pair of corresponding irreducible characters.

  Attributes:
    label: Name of the pair, used in diagnostics.
    weights_prime: The character over X(T').
    weights: The character over X(T).
  """

  label: str
  weights_prime: characters.FormalCharacter
  weights: characters.FormalCharacter

  def swapped(self) -> 'MatchedIrrep':
    return MatchedIrrep(self.label, self.weights, self.weights_prime)

  def to_json_dict(self) -> dict[str, Any]:
    return {
        'label': self.label,
        'weights_prime': self.weights_prime.to_json_dict()['terms'],
        'weights': self.weights.to_json_dict()['terms'],
    }


@typing.jaxtyped
@dataclasses.dataclass(frozen=True)
class MatchedPresentation:
  """The matrix of X(f_T) together with matched irreducible characters.

  Attributes:
    rank: Rank d of both character lattices.
    matrix: d x d integer matrix of X(T') -> X(T), determinant +-1.
    irreps: The matched pairs.

  Raises:
    ValueError: If `matrix` is not invertible over the integers.
    DimensionError: If shapes disagree with `rank`.
    IncompatiblePresentationError: If M does not carry a primed character
      onto its partner; the message names the pair.
  """

  rank: int
  matrix: IntMatrix
  irreps: tuple[MatchedIrrep, ...] = ()

  def __post_init__(self):
    matrix = np.array(typing.as_int_matrix(self.matrix), order='C')
    if matrix.shape[0] != self.rank:
      raise errors.DimensionError(
          f'Matrix of shape {matrix.shape} for {self.rank=}.'
      )
    det = lattice.determinant(matrix)
    if det not in (1, -1):
      raise ValueError(f'Torus map must be unimodular, got {det=}.')
    matrix.setflags(write=False)
    object.__setattr__(self, 'matrix', matrix)
    object.__setattr__(self, 'irreps', tuple(self.irreps))
    for irrep in self.irreps:
      for side in (irrep.weights_prime, irrep.weights):
        if side.rank != self.rank:
          raise errors.DimensionError(
              f'Pair {irrep.label!r} has a character of rank {side.rank}.'
          )
      if irrep.weights_prime.transform(matrix) != irrep.weights:
        raise errors.IncompatiblePresentationError(
            f'Pair {irrep.label!r}: M does not map the primed weights onto'
            ' the unprimed ones.'
        )

  def apply(self, x: Sequence[int]) -> LatticeVector:
    """Returns M x, for x in X(T')."""
    return tuple(lattice.apply_matrix(self.matrix, x))

  def apply_transpose(self, y: Sequence[int]) -> LatticeVector:
    """Returns M^T y, the induced map Y(T) -> Y(T')."""
    return tuple(lattice.apply_matrix(self.matrix.T, y))

  def inverse(self) -> 'MatchedPresentation':
    """The presentation of the inverse map, with every pair swapped."""
    return MatchedPresentation(
        rank=self.rank,
        matrix=lattice.unimodular_inverse(self.matrix),
        irreps=tuple(irrep.swapped() for irrep in self.irreps),
    )

  def find(
      self,
      highest_weight_prime: Sequence[int],
      delta_prime: root_datum.SimpleSystem,
  ) -> MatchedIrrep:
    """Returns the pair whose primed side has the given Delta'-highest weight.

    Raises:
      MissingDataError: If there is no such pair.
    """
    target = tuple(highest_weight_prime)
    for irrep in self.irreps:
      if target not in irrep.weights_prime.support:
        continue
      try:
        top = characters.highest_weight(irrep.weights_prime, delta_prime)
      except errors.InconsistencyError:
        continue
      if top == target:
        return irrep
    raise errors.MissingDataError(
        f'No matched irreducible has highest weight {target} for'
        f' {delta_prime.simples}.'
    )

  def to_json_dict(self) -> dict[str, Any]:
    return {
        'rank': self.rank,
        'M': self.matrix.tolist(),
        'irreps': [irrep.to_json_dict() for irrep in self.irreps],
    }

  @classmethod
  def from_json_dict(cls, data: Mapping[str, Any]) -> 'MatchedPresentation':
    """Parses the JSON document, naming the offending field on failure."""
    if not isinstance(data, Mapping):
      raise ValueError('Matched presentation must be a JSON object.')
    for field in ('rank', 'M', 'irreps'):
      if field not in data:
        raise ValueError(f'Matched presentation is missing field {field!r}.')
    rank = data['rank']
    if not isinstance(rank, int):
      raise ValueError(f'Field "rank" must be an integer, got {rank!r}.')
    rows = data['M']
    if not isinstance(rows, list) or len(rows) != rank or not all(
        isinstance(r, list) and len(r) == rank and all(
            isinstance(c, int) for c in r
        )
        for r in rows
    ):
      raise ValueError(f'Field "M" must be a {rank}x{rank} integer matrix.')
    if not isinstance(data['irreps'], list):
      raise ValueError('Field "irreps" must be a list.')
    irreps = []
    for i, entry in enumerate(data['irreps']):
      if not isinstance(entry, Mapping):
        raise ValueError(f'Field "irreps[{i}]" must be an object.')
      sides = {}
      for field in ('weights_prime', 'weights'):
        try:
          sides[field] = characters.FormalCharacter.from_terms_json(
              entry.get(field), rank
          )
        except ValueError as e:
          raise ValueError(f'Field "irreps[{i}].{field}": {e}') from e
      irreps.append(
          MatchedIrrep(
              label=str(entry.get('label', f'irrep{i}')), **sides
          )
      )
    return cls(
        rank=rank,
        matrix=np.asarray(rows, dtype=np.int64).reshape(rank, rank),
        irreps=tuple(irreps),
    )


def steinberg_weight(delta: root_datum.SimpleSystem) -> LatticeVector:
  """2 rho of `delta`, a strongly dominant character that always lies in X."""
  return root_datum.two_rho(delta)


def build_matched_presentation(
    datum: root_datum.RootDatum,
    datum_prime: root_datum.RootDatum,
    matrix: IntMatrix,
    highest_weights_prime: Sequence[Sequence[int]] | None = None,
) -> MatchedPresentation:
  """Computes matched characters on both sides independently.

  For each lambda' (dominant for the default simple system Delta' of
  `datum_prime`) the primed character is the irreducible of highest weight
  lambda'. The unprimed character is computed in `datum` alone, as the
  irreducible whose highest weight is the dominant point of the W-orbit of
  M lambda'. The two only correspond when M is an isomorphism of root data,
  which the constructor of `MatchedPresentation` then checks.

  Args:
    datum: The root datum on the X(T) side.
    datum_prime: The root datum on the X(T') side.
    matrix: Matrix of X(T') -> X(T).
    highest_weights_prime: The lambda'; defaults to 2 rho' alone.

  Raises:
    IncompatiblePresentationError: If some pair fails to correspond.
    DimensionError: If the ranks differ.
  """
  if datum.rank != datum_prime.rank:
    raise errors.DimensionError(
        f'Ranks differ: {datum.rank=} vs {datum_prime.rank=}.'
    )
  matrix = typing.as_int_matrix(matrix)
  delta_prime = root_datum.find_simple_system(datum_prime)
  delta = root_datum.find_simple_system(datum)
  if highest_weights_prime is None:
    highest_weights_prime = [steinberg_weight(delta_prime)]
  irreps = []
  for i, lam_prime in enumerate(highest_weights_prime):
    lam_prime = lattice.lattice_vector(lam_prime)
    lam, _ = weyl.to_dominant(
        datum, delta, lattice.apply_matrix(matrix, lam_prime)
    )
    irreps.append(
        MatchedIrrep(
            label=f'V{list(lam_prime)}#{i}',
            weights_prime=characters.freudenthal_multiplicities(
                datum_prime, delta_prime, lam_prime
            ),
            weights=characters.freudenthal_multiplicities(datum, delta, lam),
        )
    )
  logging.debug('Built %d matched irreducibles.', len(irreps))
  return MatchedPresentation(datum.rank, matrix, tuple(irreps))
