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

"""Formal characters, weight sets and multiplicities of irreducibles.

Formal characters are elements of the group ring Z[X(T)]. Irreducible
characters are computed in characteristic zero: weight sets by saturation (or,
independently, as the lattice points of the weight polytope in the right
coset of the root lattice) and multiplicities by Freudenthal's recursion.

Example usage:

```python
datum = root_datum.construct('A2', 'simply_connected')
delta = root_datum.find_simple_system(datum)
adjoint = characters.freudenthal_multiplicities(datum, delta, (1, 1))
adjoint.dimension  # 8
adjoint.multiplicity((0, 0))  # 2
```
"""

import collections
from collections.abc import Iterable, Mapping, Sequence
import dataclasses
import enum
from fractions import Fraction
import itertools
from typing import Any

from absl import logging
import immutabledict
from weightpoly import errors
from weightpoly.algebra import root_datum
from weightpoly.algebra import weyl
from weightpoly.geometry import lattice
from weightpoly.typing import IntMatrix, LatticeVector  # pylint: disable=g-importing-member


@dataclasses.dataclass(frozen=True)
class FormalCharacter:
  """A finitely supported map X(T) -> Z, i.e. an element of Z[X(T)].

  Attributes:
    rank: Rank of X(T).
    terms: Weight to multiplicity; zero multiplicities are never stored.
  """

  rank: int
  terms: Mapping[LatticeVector, int] = immutabledict.immutabledict()

  def __post_init__(self):
    terms = {}
    for weight, mult in self.terms.items():
      weight = lattice.lattice_vector(weight)
      if len(weight) != self.rank:
        raise errors.DimensionError(
            f'Weight {weight} has length {len(weight)}, expected {self.rank}.'
        )
      if not isinstance(mult, int):
        raise ValueError(f'Multiplicity of {weight} must be an int: {mult!r}')
      if mult:
        terms[weight] = mult
    object.__setattr__(
        self, 'terms', immutabledict.immutabledict(sorted(terms.items()))
    )

  @classmethod
  def from_weights(
      cls, rank: int, weights: Iterable[Sequence[int]]
  ) -> 'FormalCharacter':
    """The character of a multiset of weights."""
    return cls(rank, collections.Counter(tuple(w) for w in weights))

  @classmethod
  def monomial(cls, weight: Sequence[int]) -> 'FormalCharacter':
    return cls(len(weight), {tuple(weight): 1})

  @property
  def support(self) -> frozenset[LatticeVector]:
    return frozenset(self.terms)

  @property
  def dimension(self) -> int:
    return sum(self.terms.values())

  def multiplicity(self, weight: Sequence[int]) -> int:
    return self.terms.get(tuple(weight), 0)

  def __bool__(self) -> bool:
    return bool(self.terms)

  def _check_rank(self, other: 'FormalCharacter') -> None:
    if self.rank != other.rank:
      raise errors.DimensionError(
          f'Characters of rank {self.rank} and {other.rank} do not combine.'
      )

  def __add__(self, other: 'FormalCharacter') -> 'FormalCharacter':
    self._check_rank(other)
    terms = collections.Counter(self.terms)
    terms.update(other.terms)
    return FormalCharacter(self.rank, dict(terms))

  def __neg__(self) -> 'FormalCharacter':
    return self.scale(-1)

  def __sub__(self, other: 'FormalCharacter') -> 'FormalCharacter':
    return self + (-other)

  def __mul__(self, other: 'FormalCharacter') -> 'FormalCharacter':
    return multiply(self, other)

  def scale(self, factor: int) -> 'FormalCharacter':
    return FormalCharacter(
        self.rank, {w: factor * m for w, m in self.terms.items()}
    )

  def transform(self, matrix: IntMatrix) -> 'FormalCharacter':
    """Pushes the character forward along an injective map of lattices."""
    terms = collections.Counter()
    for weight, mult in self.terms.items():
      terms[lattice.apply_matrix(matrix, weight)] += mult
    return FormalCharacter(matrix.shape[0], dict(terms))

  def to_json_dict(self) -> dict[str, Any]:
    return {
        'terms': [
            {'weight': list(w), 'mult': m} for w, m in self.terms.items()
        ]
    }

  @classmethod
  def from_json_dict(
      cls, data: Mapping[str, Any], rank: int | None = None
  ) -> 'FormalCharacter':
    """Parses {"terms": [{"weight": [int], "mult": int}]}."""
    if not isinstance(data, Mapping) or 'terms' not in data:
      raise ValueError('Formal character must be an object with "terms".')
    return cls.from_terms_json(data['terms'], rank)

  @classmethod
  def from_terms_json(
      cls, terms: Any, rank: int | None = None
  ) -> 'FormalCharacter':
    """Parses a list of {"weight": [int], "mult": int} entries."""
    if not isinstance(terms, list):
      raise ValueError('Field "terms" must be a list.')
    result = collections.Counter()
    for i, term in enumerate(terms):
      if not isinstance(term, Mapping):
        raise ValueError(f'Term {i} must be an object.')
      weight, mult = term.get('weight'), term.get('mult', 1)
      if not isinstance(weight, list) or not all(
          isinstance(c, int) for c in weight
      ):
        raise ValueError(f'Field "weight" of term {i} must be an int list.')
      if not isinstance(mult, int):
        raise ValueError(f'Field "mult" of term {i} must be an integer.')
      if rank is None:
        rank = len(weight)
      result[tuple(weight)] += mult
    if rank is None:
      raise ValueError('Cannot infer the rank of an empty character.')
    return cls(rank, dict(result))


@dataclasses.dataclass(frozen=True)
class IrreducibleLabel:
  """Names the irreducible of highest weight `highest_weight` for Delta."""

  highest_weight: LatticeVector
  simple_system: root_datum.SimpleSystem

  def __post_init__(self):
    object.__setattr__(
        self, 'highest_weight', lattice.lattice_vector(self.highest_weight)
    )
    root_datum.require_dominant(self.highest_weight, self.simple_system)


class WeightSetMethod(enum.Enum):
  """Independent ways of computing the weights of an irreducible."""

  SATURATION = 'saturation'
  HULL_COSET = 'hull_coset'


def _dominant_weights_below(
    delta: root_datum.SimpleSystem, highest_weight: LatticeVector
) -> list[LatticeVector]:
  """Dominant mu with highest_weight - mu in N.Delta.

  Heights decrease along every downward path and dominant weights have
  nonnegative height, so points of negative height are pruned.
  """
  seen = {highest_weight}
  queue = collections.deque([highest_weight])
  while queue:
    mu = queue.popleft()
    for s in delta.simples:
      nu = lattice.subtract(mu, s)
      if nu not in seen and delta.height(nu) >= 0:
        seen.add(nu)
        queue.append(nu)
  return [mu for mu in seen if root_datum.is_dominant(mu, delta)]


def _hull_coset_weights(
    datum: root_datum.RootDatum,
    delta: root_datum.SimpleSystem,
    highest_weight: LatticeVector,
) -> frozenset[LatticeVector]:
  vertices = weyl.orbit_of(datum, delta.simples, highest_weight)
  ranges = [
      range(min(v[i] for v in vertices), max(v[i] for v in vertices) + 1)
      for i in range(datum.rank)
  ]
  result = set()
  for p in itertools.product(*ranges):
    if delta.in_root_lattice(lattice.subtract(highest_weight, p)) and (
        p in vertices or lattice.hull_membership(p, vertices)
    ):
      result.add(p)
  return frozenset(result)


def weight_set(
    datum: root_datum.RootDatum,
    delta: root_datum.SimpleSystem,
    highest_weight: Sequence[int],
    *,
    method: WeightSetMethod = WeightSetMethod.SATURATION,
) -> frozenset[LatticeVector]:
  """Returns the set of weights of the irreducible of highest weight lambda.

  Args:
    datum: The root datum.
    delta: The simple system lambda is dominant for.
    highest_weight: lambda.
    method: SATURATION takes the W-orbits of the dominant mu below lambda;
      HULL_COSET takes the points of lambda + ZPhi in the convex hull of
      W.lambda. Both give the same set.

  Raises:
    PreconditionError: If lambda is not dominant.
  """
  highest_weight = lattice.lattice_vector(highest_weight)
  root_datum.require_dominant(highest_weight, delta)
  match method:
    case WeightSetMethod.SATURATION:
      result = set()
      for mu in _dominant_weights_below(delta, highest_weight):
        result |= weyl.orbit_of(datum, delta.simples, mu)
      return frozenset(result)
    case WeightSetMethod.HULL_COSET:
      return _hull_coset_weights(datum, delta, highest_weight)
    case _:
      raise ValueError(f'Unknown {method=}')


def invariant_form(
    datum: root_datum.RootDatum, x: Sequence[int], y: Sequence[int]
) -> int:
  """B(x, y) = sum over roots of <x, alpha^v> <y, alpha^v>."""
  return sum(
      lattice.pairing(x, c) * lattice.pairing(y, c) for c in datum.coroots
  )


def _dominant_point(
    delta: root_datum.SimpleSystem, x: LatticeVector
) -> LatticeVector:
  """Reflects x in simple roots until it is dominant."""
  while True:
    for s, c in zip(delta.simples, delta.coroots):
      n = lattice.pairing(x, c)
      if n < 0:
        x = tuple(a - n * b for a, b in zip(x, s))
        break
    else:
      return x


def freudenthal_multiplicities(
    datum: root_datum.RootDatum,
    delta: root_datum.SimpleSystem,
    highest_weight: Sequence[int],
) -> FormalCharacter:
  """Returns the character of the irreducible of highest weight lambda.

  Multiplicities of dominant weights come from Freudenthal's recursion
  with the W-invariant form B; B is only evaluated on arguments whose
  difference lies in the root span, where it is definite. Other weights take
  the multiplicity of their dominant representative.

  Raises:
    PreconditionError: If lambda is not dominant.
    InconsistencyError: If the recursion produces a non-integral value.
  """
  lam = lattice.lattice_vector(highest_weight)
  weights = weight_set(datum, delta, lam)
  two_rho = root_datum.two_rho(delta)
  dominant = sorted(
      (mu for mu in weights if root_datum.is_dominant(mu, delta)),
      key=lambda mu: (-delta.height(mu), mu),
  )
  mult: dict[LatticeVector, int] = {}

  def lookup(nu: LatticeVector) -> int:
    return mult[_dominant_point(delta, nu)]

  for mu in dominant:
    if mu == lam:
      mult[mu] = 1
      continue
    numerator = 0
    for alpha in delta.positives:
      nu = lattice.add(mu, alpha)
      while nu in weights:
        numerator += lookup(nu) * invariant_form(datum, nu, alpha)
        nu = lattice.add(nu, alpha)
    difference = lattice.subtract(lam, mu)
    denominator = invariant_form(
        datum, difference, lattice.add(lam, mu)
    ) + invariant_form(datum, difference, two_rho)
    value = Fraction(2 * numerator, denominator)
    if value.denominator != 1 or value < 1:
      raise errors.InconsistencyError(
          f'Freudenthal recursion gave multiplicity {value} at {mu}.'
      )
    mult[mu] = int(value)

  logging.debug(
      'Character of %s: %d weights, %d dominant.', lam, len(weights),
      len(dominant),
  )
  return FormalCharacter(datum.rank, {nu: lookup(nu) for nu in weights})


def weyl_dimension(
    datum: root_datum.RootDatum,
    delta: root_datum.SimpleSystem,
    highest_weight: Sequence[int],
) -> int:
  """Returns the dimension of the irreducible from Weyl's formula.

  The product over alpha > 0 of <lambda + rho, alpha^v> / <rho, alpha^v>.
  """
  root_datum.require_dominant(highest_weight, delta)
  two_rho = root_datum.two_rho(delta)
  result = Fraction(1)
  for alpha in delta.positives:
    coroot = datum.coroot_of(alpha)
    shift = lattice.pairing(two_rho, coroot)
    result *= Fraction(
        2 * lattice.pairing(highest_weight, coroot) + shift, shift
    )
  return int(result)


def multiply(a: FormalCharacter, b: FormalCharacter) -> FormalCharacter:
  """Product in Z[X(T)]: the character of a tensor product."""
  a._check_rank(b)  # pylint: disable=protected-access
  terms = collections.Counter()
  for (x, m), (y, n) in itertools.product(a.terms.items(), b.terms.items()):
    terms[lattice.add(x, y)] += m * n
  return FormalCharacter(a.rank, dict(terms))


def is_w_invariant(group: weyl.WeylGroup, character: FormalCharacter) -> bool:
  return all(
      character.transform(g.matrix) == character for g in group.generators
  )


def decompose(
    datum: root_datum.RootDatum,
    delta: root_datum.SimpleSystem,
    group: weyl.WeylGroup,
    character: FormalCharacter,
) -> dict[IrreducibleLabel, int]:
  """Writes a W-invariant character in the basis of irreducible characters.

  Repeatedly removes the irreducible whose highest weight is a dominant
  weight of largest height in the remaining support. Every other weight of
  that irreducible is strictly lower, so the loop terminates.

  Raises:
    PreconditionError: If `character` is not W-invariant.
  """
  if not is_w_invariant(group, character):
    raise errors.PreconditionError('Only W-invariant characters decompose.')
  remaining = character
  result = {}
  while remaining:
    top = max(
        (mu for mu in remaining.support if root_datum.is_dominant(mu, delta)),
        key=lambda mu: (delta.height(mu), mu),
    )
    coefficient = remaining.multiplicity(top)
    irreducible = freudenthal_multiplicities(datum, delta, top)
    remaining = remaining - irreducible.scale(coefficient)
    result[IrreducibleLabel(top, delta)] = coefficient
  return result


def highest_weight(
    character: FormalCharacter, delta: root_datum.SimpleSystem
) -> LatticeVector:
  """Returns the Delta-highest weight of an irreducible character's support.

  Raises:
    InconsistencyError: If no weight dominates the whole support.
  """
  if not character:
    raise errors.InconsistencyError('The zero character has no weights.')
  top = max(character.support, key=lambda mu: (delta.height(mu), mu))
  for mu in character.support:
    c = delta.coefficients(lattice.subtract(top, mu))
    if c is None or any(v < 0 or v.denominator != 1 for v in c):
      raise errors.InconsistencyError(
          f'{top} does not dominate the weight {mu}.'
      )
  return top


def adjoint_character(datum: root_datum.RootDatum) -> FormalCharacter:
  """The roots with multiplicity one and zero with multiplicity rank."""
  terms = {root: 1 for root in datum.roots}
  terms[lattice.zero(datum.rank)] = datum.rank
  return FormalCharacter(datum.rank, terms)
