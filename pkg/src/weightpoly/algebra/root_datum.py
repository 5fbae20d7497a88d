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

"""Root data, simple systems and dominance.

A root datum is stored as index-aligned lists of roots (X coordinates) and
coroots (Y coordinates). The bases of X and Y are dual, so the pairing is the
dot product of coordinates and all information about the character lattice is
carried by the coordinates themselves.

Example usage:

```python
datum = root_datum.construct('A2', root_datum.Lattice.SIMPLY_CONNECTED)
delta = root_datum.find_simple_system(datum)
delta.simples  # ((2, -1), (-1, 2))
root_datum.two_rho(delta)  # (2, 2)
```
"""

import collections
from collections.abc import Mapping, Sequence
import dataclasses
import enum
import functools
from fractions import Fraction
import itertools
import re
from typing import Any

from absl import logging
import immutabledict
import sympy
from weightpoly import errors
from weightpoly.geometry import lattice
from weightpoly.typing import IntMatrix, LatticeVector, RationalVector  # pylint: disable=g-importing-member


@dataclasses.dataclass(frozen=True)
class RootDatum:
  """A root datum (X, Phi, Y, Phi^v) in dual coordinates.

  Attributes:
    rank: Rank d of X(T) and Y(T).
    roots: The roots, as X coordinates.
    coroots: The coroots, as Y coordinates; `coroots[i]` belongs to
      `roots[i]`.
    label: Free-form name.
  """

  rank: int
  roots: tuple[LatticeVector, ...]
  coroots: tuple[LatticeVector, ...]
  label: str = ''

  def __post_init__(self):
    if self.rank < 1:
      raise ValueError(f'Rank must be positive, got {self.rank=}.')
    roots = tuple(lattice.lattice_vector(r) for r in self.roots)
    coroots = tuple(lattice.lattice_vector(c) for c in self.coroots)
    if len(roots) != len(coroots):
      raise ValueError(
          f'{len(roots)} roots but {len(coroots)} coroots; they must be'
          ' index-aligned.'
      )
    for v in roots + coroots:
      if len(v) != self.rank:
        raise errors.DimensionError(
            f'Vector {v} has length {len(v)}, expected rank {self.rank}.'
        )
    object.__setattr__(self, 'roots', roots)
    object.__setattr__(self, 'coroots', coroots)

  @functools.cached_property
  def _index(self) -> Mapping[LatticeVector, int]:
    return {root: i for i, root in enumerate(self.roots)}

  @property
  def is_torus(self) -> bool:
    return not self.roots

  @functools.cached_property
  def semisimple_rank(self) -> int:
    return lattice.integer_matrix_rank(self.roots)

  @property
  def is_semisimple(self) -> bool:
    return self.semisimple_rank == self.rank

  def is_root(self, x: Sequence[int]) -> bool:
    return tuple(x) in self._index

  def index_of(self, root: Sequence[int]) -> int:
    try:
      return self._index[tuple(root)]
    except KeyError:
      raise ValueError(
          f'{tuple(root)} is not a root of {self.label!r}.'
      ) from None

  def coroot_of(self, root: Sequence[int]) -> LatticeVector:
    return self.coroots[self.index_of(root)]

  def to_json_dict(self) -> dict[str, Any]:
    return {
        'label': self.label,
        'rank': self.rank,
        'roots': [list(r) for r in self.roots],
        'coroots': [list(c) for c in self.coroots],
    }

  @classmethod
  def from_json_dict(cls, data: Mapping[str, Any]) -> 'RootDatum':
    """Parses the JSON root-datum document, naming the offending field."""
    if not isinstance(data, Mapping):
      raise ValueError('Root datum document must be a JSON object.')
    for field in ('rank', 'roots', 'coroots'):
      if field not in data:
        raise ValueError(f'Root datum document is missing field {field!r}.')
    if not isinstance(data['rank'], int):
      raise ValueError(
          f'Field "rank" must be an integer, got {data["rank"]!r}.'
      )
    vectors = {}
    for field in ('roots', 'coroots'):
      value = data[field]
      if not isinstance(value, list) or not all(
          isinstance(v, list) and all(isinstance(c, int) for c in v)
          for v in value
      ):
        raise ValueError(f'Field {field!r} must be a list of integer lists.')
      vectors[field] = tuple(tuple(v) for v in value)
    return cls(
        rank=data['rank'],
        roots=vectors['roots'],
        coroots=vectors['coroots'],
        label=str(data.get('label', '')),
    )


class ViolationKind(enum.Enum):
  DIMENSION = 'dimension'
  DUPLICATE = 'duplicate'
  PAIRING = 'pairing'
  NEGATION = 'negation'
  ROOT_REFLECTION = 'root_reflection'
  COROOT_REFLECTION = 'coroot_reflection'
  REDUCED = 'reduced'


@dataclasses.dataclass(frozen=True)
class Violation:
  kind: ViolationKind
  message: str

  def to_json_dict(self) -> dict[str, str]:
    return {'kind': self.kind.value, 'message': self.message}


def reflect(
    x: Sequence[int], root: Sequence[int], coroot: Sequence[int]
) -> LatticeVector:
  """Returns s(x) = x - <x, root^v> root."""
  n = lattice.pairing(x, coroot)
  return tuple(a - n * b for a, b in zip(x, root))


def coreflect(
    y: Sequence[int], root: Sequence[int], coroot: Sequence[int]
) -> LatticeVector:
  """Returns s^v(y) = y - <root, y> root^v."""
  n = lattice.pairing(root, y)
  return tuple(a - n * b for a, b in zip(y, coroot))


def _is_multiple(a: Sequence[int], b: Sequence[int]) -> bool:
  """Whether b is a rational multiple of a (both nonzero)."""
  return all(
      a[i] * b[j] == a[j] * b[i]
      for i, j in itertools.combinations(range(len(a)), 2)
  )


def validate(datum: RootDatum) -> list[Violation]:
  """Checks every root datum axiom and returns all violations found.

  An empty list means the datum is valid. Checks are skipped only when an
  earlier check makes them meaningless (e.g. duplicates break the index
  correspondence).
  """
  violations = []
  seen = collections.Counter(datum.roots)
  for root, count in seen.items():
    if count > 1:
      violations.append(Violation(
          ViolationKind.DUPLICATE, f'Root {root} is listed {count} times.'
      ))
  for root in datum.roots:
    if not any(root):
      violations.append(
          Violation(ViolationKind.DIMENSION, 'The zero vector is not a root.')
      )
  if violations:
    return violations

  for root, coroot in zip(datum.roots, datum.coroots):
    if (n := lattice.pairing(root, coroot)) != 2:
      violations.append(Violation(
          ViolationKind.PAIRING, f'<{root}, {coroot}> = {n}, expected 2.'
      ))
    negative = lattice.negate(root)
    if not datum.is_root(negative):
      violations.append(Violation(
          ViolationKind.NEGATION, f'{negative} is missing from the roots.'
      ))
    elif datum.coroot_of(negative) != lattice.negate(coroot):
      violations.append(Violation(
          ViolationKind.NEGATION,
          f'The coroot of {negative} is not the negative of {coroot}.',
      ))

  for (a, a_check), (b, b_check) in itertools.product(
      zip(datum.roots, datum.coroots), repeat=2
  ):
    image = reflect(b, a, a_check)
    if not datum.is_root(image):
      violations.append(Violation(
          ViolationKind.ROOT_REFLECTION,
          f'Reflection in {a} maps root {b} to {image}, which is not a root.',
      ))
      continue
    coimage = coreflect(b_check, a, a_check)
    if datum.coroot_of(image) != coimage:
      violations.append(Violation(
          ViolationKind.COROOT_REFLECTION,
          f'Reflection in {a_check} maps coroot {b_check} to {coimage}, but'
          f' the coroot of {image} is {datum.coroot_of(image)}.',
      ))

  for a, b in itertools.combinations(datum.roots, 2):
    if b != lattice.negate(a) and _is_multiple(a, b):
      violations.append(Violation(
          ViolationKind.REDUCED, f'Roots {a} and {b} are proportional.'
      ))
  return violations


def require_valid(datum: RootDatum) -> None:
  if violations := validate(datum):
    raise errors.PreconditionError(
        f'Invalid root datum {datum.label!r}: '
        + '; '.join(v.message for v in violations[:5])
    )


class Lattice(enum.Enum):
  """Character lattices available to `construct`."""

  SIMPLY_CONNECTED = 'simply_connected'
  ADJOINT = 'adjoint'
  GL_VARIANT = 'gl_variant'

  @classmethod
  def from_str(cls, name: str) -> 'Lattice':
    try:
      return cls(name.lower())
    except ValueError:
      raise ValueError(
          f'Unknown lattice {name!r}; expected one of'
          f' {[l.value for l in cls]}.'
      ) from None


_LATTICE_SUFFIX = immutabledict.immutabledict({
    Lattice.SIMPLY_CONNECTED: 'sc',
    Lattice.ADJOINT: 'adj',
    Lattice.GL_VARIANT: 'gl',
})

# Minimum rank per Cartan family.
_MIN_RANK = immutabledict.immutabledict({'A': 1, 'B': 2, 'C': 2, 'D': 3})


def cartan_pairings(family: str, n: int) -> tuple[tuple[int, ...], ...]:
  """Returns the matrix of <alpha_i, alpha_j^v> in Bourbaki numbering.

  Args:
    family: One of 'A', 'B', 'C', 'D', 'G'.
    n: The rank.

  Raises:
    ValueError: For an unknown family or unsupported rank.
  """
  if family == 'G':
    if n != 2:
      raise ValueError(f'Type G exists only in rank 2, got {n=}.')
    return ((2, -1), (-3, 2))
  if family not in _MIN_RANK or n < _MIN_RANK[family]:
    raise ValueError(f'Unsupported Cartan type {family}{n}.')
  a = [[0] * n for _ in range(n)]
  for i in range(n):
    a[i][i] = 2
  if family == 'D':
    for i in range(n - 2):
      a[i][i + 1] = a[i + 1][i] = -1
    a[n - 3][n - 1] = a[n - 1][n - 3] = -1
  else:
    for i in range(n - 1):
      a[i][i + 1] = a[i + 1][i] = -1
    if family == 'B':
      a[n - 2][n - 1] = -2
    elif family == 'C':
      a[n - 1][n - 2] = -2
  return tuple(tuple(row) for row in a)


def _root_coefficients(
    cartan: Sequence[Sequence[int]],
) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
  """Returns (root, coroot) coefficient pairs in the simple bases.

  Obtained by closing the simple pairs under simple reflections. Positive
  roots come first, sorted by height and then reverse-lexicographically so
  the simple roots lead in their given order; the negatives follow in the
  same order.
  """
  n = len(cartan)
  unit = [tuple(int(i == j) for j in range(n)) for i in range(n)]
  pairs = {u: u for u in unit}
  queue = collections.deque(unit)
  while queue:
    c = queue.popleft()
    d = pairs[c]
    for i in range(n):
      # <beta, alpha_i^v> and <alpha_i, beta^v> in coefficient form.
      p = sum(c[k] * cartan[k][i] for k in range(n))
      q = sum(d[k] * cartan[i][k] for k in range(n))
      image = tuple(c[k] - p * (k == i) for k in range(n))
      if image not in pairs:
        pairs[image] = tuple(d[k] - q * (k == i) for k in range(n))
        queue.append(image)
  positives = sorted(
      (c for c in pairs if all(x >= 0 for x in c)),
      key=lambda c: (sum(c), tuple(-x for x in c)),
  )
  ordered = positives + [lattice.negate(c) for c in positives]
  return [(c, pairs[c]) for c in ordered]


def _simple_factor(
    family: str, n: int, which: Lattice
) -> tuple[int, list[LatticeVector], list[LatticeVector]]:
  cartan = cartan_pairings(family, n)
  coefficients = _root_coefficients(cartan)
  match which:
    case Lattice.SIMPLY_CONNECTED:
      rank = n
      roots = [
          tuple(sum(c[k] * cartan[k][j] for k in range(n)) for j in range(n))
          for c, _ in coefficients
      ]
      coroots = [d for _, d in coefficients]
    case Lattice.ADJOINT:
      rank = n
      roots = [c for c, _ in coefficients]
      coroots = [
          tuple(sum(d[k] * cartan[j][k] for k in range(n)) for j in range(n))
          for _, d in coefficients
      ]
    case Lattice.GL_VARIANT:
      if family != 'A':
        raise ValueError(
            f'The GL variant exists only for type A, got {family}.'
        )
      rank = n + 1
      # alpha_i = e_i - e_{i+1}, self-dual.
      def embed(c):
        return tuple(
            (c[j] if j < n else 0) - (c[j - 1] if j > 0 else 0)
            for j in range(n + 1)
        )
      roots = [embed(c) for c, _ in coefficients]
      coroots = [embed(d) for _, d in coefficients]
    case _:
      raise ValueError(f'Unknown lattice {which=}')
  return rank, roots, coroots


_FACTOR_PATTERN = re.compile(r'^([ABCDGT])(\d+)$')


def construct(label: str, which: Lattice | str) -> RootDatum:
  """Builds a fixture root datum from a Cartan label.

  Args:
    label: A Cartan type such as 'A2', 'B3', 'G2', a torus 'T1', or a product
      joined by 'x' such as 'A1xA1' or 'A2xT1'.
    which: The character lattice. Simply connected uses the basis of
      fundamental weights, adjoint the basis of simple roots, and the GL
      variant (type A only) the standard lattice of GL_{n+1}. Torus factors
      are unaffected by the choice.

  Returns:
    A validated root datum. In every factor the positive roots of the
    standard simple system come first, simple roots leading.

  Raises:
    ValueError: If the label is not recognised.
  """
  if isinstance(which, str):
    which = Lattice.from_str(which)
  factors = []
  for part in label.split('x'):
    match = _FACTOR_PATTERN.match(part)
    if match is None:
      raise ValueError(f'Unknown Cartan label {label!r} (factor {part!r}).')
    family, n = match.group(1), int(match.group(2))
    if n < 1:
      raise ValueError(f'Unknown Cartan label {label!r} (factor {part!r}).')
    if family == 'T':
      factors.append((n, [], []))
    else:
      factors.append(_simple_factor(family, n, which))

  rank = sum(r for r, _, _ in factors)
  positives, negatives = [], []
  offset = 0
  for factor_rank, roots, coroots in factors:
    before, after = (0,) * offset, (0,) * (rank - offset - factor_rank)
    pairs = [
        (before + tuple(r) + after, before + tuple(c) + after)
        for r, c in zip(roots, coroots)
    ]
    half = len(pairs) // 2
    positives.extend(pairs[:half])
    negatives.extend(pairs[half:])
    offset += factor_rank
  ordered = positives + negatives
  datum = RootDatum(
      rank=rank,
      roots=tuple(r for r, _ in ordered),
      coroots=tuple(c for _, c in ordered),
      label=f'{label}_{_LATTICE_SUFFIX[which]}',
  )
  require_valid(datum)
  logging.debug('Constructed %s with %d roots.', datum.label, len(datum.roots))
  return datum


def direct_product(*data: RootDatum) -> RootDatum:
  """Returns the product datum on the direct sum of the lattices."""
  if not data:
    raise ValueError('direct_product needs at least one root datum.')
  rank = sum(d.rank for d in data)
  roots, coroots = [], []
  offset = 0
  for d in data:
    before, after = (0,) * offset, (0,) * (rank - offset - d.rank)
    roots.extend(before + r + after for r in d.roots)
    coroots.extend(before + c + after for c in d.coroots)
    offset += d.rank
  return RootDatum(
      rank=rank,
      roots=tuple(roots),
      coroots=tuple(coroots),
      label='x'.join(d.label for d in data),
  )


def image_under(
    datum: RootDatum, matrix: IntMatrix, label: str = ''
) -> RootDatum:
  """Returns the datum transported along the lattice isomorphism `matrix`.

  Roots map to `matrix @ alpha` and coroots to the contragredient
  `inv(matrix).T @ alpha^v`, so pairings are preserved.

  Raises:
    ValueError: If `matrix` is not unimodular.
  """
  inverse_transpose = lattice.unimodular_inverse(matrix).T
  return RootDatum(
      rank=datum.rank,
      roots=tuple(lattice.apply_matrix(matrix, r) for r in datum.roots),
      coroots=tuple(
          lattice.apply_matrix(inverse_transpose, c) for c in datum.coroots
      ),
      label=label or f'M({datum.label})',
  )


@dataclasses.dataclass(frozen=True)
class SimpleSystem:
  """A system of simple roots Delta of a root datum.

  Attributes:
    datum: The ambient root datum.
    simples: The simple roots, in a fixed order.
    positives: P(Delta), the roots that are nonnegative combinations of
      `simples`, in the order of `datum.roots`.
  """

  datum: RootDatum
  simples: tuple[LatticeVector, ...]
  positives: tuple[LatticeVector, ...] = dataclasses.field(
      init=False, compare=False, repr=False
  )
  _left_inverse: tuple[tuple[Fraction, ...], ...] = dataclasses.field(
      init=False, compare=False, repr=False
  )

  def __post_init__(self):
    simples = tuple(tuple(s) for s in self.simples)
    object.__setattr__(self, 'simples', simples)
    for s in simples:
      if not self.datum.is_root(s):
        raise ValueError(f'Simple root {s} is not a root.')
    if simples:
      d = sympy.Matrix([list(s) for s in simples]).T
      if d.rank() != len(simples):
        raise ValueError(f'Simple roots {simples} are linearly dependent.')
      left_inverse = (d.T * d).inv() * d.T
      rows = tuple(
          tuple(lattice.to_fraction(v) for v in left_inverse.row(i))
          for i in range(left_inverse.rows)
      )
    else:
      rows = ()
    object.__setattr__(self, '_left_inverse', rows)

    positives = []
    for root in self.datum.roots:
      c = self.coefficients(root)
      if c is None or any(x.denominator != 1 for x in c):
        raise ValueError(
            f'Root {root} is not an integral combination of {simples}.'
        )
      if all(x >= 0 for x in c):
        positives.append(root)
      elif not all(x <= 0 for x in c):
        raise ValueError(
            f'Root {root} has coefficients of both signs in {simples}.'
        )
    object.__setattr__(self, 'positives', tuple(positives))

  @property
  def rank(self) -> int:
    return self.datum.rank

  @functools.cached_property
  def coroots(self) -> tuple[LatticeVector, ...]:
    return tuple(self.datum.coroot_of(s) for s in self.simples)

  @functools.cached_property
  def two_rho_check(self) -> LatticeVector:
    """Sum of the positive coroots; the height functional of Delta."""
    total = lattice.zero(self.rank)
    for root in self.positives:
      total = lattice.add(total, self.datum.coroot_of(root))
    return total

  def coefficients(self, x: Sequence[int]) -> RationalVector | None:
    """Returns the coordinates of x in the basis Delta, or None off its span."""
    if len(x) != self.rank:
      raise errors.DimensionError(f'{len(x)=} != {self.rank=}.')
    c = tuple(lattice.pairing(row, x) for row in self._left_inverse)
    c = tuple(Fraction(v) for v in c)
    reconstructed = lattice.zero(self.rank)
    for coefficient, s in zip(c, self.simples):
      reconstructed = lattice.add(reconstructed, lattice.scale(coefficient, s))
    if tuple(reconstructed) != tuple(x):
      return None
    return c

  def in_root_lattice(self, x: Sequence[int]) -> bool:
    c = self.coefficients(x)
    return c is not None and all(v.denominator == 1 for v in c)

  def height(self, x: Sequence[int]) -> int:
    return lattice.pairing(x, self.two_rho_check)

  def is_positive(self, root: Sequence[int]) -> bool:
    return tuple(root) in self._positive_set

  @functools.cached_property
  def _positive_set(self) -> frozenset[LatticeVector]:
    return frozenset(self.positives)

  def apply(
      self, transform, datum: RootDatum | None = None
  ) -> 'SimpleSystem':
    """Maps every simple root by `transform`.

    Args:
      transform: A map on character lattice vectors.
      datum: The datum the images belong to. Defaults to `self.datum`, which
        is right only when `transform` preserves the roots, as W does.

    Returns:
      The image system, validated against `datum`.
    """
    target = self.datum if datum is None else datum
    return SimpleSystem(target, tuple(transform(s) for s in self.simples))


def _power_functional(datum: RootDatum) -> LatticeVector:
  n = 1 + max((abs(c) for r in datum.roots for c in r), default=0)
  return tuple(n ** (datum.rank - 1 - i) for i in range(datum.rank))


def _leading_basis_functional(datum: RootDatum) -> RationalVector:
  """Minimal y with <b, y> = 1 on the first independent roots b in order."""
  basis = []
  for root in datum.roots:
    if lattice.integer_matrix_rank(basis + [root]) > len(basis):
      basis.append(root)
  if not basis:
    return (Fraction(0),) * datum.rank
  b = sympy.Matrix([list(v) for v in basis])
  y = b.T * (b * b.T).inv() * sympy.ones(len(basis), 1)
  return tuple(lattice.to_fraction(v) for v in y)


def generic_functional(
    datum: RootDatum, seed: Sequence[Fraction] | None = None
) -> RationalVector:
  """Returns y in Y_Q with <alpha, y> != 0 for every root.

  Without a seed, y starts as the minimal functional equal to 1 on the first
  linearly independent roots of `datum.roots`; for data built by `construct`
  this is rho^v and yields the standard simple system. Whenever some root is
  orthogonal to y, it is moved towards (N^(d-1), ..., N, 1), with
  N = 1 + max |root coordinate|, by a step small enough to keep every nonzero
  sign.
  """
  if seed is None:
    seed = _leading_basis_functional(datum)
  seed = lattice.rational_vector(seed)
  if len(seed) != datum.rank:
    raise errors.DimensionError(f'{len(seed)=} != {datum.rank=}.')
  values = [lattice.pairing(r, seed) for r in datum.roots]
  if all(values):
    return seed
  g = _power_functional(datum)
  smallest = min((abs(v) for v in values if v), default=Fraction(1))
  largest = max(abs(lattice.pairing(r, g)) for r in datum.roots)
  epsilon = Fraction(smallest) / (2 * largest)
  return lattice.add(seed, lattice.scale(epsilon, g))


def find_simple_system(
    datum: RootDatum, seed: Sequence[Fraction] | None = None
) -> SimpleSystem:
  """Returns the simple system of the positive roots cut out by a functional.

  Args:
    datum: A valid root datum.
    seed: Optional functional in Y_Q. It is perturbed if some root pairs to
      zero with it.

  Raises:
    PreconditionError: If the datum is invalid.
  """
  require_valid(datum)
  y = generic_functional(datum, seed)
  positives = [r for r in datum.roots if lattice.pairing(r, y) > 0]
  sums = {
      lattice.add(a, b)
      for a, b in itertools.combinations_with_replacement(positives, 2)
  }
  simples = tuple(r for r in positives if r not in sums)
  return SimpleSystem(datum, simples)


def simple_system_containing(
    datum: RootDatum, root: Sequence[int]
) -> SimpleSystem:
  """Returns a simple system whose simple roots include `root`.

  Searches the W-conjugates of the default simple system breadth-first,
  stepping by the reflections in the current simple roots.

  Raises:
    ValueError: If `root` is not a root.
  """
  root = tuple(root)
  if not datum.is_root(root):
    raise ValueError(f'{root} is not a root of {datum.label!r}.')
  base = find_simple_system(datum)
  seen = {frozenset(base.simples)}
  queue = collections.deque([base.simples])
  while queue:
    simples = queue.popleft()
    if root in simples:
      return SimpleSystem(datum, simples)
    for s in simples:
      s_check = datum.coroot_of(s)
      image = tuple(reflect(t, s, s_check) for t in simples)
      if (key := frozenset(image)) not in seen:
        seen.add(key)
        queue.append(image)
  raise errors.InconsistencyError(
      f'No simple system of {datum.label!r} contains {root}.'
  )


class Dominance(enum.Enum):
  STRONGLY_DOMINANT = 'strongly_dominant'
  DOMINANT = 'dominant'
  NOT_DOMINANT = 'not_dominant'


def dominance(x: Sequence[int], delta: SimpleSystem) -> Dominance:
  """Classifies x against the chamber C(Delta)."""
  if len(x) != delta.rank:
    raise errors.DimensionError(f'{len(x)=} != {delta.rank=}.')
  values = [lattice.pairing(x, c) for c in delta.coroots]
  if any(v < 0 for v in values):
    return Dominance.NOT_DOMINANT
  if values and all(v > 0 for v in values):
    return Dominance.STRONGLY_DOMINANT
  return Dominance.DOMINANT


def is_dominant(x: Sequence[int], delta: SimpleSystem) -> bool:
  return dominance(x, delta) is not Dominance.NOT_DOMINANT


def require_dominant(x: Sequence[int], delta: SimpleSystem) -> None:
  if not is_dominant(x, delta):
    raise errors.PreconditionError(
        f'{tuple(x)} is not dominant with respect to {delta.simples}.'
    )


def two_rho(delta: SimpleSystem) -> LatticeVector:
  """Returns 2 rho, the sum of the positive roots (zero for a torus)."""
  total = lattice.zero(delta.rank)
  for root in delta.positives:
    total = lattice.add(total, root)
  return total


def rho_check(delta: SimpleSystem) -> RationalVector:
  """Returns rho^v, half the sum of positive coroots.

  It pairs to 1 with every simple root, so it is strongly dominant in the
  dual sense.
  """
  return lattice.scale(Fraction(1, 2), delta.two_rho_check)


@dataclasses.dataclass(frozen=True)
class LevelZeroSubsystem:
  """Roots orthogonal to a dominant x0.

  Attributes:
    datum: The ambient datum.
    phi0: Roots beta with <x0, beta^v> = 0.
    p0: `phi0` intersected with P(Delta).
    delta0: `phi0` intersected with Delta.
  """

  datum: RootDatum
  phi0: tuple[LatticeVector, ...]
  p0: tuple[LatticeVector, ...]
  delta0: tuple[LatticeVector, ...]

  def as_datum(self) -> RootDatum:
    return RootDatum(
        rank=self.datum.rank,
        roots=self.phi0,
        coroots=tuple(self.datum.coroot_of(r) for r in self.phi0),
        label=f'{self.datum.label}_0',
    )


def level_zero_subsystem(
    datum: RootDatum, delta: SimpleSystem, x0: Sequence[int]
) -> LevelZeroSubsystem:
  """Returns (Phi_0, P_0, Delta_0) for a dominant x0.

  Raises:
    PreconditionError: If x0 is not dominant with respect to `delta`.
  """
  require_dominant(x0, delta)
  phi0 = tuple(
      r
      for r, c in zip(datum.roots, datum.coroots)
      if lattice.pairing(x0, c) == 0
  )
  phi0_set = set(phi0)
  return LevelZeroSubsystem(
      datum=datum,
      phi0=phi0,
      p0=tuple(r for r in delta.positives if r in phi0_set),
      delta0=tuple(s for s in delta.simples if s in phi0_set),
  )

