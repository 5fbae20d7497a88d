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

"""Weyl groups as finite groups of integer matrices acting on X.

Elements act on column vectors of X coordinates. The contragredient action on
Y is by the inverse transpose, which keeps the pairing invariant.
"""

import collections
from collections.abc import Collection, Iterable, Iterator, Sequence
import dataclasses
import functools
import numbers

from absl import logging
import numpy as np
from weightpoly import errors
from weightpoly import typing
from weightpoly.algebra import root_datum
from weightpoly.geometry import lattice
from weightpoly.typing import IntMatrix, LatticeVector  # pylint: disable=g-importing-member

# Groups larger than this are treated as the result of corrupt input.
DEFAULT_ORDER_CAP = 10**6


@typing.jaxtyped
@dataclasses.dataclass(frozen=True, eq=False)
class WeylElement:
  """An element of a Weyl group.

  Equality and hashing use the matrix alone; the word is only a record of how
  the element was reached from the generators.

  Attributes:
    matrix: Integer matrix of the action on X (column convention).
    word: Optional indices of the generating reflections, applied right to
      left as in a product of matrices.
  """

  matrix: IntMatrix
  word: tuple[int, ...] | None = None

  def __post_init__(self):
    matrix = np.array(typing.as_int_matrix(self.matrix), order='C')
    matrix.setflags(write=False)
    object.__setattr__(self, 'matrix', matrix)

  @classmethod
  def identity(cls, rank: int) -> 'WeylElement':
    return cls(np.eye(rank, dtype=np.int64), ())

  @property
  def rank(self) -> int:
    return self.matrix.shape[0]

  @functools.cached_property
  def key(self) -> bytes:
    return self.matrix.tobytes()

  def __eq__(self, other: object) -> bool:
    if not isinstance(other, WeylElement):
      return NotImplemented
    return self.key == other.key

  def __hash__(self) -> int:
    return hash(self.key)

  @property
  def is_identity(self) -> bool:
    return bool(np.array_equal(self.matrix, np.eye(self.rank, dtype=np.int64)))

  def apply(
      self, x: Sequence[numbers.Rational]
  ) -> tuple[numbers.Rational, ...]:
    """Returns w(x) for x in X (or X_Q)."""
    return lattice.apply_matrix(self.matrix, x)

  @functools.cached_property
  def _dual_matrix(self) -> IntMatrix:
    return lattice.unimodular_inverse(self.matrix).T

  def apply_dual(
      self, y: Sequence[numbers.Rational]
  ) -> tuple[numbers.Rational, ...]:
    """Returns w(y) for y in Y (or Y_Q), the action preserving the pairing."""
    return lattice.apply_matrix(self._dual_matrix, y)

  def compose(self, other: 'WeylElement') -> 'WeylElement':
    """Returns self * other, i.e. apply `other` first."""
    word = None
    if self.word is not None and other.word is not None:
      word = self.word + other.word
    return WeylElement(self.matrix @ other.matrix, word)

  def inverse(self) -> 'WeylElement':
    word = None if self.word is None else self.word[::-1]
    return WeylElement(lattice.unimodular_inverse(self.matrix), word)

  def permutes(self, vectors: Collection[LatticeVector]) -> bool:
    vectors = set(vectors)
    return {tuple(self.apply(v)) for v in vectors} == vectors


def reflection(
    datum: root_datum.RootDatum, root: Sequence[int]
) -> WeylElement:
  """Returns s_alpha: x -> x - <x, alpha^v> alpha.

  Raises:
    ValueError: If `root` is not a root of `datum`.
  """
  coroot = datum.coroot_of(root)
  matrix = np.eye(datum.rank, dtype=np.int64) - np.outer(
      np.asarray(root, dtype=np.int64), np.asarray(coroot, dtype=np.int64)
  )
  return WeylElement(matrix)


@dataclasses.dataclass(frozen=True)
class WeylGroup:
  """A finite group generated by reflections.

  Attributes:
    datum: The root datum the group acts on.
    simples: The roots whose reflections generate the group.
    generators: The reflections in `simples`, with one-letter words.
    elements: All elements, identity first, each carrying a shortest word.
  """

  datum: root_datum.RootDatum
  simples: tuple[LatticeVector, ...]
  generators: tuple[WeylElement, ...]
  elements: tuple[WeylElement, ...]

  @property
  def order(self) -> int:
    return len(self.elements)

  def __len__(self) -> int:
    return len(self.elements)

  def __iter__(self) -> Iterator[WeylElement]:
    return iter(self.elements)

  @functools.cached_property
  def _by_key(self) -> dict[bytes, WeylElement]:
    return {w.key: w for w in self.elements}

  def __contains__(self, element: object) -> bool:
    return isinstance(element, WeylElement) and element.key in self._by_key

  def lookup(self, element: WeylElement) -> WeylElement:
    """Returns the stored copy of `element` (with its shortest word)."""
    try:
      return self._by_key[element.key]
    except KeyError:
      raise ValueError('Element does not belong to the group.') from None

  def reflections(self) -> frozenset[WeylElement]:
    """All conjugates of the generators."""
    return frozenset(
        self.lookup(w.compose(s).compose(w.inverse()))
        for w in self.elements
        for s in self.generators
    )


def _closure(
    datum: root_datum.RootDatum,
    simples: Sequence[LatticeVector],
    order_cap: int,
) -> WeylGroup:
  generators = tuple(
      WeylElement(reflection(datum, s).matrix, (i,))
      for i, s in enumerate(simples)
  )
  identity = WeylElement.identity(datum.rank)
  found = {identity.key: identity}
  queue = collections.deque([identity])
  while queue:
    w = queue.popleft()
    for g in generators:
      product = w.compose(g)
      if product.key not in found:
        found[product.key] = product
        queue.append(product)
        if len(found) > order_cap:
          raise errors.ResourceError(
              f'Weyl group closure exceeded {order_cap=} for'
              f' {datum.label!r}.'
          )
  return WeylGroup(
      datum=datum,
      simples=tuple(tuple(s) for s in simples),
      generators=generators,
      elements=tuple(found.values()),
  )


def generate(
    datum: root_datum.RootDatum,
    delta: root_datum.SimpleSystem,
    *,
    order_cap: int = DEFAULT_ORDER_CAP,
) -> WeylGroup:
  """Closes the simple reflections of `delta` under multiplication.

  Args:
    datum: The root datum.
    delta: A simple system of `datum`.
    order_cap: Maximum group order before giving up.

  Returns:
    The Weyl group, each element carrying a shortest word in the simple
    reflections.

  Raises:
    ResourceError: If the closure exceeds `order_cap` elements.
  """
  group = _closure(datum, delta.simples, order_cap)
  logging.debug('Generated W(%s) of order %d.', datum.label, group.order)
  return group


def orbit(group: WeylGroup, x: Sequence[int]) -> frozenset[LatticeVector]:
  if len(x) != group.datum.rank:
    raise errors.DimensionError(f'{len(x)=} != {group.datum.rank=}.')
  return frozenset(tuple(w.apply(x)) for w in group)


def orbit_of(
    datum: root_datum.RootDatum,
    roots: Iterable[Sequence[int]],
    x: Sequence[numbers.Rational],
) -> frozenset[tuple[numbers.Rational, ...]]:
  """Orbit of x under the reflections in `roots`, without building a group."""
  pairs = [(tuple(r), datum.coroot_of(r)) for r in roots]
  start = tuple(x)
  seen = {start}
  queue = collections.deque([start])
  while queue:
    v = queue.popleft()
    for r, c in pairs:
      n = lattice.pairing(v, c)
      if n:
        image = tuple(a - n * b for a, b in zip(v, r))
        if image not in seen:
          seen.add(image)
          queue.append(image)
  return frozenset(seen)


def to_dominant(
    datum: root_datum.RootDatum,
    delta: root_datum.SimpleSystem,
    x: Sequence[numbers.Rational],
) -> tuple[tuple[numbers.Rational, ...], WeylElement]:
  """Returns (w(x), w) with w(x) dominant, by reflecting in simple roots."""
  if len(x) != datum.rank:
    raise errors.DimensionError(f'{len(x)=} != {datum.rank=}.')
  w = WeylElement.identity(datum.rank)
  current = tuple(x)
  while True:
    for i, (s, c) in enumerate(zip(delta.simples, delta.coroots)):
      n = lattice.pairing(current, c)
      if n < 0:
        current = tuple(a - n * b for a, b in zip(current, s))
        w = WeylElement(reflection(datum, s).matrix, (i,)).compose(w)
        break
    else:
      return current, w


def dominant_representative(
    group: WeylGroup, delta: root_datum.SimpleSystem, x: Sequence[int]
) -> tuple[LatticeVector, WeylElement]:
  """Returns the unique dominant point x+ of W.x and some w with w(x) = x+.

  The returned element is the group's stored copy, so its word is shortest.
  """
  dominant, w = to_dominant(group.datum, delta, x)
  return tuple(dominant), group.lookup(w)


def w0_subgroup(
    datum: root_datum.RootDatum,
    delta: root_datum.SimpleSystem,
    x0: Sequence[int],
    *,
    order_cap: int = DEFAULT_ORDER_CAP,
) -> WeylGroup:
  """Returns W_0, generated by the reflections in Delta_0; it fixes x0."""
  sub = root_datum.level_zero_subsystem(datum, delta, x0)
  return _closure(datum, sub.delta0, order_cap)


def delta_of_x0(
    datum: root_datum.RootDatum,
    delta: root_datum.SimpleSystem,
    x0: Sequence[int],
) -> frozenset[LatticeVector]:
  """Returns Delta(x0) = W_0 (Delta minus Delta_0) for a dominant x0."""
  sub = root_datum.level_zero_subsystem(datum, delta, x0)
  delta0 = set(sub.delta0)
  result = set()
  for s in delta.simples:
    if s not in delta0:
      result |= orbit_of(datum, sub.delta0, s)
  return frozenset(result)


def nonnegative_root_combination(
    difference: Sequence[int],
    roots: Collection[LatticeVector],
    delta: root_datum.SimpleSystem,
) -> dict[LatticeVector, int] | None:
  """Finds c >= 0 integral with difference = sum c_alpha alpha.

  The roots must be positive for `delta`, so each has positive height and the
  height of `difference` bounds every coefficient.

  Returns:
    The coefficients (zero entries omitted), or None if there are none.
  """
  roots = sorted(roots, key=lambda r: (-delta.height(r), r))
  heights = [delta.height(r) for r in roots]
  if any(h <= 0 for h in heights):
    raise ValueError(f'Roots must be positive for {delta.simples}.')
  target = tuple(difference)
  if delta.height(target) < 0:
    return None

  @functools.cache
  def search(k: int, remainder: LatticeVector) -> tuple[int, ...] | None:
    if not any(remainder):
      return (0,) * (len(roots) - k)
    if k == len(roots):
      return None
    budget = delta.height(remainder) // heights[k]
    for c in range(budget, -1, -1):
      rest = tuple(a - c * b for a, b in zip(remainder, roots[k]))
      tail = search(k + 1, rest)
      if tail is not None:
        return (c,) + tail
    return None

  solution = search(0, target)
  if solution is None:
    return None
  return {r: c for r, c in zip(roots, solution) if c}


def in_delta_x0_cone(
    datum: root_datum.RootDatum,
    delta: root_datum.SimpleSystem,
    x0: Sequence[int],
    point: Sequence[numbers.Rational],
) -> bool:
  """Whether <point, alpha^v> >= 0 for every alpha in Delta(x0)."""
  return all(
      lattice.pairing(point, datum.coroot_of(a)) >= 0
      for a in delta_of_x0(datum, delta, x0)
  )


def in_w0_chambers(
    w0_group: WeylGroup,
    delta: root_datum.SimpleSystem,
    point: Sequence[numbers.Rational],
) -> bool:
  """Whether point lies in w(C(Delta)) for some w in W_0."""
  return any(
      all(lattice.pairing(w.apply(point), c) >= 0 for c in delta.coroots)
      for w in w0_group
  )


def reflection_in_group(
    group: WeylGroup, root: Sequence[int]
) -> WeylElement:
  """Returns the unique reflection of W negating `root`.

  Found from the matrices alone: the element w with w(root) = -root whose
  fixed space is a hyperplane.

  Raises:
    InconsistencyError: If there is no such element or more than one.
  """
  negative = lattice.negate(root)
  eye = np.eye(group.datum.rank, dtype=np.int64)
  candidates = [
      w
      for w in group
      if w.apply(root) == negative
      and lattice.integer_matrix_rank((eye - w.matrix).tolist()) == 1
  ]
  if len(candidates) != 1:
    raise errors.InconsistencyError(
        f'Found {len(candidates)} reflections negating {tuple(root)}.'
    )
  return candidates[0]
