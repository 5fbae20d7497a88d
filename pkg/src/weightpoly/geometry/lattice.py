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

"""Exact lattice vectors, rational covectors and linear feasibility.

Lattice vectors are tuples of Python integers, rational vectors are tuples of
`fractions.Fraction`. Nothing in this module uses floating point: all
decisions (feasibility, hull membership, indivisibility) are exact.

Two feasibility engines are provided. Fourier-Motzkin elimination is the
reference engine and is what `rational_feasible` uses by default; an exact
two-phase simplex (Bland's rule) handles the larger standard-form problems
that arise from convex-combination tests.
"""

from collections.abc import Collection, Iterable, Sequence
import dataclasses
import enum
from fractions import Fraction
import math
import numbers

from absl import logging
import numpy as np
import sympy
from weightpoly import errors
from weightpoly.typing import IntMatrix, LatticeVector, RationalVector  # pylint: disable=g-importing-member

# Maximum number of inequalities kept after any Fourier-Motzkin step.
DEFAULT_CONSTRAINT_CAP = 20_000


def lattice_vector(coords: Iterable[int]) -> LatticeVector:
  """Returns `coords` as a lattice vector, rejecting non-integral entries."""
  result = []
  for c in coords:
    if isinstance(c, numbers.Integral):
      result.append(int(c))
    elif isinstance(c, numbers.Rational) and c.denominator == 1:
      result.append(int(c.numerator))
    else:
      raise ValueError(f'Lattice coordinates must be integers, got {c!r}.')
  return tuple(result)


def rational_vector(coords: Iterable[numbers.Rational]) -> RationalVector:
  """Returns `coords` as a tuple of fractions in lowest terms."""
  return tuple(Fraction(c) for c in coords)


def _check_lengths(a: Sequence[object], b: Sequence[object]) -> None:
  if len(a) != len(b):
    raise errors.DimensionError(
        f'Vectors of different lengths: {len(a)} != {len(b)}.'
    )


def add(a: Sequence[numbers.Rational], b: Sequence[numbers.Rational]):
  _check_lengths(a, b)
  return tuple(x + y for x, y in zip(a, b))


def subtract(a: Sequence[numbers.Rational], b: Sequence[numbers.Rational]):
  _check_lengths(a, b)
  return tuple(x - y for x, y in zip(a, b))


def scale(factor: numbers.Rational, a: Sequence[numbers.Rational]):
  return tuple(factor * x for x in a)


def negate(a: Sequence[numbers.Rational]):
  return tuple(-x for x in a)


def zero(rank: int) -> LatticeVector:
  return (0,) * rank


def pairing(
    x: Sequence[numbers.Rational], y: Sequence[numbers.Rational]
) -> numbers.Rational:
  """Returns the canonical pairing <x, y> between X and Y coordinates.

  The bases of X and Y are dual to each other, so the pairing is the plain
  coordinate-wise dot product. The result is an `int` when both arguments are
  integral and a `Fraction` otherwise.

  Args:
    x: Coordinates of an element of X(T) (or X(T)_Q).
    y: Coordinates of an element of Y(T) (or Y(T)_Q).

  Returns:
    The exact value of the pairing.

  Raises:
    DimensionError: If the vectors have different lengths.
  """
  _check_lengths(x, y)
  return sum((a * b for a, b in zip(x, y)), 0)


class Relation(enum.Enum):
  """Relation between `covector . x` and the bound of a constraint."""

  LE = '<='
  LT = '<'
  EQ = '='

  def holds(self, value: numbers.Rational, bound: numbers.Rational) -> bool:
    match self:
      case Relation.LE:
        return value <= bound
      case Relation.LT:
        return value < bound
      case Relation.EQ:
        return value == bound


@dataclasses.dataclass(frozen=True)
class Constraint:
  """A single linear constraint `covector . x  (<=|<|=)  bound`."""

  covector: RationalVector
  bound: Fraction
  relation: Relation = Relation.LE

  def __post_init__(self):
    object.__setattr__(self, 'covector', rational_vector(self.covector))
    object.__setattr__(self, 'bound', Fraction(self.bound))

  @classmethod
  def le(cls, covector, bound) -> 'Constraint':
    return cls(covector, bound, Relation.LE)

  @classmethod
  def ge(cls, covector, bound) -> 'Constraint':
    return cls(negate(rational_vector(covector)), -Fraction(bound), Relation.LE)

  @classmethod
  def lt(cls, covector, bound) -> 'Constraint':
    return cls(covector, bound, Relation.LT)

  @classmethod
  def gt(cls, covector, bound) -> 'Constraint':
    return cls(negate(rational_vector(covector)), -Fraction(bound), Relation.LT)

  @classmethod
  def eq(cls, covector, bound) -> 'Constraint':
    return cls(covector, bound, Relation.EQ)

  def is_satisfied(self, point: Sequence[numbers.Rational]) -> bool:
    return self.relation.holds(pairing(self.covector, point), self.bound)


@dataclasses.dataclass(frozen=True)
class HalfSpaceSystem:
  """A finite conjunction of linear constraints on Q^dimension.

  Attributes:
    dimension: Number of variables.
    constraints: The constraints; every covector has length `dimension`.
  """

  dimension: int
  constraints: tuple[Constraint, ...]

  def __post_init__(self):
    object.__setattr__(self, 'constraints', tuple(self.constraints))
    for constraint in self.constraints:
      if len(constraint.covector) != self.dimension:
        raise errors.DimensionError(
            f'Constraint covector of length {len(constraint.covector)} in a'
            f' system of dimension {self.dimension}.'
        )

  def is_satisfied(self, point: Sequence[numbers.Rational]) -> bool:
    return all(c.is_satisfied(point) for c in self.constraints)


class FeasibilityEngine(enum.Enum):
  """Exact engines available to `rational_feasible`."""

  FOURIER_MOTZKIN = enum.auto()
  SIMPLEX = enum.auto()


def rational_feasible(
    system: HalfSpaceSystem,
    *,
    engine: FeasibilityEngine = FeasibilityEngine.FOURIER_MOTZKIN,
    constraint_cap: int = DEFAULT_CONSTRAINT_CAP,
) -> RationalVector | None:
  """Finds an exact rational point satisfying every constraint of `system`.

  Args:
    system: The constraints to satisfy. Strict inequalities are honoured
      exactly.
    engine: Which elimination engine to use.
    constraint_cap: Maximum number of intermediate inequalities allowed during
      Fourier-Motzkin elimination.

  Returns:
    A satisfying point, or None if the system is infeasible.

  Raises:
    ResourceError: If Fourier-Motzkin elimination exceeds `constraint_cap`.
    InconsistencyError: If the engine produced a point that fails the final
      re-check (this indicates a bug, never a property of the input).
  """
  match engine:
    case FeasibilityEngine.FOURIER_MOTZKIN:
      point = _fourier_motzkin(system, constraint_cap)
    case FeasibilityEngine.SIMPLEX:
      point = _simplex_feasible(system)
    case _:
      raise ValueError(f'Unknown {engine=}')
  if point is not None and not system.is_satisfied(point):
    raise errors.InconsistencyError(
        f'{engine.name} returned {point} which violates the system.'
    )
  return point


# Fourier-Motzkin elimination.


@dataclasses.dataclass(frozen=True)
class _Row:
  coeffs: tuple[Fraction, ...]
  bound: Fraction
  relation: Relation


def _combine(p: _Row, n: _Row, k: int) -> _Row:
  """Positive combination of `p` (coeff > 0 at k) and `n` (< 0) killing k."""
  a, b = -n.coeffs[k], p.coeffs[k]
  coeffs = tuple(a * x + b * y for x, y in zip(p.coeffs, n.coeffs))
  strict = Relation.LT in (p.relation, n.relation)
  return _Row(coeffs, a * p.bound + b * n.bound,
              Relation.LT if strict else Relation.LE)


def _normalise(rows: Iterable[_Row]) -> list[_Row] | None:
  """Drops duplicate and trivial inequalities; None if one is violated."""
  best: dict[tuple[Fraction, ...], _Row] = {}
  equalities = []
  for row in rows:
    pivot = next((c for c in row.coeffs if c), None)
    if pivot is None:
      if not row.relation.holds(0, row.bound):
        return None
      continue
    if row.relation is Relation.EQ:
      equalities.append(row)
      continue
    scale_by = 1 / abs(pivot)
    key = tuple(c * scale_by for c in row.coeffs)
    bound = row.bound * scale_by
    current = best.get(key)
    if (
        current is None
        or bound < current.bound
        or (bound == current.bound and row.relation is Relation.LT)
    ):
      best[key] = _Row(key, bound, row.relation)
  return equalities + list(best.values())


def _fourier_motzkin(
    system: HalfSpaceSystem, constraint_cap: int
) -> RationalVector | None:
  rows = _normalise(
      _Row(c.covector, c.bound, c.relation) for c in system.constraints
  )
  if rows is None:
    return None
  remaining = set(range(system.dimension))
  steps: list[tuple[int, list[_Row]]] = []

  while remaining:
    equality = next(
        (
            r
            for r in rows
            if r.relation is Relation.EQ
            and any(r.coeffs[k] for k in remaining)
        ),
        None,
    )
    if equality is not None:
      k = min(k for k in remaining if equality.coeffs[k])
      substituted = []
      for r in rows:
        if r is equality:
          continue
        if r.coeffs[k]:
          f = r.coeffs[k] / equality.coeffs[k]
          r = _Row(
              tuple(x - f * y for x, y in zip(r.coeffs, equality.coeffs)),
              r.bound - f * equality.bound,
              r.relation,
          )
        substituted.append(r)
      steps.append((k, [equality]))
    else:
      k = min(
          remaining,
          key=lambda j: (
              sum(r.coeffs[j] > 0 for r in rows)
              * sum(r.coeffs[j] < 0 for r in rows),
              j,
          ),
      )
      positive = [r for r in rows if r.coeffs[k] > 0]
      negative = [r for r in rows if r.coeffs[k] < 0]
      substituted = [r for r in rows if not r.coeffs[k]]
      substituted.extend(_combine(p, n, k) for p in positive for n in negative)
      steps.append((k, positive + negative))
    remaining.discard(k)
    rows = _normalise(substituted)
    if rows is None:
      return None
    logging.debug(
        'Eliminated variable %d, %d constraints remain.', k, len(rows)
    )
    if len(rows) > constraint_cap:
      raise errors.ResourceError(
          f'Fourier-Motzkin produced {len(rows)} constraints, exceeding'
          f' {constraint_cap=}.'
      )

  point = [Fraction(0)] * system.dimension
  for k, used in reversed(steps):
    point[k] = _back_substitute(k, used, point)
  return tuple(point)


def _back_substitute(k: int, used: list[_Row], point: list[Fraction]):
  """Picks a value for variable k given values of later-eliminated ones."""
  lower, upper = None, None
  for r in used:
    rest = sum(
        (c * v for j, (c, v) in enumerate(zip(r.coeffs, point)) if j != k),
        Fraction(0),
    )
    value = (r.bound - rest) / r.coeffs[k]
    if r.relation is Relation.EQ:
      return value
    strict = r.relation is Relation.LT
    if r.coeffs[k] > 0:
      if upper is None or value < upper[0] or (value == upper[0] and strict):
        upper = (value, strict)
    else:
      if lower is None or value > lower[0] or (value == lower[0] and strict):
        lower = (value, strict)
  if lower is not None and upper is not None:
    return (lower[0] + upper[0]) / 2
  if lower is not None:
    return lower[0] + 1 if lower[1] else lower[0]
  if upper is not None:
    return upper[0] - 1 if upper[1] else upper[0]
  return Fraction(0)


# Exact simplex.


class _Tableau:
  """Dense simplex tableau for `rows . z = rhs, z >= 0` over the rationals.

  Every row starts with its own artificial column, so the initial basis is the
  identity on the artificial columns.
  """

  def __init__(
      self, rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]
  ):
    num_rows = len(rows)
    self.num_structural = len(rows[0]) if rows else 0
    self.rows = []
    self.rhs = []
    for i, (row, b) in enumerate(zip(rows, rhs, strict=True)):
      row = [Fraction(a) for a in row]
      b = Fraction(b)
      if b < 0:
        row, b = [-a for a in row], -b
      artificial = [Fraction(int(i == j)) for j in range(num_rows)]
      self.rows.append(row + artificial)
      self.rhs.append(b)
    self.basis = [self.num_structural + i for i in range(num_rows)]

  @property
  def width(self) -> int:
    return self.num_structural + len(self.rows)

  def _pivot(self, r: int, c: int) -> None:
    pivot = self.rows[r][c]
    pivot_row = [a / pivot for a in self.rows[r]]
    pivot_rhs = self.rhs[r] / pivot
    self.rows[r], self.rhs[r] = pivot_row, pivot_rhs
    for i, row in enumerate(self.rows):
      if i != r and (f := row[c]):
        self.rows[i] = [a - f * p for a, p in zip(row, pivot_row)]
        self.rhs[i] -= f * pivot_rhs
    self.basis[r] = c

  def maximize(self, cost: Sequence[Fraction], columns: Sequence[int]) -> bool:
    """Runs Bland's rule; returns False iff the objective is unbounded."""
    while True:
      basic = set(self.basis)
      entering = None
      for j in sorted(columns):
        if j in basic:
          continue
        reduced = cost[j] - sum(
            cost[b] * row[j] for b, row in zip(self.basis, self.rows)
        )
        if reduced > 0:
          entering = j
          break
      if entering is None:
        return True
      leaving = None
      for i, row in enumerate(self.rows):
        if row[entering] > 0:
          key = (self.rhs[i] / row[entering], self.basis[i])
          if leaving is None or key < leaving[0]:
            leaving = (key, i)
      if leaving is None:
        return False
      self._pivot(leaving[1], entering)

  def objective(self, cost: Sequence[Fraction]) -> Fraction:
    return sum((cost[b] * v for b, v in zip(self.basis, self.rhs)), Fraction(0))

  def solution(self) -> list[Fraction]:
    z = [Fraction(0)] * self.num_structural
    for b, v in zip(self.basis, self.rhs):
      if b < self.num_structural:
        z[b] = v
    return z

  def find_feasible(self) -> bool:
    """Phase one: drives all artificial columns to zero if possible."""
    cost = [Fraction(0)] * self.num_structural + [Fraction(-1)] * len(self.rows)
    self.maximize(cost, range(self.width))
    if self.objective(cost) < 0:
      return False
    for r, b in enumerate(self.basis):
      if b >= self.num_structural:
        c = next(
            (j for j in range(self.num_structural) if self.rows[r][j]), None
        )
        # A row with no structural entry is redundant and stays at zero.
        if c is not None:
          self._pivot(r, c)
    return True


def nonnegative_solution(
    columns: Sequence[Sequence[numbers.Rational]],
    target: Sequence[numbers.Rational],
) -> RationalVector | None:
  """Solves `sum_i z_i * columns[i] = target` with every `z_i >= 0`.

  Args:
    columns: The generating vectors, all of the length of `target`.
    target: The vector to express.

  Returns:
    A nonnegative exact solution, or None if there is none.
  """
  for column in columns:
    _check_lengths(column, target)
  if not columns:
    return () if not any(target) else None
  rows = [[Fraction(col[i]) for col in columns] for i in range(len(target))]
  tableau = _Tableau(rows, [Fraction(t) for t in target])
  if not tableau.find_feasible():
    return None
  return tuple(tableau.solution())


def _simplex_feasible(system: HalfSpaceSystem) -> RationalVector | None:
  """Feasibility via standard form: x = u - v, slacks, one shared t for <."""
  n = system.dimension
  inequalities = [
      c for c in system.constraints if c.relation is not Relation.EQ
  ]
  has_strict = any(c.relation is Relation.LT for c in inequalities)
  num_slacks = len(inequalities) + int(has_strict)
  t_column = 2 * n + num_slacks
  width = t_column + int(has_strict)

  rows, rhs = [], []
  slack = 0
  for c in system.constraints:
    row = [Fraction(0)] * width
    row[:n] = c.covector
    row[n : 2 * n] = negate(c.covector)
    if c.relation is not Relation.EQ:
      row[2 * n + slack] = Fraction(1)
      slack += 1
      if c.relation is Relation.LT:
        row[t_column] = Fraction(1)
    rows.append(row)
    rhs.append(c.bound)
  if has_strict:
    row = [Fraction(0)] * width
    row[2 * n + slack] = Fraction(1)
    row[t_column] = Fraction(1)
    rows.append(row)
    rhs.append(Fraction(1))
  if not rows:
    return (Fraction(0),) * n

  tableau = _Tableau(rows, rhs)
  if not tableau.find_feasible():
    return None
  if has_strict:
    cost = [Fraction(0)] * tableau.width
    cost[t_column] = Fraction(1)
    tableau.maximize(cost, range(width))
    if tableau.objective(cost) <= 0:
      return None
  z = tableau.solution()
  return tuple(z[i] - z[n + i] for i in range(n))


def hull_membership(
    p: Sequence[numbers.Rational], points: Collection[LatticeVector]
) -> bool:
  """Returns whether `p` is a convex combination of `points`.

  Decided exactly as the standard-form feasibility problem
  `lambda >= 0, sum lambda = 1, sum lambda_i points_i = p`.

  Args:
    p: The query point.
    points: A nonempty finite set of lattice points.

  Raises:
    ValueError: If `points` is empty.
    DimensionError: If dimensions disagree.
  """
  if not points:
    raise ValueError('hull_membership needs a nonempty point set.')
  columns = [tuple(point) + (1,) for point in points]
  target = tuple(Fraction(c) for c in p) + (Fraction(1),)
  return nonnegative_solution(columns, target) is not None


def indivisible_elements(
    elements: Collection[LatticeVector],
) -> frozenset[LatticeVector]:
  """Returns the x in K with x/n not in K for every integer n > 1.

  Only divisors of the content (gcd of the coordinates) of x can give a lattice
  point x/n, and K consists of lattice points, so only those are tested. The
  zero vector is never indivisible when it lies in K.
  """
  members = set(elements)
  result = set()
  for x in members:
    g = math.gcd(*x)
    if g == 0:
      continue
    if not any(
        tuple(c // n for c in x) in members
        for n in range(2, g + 1)
        if g % n == 0
    ):
      result.add(x)
  return frozenset(result)


def lattice_points_on_segment(
    a: LatticeVector, b: LatticeVector
) -> list[LatticeVector]:
  """Returns the lattice points of the closed segment [a, b], from a to b."""
  difference = subtract(b, a)
  g = math.gcd(*difference)
  if g == 0:
    return [tuple(a)]
  step = tuple(c // g for c in difference)
  return [tuple(x + t * s for x, s in zip(a, step)) for t in range(g + 1)]


def content(x: LatticeVector) -> int:
  """Returns the gcd of the coordinates of x (0 for the zero vector)."""
  return math.gcd(*x)


def to_fraction(value: sympy.Expr) -> Fraction:
  """Converts an exact sympy rational into a `Fraction`."""
  value = sympy.nsimplify(value)
  if not value.is_Rational:
    raise errors.InconsistencyError(f'Expected a rational number, got {value}.')
  return Fraction(int(value.p), int(value.q))


@dataclasses.dataclass(frozen=True)
class LinearSolution:
  """Outcome of an exact linear solve.

  Attributes:
    consistent: Whether the system has any solution.
    solution: The unique solution, or None if inconsistent or underdetermined.
    free_dimensions: Dimension of the solution space (0 when unique).
  """

  consistent: bool
  solution: RationalVector | None
  free_dimensions: int = 0


def solve_linear_system(
    rows: Sequence[Sequence[numbers.Rational]],
    rhs: Sequence[numbers.Rational],
    dimension: int,
) -> LinearSolution:
  """Exactly solves `rows . y = rhs` for y in Q^dimension."""
  if len(rows) != len(rhs):
    raise errors.DimensionError(f'{len(rows)} rows but {len(rhs)} values.')
  for row in rows:
    if len(row) != dimension:
      raise errors.DimensionError(
          f'Row of length {len(row)} for {dimension=}.'
      )
  if not rows:
    return LinearSolution(True, None if dimension else (), dimension)
  a = sympy.Matrix([[sympy.Rational(c) for c in row] for row in rows])
  b = sympy.Matrix([sympy.Rational(c) for c in rhs])
  try:
    solution, params = a.gauss_jordan_solve(b)
  except ValueError:
    return LinearSolution(False, None, 0)
  if params.shape[0]:
    return LinearSolution(True, None, params.shape[0])
  return LinearSolution(True, tuple(to_fraction(v) for v in solution), 0)


def integer_matrix_rank(rows: Sequence[Sequence[numbers.Rational]]) -> int:
  if not rows or not rows[0]:
    return 0
  return sympy.Matrix([[sympy.Rational(c) for c in r] for r in rows]).rank()


def apply_matrix(
    matrix: IntMatrix, x: Sequence[numbers.Rational]
) -> tuple[numbers.Rational, ...]:
  """Returns `matrix @ x` exactly (column convention)."""
  if matrix.shape[1] != len(x):
    raise errors.DimensionError(
        f'Matrix of shape {matrix.shape} applied to a vector of length'
        f' {len(x)}.'
    )
  return tuple(
      sum((int(a) * b for a, b in zip(row, x)), 0)
      for row in matrix.tolist()
  )


def determinant(matrix: IntMatrix) -> int:
  return int(sympy.Matrix(matrix.tolist()).det())


def unimodular_inverse(matrix: IntMatrix) -> IntMatrix:
  """Returns the integral inverse of a matrix with determinant +-1.

  Raises:
    ValueError: If `matrix` is not invertible over the integers.
  """
  m = sympy.Matrix(matrix.tolist())
  det = m.det()
  if det not in (1, -1):
    raise ValueError(f'Matrix is not unimodular: {det=}.')
  return np.array(m.inv().tolist(), dtype=np.int64)


def random_unimodular(
    rank: int, rng: np.random.Generator, bound: int = 2
) -> IntMatrix:
  """Draws a matrix with entries in [-bound, bound] and determinant +-1.

  Entries are sampled uniformly and the draw is repeated until the
  determinant is a unit, so the result is uniform over such matrices.

  Raises:
    ValueError: If `rank` < 1 or `bound` < 1.
  """
  if rank < 1 or bound < 1:
    raise ValueError(f'Need rank >= 1 and bound >= 1, got {rank=}, {bound=}.')
  while True:
    matrix = rng.integers(-bound, bound + 1, size=(rank, rank), dtype=np.int64)
    if determinant(matrix) in (1, -1):
      return matrix
