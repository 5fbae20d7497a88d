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

"""Shared type aliases and runtime type-checking helpers."""

from fractions import Fraction
import functools
import importlib.metadata
from typing import TypeAlias, TypeVar

import jaxtyping
from jaxtyping import Int  # pylint: disable=g-importing-member
import numpy as np
import typeguard

_T = TypeVar('_T')

# A point of X(T) or Y(T) in a fixed basis.
LatticeVector: TypeAlias = tuple[int, ...]
# A point of X(T)_Q or Y(T)_Q.
RationalVector: TypeAlias = tuple[Fraction, ...]
# Square integer matrix acting on column vectors of X(T) coordinates.
IntMatrix: TypeAlias = Int[np.ndarray, 'rank rank']


@functools.cache
def _typeguard_major_version() -> int:
  try:
    major, *_ = importlib.metadata.version('typeguard').split('.')
  except importlib.metadata.PackageNotFoundError:
    return -1
  return int(major)


def jaxtyped(fn: _T) -> _T:
  """Applies jaxtyping shape checks, using typeguard only if typeguard < 3."""
  if _typeguard_major_version() < 3:
    return jaxtyping.jaxtyped(fn, typechecker=typeguard.typechecked)
  return fn


def as_int_matrix(rows) -> IntMatrix:
  """Converts nested sequences of integers into a square int64 matrix."""
  matrix = np.asarray(rows, dtype=np.int64)
  if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
    raise ValueError(f'Expected a square matrix, got shape {matrix.shape}.')
  return matrix
