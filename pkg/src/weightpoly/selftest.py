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

"""A built-in battery of fixture checks that needs no external files.

Each check builds its fixtures from Cartan types, runs part of the pipeline
and compares against exact known values or an independent computation.
"""

import copy
import dataclasses
import itertools
from typing import Any

from absl import logging
import immutabledict
import numpy as np
import tqdm.auto
from weightpoly import errors
from weightpoly.algebra import characters
from weightpoly.algebra import root_datum
from weightpoly.algebra import weyl
from weightpoly.geometry import lattice
from weightpoly.geometry import polytope
from weightpoly.reconstruction import blind
from weightpoly.reconstruction import presentation
from weightpoly.reconstruction import reconstruct

_SC = root_datum.Lattice.SIMPLY_CONNECTED
_ADJ = root_datum.Lattice.ADJOINT
_GL = root_datum.Lattice.GL_VARIANT

_FIXTURES = immutabledict.immutabledict({
    'A1 sc': ('A1', _SC),
    'A1 adj': ('A1', _ADJ),
    'A2 sc': ('A2', _SC),
    'A2 adj': ('A2', _ADJ),
    'A1xA1': ('A1xA1', _SC),
    'B2 sc': ('B2', _SC),
    'G2': ('G2', _SC),
    'A3 sc': ('A3', _SC),
    'GL2': ('A1', _GL),
    'GL3': ('A2', _GL),
})

# Random torus maps per semisimple fixture in `round_trip`.
_ROUND_TRIP_DRAWS = 20
# Single-weight perturbations per fixture in `negative_detection`.
_PERTURBATION_TRIALS = 50


class CheckFailed(AssertionError):
  """Raised by a check whose computed value differs from the expected one."""


def _expect(condition: bool, message: str) -> None:
  if not condition:
    raise CheckFailed(message)


def _setup(name: str):
  datum = root_datum.construct(*_FIXTURES[name])
  delta = root_datum.find_simple_system(datum)
  return datum, delta, weyl.generate(datum, delta)


def _dominant_box(datum, delta, bound):
  box = range(-2 * bound, 2 * bound + 1)
  for x in itertools.product(box, repeat=datum.rank):
    if all(
        0 <= lattice.pairing(x, c) <= bound for c in delta.coroots
    ) and all(abs(c) <= bound for c in x[len(delta.simples):]):
      yield x


def _check_fixtures_valid() -> None:
  for name, (label, which) in _FIXTURES.items():
    violations = root_datum.validate(root_datum.construct(label, which))
    _expect(not violations, f'{name}: {violations}')


def _check_a2_adjoint() -> None:
  datum, delta, group = _setup('A2 sc')
  result = polytope.build_polytope(
      datum, delta, group, (1, 1), cross_check=True
  )
  chi = characters.freudenthal_multiplicities(datum, delta, (1, 1))
  _expect(len(result.weights) == 7, f'{len(result.weights)} weights')
  _expect(len(result.vertices) == 6, f'{len(result.vertices)} vertices')
  _expect(chi.multiplicity((0, 0)) == 2, 'zero weight multiplicity')
  _expect(chi.dimension == 8, f'dimension {chi.dimension}')


def _check_g2() -> None:
  datum, delta, group = _setup('G2')
  adjoint = polytope.build_polytope(
      datum, delta, group, (0, 1), cross_check=True
  )
  _expect(len(adjoint.weights) == 13, f'{len(adjoint.weights)} weights')
  _expect(len(adjoint.vertices) == 6, f'{len(adjoint.vertices)} vertices')
  _expect(
      all(len(e) == 2 for e in adjoint.edges_at.values()), 'adjoint edges'
  )
  sub = root_datum.level_zero_subsystem(datum, delta, (0, 1))
  _expect(sub.delta0 == ((2, -1),), f'Delta_0 = {sub.delta0}')
  regular = polytope.build_polytope(
      datum, delta, group, root_datum.two_rho(delta), cross_check=True
  )
  _expect(len(regular.vertices) == 12, f'{len(regular.vertices)} vertices')
  _expect(
      all(len(e) == 2 for e in regular.edges_at.values()), 'regular edges'
  )


def _check_a1_weights() -> None:
  datum, delta, _ = _setup('A1 sc')
  weights = characters.weight_set(datum, delta, (3,))
  _expect(weights == {(3,), (1,), (-1,), (-3,)}, f'{sorted(weights)}')


def _check_edges_and_roots() -> None:
  for name in _FIXTURES:
    datum, delta, group = _setup(name)
    bound = 1 if datum.rank > 2 else 2
    for lam in _dominant_box(datum, delta, bound):
      result = polytope.build_polytope(
          datum, delta, group, lam, cross_check=True
      )
      for x0, edges in result.edges_at.items():
        for edge in edges:
          root = reconstruct.root_from_edge(x0, edge, result.weights)
          _expect(root == edge.root, f'{name} {lam} {x0}: {root}')


def _check_round_trip() -> None:
  rng = np.random.default_rng(0)
  for name, (label, which) in _FIXTURES.items():
    datum_prime = root_datum.construct(label, which)
    if not datum_prime.is_semisimple:
      continue
    for _ in range(_ROUND_TRIP_DRAWS):
      matrix = lattice.random_unimodular(datum_prime.rank, rng)
      rows = matrix.tolist()
      datum = root_datum.image_under(datum_prime, matrix)
      report = reconstruct.check_transport(datum, datum_prime, matrix)
      _expect(report.verdict, f'{name} {rows}: {report.failures}')
      expected = tuple(
          tuple(lattice.apply_matrix(matrix, r)) for r in datum_prime.roots
      )
      _expect(report.recovered_roots == expected, f'{name} {rows}')


def _perturb_one_weight(
    document: dict[str, Any], primed: bool, rng: np.random.Generator
) -> str:
  """Moves one weight of one side of a random pair; returns the pair label."""
  irrep = document['irreps'][rng.integers(len(document['irreps']))]
  terms = irrep['weights_prime' if primed else 'weights']
  weight = terms[rng.integers(len(terms))]['weight']
  weight[rng.integers(len(weight))] += int(rng.choice([-1, 1]))
  return irrep['label']


def _check_negative_detection() -> None:
  rng = np.random.default_rng(1)
  for name in ('A2 sc', 'B2 sc', 'G2'):
    datum_prime = root_datum.construct(*_FIXTURES[name])
    matrix = lattice.random_unimodular(datum_prime.rank, rng)
    datum = root_datum.image_under(datum_prime, matrix)
    delta_prime = root_datum.find_simple_system(datum_prime)
    document = presentation.build_matched_presentation(
        datum,
        datum_prime,
        matrix,
        [root_datum.two_rho(delta_prime), (1, 0), (0, 1)],
    ).to_json_dict()
    for trial in range(_PERTURBATION_TRIALS):
      perturbed = copy.deepcopy(document)
      label = _perturb_one_weight(perturbed, trial % 2 == 0, rng)
      report = reconstruct.reconstruct_from_json_dict(
          perturbed, datum, datum_prime
      )
      _expect(
          not report.verdict, f'{name}: trial {trial} on {label!r} passed.'
      )
      _expect(
          f'{label!r}' in report.failures[0],
          f'{name}: {report.failures[0]!r} does not name {label!r}.',
      )


def _check_blind() -> None:
  for name in ('A2 sc', 'B2 sc', 'G2'):
    datum = root_datum.construct(*_FIXTURES[name])
    result = blind.blind_reconstruct(
        datum.rank, [characters.adjoint_character(datum)]
    )
    _expect(set(result.roots) == set(datum.roots), f'{name} roots')
    _expect(
        all(
            c == datum.coroot_of(r)
            for r, c in zip(result.roots, result.coroots)
        ),
        f'{name} coroots',
    )
    _expect(result.saturated, f'{name} is not saturated')


def _check_character_ring() -> None:
  datum, delta, group = _setup('A1 sc')
  v1 = characters.freudenthal_multiplicities(datum, delta, (1,))
  found = {
      label.highest_weight: n
      for label, n in characters.decompose(
          datum, delta, group, v1 * v1
      ).items()
  }
  _expect(found == {(2,): 1, (0,): 1}, f'V1 x V1 = {found}')
  for name in ('A1 sc', 'A2 sc'):
    datum, delta, group = _setup(name)
    box = list(_dominant_box(datum, delta, 2))
    for lam, mu in itertools.product(box, repeat=2):
      a = characters.freudenthal_multiplicities(datum, delta, lam)
      b = characters.freudenthal_multiplicities(datum, delta, mu)
      parts = characters.decompose(datum, delta, group, a * b)
      _expect(all(n > 0 for n in parts.values()), f'{name} {lam} {mu}')
      total = sum(
          n * characters.weyl_dimension(datum, delta, label.highest_weight)
          for label, n in parts.items()
      )
      _expect(total == a.dimension * b.dimension, f'{name} {lam} {mu}')


_CHECKS = immutabledict.immutabledict({
    'fixtures_valid': _check_fixtures_valid,
    'a2_adjoint_counts': _check_a2_adjoint,
    'g2_polytopes': _check_g2,
    'a1_weights': _check_a1_weights,
    'edges_and_roots': _check_edges_and_roots,
    'round_trip': _check_round_trip,
    'negative_detection': _check_negative_detection,
    'blind_adjoint': _check_blind,
    'character_ring': _check_character_ring,
})


@dataclasses.dataclass(frozen=True)
class CheckResult:
  name: str
  ok: bool
  detail: str = ''

  def to_json_dict(self) -> dict[str, Any]:
    return {'name': self.name, 'ok': self.ok, 'detail': self.detail}


def check_names() -> list[str]:
  return list(_CHECKS)


def run_battery(
    names: list[str] | None = None, *, progress_bar: bool = False
) -> list[CheckResult]:
  """Runs the named checks (all of them by default) and collects outcomes.

  A check fails on a wrong value or on an inconsistency or resource error;
  any other exception is a bug and propagates.

  Raises:
    KeyError: If a name is not a known check.
  """
  names = check_names() if names is None else names
  checks = [(name, _CHECKS[name]) for name in names]
  results = []
  for name, check in tqdm.auto.tqdm(checks, disable=not progress_bar):
    try:
      check()
    except (
        CheckFailed,
        errors.InconsistencyError,
        errors.ResourceError,
    ) as e:
      logging.warning('Check %s failed: %s', name, e)
      results.append(CheckResult(name, False, str(e)))
    else:
      logging.info('Check %s passed.', name)
      results.append(CheckResult(name, True))
  return results


def summarize(results: list[CheckResult]) -> dict[str, Any]:
  return {
      'passed': sum(r.ok for r in results),
      'failed': [r.name for r in results if not r.ok],
      'checks': [r.to_json_dict() for r in results],
  }
