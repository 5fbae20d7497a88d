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

"""Transporting roots, coroots and Weyl groups across a matched presentation.

Given root data for T' and T and a `MatchedPresentation` (the matrix M of
X(T') -> X(T) plus corresponding characters), every root alpha' is recovered
on the T side from characters alone: alpha' is simple for some Delta', the
irreducible with highest weight x0' = 2 rho' has the edge [x0', s(x0')], and
the transported edge contains exactly one indivisible difference x0 - u with
u a weight. `assemble_isomorphism` runs the whole battery and certifies
(M, M^T) as an isomorphism of root data, or reports what failed.

Example usage:

```python
mp = presentation.build_matched_presentation(datum, datum_prime, matrix)
report = reconstruct.assemble_isomorphism(datum, datum_prime, mp)
report.verdict  # True
```
"""

from collections.abc import Callable, Mapping, Sequence
import concurrent.futures
import dataclasses
from typing import Any, TypeVar

from absl import logging
import numpy as np
import tqdm.auto
from weightpoly import errors
from weightpoly import typing
from weightpoly.algebra import characters
from weightpoly.algebra import root_datum
from weightpoly.algebra import weyl
from weightpoly.geometry import lattice
from weightpoly.geometry import polytope
from weightpoly.reconstruction import presentation
from weightpoly.typing import IntMatrix, LatticeVector  # pylint: disable=g-importing-member

DEFAULT_MAX_WORKERS = 4

_T = TypeVar('_T')


def root_from_edge(
    x0: Sequence[int],
    edge: polytope.EdgeDescriptor,
    weights: frozenset[LatticeVector] | set[LatticeVector],
) -> LatticeVector:
  """Returns the unique indivisible element of x0 - (weights on the edge).

  Raises:
    ValueError: If x0 is not an endpoint of the edge.
    InconsistencyError: If there is no indivisible element or more than one;
      genuine characteristic zero weight data never does this.
  """
  x0 = lattice.lattice_vector(x0)
  if x0 not in edge.endpoints:
    raise ValueError(f'{x0} is not an endpoint of {edge.endpoints}.')
  differences = {
      lattice.subtract(x0, u) for u in edge.lattice_points() if u in weights
  }
  found = lattice.indivisible_elements(differences)
  if len(found) != 1:
    raise errors.InconsistencyError(
        f'Edge {edge.endpoints} at {x0} has {len(found)} indivisible'
        f' differences {sorted(found)}, expected exactly one.'
    )
  (root,) = found
  return root


def recover_root(
    datum_prime: root_datum.RootDatum,
    mp: presentation.MatchedPresentation,
    alpha_prime: Sequence[int],
) -> LatticeVector:
  """Recovers M alpha' on the T side from the matched characters.

  Args:
    datum_prime: The root datum of T'.
    mp: The matched presentation.
    alpha_prime: A root of `datum_prime`.

  Returns:
    The root read off the transported edge; it always equals M alpha'.

  Raises:
    MissingDataError: If the irreducible with highest weight 2 rho' is absent.
    InconsistencyError: If the transported edge does not yield M alpha'.
  """
  alpha_prime = lattice.lattice_vector(alpha_prime)
  delta_prime = root_datum.simple_system_containing(datum_prime, alpha_prime)
  x0_prime = presentation.steinberg_weight(delta_prime)
  x1_prime = root_datum.reflect(
      x0_prime, alpha_prime, datum_prime.coroot_of(alpha_prime)
  )
  irrep = mp.find(x0_prime, delta_prime)
  x0 = mp.apply(x0_prime)
  edge = polytope.EdgeDescriptor(x0, mp.apply(x1_prime))
  root = root_from_edge(x0, edge, irrep.weights.support)
  if root != (expected := mp.apply(alpha_prime)):
    raise errors.InconsistencyError(
        f'Edge of {irrep.label!r} gave {root} for {alpha_prime}, expected'
        f' {expected}.'
    )
  logging.debug('Recovered %s -> %s from %r.', alpha_prime, root, irrep.label)
  return root


def _map_concurrently(
    fn: Callable[..., _T],
    items: Sequence[Any],
    *,
    max_workers: int,
    progress_bar: bool,
) -> list[_T]:
  with concurrent.futures.ThreadPoolExecutor(
      max_workers=max_workers
  ) as executor:
    futures = [executor.submit(fn, item) for item in items]
    futures_as_completed = tqdm.auto.tqdm(
        concurrent.futures.as_completed(futures),
        total=len(futures),
        disable=not progress_bar,
    )
    for future in futures_as_completed:
      if (exception := future.exception()) is not None:
        executor.shutdown(wait=False, cancel_futures=True)
        raise exception

    return [future.result() for future in futures]


def _recover_or_explain(
    datum_prime: root_datum.RootDatum,
    mp: presentation.MatchedPresentation,
    alpha_prime: LatticeVector,
) -> tuple[LatticeVector | None, str | None]:
  try:
    return recover_root(datum_prime, mp, alpha_prime), None
  except (errors.InconsistencyError, errors.MissingDataError) as e:
    return None, f'Root {alpha_prime}: {e}'


@dataclasses.dataclass(frozen=True)
class RootTransport:
  """Outcome of transporting every root in both directions.

  Attributes:
    images: M alpha' for each alpha' in the order of the primed roots, or None
      where recovery failed.
    forward_ok: Every recovered image is a root of the T side.
    onto_ok: Every root of the T side is reached, and the reverse transport
      along M^-1 lands in the primed roots.
    failures: Diagnostics.
  """

  images: tuple[LatticeVector | None, ...]
  forward_ok: bool
  onto_ok: bool
  failures: tuple[str, ...]

  @property
  def ok(self) -> bool:
    return self.forward_ok and self.onto_ok


def transport_roots(
    datum: root_datum.RootDatum,
    datum_prime: root_datum.RootDatum,
    mp: presentation.MatchedPresentation,
    *,
    max_workers: int = DEFAULT_MAX_WORKERS,
    progress_bar: bool = False,
) -> RootTransport:
  """Recovers M(Phi') and checks that it is exactly Phi, in both directions.

  Args:
    datum: The root datum of T.
    datum_prime: The root datum of T'.
    mp: The matched presentation.
    max_workers: Number of parallel workers for the per-root recoveries.
    progress_bar: If True, show a progress bar.
  """
  failures = []
  forward = _map_concurrently(
      lambda a: _recover_or_explain(datum_prime, mp, a),
      datum_prime.roots,
      max_workers=max_workers,
      progress_bar=progress_bar,
  )
  images = []
  for alpha_prime, (image, failure) in zip(datum_prime.roots, forward):
    images.append(image)
    if failure:
      failures.append(failure)
    elif not datum.is_root(image):
      failures.append(f'M {alpha_prime} = {image} is not a root.')
  forward_ok = not failures

  reverse_mp = mp.inverse()
  backward = _map_concurrently(
      lambda a: _recover_or_explain(datum, reverse_mp, a),
      datum.roots,
      max_workers=max_workers,
      progress_bar=progress_bar,
  )
  onto_failures = []
  for alpha, (image, failure) in zip(datum.roots, backward):
    if failure:
      onto_failures.append(f'Reverse transport: {failure}')
    elif not datum_prime.is_root(image):
      onto_failures.append(f'M^-1 {alpha} = {image} is not a primed root.')
  missed = set(datum.roots) - set(images)
  if missed:
    onto_failures.append(f'Roots {sorted(missed)} are not images.')
  failures.extend(onto_failures)
  return RootTransport(
      images=tuple(images),
      forward_ok=forward_ok,
      onto_ok=not onto_failures,
      failures=tuple(failures),
  )


def transport_simple_roots(
    datum: root_datum.RootDatum,
    mp: presentation.MatchedPresentation,
    delta_prime: root_datum.SimpleSystem,
) -> root_datum.SimpleSystem:
  """Returns M(Delta') validated as a simple system of `datum`.

  Raises:
    InconsistencyError: If M(Delta') is not a simple system.
  """
  try:
    return delta_prime.apply(mp.apply, datum)
  except ValueError as e:
    raise errors.InconsistencyError(
        f'M({delta_prime.simples}) is not a simple system: {e}'
    ) from e


def transport_highest_weights(
    datum: root_datum.RootDatum,
    mp: presentation.MatchedPresentation,
    delta_prime: root_datum.SimpleSystem,
    delta: root_datum.SimpleSystem,
) -> list[str]:
  """Checks that each matched pair is V(lambda') and V(M lambda').

  Returns:
    Diagnostics; empty when every pair passes.
  """
  failures = []
  for irrep in mp.irreps:
    try:
      lam_prime = characters.highest_weight(irrep.weights_prime, delta_prime)
      lam = characters.highest_weight(irrep.weights, delta)
    except errors.InconsistencyError as e:
      failures.append(f'Pair {irrep.label!r}: {e}')
      continue
    if lam != mp.apply(lam_prime):
      failures.append(
          f'Pair {irrep.label!r}: highest weight {lam} is not M {lam_prime}.'
      )
    elif irrep.weights != characters.freudenthal_multiplicities(
        datum, delta, lam
    ):
      failures.append(
          f'Pair {irrep.label!r}: the unprimed side is not irreducible.'
      )
  return failures


def transport_weyl(
    group: weyl.WeylGroup,
    group_prime: weyl.WeylGroup,
    mp: presentation.MatchedPresentation,
) -> list[str]:
  """Checks M W' M^-1 = W and M s_alpha' M^-1 = s_(M alpha').

  Returns:
    Diagnostics; empty when both hold.
  """
  failures = []
  m = mp.matrix
  m_inverse = lattice.unimodular_inverse(m)
  conjugated = {
      weyl.WeylElement(m @ sigma.matrix @ m_inverse) for sigma in group_prime
  }
  if conjugated != (elements := set(group.elements)):
    failures.append(
        f"M W' M^-1 has {len(conjugated)} elements,"
        f' {len(conjugated & elements)} of them in W (order {group.order}).'
    )
  datum, datum_prime = group.datum, group_prime.datum
  for alpha_prime in datum_prime.roots:
    alpha = mp.apply(alpha_prime)
    if not datum.is_root(alpha):
      failures.append(f'M {alpha_prime} = {alpha} is not a root.')
      continue
    image = weyl.WeylElement(
        m @ weyl.reflection(datum_prime, alpha_prime).matrix @ m_inverse
    )
    if image != weyl.reflection(datum, alpha):
      failures.append(f'M s_{alpha_prime} M^-1 is not s_{alpha}.')
  return failures


def coroot_via_reflection(
    datum: root_datum.RootDatum,
    alpha: Sequence[int],
    group: weyl.WeylGroup,
) -> LatticeVector:
  """Finds the y in Y with x - s_alpha(x) = <x, y> alpha for all x.

  s_alpha is located in the group from its matrix alone, and <e_i, y> is read
  off the basis vectors e_i.

  Raises:
    InconsistencyError: If some e_i - s_alpha(e_i) is not a multiple of
      alpha, or y does not pair to 2 with alpha or differs from the stored
      coroot.
  """
  alpha = lattice.lattice_vector(alpha)
  s = weyl.reflection_in_group(group, alpha)
  pivot = next(i for i, a in enumerate(alpha) if a)
  y = []
  for e in np.eye(datum.rank, dtype=np.int64).tolist():
    difference = lattice.subtract(e, s.apply(e))
    c, remainder = divmod(difference[pivot], alpha[pivot])
    if remainder or lattice.scale(c, alpha) != difference:
      raise errors.InconsistencyError(
          f'{tuple(e)} - s({tuple(e)}) = {difference} is not a multiple of'
          f' {alpha}.'
      )
    y.append(c)
  y = tuple(y)
  if lattice.pairing(alpha, y) != 2:
    raise errors.InconsistencyError(f'<{alpha}, {y}> != 2.')
  if y != datum.coroot_of(alpha):
    raise errors.InconsistencyError(
        f'Coroot of {alpha} from its reflection is {y}, but the datum lists'
        f' {datum.coroot_of(alpha)}.'
    )
  return y


def transport_coroots(
    datum: root_datum.RootDatum,
    datum_prime: root_datum.RootDatum,
    mp: presentation.MatchedPresentation,
    group: weyl.WeylGroup,
    group_prime: weyl.WeylGroup,
) -> list[str]:
  """Checks M^T (alpha^v) = (M^-1 alpha)^v for every root alpha of T.

  Returns:
    Diagnostics; empty when every root passes.
  """
  failures = []
  m_inverse = lattice.unimodular_inverse(mp.matrix)
  for alpha in datum.roots:
    alpha_prime = tuple(lattice.apply_matrix(m_inverse, alpha))
    if not datum_prime.is_root(alpha_prime):
      failures.append(f'M^-1 {alpha} = {alpha_prime} is not a primed root.')
      continue
    try:
      lhs = mp.apply_transpose(coroot_via_reflection(datum, alpha, group))
      rhs = coroot_via_reflection(datum_prime, alpha_prime, group_prime)
    except errors.InconsistencyError as e:
      failures.append(str(e))
      continue
    if lhs != rhs:
      failures.append(
          f'M^T maps the coroot of {alpha} to {lhs}, expected {rhs}.'
      )
  return failures


@typing.jaxtyped
@dataclasses.dataclass(frozen=True)
class RootDataIsomorphism:
  """A lattice isomorphism X(T') -> X(T) with its adjoint Y(T) -> Y(T').

  Attributes:
    x_map: Matrix of X(T') -> X(T).
    y_map: Matrix of Y(T) -> Y(T'), the transpose of `x_map`.
  """

  x_map: IntMatrix
  y_map: IntMatrix

  def certify(
      self,
      datum: root_datum.RootDatum,
      datum_prime: root_datum.RootDatum,
  ) -> list[str]:
    """Returns what stops the pair from being an isomorphism of root data."""
    failures = []
    if not np.array_equal(self.y_map, self.x_map.T):
      failures.append('The Y map is not the transpose of the X map.')
    images = [tuple(lattice.apply_matrix(self.x_map, r))
              for r in datum_prime.roots]
    if sorted(images) != sorted(datum.roots):
      failures.append('The X map is not a bijection of roots.')
      return failures
    for root_prime, coroot_prime, image in zip(
        datum_prime.roots, datum_prime.coroots, images
    ):
      pulled = tuple(lattice.apply_matrix(self.y_map, datum.coroot_of(image)))
      if pulled != coroot_prime:
        failures.append(
            f'The Y map sends the coroot of {image} to {pulled}, not to'
            f' {coroot_prime}.'
        )
      for coroot in datum.coroots:
        if lattice.pairing(image, coroot) != lattice.pairing(
            root_prime, lattice.apply_matrix(self.y_map, coroot)
        ):
          failures.append(f'Pairing not preserved at {root_prime}, {coroot}.')
    return failures

  def to_json_dict(self) -> dict[str, Any]:
    return {'x_map': self.x_map.tolist(), 'y_map': self.y_map.tolist()}


@dataclasses.dataclass(frozen=True)
class ReconstructionReport:
  """Everything `assemble_isomorphism` established, and what it could not.

  Attributes:
    recovered_roots: M alpha' for each primed root, in primed order.
    recovered_coroots: The coroot in Y(T) of each recovered root.
    simple_system_image: M(Delta').
    roots_ok: M(Phi') = Phi, checked in both directions.
    highest_weights_ok: Matched pairs are V(lambda') and V(M lambda').
    weyl_transport_ok: M W' M^-1 = W, reflections matching.
    coroot_transport_ok: M^T(alpha^v) = (M^-1 alpha)^v.
    isomorphism_ok: (M, M^T) is certified.
    failures: Diagnostics; empty iff every check passed.
    isomorphism: The certified isomorphism, when there is one.
  """

  recovered_roots: tuple[LatticeVector, ...] = ()
  recovered_coroots: tuple[LatticeVector, ...] = ()
  simple_system_image: tuple[LatticeVector, ...] = ()
  roots_ok: bool = False
  highest_weights_ok: bool = False
  weyl_transport_ok: bool = False
  coroot_transport_ok: bool = False
  isomorphism_ok: bool = False
  failures: tuple[str, ...] = ()
  isomorphism: RootDataIsomorphism | None = dataclasses.field(
      default=None, compare=False
  )

  def __post_init__(self):
    object.__setattr__(self, 'failures', tuple(self.failures))
    checks = (
        self.roots_ok,
        self.highest_weights_ok,
        self.weyl_transport_ok,
        self.coroot_transport_ok,
        self.isomorphism_ok,
    )
    if all(checks) == bool(self.failures):
      raise ValueError(
          'A report has failures exactly when some check did not pass.'
      )

  @classmethod
  def failed(cls, *failures: str) -> 'ReconstructionReport':
    return cls(failures=failures)

  @property
  def verdict(self) -> bool:
    return not self.failures

  def to_json_dict(self) -> dict[str, Any]:
    return {
        'verdict': self.verdict,
        'recovered_roots': [list(r) for r in self.recovered_roots],
        'recovered_coroots': [list(c) for c in self.recovered_coroots],
        'simple_system_image': [list(s) for s in self.simple_system_image],
        'roots_ok': self.roots_ok,
        'highest_weights_ok': self.highest_weights_ok,
        'weyl_transport_ok': self.weyl_transport_ok,
        'coroot_transport_ok': self.coroot_transport_ok,
        'isomorphism_ok': self.isomorphism_ok,
        'failures': list(self.failures),
        'isomorphism': (
            self.isomorphism.to_json_dict() if self.isomorphism else None
        ),
    }


def _preflight(
    datum: root_datum.RootDatum,
    datum_prime: root_datum.RootDatum,
    rank: int,
) -> list[str]:
  """Checks that make the transport meaningless when they fail."""
  if not datum.rank == datum_prime.rank == rank:
    return [f'Ranks differ: {datum.rank}, {datum_prime.rank}, M has {rank}.']
  failures = [
      f'{name}: {v.message}'
      for name, d in (('datum', datum), ('datum_prime', datum_prime))
      for v in root_datum.validate(d)
  ]
  if not failures and len(datum.roots) != len(datum_prime.roots):
    failures.append(
        f'Root counts differ: {len(datum.roots)} != {len(datum_prime.roots)}.'
    )
  return failures


def assemble_isomorphism(
    datum: root_datum.RootDatum,
    datum_prime: root_datum.RootDatum,
    mp: presentation.MatchedPresentation,
    *,
    max_workers: int = DEFAULT_MAX_WORKERS,
    progress_bar: bool = False,
) -> ReconstructionReport:
  """Runs every transport check and certifies (M, M^T) when all pass.

  Failure is reported, never raised: the returned report lists what failed.

  Args:
    datum: The root datum of T.
    datum_prime: The root datum of T'.
    mp: The matched presentation of X(T') -> X(T).
    max_workers: Number of parallel workers for the per-root recoveries.
    progress_bar: If True, show a progress bar.

  Raises:
    ResourceError: If a Weyl group exceeds the order cap.
  """
  if failures := _preflight(datum, datum_prime, mp.rank):
    logging.info('Reconstruction rejected before transport: %s', failures)
    return ReconstructionReport.failed(*failures)

  transport = transport_roots(
      datum,
      datum_prime,
      mp,
      max_workers=max_workers,
      progress_bar=progress_bar,
  )
  if not transport.ok:
    logging.info('Root transport failed: %d diagnostics.',
                 len(transport.failures))
    return ReconstructionReport(
        recovered_roots=tuple(r for r in transport.images if r is not None),
        failures=transport.failures
        + ('Later checks skipped because root transport failed.',),
    )
  failures = []
  delta_prime = root_datum.find_simple_system(datum_prime)
  try:
    delta = transport_simple_roots(datum, mp, delta_prime)
  except errors.InconsistencyError as e:
    return ReconstructionReport(
        recovered_roots=transport.images,
        roots_ok=True,
        failures=(str(e), 'Later checks skipped: no simple system.'),
    )

  highest_weight_failures = transport_highest_weights(
      datum, mp, delta_prime, delta
  )
  group_prime = weyl.generate(datum_prime, delta_prime)
  group = weyl.generate(datum, delta)
  weyl_failures = transport_weyl(group, group_prime, mp)
  coroot_failures = transport_coroots(
      datum, datum_prime, mp, group, group_prime
  )
  isomorphism = RootDataIsomorphism(
      x_map=np.array(mp.matrix), y_map=np.array(mp.matrix.T)
  )
  isomorphism_failures = isomorphism.certify(datum, datum_prime)
  failures = (
      highest_weight_failures
      + weyl_failures
      + coroot_failures
      + isomorphism_failures
  )
  report = ReconstructionReport(
      recovered_roots=transport.images,
      recovered_coroots=tuple(datum.coroot_of(r) for r in transport.images),
      simple_system_image=delta.simples,
      roots_ok=True,
      highest_weights_ok=not highest_weight_failures,
      weyl_transport_ok=not weyl_failures,
      coroot_transport_ok=not coroot_failures,
      isomorphism_ok=not isomorphism_failures,
      failures=tuple(failures),
      isomorphism=None if failures else isomorphism,
  )
  logging.info(
      'Reconstruction of %r from %r: verdict %s.',
      datum.label,
      datum_prime.label,
      report.verdict,
  )
  return report


def check_transport(
    datum: root_datum.RootDatum,
    datum_prime: root_datum.RootDatum,
    matrix: IntMatrix,
    highest_weights_prime: Sequence[Sequence[int]] | None = None,
    **kwargs,
) -> ReconstructionReport:
  """Builds the matched presentation of `matrix` and assembles the result.

  Raises:
    ValueError: If `matrix` is not unimodular.
  """
  if failures := _preflight(datum, datum_prime, datum.rank):
    return ReconstructionReport.failed(*failures)
  try:
    mp = presentation.build_matched_presentation(
        datum, datum_prime, matrix, highest_weights_prime
    )
  except errors.IncompatiblePresentationError as e:
    return ReconstructionReport.failed(str(e))
  return assemble_isomorphism(datum, datum_prime, mp, **kwargs)


def reconstruct_from_json_dict(
    data: Mapping[str, Any],
    datum: root_datum.RootDatum,
    datum_prime: root_datum.RootDatum,
    **kwargs,
) -> ReconstructionReport:
  """Parses a matched presentation document and assembles the isomorphism.

  A pair whose characters do not correspond under M yields a failed report
  that names the pair.

  Raises:
    ValueError: If `data` is malformed.
  """
  try:
    mp = presentation.MatchedPresentation.from_json_dict(data)
  except errors.IncompatiblePresentationError as e:
    logging.info('Matched presentation rejected: %s', e)
    return ReconstructionReport.failed(str(e))
  return assemble_isomorphism(datum, datum_prime, mp, **kwargs)
