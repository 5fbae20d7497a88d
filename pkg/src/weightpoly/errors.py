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

"""Exceptions raised by weightpoly.

Bad arguments raise plain `ValueError`. The subclasses below distinguish the
failure kinds callers (notably the command line) need to tell apart.
"""


class DimensionError(ValueError):
  """Vectors or matrices of incompatible rank were combined."""


class PreconditionError(ValueError):
  """An operation was called outside its domain (e.g. non-dominant weight)."""


class InconsistencyError(ValueError):
  """Input data contradicts the structure it is claimed to have."""


class IncompatiblePresentationError(InconsistencyError):
  """A matched pair of characters does not correspond under the torus map."""


class MissingDataError(LookupError):
  """A matched irreducible required by the reconstruction is absent."""


class ResourceError(RuntimeError):
  """A configured size cap was exceeded."""
