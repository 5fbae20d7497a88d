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

r"""Command-line front end for weight polytopes and root data reconstruction.

Usage:

```
weightpoly validate datum.json
weightpoly weights datum.json --lambda=1,1
weightpoly polytope datum.json --lambda=1,1 --cross_check
weightpoly reconstruct presentation.json [datum.json datum_prime.json]
weightpoly blind characters.json
weightpoly transport-check datum.json datum_prime.json --matrix="1,1;0,1"
weightpoly selftest
```

Reports are written to stdout as JSON with sorted keys; logs go to stderr.
Exit codes: 0 on success or a true verdict, 1 on a false verdict, 2 on usage
errors or malformed input, 3 on inconsistency or resource errors.
"""

from collections.abc import Callable, Mapping, Sequence
import dataclasses
import enum
import json
import sys
from typing import Any, TextIO

from absl import app
from absl import flags
from absl import logging
from weightpoly import errors
from weightpoly import selftest
from weightpoly.algebra import characters
from weightpoly.algebra import root_datum
from weightpoly.algebra import weyl
from weightpoly.geometry import polytope
from weightpoly.reconstruction import blind
from weightpoly.reconstruction import reconstruct

_LAMBDA = flags.DEFINE_string(
    'lambda', None, 'Highest weight as comma-separated integers, e.g. "1,1".'
)
_MATRIX = flags.DEFINE_string(
    'matrix', None, 'Torus map X(T\') -> X(T) as rows, e.g. "1,1;0,1".'
)
_CROSS_CHECK = flags.DEFINE_bool(
    'cross_check', False, 'Verify polytopes against the LP oracle.'
)
_METHOD = flags.DEFINE_enum_class(
    'method',
    characters.WeightSetMethod.SATURATION,
    characters.WeightSetMethod,
    'How to enumerate weight sets.',
)
_MAX_WORKERS = flags.DEFINE_integer(
    'max_workers',
    polytope.DEFAULT_MAX_WORKERS,
    'Number of parallel workers.',
    lower_bound=1,
)
_PROGRESS_BAR = flags.DEFINE_bool(
    'progress_bar', False, 'Show progress bars on stderr.'
)


class ExitCode(enum.IntEnum):
  OK = 0
  FALSE_VERDICT = 1
  USAGE = 2
  INCONSISTENT = 3


@dataclasses.dataclass(frozen=True)
class Options:
  """Values of the command-line flags."""

  lam: str | None = None
  matrix: str | None = None
  cross_check: bool = False
  method: characters.WeightSetMethod = characters.WeightSetMethod.SATURATION
  max_workers: int = polytope.DEFAULT_MAX_WORKERS
  progress_bar: bool = False


def parse_vector(text: str | None, flag: str = 'lambda') -> tuple[int, ...]:
  """Parses "a,b,c" into a tuple of integers.

  Raises:
    app.UsageError: If the text is missing or malformed.
  """
  if not text:
    raise app.UsageError(f'--{flag} is required.')
  try:
    return tuple(int(c) for c in text.split(','))
  except ValueError:
    raise app.UsageError(
        f'--{flag} must be comma-separated integers, got {text!r}.'
    ) from None


def parse_matrix(text: str | None) -> list[list[int]]:
  """Parses "a,b;c,d" into a list of integer rows."""
  if not text:
    raise app.UsageError('--matrix is required.')
  return [list(parse_vector(row, 'matrix')) for row in text.split(';')]


def _read_json(path: str) -> Any:
  try:
    with open(path) as f:
      return json.load(f)
  except OSError as e:
    raise app.UsageError(f'{path}: cannot read ({e.strerror}).') from e
  except json.JSONDecodeError as e:
    raise app.UsageError(f'{path}: malformed JSON ({e}).') from e


def _parse(path: str, parser: Callable[[Any], Any], data: Any) -> Any:
  """Runs `parser`, prefixing input errors with the file they came from."""
  try:
    return parser(data)
  except errors.InconsistencyError:
    raise
  except ValueError as e:
    raise app.UsageError(f'{path}: {e}') from e


def _load_datum(path: str) -> root_datum.RootDatum:
  return _parse(path, root_datum.RootDatum.from_json_dict, _read_json(path))


def _expect_paths(verb: str, paths: Sequence[str], *counts: int) -> None:
  if len(paths) not in counts:
    raise app.UsageError(
        f'{verb} takes {" or ".join(map(str, counts))} paths, got'
        f' {len(paths)}.'
    )


def _validate(paths: Sequence[str], options: Options):
  del options
  _expect_paths('validate', paths, 1)
  violations = root_datum.validate(_load_datum(paths[0]))
  if not violations:
    return {'ok': True}, ExitCode.OK
  return {
      'ok': False,
      'violations': [v.to_json_dict() for v in violations],
  }, ExitCode.FALSE_VERDICT


def _weights(paths: Sequence[str], options: Options):
  _expect_paths('weights', paths, 1)
  datum = _load_datum(paths[0])
  lam = parse_vector(options.lam)
  delta = root_datum.find_simple_system(datum)
  weights = characters.weight_set(datum, delta, lam, method=options.method)
  character = characters.freudenthal_multiplicities(datum, delta, lam)
  return {
      'lambda': list(lam),
      'weights': [list(w) for w in sorted(weights)],
      'character': character.to_json_dict()['terms'],
      'dimension': characters.weyl_dimension(datum, delta, lam),
  }, ExitCode.OK


def _polytope(paths: Sequence[str], options: Options):
  _expect_paths('polytope', paths, 1)
  datum = _load_datum(paths[0])
  lam = parse_vector(options.lam)
  delta = root_datum.find_simple_system(datum)
  group = weyl.generate(datum, delta)
  result = polytope.build_polytope(
      datum,
      delta,
      group,
      lam,
      cross_check=options.cross_check,
      max_workers=options.max_workers,
      progress_bar=options.progress_bar,
  )
  return result.to_json_dict(), ExitCode.OK


def _verdict(report: reconstruct.ReconstructionReport):
  code = ExitCode.OK if report.verdict else ExitCode.FALSE_VERDICT
  return report.to_json_dict(), code


def _reconstruct(paths: Sequence[str], options: Options):
  _expect_paths('reconstruct', paths, 1, 3)
  data = _read_json(paths[0])
  if not isinstance(data, Mapping):
    raise app.UsageError(f'{paths[0]}: expected a JSON object.')
  if len(paths) == 3:
    datum, datum_prime = _load_datum(paths[1]), _load_datum(paths[2])
  else:
    for field in ('datum', 'datum_prime'):
      if field not in data:
        raise app.UsageError(
            f'{paths[0]}: field {field!r} is missing; embed it or pass the'
            ' datum paths.'
        )
    datum = _parse(
        f'{paths[0]} field "datum"',
        root_datum.RootDatum.from_json_dict,
        data['datum'],
    )
    datum_prime = _parse(
        f'{paths[0]} field "datum_prime"',
        root_datum.RootDatum.from_json_dict,
        data['datum_prime'],
    )
  report = _parse(
      paths[0],
      lambda document: reconstruct.reconstruct_from_json_dict(
          document,
          datum,
          datum_prime,
          max_workers=options.max_workers,
          progress_bar=options.progress_bar,
      ),
      data,
  )
  return _verdict(report)


def _parse_characters(
    data: Any,
) -> tuple[int, list[characters.FormalCharacter]]:
  if not isinstance(data, Mapping):
    raise ValueError('Expected an object with "rank" and "characters".')
  rank = data.get('rank')
  if not isinstance(rank, int) or rank < 1:
    raise ValueError(
        f'Field "rank" must be a positive integer, got {rank!r}.'
    )
  entries = data.get('characters')
  if not isinstance(entries, list):
    raise ValueError('Field "characters" must be a list.')
  parsed = []
  for i, entry in enumerate(entries):
    try:
      parsed.append(characters.FormalCharacter.from_json_dict(entry, rank))
    except ValueError as e:
      raise ValueError(f'Field "characters[{i}]": {e}') from e
  return rank, parsed


def _blind(paths: Sequence[str], options: Options):
  del options
  _expect_paths('blind', paths, 1)
  rank, inputs = _parse(paths[0], _parse_characters, _read_json(paths[0]))
  return blind.blind_reconstruct(rank, inputs).to_json_dict(), ExitCode.OK


def _transport_check(paths: Sequence[str], options: Options):
  _expect_paths('transport-check', paths, 2)
  datum, datum_prime = _load_datum(paths[0]), _load_datum(paths[1])
  highest_weights = None
  if options.lam:
    highest_weights = [parse_vector(options.lam)]
  return _verdict(
      reconstruct.check_transport(
          datum,
          datum_prime,
          parse_matrix(options.matrix),
          highest_weights,
          max_workers=options.max_workers,
          progress_bar=options.progress_bar,
      )
  )


def _selftest(paths: Sequence[str], options: Options):
  _expect_paths('selftest', paths, 0)
  results = selftest.run_battery(progress_bar=options.progress_bar)
  summary = selftest.summarize(results)
  code = ExitCode.FALSE_VERDICT if summary['failed'] else ExitCode.OK
  return summary, code


_VERBS = {
    'validate': _validate,
    'weights': _weights,
    'polytope': _polytope,
    'reconstruct': _reconstruct,
    'blind': _blind,
    'transport-check': _transport_check,
    'selftest': _selftest,
}


def run(
    args: Sequence[str],
    options: Options = Options(),
    *,
    stream: TextIO = sys.stdout,
    error_stream: TextIO = sys.stderr,
) -> int:
  """Runs one verb and writes its JSON report.

  Args:
    args: The verb followed by its input paths.
    options: Flag values.
    stream: Where the JSON report goes.
    error_stream: Where diagnostics go.

  Returns:
    The process exit code.
  """
  try:
    if not args or args[0] not in _VERBS:
      raise app.UsageError(
          f'Expected one of {", ".join(_VERBS)} as the first argument.'
      )
    report, code = _VERBS[args[0]](args[1:], options)
  except app.UsageError as e:
    print(f'error: {e}', file=error_stream)
    return ExitCode.USAGE
  except (errors.InconsistencyError, errors.ResourceError) as e:
    logging.error('Inconsistency: %s', e)
    print(f'inconsistency: {e}', file=error_stream)
    return ExitCode.INCONSISTENT
  except (ValueError, LookupError) as e:
    print(f'error: {e}', file=error_stream)
    return ExitCode.USAGE
  stream.write(json.dumps(report, sort_keys=True) + '\n')
  return code


def main(argv: Sequence[str]) -> int:
  return run(
      argv[1:],
      Options(
          lam=_LAMBDA.value,
          matrix=_MATRIX.value,
          cross_check=_CROSS_CHECK.value,
          method=_METHOD.value,
          max_workers=_MAX_WORKERS.value,
          progress_bar=_PROGRESS_BAR.value,
      ),
  )


def entry_point() -> None:
  app.run(main)


if __name__ == '__main__':
  entry_point()
