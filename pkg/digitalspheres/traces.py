"""
Line oriented trace files, one step per line::

  # n=2 predicate=closed-manifold points=8->6
  collapse n=<n> boundary=<ids> interior=<ids> new=<id>
  expand n=<n> v=<id> disk=<N;i-j,...> glue=<disk:rim,...> interior=<disk:new,...>
  glue-point v=<id> attach=<ids>
  delete-edge u=<id> v=<id>
  glue-edge u=<id> v=<id>
  delete-point v=<id>

Dumping then loading gives back equal steps, and replaying them reproduces the final space exactly.
"""

import logging
from pathlib import Path

from digitalspheres.exceptions import SpaceParseError
from digitalspheres.formats import from_inline
from digitalspheres.formats import to_inline
from digitalspheres.transform import StepKind
from digitalspheres.transform import TransformStep
from digitalspheres.transform import TransformTrace
from digitalspheres.transform import apply_step


log = logging.getLogger(__name__)

KEYWORDS = {
  StepKind.COLLAPSE_DISK: "collapse",
  StepKind.EXPAND_BALL: "expand",
  StepKind.DELETE_POINT: "delete-point",
  StepKind.GLUE_POINT: "glue-point",
  StepKind.DELETE_EDGE: "delete-edge",
  StepKind.GLUE_EDGE: "glue-edge",
}
KINDS = {keyword: kind for kind, keyword in KEYWORDS.items()}


def _ids(values):
  return ",".join(str(value) for value in values)


def _pairs(pairs):
  return ",".join(f"{a}:{b}" for a, b in pairs)


def dump_step(step: TransformStep) -> str:
  keyword = KEYWORDS[step.kind]
  if step.kind is StepKind.COLLAPSE_DISK:
    fields = f"n={step.n} boundary={_ids(step.boundary)} interior={_ids(step.interior)} new={step.vertex}"
  elif step.kind is StepKind.EXPAND_BALL:
    fields = (
      f"n={step.n} v={step.vertex} disk={to_inline(step.disk)} "
      f"glue={_pairs(step.glue)} interior={_pairs(step.interior_map)}"
    )
  elif step.kind is StepKind.DELETE_POINT:
    fields = f"v={step.vertex}"
  elif step.kind is StepKind.GLUE_POINT:
    fields = f"v={step.vertex} attach={_ids(step.boundary)}"
  else:
    fields = f"u={step.edge[0]} v={step.edge[1]}"
  return f"{keyword} {fields}"


def dumps_trace(trace: TransformTrace) -> str:
  header = f"# n={trace.n} predicate={trace.predicate or 'none'} points={len(trace.initial)}->{len(trace.final)}"
  return "\n".join([header, *(dump_step(step) for step in trace.steps)]) + "\n"


def write_trace(trace: TransformTrace, path):
  path = Path(path)
  path.write_text(dumps_trace(trace))
  log.info("Wrote %d trace steps to %s", len(trace), path)


def _int(value, lineno, key):
  try:
    return int(value)
  except ValueError:
    raise SpaceParseError(f"'{key}' must be an integer, got {value!r}", lineno) from None


def _int_list(value, lineno, key):
  return [_int(token, lineno, key) for token in value.split(",") if token]


def _pair_list(value, lineno, key):
  pairs = []
  for token in filter(None, value.split(",")):
    a, sep, b = token.partition(":")
    if not sep:
      raise SpaceParseError(f"'{key}' expects a:b pairs, got {token!r}", lineno)
    pairs.append((_int(a, lineno, key), _int(b, lineno, key)))
  return pairs


def parse_step(line: str, lineno=None) -> TransformStep:
  keyword, *tokens = line.split()
  kind = KINDS.get(keyword)
  if kind is None:
    raise SpaceParseError(f"Unknown step {keyword!r}", lineno)
  fields = {}
  for token in tokens:
    key, sep, value = token.partition("=")
    if not sep:
      raise SpaceParseError(f"Expected key=value, got {token!r}", lineno)
    fields[key] = value

  def need(key):
    try:
      return fields[key]
    except KeyError:
      raise SpaceParseError(f"'{keyword}' needs '{key}='", lineno) from None

  if kind is StepKind.COLLAPSE_DISK:
    return TransformStep(
      kind,
      n=_int(need("n"), lineno, "n"),
      vertex=_int(need("new"), lineno, "new"),
      boundary=_int_list(need("boundary"), lineno, "boundary"),
      interior=_int_list(need("interior"), lineno, "interior"),
    )
  if kind is StepKind.EXPAND_BALL:
    glue = _pair_list(need("glue"), lineno, "glue")
    interior_map = _pair_list(fields.get("interior", ""), lineno, "interior")
    return TransformStep(
      kind,
      n=_int(need("n"), lineno, "n"),
      vertex=_int(need("v"), lineno, "v"),
      boundary=[b for _, b in glue],
      interior=[label for _, label in interior_map],
      disk=from_inline(need("disk")),
      glue=glue,
      interior_map=interior_map,
    )
  if kind is StepKind.DELETE_POINT:
    return TransformStep.delete_point(_int(need("v"), lineno, "v"))
  if kind is StepKind.GLUE_POINT:
    return TransformStep.glue_point(_int(need("v"), lineno, "v"), _int_list(need("attach"), lineno, "attach"))
  u, v = _int(need("u"), lineno, "u"), _int(need("v"), lineno, "v")
  if kind is StepKind.DELETE_EDGE:
    return TransformStep.delete_edge(u, v)
  return TransformStep.glue_edge(u, v)


def loads_steps(text: str) -> list:
  steps = []
  for lineno, raw_line in enumerate(text.splitlines(), start=1):
    line = raw_line.strip()
    if line and not line.startswith("#"):
      steps.append(parse_step(line, lineno))
  return steps


def read_steps(path) -> list:
  path = Path(path)
  log.debug("Reading trace from %s", path)
  return loads_steps(path.read_text())


def replay_steps(space, steps, budget=None):
  """Apply ``steps`` in order, every precondition is checked again."""
  state = space
  for position, step in enumerate(steps, start=1):
    log.debug("Replaying step %d: %s", position, dump_step(step))
    state = apply_step(state, step, budget)
  return state
