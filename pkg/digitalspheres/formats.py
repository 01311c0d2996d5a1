"""
Text formats for digital spaces: ``dspace v1`` files, the inline ``N;i-j,...`` form used inside trace lines,
and a Graphviz DOT writer.
"""

import logging
from pathlib import Path

from digitalspheres.exceptions import DigitalSpaceError
from digitalspheres.exceptions import SpaceParseError
from digitalspheres.space import DigitalSpace
from digitalspheres.space import make_space
from digitalspheres.space import normalization


log = logging.getLogger(__name__)

DSPACE_HEADER = "dspace 1"


def _index_edges(space):
  index = normalization(space)
  return sorted((min(index[u], index[v]), max(index[u], index[v])) for u, v in space.edges)


def dumps_space(space: DigitalSpace) -> str:
  """
  Render ``space`` as dspace v1.

  Points are renumbered ``0..N-1`` in ascending label order and edges are written sorted.
  """
  lines = [DSPACE_HEADER, f"points {len(space)}"]
  lines.extend(f"edge {u} {v}" for u, v in _index_edges(space))
  return "\n".join(lines) + "\n"


def _parse_int(token, lineno, what):
  try:
    return int(token)
  except ValueError:
    raise SpaceParseError(f"Expected an integer {what}, got {token!r}", lineno) from None


def loads_space(text: str) -> DigitalSpace:
  """Parse dspace v1 text. Edges may come in any order, duplicates are collapsed."""
  npoints = None
  header_seen = False
  edges = []
  for lineno, raw_line in enumerate(text.splitlines(), start=1):
    line = raw_line.strip()
    if not line or line.startswith("#"):
      continue
    tokens = line.split()
    if not header_seen:
      if tokens != DSPACE_HEADER.split():
        raise SpaceParseError(f"Expected header {DSPACE_HEADER!r}, got {line!r}", lineno)
      header_seen = True
      continue
    if npoints is None:
      if len(tokens) != 2 or tokens[0] != "points":
        raise SpaceParseError(f"Expected 'points N', got {line!r}", lineno)
      npoints = _parse_int(tokens[1], lineno, "point count")
      if npoints < 0:
        raise SpaceParseError(f"Point count must be non-negative, got {npoints}", lineno)
      continue
    if len(tokens) != 3 or tokens[0] != "edge":
      raise SpaceParseError(f"Expected 'edge i j', got {line!r}", lineno)
    u = _parse_int(tokens[1], lineno, "point")
    v = _parse_int(tokens[2], lineno, "point")
    if u == v:
      raise SpaceParseError(f"Self-loop at point {u}", lineno)
    for endpoint in (u, v):
      if not 0 <= endpoint < npoints:
        raise SpaceParseError(f"Point {endpoint} outside 0..{npoints - 1}", lineno)
    edges.append((u, v))
  if not header_seen:
    raise SpaceParseError(f"Missing {DSPACE_HEADER!r} header", 1)
  if npoints is None:
    raise SpaceParseError("Missing 'points N' line")
  return make_space(range(npoints), edges)


def read_space(path) -> DigitalSpace:
  path = Path(path)
  log.debug("Reading digital space from %s", path)
  return loads_space(path.read_text())


def write_space(space: DigitalSpace, path):
  path = Path(path)
  path.write_text(dumps_space(space))
  log.info("Wrote %d points and %d edges to %s", len(space), len(space.edges), path)


def to_inline(space: DigitalSpace) -> str:
  """``N;i-j,...`` with points renumbered ``0..N-1`` in ascending label order."""
  return f"{len(space)};" + ",".join(f"{u}-{v}" for u, v in _index_edges(space))


def from_inline(text: str) -> DigitalSpace:
  try:
    count, _, edge_text = text.partition(";")
    npoints = int(count)
    edges = []
    for chunk in filter(None, edge_text.split(",")):
      u, v = chunk.split("-")
      edges.append((int(u), int(v)))
  except ValueError:
    raise DigitalSpaceError(f"Malformed inline space {text!r}") from None
  if npoints < 0:
    raise DigitalSpaceError(f"Malformed inline space {text!r}")
  return make_space(range(npoints), edges)


def _dot_value(value):
  if isinstance(value, bool):
    return "true" if value else "false"
  if value is None:
    return "none"
  return str(value)


def to_dot(space: DigitalSpace, classification=None, name="G") -> str:
  """
  Graphviz rendering of ``space``.

  When a classification is given its verdicts become graph attributes, boundary points are drawn as boxes.
  """
  lines = [f"graph {name} {{"]
  boundary = frozenset()
  if classification is not None:
    attributes = {
      "normal_dimension": classification.normal_dimension_text,
      "dimension": classification.dimension,
      "closed_manifold": classification.is_closed_manifold,
      "sphere": classification.is_sphere,
      "disk": classification.is_disk,
    }
    rendered = ", ".join(f'{key}="{_dot_value(value)}"' for key, value in attributes.items())
    lines.append(f"  graph [{rendered}];")
    boundary = classification.boundary
  for v in space.sorted_vertices:
    shape = "box" if v in boundary else "circle"
    lines.append(f"  {v} [shape={shape}];")
  for u, v in space.sorted_edges:
    lines.append(f"  {u} -- {v};")
  lines.append("}")
  return "\n".join(lines) + "\n"
