"""
Canonical labeling of digital spaces.

Color refinement splits points by the multiset of their neighbours' colors until the partition is stable,
individualization then breaks ties one point at a time. The canonical labeling is the leaf of the search tree
with the largest (refinement trace, relabeled edge list) pair. Points that are twins (same open or same closed
neighbourhood) are swapped by an automorphism, so only one twin per cell is individualized.
"""

import logging
from functools import lru_cache

from digitalspheres.space import DigitalSpace


log = logging.getLogger(__name__)


def _refine(adjacency, colors):
  ncolors = len(set(colors.values()))
  while True:
    signatures = {v: (colors[v], tuple(sorted(colors[u] for u in ns))) for v, ns in adjacency.items()}
    distinct = sorted(set(signatures.values()))
    index = {signature: position for position, signature in enumerate(distinct)}
    refined = {v: index[signature] for v, signature in signatures.items()}
    if len(distinct) == ncolors:
      return refined, tuple(distinct)
    colors = refined
    ncolors = len(distinct)


def _individualize(colors, v):
  return {w: 2 * color + (0 if w == v else 1) for w, color in colors.items()}


def _target_cell(colors):
  cells = {}
  for v, color in colors.items():
    cells.setdefault(color, []).append(v)
  candidates = [(len(cell), color) for color, cell in cells.items() if len(cell) > 1]
  if not candidates:
    return None
  _, color = min(candidates)
  return sorted(cells[color])


def _twin_keys(adjacency):
  return {v: (ns, ns | {v}) for v, ns in adjacency.items()}


def _are_twins(keys, u, v):
  return keys[u][0] == keys[v][0] or keys[u][1] == keys[v][1]


def _certificate(space, colors):
  return tuple(sorted((min(colors[u], colors[v]), max(colors[u], colors[v])) for u, v in space.edges))


@lru_cache(maxsize=65536)
def _canonical(space):
  if space.is_empty:
    return (0, ()), ()
  adjacency = space.adjacency
  keys = _twin_keys(adjacency)
  colors, trace = _refine(adjacency, {v: 0 for v in adjacency})
  best = None
  leaves = 0
  stack = [(colors, (trace,))]
  while stack:
    colors, traces = stack.pop()
    if best is not None and traces < best[0][: len(traces)]:
      continue
    cell = _target_cell(colors)
    if cell is None:
      leaves += 1
      candidate = (traces, _certificate(space, colors))
      if best is None or candidate > best[:2]:
        best = (*candidate, colors)
      continue
    tried = []
    children = []
    for v in cell:
      if any(_are_twins(keys, u, v) for u in tried):
        continue
      tried.append(v)
      child, child_trace = _refine(adjacency, _individualize(colors, v))
      children.append((child, (*traces, child_trace)))
    stack.extend(reversed(children))
  _, certificate, labeling = best
  log.debug("Canonical labeling of %r explored %d leaves", space, leaves)
  return (len(space), certificate), tuple(sorted(labeling.items()))


def canonical_labeling(space: DigitalSpace) -> dict:
  """Map every point of ``space`` to its canonical index in ``0..N-1``."""
  return dict(_canonical(space)[1])


def canonical_form(space: DigitalSpace) -> tuple:
  """``(N, edges)`` of the canonically relabeled space, equal for isomorphic spaces only."""
  return _canonical(space)[0]


def canonical_space(space: DigitalSpace) -> DigitalSpace:
  npoints, edges = canonical_form(space)
  return DigitalSpace(range(npoints), edges)


@lru_cache(maxsize=65536)
def canonical_key(space: DigitalSpace) -> str:
  """The canonical form rendered as an inline ``N;i-j,...`` string, used as a cache key."""
  npoints, edges = canonical_form(space)
  return f"{npoints};" + ",".join(f"{u}-{v}" for u, v in edges)


def find_isomorphism(space: DigitalSpace, other: DigitalSpace):
  """Return a point bijection ``space -> other`` preserving adjacency, or ``None``."""
  if len(space) != len(other) or len(space.edges) != len(other.edges):
    return None
  if canonical_form(space) != canonical_form(other):
    return None
  inverse = {index: v for v, index in canonical_labeling(other).items()}
  return {v: inverse[index] for v, index in canonical_labeling(space).items()}


def is_isomorphic(space: DigitalSpace, other: DigitalSpace) -> bool:
  return find_isomorphism(space, other) is not None
