"""
Finite simple graphs as digital spaces.

Points are opaque integer labels, adjacency is a set of unordered pairs stored as sorted tuples.
Every constructor below returns a new immutable :class:`DigitalSpace`.
"""

import logging
from functools import cached_property

import attr
import networkx as nx

from digitalspheres.exceptions import DigitalSpaceError
from digitalspheres.exceptions import PreconditionError


log = logging.getLogger(__name__)


def _edge(u, v):
  return (u, v) if u < v else (v, u)


def _edge_set(edges):
  return frozenset(_edge(u, v) for u, v in edges)


@attr.s(frozen=True, cache_hash=True, repr=False)
class DigitalSpace:
  """
  A finite digital space ``G = (V, W)``.

  :keyword frozenset vertices:
      The point labels
  :keyword frozenset edges:
      Unordered adjacent pairs, each stored as ``(min, max)``
  """

  vertices = attr.ib(converter=frozenset)
  edges = attr.ib(converter=_edge_set, factory=frozenset)

  @edges.validator
  def _validate_edges(self, attribute, value):
    for u, v in value:
      if u == v:
        raise DigitalSpaceError(f"Self-loop at point {u!r}")
      if u not in self.vertices or v not in self.vertices:
        raise DigitalSpaceError(f"Edge ({u!r}, {v!r}) has an endpoint outside the point set")

  def __repr__(self):
    return f"<{self.__class__.__name__} points={len(self.vertices)} edges={len(self.edges)}>"

  def __len__(self):
    return len(self.vertices)

  def __iter__(self):
    return iter(self.sorted_vertices)

  def __contains__(self, label):
    return label in self.vertices

  @cached_property
  def sorted_vertices(self):
    return tuple(sorted(self.vertices))

  @cached_property
  def sorted_edges(self):
    return tuple(sorted(self.edges))

  @cached_property
  def adjacency(self):
    adjacency = {v: set() for v in self.vertices}
    for u, v in self.edges:
      adjacency[u].add(v)
      adjacency[v].add(u)
    return {v: frozenset(ns) for v, ns in adjacency.items()}

  @cached_property
  def graph(self):
    graph = nx.Graph()
    graph.add_nodes_from(self.sorted_vertices)
    graph.add_edges_from(self.sorted_edges)
    return graph

  def to_networkx(self):
    return self.graph.copy()

  def neighbors(self, v):
    try:
      return self.adjacency[v]
    except KeyError:
      raise DigitalSpaceError(f"Point {v!r} is not in the space") from None

  def degree(self, v):
    return len(self.neighbors(v))

  def has_edge(self, u, v):
    return _edge(u, v) in self.edges

  @property
  def is_empty(self):
    return not self.vertices

  @classmethod
  def from_adjacency(cls, adjacency):
    edges = {_edge(u, v) for u, ns in adjacency.items() for v in ns}
    return cls(frozenset(adjacency), edges)


@attr.s(frozen=True)
class Neighborhood:
  ball = attr.ib()
  rim = attr.ib()


def make_space(vertices, edges=()):
  """
  Build a validated :class:`DigitalSpace`.

  Duplicate edges are collapsed, duplicate point labels, self-loops and unknown endpoints are rejected.
  """
  labels = set()
  for v in vertices:
    if v in labels:
      raise DigitalSpaceError(f"Duplicate point label {v!r}")
    labels.add(v)
  normalized = set()
  for edge in edges:
    try:
      u, v = edge
    except (TypeError, ValueError):
      raise DigitalSpaceError(f"Edge {edge!r} is not a pair of points") from None
    if u == v:
      raise DigitalSpaceError(f"Self-loop at point {u!r}")
    for endpoint in (u, v):
      if endpoint not in labels:
        raise DigitalSpaceError(f"Edge ({u!r}, {v!r}) references unknown point {endpoint!r}")
    normalized.add(_edge(u, v))
  return DigitalSpace(frozenset(labels), frozenset(normalized))


def empty_space():
  return DigitalSpace(frozenset(), frozenset())


def _check_subset(space, subset):
  subset = frozenset(subset)
  unknown = subset - space.vertices
  if unknown:
    raise DigitalSpaceError(f"Points {sorted(unknown)} are not in the space")
  return subset


def induced(space, subset):
  """The induced subspace on ``subset``."""
  subset = _check_subset(space, subset)
  if subset == space.vertices:
    return space
  if len(subset) * 4 < len(space.edges):
    edges = {_edge(u, v) for u in subset for v in space.adjacency[u] & subset}
  else:
    edges = {(u, v) for u, v in space.edges if u in subset and v in subset}
  return DigitalSpace(subset, edges)


def remove(space, subset):
  """The induced subspace on every point outside ``subset``."""
  return induced(space, space.vertices - _check_subset(space, subset))


def neighborhood(space, v):
  """Return the ball ``U(v)`` and the rim ``O(v)`` of a point."""
  ns = space.neighbors(v)
  rim_ = induced(space, ns)
  ball_ = DigitalSpace(rim_.vertices | {v}, rim_.edges | {_edge(v, u) for u in ns})
  return Neighborhood(ball=ball_, rim=rim_)


def rim(space, v):
  return induced(space, space.neighbors(v))


def ball(space, v):
  return induced(space, space.neighbors(v) | {v})


def closed_neighborhood(space, subset):
  """``N[subset]``, the subset together with every neighbour of it."""
  subset = frozenset(subset)
  points = set(subset)
  for v in subset:
    points |= space.adjacency[v]
  return frozenset(points)


def joint_rim(space, vs):
  """The joint rim ``O(v_1) ∩ ... ∩ O(v_p)`` of the points ``vs``."""
  vs = frozenset(vs)
  if not vs:
    raise DigitalSpaceError("The joint rim needs at least one point")
  _check_subset(space, vs)
  common = None
  for v in sorted(vs):
    common = set(space.adjacency[v]) if common is None else common & space.adjacency[v]
  return induced(space, common - vs)


def relabel(space, mapping):
  """Rename points through ``mapping``, labels missing from it are kept."""
  renamed = {v: mapping.get(v, v) for v in space.vertices}
  if len(set(renamed.values())) != len(renamed):
    raise DigitalSpaceError("Relabeling is not injective")
  return DigitalSpace(renamed.values(), {(renamed[u], renamed[v]) for u, v in space.edges})


def normalization(space):
  """The order preserving map from the labels of ``space`` onto ``0..N-1``."""
  return {v: index for index, v in enumerate(space.sorted_vertices)}


def normalized(space):
  return relabel(space, normalization(space))


def relabel_apart(space, other):
  """
  Relabel ``other`` so that it shares no label with ``space``.

  The points of ``other`` are moved, in ascending order, onto the contiguous range starting right after the
  largest label of ``space``. Returns the relabeled space and the mapping that was applied.
  """
  start = max(space.vertices) + 1 if space.vertices else 0
  mapping = {v: start + index for index, v in enumerate(other.sorted_vertices)}
  return relabel(other, mapping), mapping


def join(space, other, relabel=False):
  """
  The join ``G ⊕ H``: both spaces plus every edge between them.

  Label collisions are an error unless ``relabel`` is set, in which case ``other`` goes through
  :func:`relabel_apart` first.
  """
  if space.vertices & other.vertices:
    if not relabel:
      raise DigitalSpaceError(
        f"Cannot join spaces sharing points {sorted(space.vertices & other.vertices)}, relabel one of them first"
      )
    other, mapping = relabel_apart(space, other)
    log.debug("Relabeled join operand with %s", mapping)
  cross = {_edge(u, v) for u in space.vertices for v in other.vertices}
  return DigitalSpace(space.vertices | other.vertices, space.edges | other.edges | cross)


def cone(v, space):
  """The cone ``v ⊕ G`` over ``space`` with apex ``v``."""
  if v in space:
    raise DigitalSpaceError(f"Apex {v!r} is already a point of the space")
  return join(DigitalSpace({v}), space)


def connected_sum(space, other, gluing):
  """
  Glue ``other`` to ``space`` by identifying every point ``b = gluing[a]`` of ``other`` with ``a``.

  ``gluing`` must be an isomorphism between the induced subspaces on its keys and on its values. Points of
  ``other`` outside the gluing are relabeled past the labels of ``space``.
  """
  gluing = dict(gluing)
  if not gluing:
    raise PreconditionError("A connected sum needs a nonempty gluing set")
  glued_side = _check_subset(space, gluing)
  image = _check_subset(other, gluing.values())
  if len(image) != len(gluing):
    raise PreconditionError("Gluing map is not injective")
  for a in glued_side:
    for b in glued_side:
      if a < b and space.has_edge(a, b) != other.has_edge(gluing[a], gluing[b]):
        raise PreconditionError(f"Gluing map does not preserve adjacency between {a!r} and {b!r}")

  start = max(space.vertices) + 1
  rest = sorted(other.vertices - image)
  mapping = {b: start + index for index, b in enumerate(rest)}
  mapping.update({b: a for a, b in gluing.items()})
  edges = set(space.edges) | {_edge(mapping[u], mapping[v]) for u, v in other.edges}
  return DigitalSpace(space.vertices | set(mapping.values()), edges)


def components(space):
  """Connected components as frozensets, ordered by their smallest label."""
  return sorted((frozenset(c) for c in nx.connected_components(space.graph)), key=min)


def is_connected(space):
  return bool(space.vertices) and nx.is_connected(space.graph)


def is_complete(space):
  n = len(space.vertices)
  return len(space.edges) == n * (n - 1) // 2


def dominating_points(space):
  """Points adjacent to every other point, in ascending order."""
  others = len(space.vertices) - 1
  return [v for v in space.sorted_vertices if len(space.adjacency[v]) == others]


def clique_number(space):
  if space.is_empty:
    return 0
  return max(len(clique) for clique in nx.find_cliques(space.graph))
