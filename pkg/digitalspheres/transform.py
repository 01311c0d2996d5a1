"""
Homeomorphic and contractible transformations of digital spaces.

A collapse replaces an ``n``-disk by a single point adjacent to its boundary, an expansion replaces the ball of a
point by an ``n``-disk glued along its boundary. Both keep closed manifolds closed manifolds, disks disks and
spheres spheres. Every operation returns the new space together with a :class:`TransformStep` that replays it.
"""

import enum
import logging

import attr
import networkx as nx

from digitalspheres.classify import ContractibilitySearch
from digitalspheres.classify import disk_decomposition
from digitalspheres.classify import is_closed_manifold
from digitalspheres.classify import is_disk
from digitalspheres.config import get_settings
from digitalspheres.exceptions import DigitalSpaceError
from digitalspheres.exceptions import PreconditionError
from digitalspheres.exceptions import SearchBudgetExhausted
from digitalspheres.space import DigitalSpace
from digitalspheres.space import closed_neighborhood
from digitalspheres.space import induced
from digitalspheres.space import joint_rim
from digitalspheres.space import normalization
from digitalspheres.space import relabel
from digitalspheres.space import remove
from digitalspheres.space import rim


log = logging.getLogger(__name__)


class StepKind(enum.Enum):
  COLLAPSE_DISK = "collapse-disk"
  EXPAND_BALL = "expand-ball"
  DELETE_POINT = "ct-delete-point"
  GLUE_POINT = "ct-glue-point"
  DELETE_EDGE = "ct-delete-edge"
  GLUE_EDGE = "ct-glue-edge"


CONTRACTIBLE_KINDS = frozenset({StepKind.DELETE_POINT, StepKind.GLUE_POINT, StepKind.DELETE_EDGE, StepKind.GLUE_EDGE})


def _sorted_tuple(values):
  return tuple(sorted(values))


def _pairs(values):
  if isinstance(values, dict):
    values = values.items()
  return tuple(sorted((int(a), int(b)) for a, b in values))


def _optional_edge(value):
  if value is None:
    return None
  u, v = value
  return (min(u, v), max(u, v))


@attr.s(frozen=True)
class TransformStep:
  """
  One replayable transformation.

  :keyword StepKind kind:
      What the step does
  :keyword int n:
      Dimension of the disk for collapse/expand steps
  :keyword int vertex:
      The fresh point of a collapse, the replaced point of an expansion, the deleted or glued point of a
      contractible point move
  :keyword tuple edge:
      The deleted or glued edge of a contractible edge move
  :keyword tuple boundary:
      Boundary of the disk for collapse/expand steps, attachment set of a glued point
  :keyword tuple interior:
      Interior of the collapsed disk, or the labels the disk interior receives on expansion
  :keyword DigitalSpace disk:
      The disk of an expansion, labeled ``0..N-1``
  :keyword tuple glue:
      ``(disk label, rim label)`` pairs identifying the disk boundary with the rim
  :keyword tuple interior_map:
      ``(disk label, new label)`` pairs for the disk interior
  """

  kind = attr.ib(converter=StepKind)
  n = attr.ib(default=None)
  vertex = attr.ib(default=None)
  edge = attr.ib(default=None, converter=_optional_edge)
  boundary = attr.ib(default=(), converter=_sorted_tuple)
  interior = attr.ib(default=(), converter=_sorted_tuple)
  disk = attr.ib(default=None)
  glue = attr.ib(default=(), converter=_pairs)
  interior_map = attr.ib(default=(), converter=_pairs)

  @classmethod
  def delete_point(cls, v):
    return cls(StepKind.DELETE_POINT, vertex=v)

  @classmethod
  def glue_point(cls, v, attach):
    return cls(StepKind.GLUE_POINT, vertex=v, boundary=attach)

  @classmethod
  def delete_edge(cls, u, v):
    return cls(StepKind.DELETE_EDGE, edge=(u, v))

  @classmethod
  def glue_edge(cls, u, v):
    return cls(StepKind.GLUE_EDGE, edge=(u, v))

  @property
  def is_contractible_move(self):
    return self.kind in CONTRACTIBLE_KINDS

  def inverse(self, pre_state):
    """The step undoing this one, given the space this step was applied to."""
    if self.kind is StepKind.COLLAPSE_DISK:
      disk = induced(pre_state, set(self.boundary) | set(self.interior))
      index = normalization(disk)
      return TransformStep(
        StepKind.EXPAND_BALL,
        n=self.n,
        vertex=self.vertex,
        boundary=self.boundary,
        interior=self.interior,
        disk=relabel(disk, index),
        glue={index[b]: b for b in self.boundary},
        interior_map={index[i]: i for i in self.interior},
      )
    if self.kind is StepKind.EXPAND_BALL:
      return TransformStep(
        StepKind.COLLAPSE_DISK,
        n=self.n,
        vertex=self.vertex,
        boundary=[label for _, label in self.glue],
        interior=[label for _, label in self.interior_map],
      )
    if self.kind is StepKind.DELETE_POINT:
      return TransformStep.glue_point(self.vertex, pre_state.neighbors(self.vertex))
    if self.kind is StepKind.GLUE_POINT:
      return TransformStep.delete_point(self.vertex)
    if self.kind is StepKind.DELETE_EDGE:
      return TransformStep.glue_edge(*self.edge)
    return TransformStep.delete_edge(*self.edge)


def _smallest_unused(taken, count=1):
  labels = []
  candidate = 0
  while len(labels) < count:
    if candidate not in taken:
      labels.append(candidate)
    candidate += 1
  return labels


def _check_ambient(space, n, interior, budget):
  if is_closed_manifold(space, n, budget):
    return
  ambient = disk_decomposition(space, n, budget)
  if not ambient.is_disk:
    raise PreconditionError(f"The ambient space is neither a closed {n}-manifold nor an {n}-disk")
  outside = set(interior) - ambient.interior
  if outside:
    raise PreconditionError(f"Points {sorted(outside)} are not interior points of the ambient {n}-disk")


def _collapse(space, boundary, interior, n, new_label):
  remaining = space.vertices - interior
  if new_label is None:
    (new_label,) = _smallest_unused(remaining)
  elif new_label in remaining:
    raise PreconditionError(f"New point label {new_label} is already in use")
  edges = {(u, v) for u, v in space.edges if u not in interior and v not in interior}
  edges |= {(min(b, new_label), max(b, new_label)) for b in boundary}
  result = DigitalSpace(remaining | {new_label}, edges)
  step = TransformStep(StepKind.COLLAPSE_DISK, n=n, vertex=new_label, boundary=boundary, interior=interior)
  log.debug("Collapsed %d interior points of an %d-disk into point %s", len(interior), n, new_label)
  return result, step


def collapse_disk(space: DigitalSpace, disk_points, n: int, new_label=None, budget=None):
  """
  Replace the ``n``-disk spanned by ``disk_points`` with a single point adjacent to exactly its boundary.

  The ambient space must be a closed ``n``-manifold, or an ``n``-disk containing the disk interior in its own
  interior. The new point takes the smallest label left free, unless ``new_label`` is given.
  """
  disk_points = frozenset(disk_points)
  decomposition = disk_decomposition(induced(space, disk_points), n, budget)
  if not decomposition.is_disk:
    raise PreconditionError(f"Points {sorted(disk_points)} do not span an {n}-disk")
  if not decomposition.interior:
    raise PreconditionError(f"The {n}-disk on {sorted(disk_points)} has no interior point")
  _check_ambient(space, n, decomposition.interior, budget)
  return _collapse(space, decomposition.boundary, decomposition.interior, n, new_label)


def least_gluing(boundary: DigitalSpace, target: DigitalSpace):
  """The isomorphism ``boundary -> target`` whose images, read in ascending boundary order, are smallest."""
  if len(boundary) != len(target) or len(boundary.edges) != len(target.edges):
    return None
  order = boundary.sorted_vertices
  matcher = nx.algorithms.isomorphism.GraphMatcher(boundary.graph, target.graph)
  best = None
  for mapping in matcher.isomorphisms_iter():
    images = tuple(mapping[b] for b in order)
    if best is None or images < best:
      best = images
  if best is None:
    return None
  return dict(zip(order, best, strict=True))


def _check_gluing(boundary, target, gluing):
  if set(gluing) != boundary.vertices:
    raise PreconditionError(f"Gluing must be defined on the disk boundary {sorted(boundary.vertices)}")
  if set(gluing.values()) != target.vertices or len(set(gluing.values())) != len(gluing):
    raise PreconditionError(f"Gluing must be a bijection onto the rim {sorted(target.vertices)}")
  for a in boundary.vertices:
    for b in boundary.vertices:
      if a < b and boundary.has_edge(a, b) != target.has_edge(gluing[a], gluing[b]):
        raise PreconditionError(f"Gluing does not preserve adjacency between boundary points {a} and {b}")


def expand_ball(space: DigitalSpace, v, disk: DigitalSpace, n: int, gluing=None, interior_labels=None, budget=None):
  """
  Replace point ``v`` with the ``n``-disk ``disk``, identifying the disk boundary with the rim of ``v``.

  Without ``gluing`` the lexicographically least boundary isomorphism is used. Interior points of the disk
  receive the smallest free labels unless ``interior_labels`` maps them explicitly.
  """
  if v not in space:
    raise DigitalSpaceError(f"Point {v!r} is not in the space")
  decomposition = disk_decomposition(disk, n, budget)
  if not decomposition.is_disk:
    raise PreconditionError(f"The replacement is not an {n}-disk")
  _check_ambient(space, n, {v}, budget)
  ring = rim(space, v)

  index = normalization(disk)
  labeled = relabel(disk, index)
  boundary = induced(labeled, {index[b] for b in decomposition.boundary})
  interior = sorted(index[i] for i in decomposition.interior)

  if gluing is None:
    glue = least_gluing(boundary, ring)
    if glue is None:
      raise PreconditionError(f"The disk boundary is not isomorphic to the rim of {v}")
  else:
    glue = {index[b]: target for b, target in dict(gluing).items() if b in index}
    if len(glue) != len(dict(gluing)):
      raise PreconditionError("Gluing references points outside the disk")
    _check_gluing(boundary, ring, glue)

  kept = space.vertices - {v}
  if interior_labels is None:
    interior_map = dict(zip(interior, _smallest_unused(kept, len(interior)), strict=True))
  else:
    interior_map = {index[i]: label for i, label in dict(interior_labels).items() if i in index}
    if sorted(interior_map) != interior:
      raise PreconditionError("Interior labels must cover exactly the disk interior")
    labels = set(interior_map.values())
    if len(labels) != len(interior_map) or labels & kept:
      raise PreconditionError("Interior labels collide with each other or with existing points")

  mapping = {**glue, **interior_map}
  edges = {(a, b) for a, b in space.edges if v not in (a, b)}
  edges |= {(min(mapping[a], mapping[b]), max(mapping[a], mapping[b])) for a, b in labeled.edges}
  result = DigitalSpace(kept | set(interior_map.values()), edges)
  step = TransformStep(
    StepKind.EXPAND_BALL,
    n=n,
    vertex=v,
    boundary=ring.vertices,
    interior=interior_map.values(),
    disk=labeled,
    glue=glue,
    interior_map=interior_map,
  )
  log.debug("Expanded point %s into an %d-disk with %d interior points", v, n, len(interior))
  return result, step


def contractible_step(space: DigitalSpace, step: TransformStep, budget=None) -> DigitalSpace:
  """Apply a contractible point/edge deletion or gluing after checking its rim condition."""
  search = ContractibilitySearch(budget)
  if step.kind is StepKind.DELETE_POINT:
    v = step.vertex
    if v not in space:
      raise DigitalSpaceError(f"Point {v!r} is not in the space")
    if not search.point_deletable(space, v):
      raise PreconditionError(f"Rim of {v} on {sorted(space.neighbors(v))} is not contractible")
    return remove(space, {v})
  if step.kind is StepKind.GLUE_POINT:
    v, attach = step.vertex, frozenset(step.boundary)
    if v in space:
      raise PreconditionError(f"Point {v!r} is already in the space")
    if not attach or not search.is_contractible(induced(space, attach)):
      raise PreconditionError(f"Attachment subspace on {sorted(attach)} is not contractible")
    return DigitalSpace(space.vertices | {v}, space.edges | {(min(a, v), max(a, v)) for a in attach})
  if step.kind is StepKind.DELETE_EDGE:
    u, v = step.edge
    if not space.has_edge(u, v):
      raise PreconditionError(f"There is no edge {u}-{v} to delete")
    if not search.edge_deletable(space, u, v):
      rim = sorted(joint_rim(space, {u, v}).vertices)
      raise PreconditionError(f"Joint rim of {u},{v} on {rim} is not contractible")
    return DigitalSpace(space.vertices, space.edges - {(u, v)})
  if step.kind is StepKind.GLUE_EDGE:
    u, v = step.edge
    if u not in space or v not in space:
      raise DigitalSpaceError(f"Edge {u}-{v} references a point outside the space")
    if space.has_edge(u, v):
      raise PreconditionError(f"Edge {u}-{v} is already present")
    common = joint_rim(space, {u, v})
    if not search.is_contractible(common):
      raise PreconditionError(f"Joint rim of {u},{v} on {sorted(common.vertices)} is not contractible")
    return DigitalSpace(space.vertices, space.edges | {(u, v)})
  raise PreconditionError(f"{step.kind.value} is not a contractible transformation")


def apply_step(space: DigitalSpace, step: TransformStep, budget=None) -> DigitalSpace:
  """Replay ``step`` on ``space``, re-checking every precondition."""
  if step.kind is StepKind.COLLAPSE_DISK:
    result, replayed = collapse_disk(
      space, set(step.boundary) | set(step.interior), step.n, new_label=step.vertex, budget=budget
    )
    if replayed.boundary != step.boundary or replayed.interior != step.interior:
      raise PreconditionError(
        f"Collapse boundary/interior {replayed.boundary}/{replayed.interior} "
        f"differ from the recorded {step.boundary}/{step.interior}"
      )
    return result
  if step.kind is StepKind.EXPAND_BALL:
    result, _ = expand_ball(
      space,
      step.vertex,
      step.disk,
      step.n,
      gluing=dict(step.glue),
      interior_labels=dict(step.interior_map),
      budget=budget,
    )
    return result
  return contractible_step(space, step, budget)


class ConnectedGrowth:
  """Connected vertex sets grown one neighbour at a time, pruned once ``size(set)`` exceeds ``cap``."""

  def __init__(self, space, cap, size=len, forbidden=frozenset()):
    self.space = space
    self.cap = cap
    self.size = size
    self.forbidden = frozenset(forbidden)
    self.truncated = False

  def sets(self, seed=None):
    if seed is None:
      frontier = [frozenset([v]) for v in reversed(self.space.sorted_vertices) if v not in self.forbidden]
    else:
      frontier = [frozenset(seed)]
    seen = set()
    while frontier:
      current = frontier.pop()
      if current in seen:
        continue
      seen.add(current)
      if self.size(current) > self.cap:
        self.truncated = True
        continue
      yield current
      grow = closed_neighborhood(self.space, current) - current - self.forbidden
      frontier.extend(current | {w} for w in sorted(grow, reverse=True))


def interior_of(space, points):
  """Points of ``points`` whose whole closed neighbourhood lies inside ``points``."""
  return frozenset(v for v in points if space.adjacency[v] <= points)


def _manifold_disks(space, n, cap, budget):
  found = {}

  def consider(interior):
    points = closed_neighborhood(space, interior)
    if len(points) > cap or points in found or interior_of(space, points) != interior:
      return
    if is_disk(induced(space, points), n, budget):
      found[points] = interior

  for v in space.sorted_vertices:
    consider(frozenset([v]))
  for u, v in space.sorted_edges:
    consider(frozenset([u, v]))
  growth = ConnectedGrowth(space, cap, size=lambda interior: len(closed_neighborhood(space, interior)))
  for interior in growth.sets():
    consider(interior)
  return found, not growth.truncated


def _generic_disks(space, n, cap, budget):
  found = {}
  growth = ConnectedGrowth(space, cap)
  for points in growth.sets():
    subspace = induced(space, points)
    if is_disk(subspace, n, budget):
      found[points] = disk_decomposition(subspace, n, budget).interior
  return found, not growth.truncated


def disk_search(space: DigitalSpace, n: int, size_cap=None, budget=None):
  """
  ``({disk points: disk interior}, complete)`` for the ``n``-disks found within ``size_cap`` points.

  ``complete`` is false when some candidate was skipped for exceeding the cap.
  """
  cap = size_cap if size_cap is not None else get_settings().disk_size_cap
  if space.is_empty:
    return {}, True
  if n >= 1 and is_closed_manifold(space, n, budget):
    return _manifold_disks(space, n, cap, budget)
  return _generic_disks(space, n, cap, budget)


def disk_candidates(space: DigitalSpace, n: int, size_cap=None, budget=None) -> dict:
  """``{disk points: disk interior}`` for every ``n``-disk found within ``size_cap`` points."""
  found, _ = disk_search(space, n, size_cap, budget)
  return found


def find_disks(space: DigitalSpace, n: int, size_cap=None, budget=None) -> list:
  """
  Vertex sets spanning ``n``-disks, ordered by size then lexicographically.

  Balls of points are examined first, then unions of two adjacent balls, then every connected candidate within
  ``size_cap`` points. In a closed manifold the interior points of a disk keep their whole rim inside the disk,
  so candidates there are the closed neighbourhoods of connected interiors.
  """
  found = disk_candidates(space, n, size_cap, budget)
  return sorted(found, key=lambda points: (len(points), sorted(points)))


@attr.s(frozen=True)
class TransformTrace:
  initial = attr.ib()
  steps = attr.ib(converter=tuple)
  final = attr.ib()
  n = attr.ib(default=None)
  predicate = attr.ib(default=None)

  @predicate.validator
  def _validate_predicate(self, attribute, value):
    if value not in (None, "closed-manifold", "disk"):
      raise ValueError(f"Unknown trace predicate {value!r}")

  def __len__(self):
    return len(self.steps)

  def states(self, budget=None):
    state = self.initial
    yield state
    for step in self.steps:
      state = apply_step(state, step, budget)
      yield state

  def replay(self, budget=None) -> DigitalSpace:
    *_, state = self.states(budget)
    return state

  def check_state(self, state, budget=None):
    if self.predicate == "closed-manifold":
      return is_closed_manifold(state, self.n, budget)
    if self.predicate == "disk":
      return disk_decomposition(state, self.n, budget).is_disk
    return True

  def validate(self, budget=None):
    """Replay every step, checking the recorded predicate on each intermediate space and the final space."""
    state = None
    for position, state in enumerate(self.states(budget)):
      if not self.check_state(state, budget):
        raise PreconditionError(f"State after step {position} is not a {self.predicate}")
    if state != self.final:
      raise PreconditionError("Replaying the trace does not reproduce its final space")
    return True


def compress(space: DigitalSpace, n: int, search_cap=None, budget=None):
  """
  Collapse disks with more than one interior point until none is found within ``search_cap``.

  The disk with the largest interior is collapsed first, ties go to the lexicographically smallest vertex set.
  Every step removes at least one point, so the loop ends.
  """
  if not is_closed_manifold(space, n, budget):
    raise PreconditionError(f"Only closed {n}-manifolds can be compressed")
  cap = search_cap if search_cap is not None else get_settings().disk_size_cap
  state = space
  steps = []
  while True:
    found, _ = _manifold_disks(state, n, cap, budget)
    choices = [(-len(interior), sorted(points), points) for points, interior in found.items() if len(interior) > 1]
    if not choices:
      break
    *_, points = min(choices)
    interior = found[points]
    state, step = _collapse(state, points - interior, interior, n, None)
    steps.append(step)
    log.info(
      "Compression step %d: collapsed %d interior points, %d points left", len(steps), len(interior), len(state)
    )
  log.info("Compressed %d points down to %d in %d steps", len(space), len(state), len(steps))
  return state, TransformTrace(space, steps, state, n=n, predicate="closed-manifold")


def edge_subdivision_disk(space: DigitalSpace, v, u) -> DigitalSpace:
  """
  The ``n``-disk ``U(v)`` with edge ``vu`` subdivided by a fresh point adjacent to ``v``, ``u`` and the joint
  rim of ``v`` and ``u``. Its boundary is the rim of ``v``, its interior ``v`` and the fresh point.
  """
  if not space.has_edge(v, u):
    raise PreconditionError(f"Points {v} and {u} are not adjacent")
  w = max(space.vertices) + 1
  ring = space.neighbors(v)
  common = ring & space.neighbors(u)
  ball = induced(space, ring | {v})
  edges = (ball.edges - {(min(u, v), max(u, v))}) | {(v, w), (u, w)} | {(x, w) for x in common}
  return DigitalSpace(ball.vertices | {w}, edges)


def random_expansion(space: DigitalSpace, n: int, rng, budget=None):
  """Expand a random point by subdividing one of its edges, picked with ``rng``."""
  v = rng.choice(space.sorted_vertices)
  u = rng.choice(sorted(space.neighbors(v)))
  disk = edge_subdivision_disk(space, v, u)
  return expand_ball(space, v, disk, n, gluing={b: b for b in space.neighbors(v)}, budget=budget)


def random_collapse(space: DigitalSpace, n: int, rng, size_cap=None, budget=None):
  disks = find_disks(space, n, size_cap, budget)
  if not disks:
    raise PreconditionError(f"No {n}-disk found to collapse")
  return collapse_disk(space, rng.choice(disks), n, budget=budget)


def contractible_excursion(space: DigitalSpace, rng, budget=None):
  """
  Glue a fresh point over the ball of a random point, delete some of its edges, then delete it again.

  Returns the list of ``(space, step)`` pairs, the last space equals ``space``.
  """
  x = rng.choice(space.sorted_vertices)
  p = max(space.vertices) + 1
  pairs = []
  step = TransformStep.glue_point(p, space.neighbors(x) | {x})
  state = contractible_step(space, step, budget)
  pairs.append((state, step))
  search = ContractibilitySearch(budget)
  for y in sorted(space.neighbors(x)):
    if rng.random() < 0.5 and search.edge_deletable(state, p, y):
      step = TransformStep.delete_edge(p, y)
      state = contractible_step(state, step, budget)
      pairs.append((state, step))
  step = TransformStep.delete_point(p)
  state = contractible_step(state, step, budget)
  pairs.append((state, step))
  return pairs


def random_walk(space: DigitalSpace, n: int, rng, count: int, size_cap=None, budget=None) -> TransformTrace:
  """At least ``count`` random steps mixing expansions, collapses and contractible excursions."""
  state = space
  steps = []
  while len(steps) < count:
    roll = rng.random()
    if roll < 0.4:
      pairs = [random_expansion(state, n, rng, budget)]
    elif roll < 0.7:
      pairs = [random_collapse(state, n, rng, size_cap, budget)]
    else:
      pairs = contractible_excursion(state, rng, budget)
    for state, step in pairs:
      steps.append(step)
  return TransformTrace(space, steps, state, n=n)


def _thinning_moves(state, rng):
  moves = [TransformStep.delete_point(v) for v in state.sorted_vertices]
  moves.extend(TransformStep.delete_edge(u, v) for u, v in state.sorted_edges)
  rng.shuffle(moves)
  return moves


def _deletable(state, step, budget):
  search = ContractibilitySearch(budget)
  try:
    if step.kind is StepKind.DELETE_POINT:
      return step.vertex in state and search.point_deletable(state, step.vertex)
    return search.edge_deletable(state, *step.edge)
  except SearchBudgetExhausted:
    log.debug("Skipping %s, its rim check ran out of budget", step.kind.value)
    return False


def _thin_once(space, rng, budget):
  state = space
  steps = []
  changed = True
  while changed:
    changed = False
    for step in _thinning_moves(state, rng):
      if not _deletable(state, step, budget):
        continue
      if step.kind is StepKind.DELETE_POINT:
        state = remove(state, {step.vertex})
      else:
        state = DigitalSpace(state.vertices, state.edges - {step.edge})
      steps.append(step)
      changed = True
  return state, steps


def contractible_thinning(space: DigitalSpace, n: int, rng, attempts=8, budget=None):
  """
  Delete points with contractible rims and edges with contractible joint rims, in random order, until none is
  left. A closed ``n``-manifold admits no such deletion, so it is where a successful run stops.

  A run that gets stuck on something else is restarted from ``space`` with the next draws of ``rng``, at most
  ``attempts`` times. Returns the manifold and the trace of ``ct-delete-point``/``ct-delete-edge`` steps leading
  to it.
  """
  if space.is_empty:
    raise PreconditionError("Cannot thin the empty space")
  if is_closed_manifold(space, n, budget):
    return space, TransformTrace(space, [], space, n=n)
  for attempt in range(1, attempts + 1):
    state, steps = _thin_once(space, rng, budget)
    if is_closed_manifold(state, n, budget):
      log.info(
        "Thinned %d points down to a closed %d-manifold of %d points in %d steps (attempt %d)",
        len(space),
        n,
        len(state),
        len(steps),
        attempt,
      )
      return state, TransformTrace(space, steps, state, n=n)
    log.info(
      "Thinning attempt %d got stuck at %d points that do not form a closed %d-manifold", attempt, len(state), n
    )
  raise PreconditionError(f"No closed {n}-manifold reached by thinning {space!r} in {attempts} attempts")
