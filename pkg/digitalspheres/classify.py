"""
Recursive classification of digital spaces.

* normal dimension: the empty space has dimension -1, two non-adjacent points dimension 0, a connected space
  whose rims all have dimension ``n-1`` has dimension ``n``;
* contractibility: reduction to a single point by deleting points with contractible rims and edges with
  contractible joint rims;
* closed ``n``-manifolds, ``n``-spheres and ``n``-disks with their boundary/interior split.

Proven results are memoized in the process wide :class:`~digitalspheres.cache.ResultCache` under the canonical
key of the space. A search that runs out of budget raises :class:`~digitalspheres.exceptions.SearchBudgetExhausted`
and nothing is cached for it.
"""

import enum
import logging

import attr

from digitalspheres.cache import get_result_cache
from digitalspheres.canonical import canonical_key
from digitalspheres.config import get_settings
from digitalspheres.exceptions import PreconditionError
from digitalspheres.exceptions import SearchBudgetExhausted
from digitalspheres.invariants import euler_characteristic
from digitalspheres.space import DigitalSpace
from digitalspheres.space import clique_number
from digitalspheres.space import dominating_points
from digitalspheres.space import is_connected
from digitalspheres.space import joint_rim
from digitalspheres.space import remove
from digitalspheres.space import rim


log = logging.getLogger(__name__)

NOT_NORMAL = "not-normal"


class Status(enum.Enum):
  CONTRACTIBLE = "contractible"
  NOT_CONTRACTIBLE = "not-contractible"
  INDETERMINATE = "indeterminate"


class MoveKind(enum.Enum):
  DELETE_POINT = "delete-point"
  DELETE_EDGE = "delete-edge"


@attr.s(frozen=True)
class ContractionMove:
  kind = attr.ib(converter=MoveKind)
  points = attr.ib(converter=tuple)

  def apply(self, space):
    if self.kind is MoveKind.DELETE_POINT:
      return remove(space, self.points)
    u, v = self.points
    return DigitalSpace(space.vertices, space.edges - {(min(u, v), max(u, v))})

  def to_text(self):
    if self.kind is MoveKind.DELETE_POINT:
      return f"delete-point v={self.points[0]}"
    return f"delete-edge u={self.points[0]} v={self.points[1]}"


@attr.s(frozen=True)
class ContractionCertificate:
  """Deletions that reduce the source space to a single point, in the order they are applied."""

  moves = attr.ib(converter=tuple, factory=tuple)

  def __len__(self):
    return len(self.moves)

  def to_list(self):
    return [move.to_text() for move in self.moves]


@attr.s(frozen=True)
class ContractionResult:
  status = attr.ib(validator=attr.validators.instance_of(Status))
  certificate = attr.ib(default=None)
  explored = attr.ib(default=0)

  @certificate.validator
  def _validate_certificate(self, attribute, value):
    if (value is not None) != (self.status is Status.CONTRACTIBLE):
      raise ValueError("A certificate is present exactly when the space is contractible")

  @property
  def contractible(self):
    """``True``, ``False`` or ``None`` when the search was cut short."""
    if self.status is Status.INDETERMINATE:
      return None
    return self.status is Status.CONTRACTIBLE

  def to_dict(self):
    return {
      "status": self.status.value,
      "contractible": self.contractible,
      "explored": self.explored,
      "certificate": self.certificate.to_list() if self.certificate is not None else None,
    }


def _cone_moves(space, apex):
  return [ContractionMove(MoveKind.DELETE_POINT, (v,)) for v in space.sorted_vertices if v != apex]


class ContractibilitySearch:
  """
  Bounded search for a sequence of contractible deletions.

  Moves are tried in a fixed order: points by ascending rim size then label, edges by ascending joint rim size
  then endpoints. A state with a dominating point is a cone and finishes directly. States proven to be dead
  ends are remembered so backtracking never explores them twice. Nested rim queries share the budget.
  """

  NAMESPACE = "contractible"

  def __init__(self, budget=None, cache=None):
    self.budget = budget if budget is not None else get_settings().contractible_budget
    self.cache = cache if cache is not None else get_result_cache()
    self.explored = 0
    self._memo = {}

  def _tick(self):
    self.explored += 1
    if self.explored > self.budget:
      raise SearchBudgetExhausted(self.budget, self.explored)

  @staticmethod
  def quick_verdict(space):
    """Necessary and sufficient shortcuts, ``None`` when the search has to run."""
    npoints = len(space)
    if npoints == 0:
      return False
    if npoints == 1:
      return True
    if not is_connected(space):
      return False
    if dominating_points(space):
      return True
    if euler_characteristic(space) != 1:
      return False
    return None

  def is_contractible(self, space) -> bool:
    verdict = self._memo.get(space)
    if verdict is not None:
      return verdict
    verdict = self.quick_verdict(space)
    if verdict is None:
      key = canonical_key(space)
      found, verdict = self.cache.lookup(self.NAMESPACE, key)
      if not found:
        verdict = self._search(space) is not None
        self.cache.put(self.NAMESPACE, key, verdict)
    self._memo[space] = verdict
    return verdict

  def reduce(self, space):
    """Return the deletions reducing ``space`` to a point, or ``None`` when it is not contractible."""
    if len(space) == 1:
      return []
    verdict = self.quick_verdict(space)
    if verdict is False:
      return None
    apexes = dominating_points(space)
    if apexes:
      return _cone_moves(space, apexes[0])
    key = canonical_key(space)
    found, cached = self.cache.lookup(self.NAMESPACE, key)
    if found and not cached:
      return None
    moves = self._search(space)
    self.cache.put(self.NAMESPACE, key, moves is not None)
    return moves

  def point_deletable(self, space, v):
    return self.is_contractible(rim(space, v))

  def edge_deletable(self, space, u, v):
    return space.has_edge(u, v) and self.is_contractible(joint_rim(space, {u, v}))

  def _moves(self, state):
    rims = sorted((len(state.adjacency[v]), v) for v in state.vertices)
    for _, v in rims:
      if self.point_deletable(state, v):
        yield ContractionMove(MoveKind.DELETE_POINT, (v,))
    joints = sorted((len(state.adjacency[u] & state.adjacency[v]), u, v) for u, v in state.edges)
    for size, u, v in joints:
      if size and self.edge_deletable(state, u, v):
        yield ContractionMove(MoveKind.DELETE_EDGE, (u, v))

  @staticmethod
  def _finish(state):
    if len(state) == 1:
      return []
    apexes = dominating_points(state)
    if apexes:
      return _cone_moves(state, apexes[0])
    return None

  def _search(self, space):
    self._tick()
    tail = self._finish(space)
    if tail is not None:
      return tail
    dead = set()
    stack = [(space, None, self._moves(space))]
    while stack:
      state, _, moves = stack[-1]
      move = next(moves, None)
      if move is None:
        dead.add(state)
        stack.pop()
        continue
      child = move.apply(state)
      if child in dead:
        continue
      self._tick()
      tail = self._finish(child)
      if tail is not None:
        path = [entry[1] for entry in stack[1:]]
        log.debug("Reduced %r to a point after exploring %d states", space, self.explored)
        return [*path, move, *tail]
      stack.append((child, move, self._moves(child)))
    log.debug("No reduction of %r exists, explored %d states", space, self.explored)
    return None


def is_contractible(space: DigitalSpace, budget=None) -> ContractionResult:
  """
  Decide whether ``space`` reduces to a single point by contractible deletions.

  Budget exhaustion gives :attr:`Status.INDETERMINATE`, never a negative verdict.
  """
  if space.is_empty:
    raise PreconditionError("Contractibility is only defined for nonempty spaces")
  search = ContractibilitySearch(budget)
  try:
    moves = search.reduce(space)
  except SearchBudgetExhausted as exc:
    log.warning("Contractibility of %r is indeterminate: %s", space, exc)
    return ContractionResult(Status.INDETERMINATE, explored=search.explored)
  if moves is None:
    return ContractionResult(Status.NOT_CONTRACTIBLE, explored=search.explored)
  return ContractionResult(Status.CONTRACTIBLE, ContractionCertificate(moves), explored=search.explored)


def contractible(space: DigitalSpace, budget=None) -> bool:
  """Like :func:`is_contractible` but raises :class:`SearchBudgetExhausted` instead of answering indeterminate."""
  if space.is_empty:
    return False
  return ContractibilitySearch(budget).is_contractible(space)


def replay_certificate(space: DigitalSpace, certificate: ContractionCertificate, budget=None) -> DigitalSpace:
  """Re-check and apply every move of ``certificate``, returning the final single point space."""
  search = ContractibilitySearch(budget)
  state = space
  for step, move in enumerate(certificate.moves, start=1):
    if move.kind is MoveKind.DELETE_POINT:
      (v,) = move.points
      if v not in state or not search.point_deletable(state, v):
        raise PreconditionError(f"Move {step} ({move.to_text()}): rim of {v} is not contractible")
    else:
      u, v = move.points
      if not search.edge_deletable(state, u, v):
        raise PreconditionError(f"Move {step} ({move.to_text()}): joint rim of {u},{v} is not contractible")
    state = move.apply(state)
  if len(state) != 1:
    raise PreconditionError(f"Certificate ends with {len(state)} points instead of one")
  return state


def normal_dimension(space: DigitalSpace):
  """The normal dimension of ``space``, or ``None`` when it is not a normal space."""
  npoints = len(space)
  if npoints == 0:
    return -1
  if npoints == 2 and not space.edges:
    return 0
  if npoints == 1 or not is_connected(space):
    return None
  cache = get_result_cache()
  key = canonical_key(space)
  found, dimension = cache.lookup("normal_dimension", key)
  if found:
    return dimension
  dimensions = set()
  for v in space:
    dimensions.add(normal_dimension(rim(space, v)))
    if None in dimensions or len(dimensions) > 1:
      break
  dimension = None
  if len(dimensions) == 1:
    (rim_dimension,) = dimensions
    if rim_dimension is not None and rim_dimension >= 0:
      dimension = rim_dimension + 1
  cache.put("normal_dimension", key, dimension)
  return dimension


def is_closed_manifold(space: DigitalSpace, n: int, budget=None) -> bool:
  """Connected and every rim is an ``(n-1)``-sphere."""
  if n < 1:
    raise PreconditionError(f"Closed manifolds are checked for n >= 1, got n={n}")
  # a closed n-manifold has at least as many points as the minimal n-sphere
  if len(space) < 2 * n + 2 or not is_connected(space):
    return False
  return all(is_sphere(rim(space, v), n - 1, budget) for v in space)


def _is_zero_sphere(space):
  return len(space) == 2 and not space.edges


def is_sphere(space: DigitalSpace, n: int, budget=None) -> bool:
  """A closed ``n``-manifold with a point whose deletion leaves a contractible space."""
  if n < 0:
    raise PreconditionError(f"Sphere dimension must be non-negative, got n={n}")
  if n == 0:
    return _is_zero_sphere(space)
  if len(space) < 2 * n + 2 or not is_connected(space):
    return False
  cache = get_result_cache()
  namespace = f"sphere:{n}"
  key = canonical_key(space)
  found, verdict = cache.lookup(namespace, key)
  if not found:
    verdict = _sphere_witness(space, n, budget) is not None
    cache.put(namespace, key, verdict)
  return verdict


def _sphere_witness(space, n, budget):
  if not is_closed_manifold(space, n, budget):
    return None
  for v in space:
    if contractible(remove(space, {v}), budget):
      return v
  return None


def sphere_witness(space: DigitalSpace, n: int, budget=None):
  """The smallest point ``v`` with ``space - v`` contractible when ``space`` is an ``n``-sphere, else ``None``."""
  if n < 0:
    raise PreconditionError(f"Sphere dimension must be non-negative, got n={n}")
  if n == 0:
    return space.sorted_vertices[0] if _is_zero_sphere(space) else None
  return _sphere_witness(space, n, budget)


@attr.s(frozen=True)
class DiskDecomposition:
  is_disk = attr.ib()
  boundary = attr.ib(converter=frozenset)
  interior = attr.ib(converter=frozenset)

  def to_dict(self):
    return {"is_disk": self.is_disk, "boundary": sorted(self.boundary), "interior": sorted(self.interior)}


def _glued_cone(space, boundary):
  apex = max(space.vertices) + 1
  return DigitalSpace(space.vertices | {apex}, space.edges | {(b, apex) for b in boundary})


def _split(space, n, budget, stop_early):
  boundary, interior, uncovered = set(), set(), set()
  for v in space:
    ring = rim(space, v)
    if is_sphere(ring, n - 1, budget):
      interior.add(v)
    elif is_disk(ring, n - 1, budget):
      boundary.add(v)
    else:
      uncovered.add(v)
      if stop_early:
        break
  return boundary, interior, uncovered


def _disk_verdict(space, n, boundary, uncovered, budget):
  if uncovered or not boundary:
    return False
  if not is_closed_manifold(_glued_cone(space, boundary), n, budget):
    return False
  return contractible(space, budget)


def is_disk(space: DigitalSpace, n: int, budget=None) -> bool:
  if n < 0:
    raise PreconditionError(f"Disk dimension must be non-negative, got n={n}")
  if n == 0:
    return len(space) == 1
  # a minimal n-disk is a cone over the minimal (n-1)-sphere
  if len(space) < 2 * n + 1 or not is_connected(space):
    return False
  cache = get_result_cache()
  namespace = f"disk:{n}"
  key = canonical_key(space)
  found, verdict = cache.lookup(namespace, key)
  if not found:
    boundary, _, uncovered = _split(space, n, budget, stop_early=True)
    verdict = _disk_verdict(space, n, boundary, uncovered, budget)
    cache.put(namespace, key, verdict)
  return verdict


def disk_decomposition(space: DigitalSpace, n: int, budget=None) -> DiskDecomposition:
  """
  Split ``space`` into boundary points (rim is an ``(n-1)``-disk) and interior points (rim is an
  ``(n-1)``-sphere), and decide whether it is an ``n``-disk.

  A disk is contractible, covered by its boundary and interior, and turns into a closed ``n``-manifold once a
  fresh point adjacent to exactly the boundary is attached.
  """
  if n < 0:
    raise PreconditionError(f"Disk dimension must be non-negative, got n={n}")
  if space.is_empty:
    raise PreconditionError("Disk decomposition needs a nonempty space")
  if n == 0:
    single = len(space) == 1
    return DiskDecomposition(single, frozenset(), space.vertices if single else frozenset())
  boundary, interior, _ = _split(space, n, budget, stop_early=False)
  return DiskDecomposition(is_disk(space, n, budget), boundary, interior)


@attr.s(frozen=True)
class Classification:
  normal_dimension = attr.ib()
  dimension = attr.ib()
  is_closed_manifold = attr.ib()
  is_sphere = attr.ib()
  is_disk = attr.ib()
  boundary = attr.ib(converter=frozenset, factory=frozenset)
  interior = attr.ib(converter=frozenset, factory=frozenset)
  witness = attr.ib(default=None)

  @is_sphere.validator
  def _validate_sphere(self, attribute, value):
    if value and (not self.is_closed_manifold or self.boundary):
      raise ValueError("A sphere is a closed manifold without boundary")

  @is_disk.validator
  def _validate_disk(self, attribute, value):
    if value and not self.boundary:
      raise ValueError("A disk has a nonempty boundary")
    if self.boundary & self.interior:
      raise ValueError("Boundary and interior overlap")

  @property
  def normal_dimension_text(self):
    return NOT_NORMAL if self.normal_dimension is None else str(self.normal_dimension)

  def to_dict(self):
    return {
      "normal_dimension": NOT_NORMAL if self.normal_dimension is None else self.normal_dimension,
      "dimension": self.dimension,
      "is_closed_manifold": self.is_closed_manifold,
      "is_sphere": self.is_sphere,
      "is_disk": self.is_disk,
      "boundary": sorted(self.boundary),
      "interior": sorted(self.interior),
      "witness": self.witness,
    }

  def to_text(self):
    return "\n".join(f"{key}={_render(value)}" for key, value in self.to_dict().items()) + "\n"


def _render(value):
  if isinstance(value, list):
    return ",".join(map(str, value))
  if isinstance(value, bool):
    return str(value).lower()
  return "none" if value is None else str(value)


def classify_space(space: DigitalSpace, dim=None, budget=None) -> Classification:
  """
  Full verdict record for ``space``.

  Without ``dim`` the normal dimension is used when the space is normal, otherwise the clique number minus one
  (the only dimension a disk with these cliques can have).
  """
  if space.is_empty:
    return Classification(-1, -1, False, False, False)
  dimension = normal_dimension(space)
  if dim is None:
    dim = dimension if dimension is not None else clique_number(space) - 1
  if dim == 0:
    sphere = _is_zero_sphere(space)
    return Classification(
      dimension, dim, sphere, sphere, False,
      interior=space.vertices if sphere else (), witness=sphere_witness(space, 0),
    )
  closed = is_closed_manifold(space, dim, budget)
  if closed:
    witness = sphere_witness(space, dim, budget)
    return Classification(dimension, dim, True, witness is not None, False, interior=space.vertices, witness=witness)
  decomposition = disk_decomposition(space, dim, budget)
  return Classification(
    dimension,
    dim,
    False,
    False,
    decomposition.is_disk,
    boundary=decomposition.boundary,
    interior=decomposition.interior,
  )


def minimal_sphere_like(space: DigitalSpace, n: int) -> bool:
  """True when ``space`` is the join of ``n+1`` zero-spheres, i.e. a complete multipartite graph of pairs."""
  if len(space) != 2 * n + 2:
    return False
  npoints = len(space)
  return len(space.edges) == npoints * (npoints - 1) // 2 - (n + 1) and all(
    len(space.adjacency[v]) == npoints - 2 for v in space.vertices
  )
