"""
Sphere recognition for closed manifolds.

The criteria implemented here are sufficient conditions: when one holds the manifold is a sphere, when it fails
the verdict is inconclusive and carries the offending one-sphere or disk. Every quantifier ranges over what the
bounded searches find within the size cap, a scan cut short by the cap is reported as indeterminate.
"""

import logging

import attr
import networkx as nx

from digitalspheres.classify import disk_decomposition
from digitalspheres.classify import is_closed_manifold
from digitalspheres.classify import is_disk
from digitalspheres.classify import is_sphere
from digitalspheres.classify import minimal_sphere_like
from digitalspheres.config import get_settings
from digitalspheres.exceptions import CriterionMismatchError
from digitalspheres.exceptions import PreconditionError
from digitalspheres.exceptions import SearchBudgetExhausted
from digitalspheres.space import DigitalSpace
from digitalspheres.space import closed_neighborhood
from digitalspheres.space import components
from digitalspheres.space import induced
from digitalspheres.space import joint_rim
from digitalspheres.space import remove
from digitalspheres.space import rim
from digitalspheres.transform import ConnectedGrowth
from digitalspheres.transform import disk_candidates
from digitalspheres.transform import disk_search
from digitalspheres.transform import interior_of


log = logging.getLogger(__name__)

BOUNDING_ONE_SPHERES = "bounding-one-spheres"
LOCAL_ONE_DISKS_EMBEDDED = "local-one-disks-embedded"
TWO_DISKS_EMBEDDED = "two-disks-embedded"
LOCAL_DISKS_EMBEDDED = "local-disks-embedded"

CRITERIA = (BOUNDING_ONE_SPHERES, LOCAL_ONE_DISKS_EMBEDDED, TWO_DISKS_EMBEDDED, LOCAL_DISKS_EMBEDDED)

SPHERE = "sphere"
INCONCLUSIVE = "inconclusive"
INDETERMINATE = "indeterminate"


def _size_cap(size_cap):
  return size_cap if size_cap is not None else get_settings().disk_size_cap


def _ordered(sets):
  return sorted(sets, key=lambda points: (len(points), sorted(points)))


def enumerate_one_spheres(space: DigitalSpace, max_len=None) -> list:
  """Vertex sets of the chordless cycles with 4 to ``max_len`` points, by size then lexicographically."""
  if max_len is None:
    max_len = max(4, get_settings().one_sphere_max_len or len(space))
  if max_len < 4:
    raise PreconditionError(f"One-spheres have at least 4 points, max_len={max_len} is too small")
  found = set()
  for cycle in nx.chordless_cycles(space.graph, length_bound=max_len):
    if len(cycle) >= 4:
      found.add(frozenset(cycle))
  return _ordered(found)


def _check_sphere(space, points, k, budget):
  if not is_sphere(induced(space, points), k, budget):
    raise PreconditionError(f"Points {sorted(points)} do not span a {k}-sphere")


def _bounds(space, points, sphere_points, k, budget):
  decomposition = disk_decomposition(induced(space, points), k, budget)
  return decomposition.is_disk and decomposition.boundary == sphere_points


def _bounding_disk(space, sphere_points, k, cap, budget):
  """Return ``(disk, complete)``, ``complete`` is false when the cap cut the search short."""
  if k >= 1 and is_closed_manifold(space, k, budget):
    # in a closed k-manifold a bounding k-disk is the sphere plus one component of its complement
    complete = True
    for component in components(remove(space, sphere_points)):
      points = sphere_points | component
      if len(points) > cap:
        complete = False
        continue
      if _bounds(space, points, sphere_points, k, budget):
        return points, True
    return None, complete
  growth = ConnectedGrowth(space, cap)
  found = [points for points in growth.sets(sphere_points) if points != sphere_points]
  found = [points for points in _ordered(found) if _bounds(space, points, sphere_points, k, budget)]
  return (found[0] if found else None), not growth.truncated


def find_bounding_disk(space: DigitalSpace, sphere_points, k: int, size_cap=None, budget=None):
  """A vertex set spanning a ``k``-disk whose boundary is exactly ``sphere_points``, or ``None``."""
  sphere_points = frozenset(sphere_points)
  _check_sphere(space, sphere_points, k - 1, budget)
  disk, complete = _bounding_disk(space, sphere_points, k, _size_cap(size_cap), budget)
  if disk is None and not complete:
    log.warning("Bounding %d-disk search for %s stopped at the size cap", k, sorted(sphere_points))
  return disk


def _embedding(space, disk_points, boundary, interior, n, cap, budget):
  if is_closed_manifold(space, n, budget):
    growth = ConnectedGrowth(space, cap, size=lambda grown: len(closed_neighborhood(space, grown)), forbidden=boundary)
    for grown in growth.sets(interior):
      points = closed_neighborhood(space, grown)
      if boundary <= points and interior_of(space, points) == grown and is_disk(induced(space, points), n, budget):
        return points, True
    return None, not growth.truncated
  growth = ConnectedGrowth(space, cap)
  for points in growth.sets(disk_points):
    decomposition = disk_decomposition(induced(space, points), n, budget)
    if decomposition.is_disk and boundary <= decomposition.boundary and interior <= decomposition.interior:
      return points, True
  return None, not growth.truncated


def _embedded_disk(space, disk_points, k, n, cap, budget):
  if k >= n:
    raise PreconditionError(f"Embedding needs k < n, got k={k} n={n}")
  decomposition = disk_decomposition(induced(space, disk_points), k, budget)
  if not decomposition.is_disk:
    raise PreconditionError(f"Points {sorted(disk_points)} do not span a {k}-disk")
  return _embedding(space, disk_points, decomposition.boundary, decomposition.interior, n, cap, budget)


def is_embedded(space: DigitalSpace, disk_points, k: int, n: int, size_cap=None, budget=None):
  """
  Whether the ``k``-disk on ``disk_points`` sits inside an ``n``-disk of ``space`` with its boundary on the
  boundary and its interior in the interior. Returns ``(embedded, ambient disk points)``.
  """
  witness, complete = _embedded_disk(space, frozenset(disk_points), k, n, _size_cap(size_cap), budget)
  if witness is None and not complete:
    log.warning("Embedding search for %s stopped at the size cap", sorted(disk_points))
  return witness is not None, witness


@attr.s(frozen=True)
class RecognitionVerdict:
  criterion = attr.ib()
  holds = attr.ib()
  witness = attr.ib(default=None)
  conclusion = attr.ib(default=None)

  @criterion.validator
  def _validate_criterion(self, attribute, value):
    if value not in CRITERIA:
      raise ValueError(f"Unknown criterion {value!r}")

  @conclusion.validator
  def _validate_conclusion(self, attribute, value):
    expected = {True: SPHERE, False: INCONCLUSIVE, None: INDETERMINATE}[self.holds]
    if value != expected:
      raise ValueError(f"holds={self.holds} requires conclusion {expected!r}, not {value!r}")
    if self.holds is False and self.witness is None:
      raise ValueError("A failed criterion carries a witness")

  def to_dict(self):
    return {
      "criterion": self.criterion,
      "holds": self.holds,
      "witness": sorted(self.witness) if self.witness is not None else None,
      "conclusion": self.conclusion,
    }

  def to_text(self):
    witness = ",".join(map(str, sorted(self.witness))) if self.witness is not None else "none"
    holds = "unknown" if self.holds is None else str(self.holds).lower()
    return f"criterion={self.criterion}\nholds={holds}\nwitness={witness}\nconclusion={self.conclusion}\n"


def _verdict(criterion, holds, witness=None):
  conclusion = {True: SPHERE, False: INCONCLUSIVE, None: INDETERMINATE}[holds]
  return RecognitionVerdict(criterion, holds, witness, conclusion)


def _scan_bounding(space, spheres, k, cap, budget):
  """``(holds, witness)`` for "every sphere in ``spheres`` bounds a ``k``-disk", ``holds=None`` when capped."""
  truncated = False
  for sphere_points in spheres:
    disk, complete = _bounding_disk(space, sphere_points, k, cap, budget)
    if disk is not None:
      continue
    if complete:
      log.info("%s bounds no %d-disk", sorted(sphere_points), k)
      return False, sphere_points
    truncated = True
  return (None if truncated else True), None


def _scan_embedded(space, disks, k, n, cap, budget):
  truncated = False
  for disk_points in disks:
    witness, complete = _embedded_disk(space, disk_points, k, n, cap, budget)
    if witness is not None:
      continue
    if complete:
      log.info("The %d-disk on %s is not embedded", k, sorted(disk_points))
      return False, disk_points
    truncated = True
  return (None if truncated else True), None


def _local_disks(space, k, cap, budget):
  found = set()
  for v in space:
    found.update(disk_candidates(rim(space, v), k, cap, budget))
  return _ordered(found)


def _joint_rim_spheres(space, k, budget):
  found = set()
  for u, v in space.sorted_edges:
    common = joint_rim(space, {u, v})
    if is_sphere(common, k, budget):
      found.add(common.vertices)
  return _ordered(found)


def _combine(*scans):
  truncated = False
  for holds, witness in scans:
    if holds is False:
      return False, witness
    if holds is None:
      truncated = True
  return (None if truncated else True), None


def _evaluate(space, n, criterion, cap, budget):
  if criterion == BOUNDING_ONE_SPHERES:
    return _scan_bounding(space, enumerate_one_spheres(space), 2, cap, budget)
  if criterion == LOCAL_ONE_DISKS_EMBEDDED:
    return _scan_embedded(space, _local_disks(space, 1, cap, budget), 1, 2, cap, budget)
  if criterion == TWO_DISKS_EMBEDDED:
    disks = _ordered(disk_candidates(space, 2, cap, budget))
    embedded = _scan_embedded(space, disks, 2, 3, cap, budget)
    if embedded[0] is False:
      return embedded
    return _combine(embedded, _scan_bounding(space, enumerate_one_spheres(space), 2, cap, budget))
  embedded = _scan_embedded(space, _local_disks(space, n - 1, cap, budget), n - 1, n, cap, budget)
  if embedded[0] is False:
    return embedded
  return _combine(embedded, _scan_bounding(space, _joint_rim_spheres(space, n - 2, budget), n - 1, cap, budget))


def _check_criterion(criterion, n):
  if criterion in (BOUNDING_ONE_SPHERES, LOCAL_ONE_DISKS_EMBEDDED) and n != 2:
    raise PreconditionError(f"Criterion {criterion} applies to dimension 2, got n={n}")
  if criterion == TWO_DISKS_EMBEDDED and n != 3:
    raise PreconditionError(f"Criterion {criterion} applies to dimension 3, got n={n}")
  if criterion == LOCAL_DISKS_EMBEDDED and n < 3:
    raise PreconditionError(f"Criterion {criterion} applies to dimensions 3 and up, got n={n}")


def default_criterion(n):
  if n == 2:
    return BOUNDING_ONE_SPHERES
  if n == 3:
    return TWO_DISKS_EMBEDDED
  return LOCAL_DISKS_EMBEDDED


def check_sphere_criteria(space: DigitalSpace, n: int, size_cap=None, criterion=None, budget=None):
  """
  Evaluate a sphere criterion on the closed ``n``-manifold ``space``.

  ``bounding-one-spheres`` (n=2): every one-sphere bounds a two-disk.
  ``local-one-disks-embedded`` (n=2): every one-disk inside a rim is embedded.
  ``two-disks-embedded`` (n=3): every two-disk is embedded and every one-sphere bounds a two-disk.
  ``local-disks-embedded`` (n>=3): every ``(n-1)``-disk inside a rim is embedded and every ``(n-2)``-sphere
  found as the joint rim of two adjacent points bounds an ``(n-1)``-disk.

  A criterion that holds is cross-checked against :func:`~digitalspheres.classify.is_sphere`.
  """
  if n < 2:
    raise PreconditionError(f"Sphere criteria are defined for n >= 2, got n={n}")
  criterion = criterion or default_criterion(n)
  if criterion not in CRITERIA:
    raise PreconditionError(f"Unknown criterion {criterion!r}, choose one of {', '.join(CRITERIA)}")
  _check_criterion(criterion, n)
  cap = _size_cap(size_cap)
  try:
    if not is_closed_manifold(space, n, budget):
      raise PreconditionError(f"Sphere criteria need a closed {n}-manifold")
    holds, witness = _evaluate(space, n, criterion, cap, budget)
    if holds and not is_sphere(space, n, budget):
      raise CriterionMismatchError(f"Criterion {criterion} holds on {space!r} but it is not an {n}-sphere")
  except SearchBudgetExhausted as exc:
    log.warning("Criterion %s is indeterminate on %r: %s", criterion, space, exc)
    return _verdict(criterion, None)
  if holds is None:
    log.warning("Criterion %s is indeterminate on %r at size cap %d", criterion, space, cap)
  log.info("Criterion %s on %r: holds=%s", criterion, space, holds)
  return _verdict(criterion, holds, witness)


def four_point_sphere_witness(space: DigitalSpace, u, v, n: int, budget=None):
  """
  For adjacent ``u`` and ``v`` of a closed ``n``-manifold: a four point one-sphere through both when
  the union of their balls is not an ``n``-disk, ``None`` when it is.
  """
  if not space.has_edge(u, v):
    raise PreconditionError(f"Points {u} and {v} are not adjacent")
  if not is_closed_manifold(space, n, budget):
    raise PreconditionError(f"Expected a closed {n}-manifold")
  union = closed_neighborhood(space, {u, v})
  if is_disk(induced(space, union), n, budget):
    return None
  only_u = sorted(space.neighbors(u) - space.neighbors(v) - {v})
  only_v = sorted(space.neighbors(v) - space.neighbors(u) - {u})
  for a in only_u:
    for b in only_v:
      if space.has_edge(a, b):
        return frozenset({u, v, a, b})
  log.warning("Balls of %s and %s do not form an %d-disk but no four point one-sphere passes through both", u, v, n)
  return None


@attr.s(frozen=True)
class CompressionReport:
  """
  :keyword bool compressed:
      No disk with more than one interior point was found
  :keyword frozenset witness:
      The disk with the largest interior when not compressed
  :keyword bool exhaustive:
      False when the disk search skipped candidates above the size cap, so ``compressed`` is only known up to it
  """

  compressed = attr.ib()
  witness = attr.ib(default=None)
  diagnostics = attr.ib(factory=dict)
  exhaustive = attr.ib(default=True)

  def to_dict(self):
    return {
      "compressed": self.compressed,
      "exhaustive": self.exhaustive,
      "witness": sorted(self.witness) if self.witness is not None else None,
      "diagnostics": self.diagnostics,
    }


def _ball_union_disks(space, n, budget):
  pairs = []
  for u, v in space.sorted_edges:
    if is_disk(induced(space, closed_neighborhood(space, {u, v})), n, budget):
      pairs.append([u, v])
  return pairs


def _joint_rim_disks(space, n, budget):
  pairs = []
  for u in space.sorted_vertices:
    for v in space.sorted_vertices:
      if u < v and not space.has_edge(u, v):
        common = joint_rim(space, {u, v})
        if not common.is_empty and is_disk(common, n - 1, budget):
          pairs.append([u, v])
  return pairs


def is_compressed(space: DigitalSpace, n: int, size_cap=None, budget=None) -> CompressionReport:
  """
  Whether every ``n``-disk found within ``size_cap`` is the ball of a point.

  The diagnostics hold the consequences a compressed manifold must show: no two adjacent balls form a disk,
  no two non-adjacent points have a disk as joint rim, adjacent points with minimal rims only occur in the
  minimal sphere, and a sphere has minimal rims only.
  """
  if not is_closed_manifold(space, n, budget):
    raise PreconditionError(f"Compression is checked on closed {n}-manifolds")
  found, exhaustive = disk_search(space, n, _size_cap(size_cap), budget)
  larger = [(-len(interior), sorted(points), points) for points, interior in found.items() if len(interior) > 1]
  witness = min(larger)[2] if larger else None

  minimal_rims = {v for v in space if minimal_sphere_like(rim(space, v), n - 1)}
  minimal_rim_pairs = [[u, v] for u, v in space.sorted_edges if u in minimal_rims and v in minimal_rims]
  diagnostics = {
    "ball_union_disks": _ball_union_disks(space, n, budget),
    "joint_rim_disks": _joint_rim_disks(space, n, budget),
    "minimal_rim_pairs": minimal_rim_pairs,
    "non_minimal_rims": sorted(set(space.vertices) - minimal_rims),
    "minimal_sphere": minimal_sphere_like(space, n),
  }
  if n == 2:
    diagnostics["unspanned_one_spheres"] = [
      sorted(points)
      for points in enumerate_one_spheres(space)
      if not any(points <= space.neighbors(p) for p in space if p not in points)
    ]
  compressed = witness is None
  if compressed and not exhaustive:
    log.warning("No larger disk in %r within the size cap, but the search was cut short", space)
  if compressed and minimal_rim_pairs and not diagnostics["minimal_sphere"]:
    log.warning("Compressed %r has adjacent points with minimal rims but is not the minimal sphere", space)
  log.info("%r compressed=%s exhaustive=%s", space, compressed, exhaustive)
  return CompressionReport(compressed, witness, diagnostics, exhaustive)
