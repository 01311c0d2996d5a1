"""
Digitization of implicit surfaces.

The bounding box is cut into cubes of side ``h``. A cube is kept when the surface function changes sign over its
eight corners or vanishes at one of them, and two kept cubes are adjacent when they share at least a corner.
"""

import itertools
import logging
import math
import random

import attr
import numpy as np
import pandas as pd

from digitalspheres.classify import classify_space
from digitalspheres.exceptions import DigitalSpaceError
from digitalspheres.exceptions import PreconditionError
from digitalspheres.invariants import invariant_report
from digitalspheres.space import DigitalSpace
from digitalspheres.transform import contractible_thinning


log = logging.getLogger(__name__)

# one representative of every pair of opposite directions among the 26 neighbours of a cube
OFFSETS = tuple(offset for offset in itertools.product((-1, 0, 1), repeat=3) if offset > (0, 0, 0))


@attr.s(frozen=True)
class Box:
  xmin = attr.ib(converter=float)
  xmax = attr.ib(converter=float)
  ymin = attr.ib(converter=float)
  ymax = attr.ib(converter=float)
  zmin = attr.ib(converter=float)
  zmax = attr.ib(converter=float)

  def __attrs_post_init__(self):
    for low, high, axis in zip(self.lows, self.highs, "xyz", strict=True):
      if not high > low:
        raise DigitalSpaceError(f"Degenerate box: {axis} extent [{low}, {high}] is empty")

  @classmethod
  def cube(cls, low, high):
    return cls(low, high, low, high, low, high)

  @property
  def lows(self):
    return (self.xmin, self.ymin, self.zmin)

  @property
  def highs(self):
    return (self.xmax, self.ymax, self.zmax)

  def scaled(self, factor):
    return Box(*(value * factor for value in attr.astuple(self)))


@attr.s(frozen=True)
class VoxelModel:
  """
  :keyword Box box:
      The tessellated region
  :keyword float h:
      Cube side
  :keyword tuple cubes:
      Integer grid coordinates of the kept cubes, point ``i`` of :attr:`space` is ``cubes[i]``
  :keyword DigitalSpace space:
      The intersection graph of the kept cubes
  """

  box = attr.ib()
  h = attr.ib()
  cubes = attr.ib(converter=tuple)
  space = attr.ib()

  @property
  def is_empty(self):
    return not self.cubes

  def cube_center(self, label):
    return tuple(low + self.h * (index + 0.5) for low, index in zip(self.box.lows, self.cubes[label], strict=True))


def _cells(extent, h):
  # tolerate float noise so that e.g. 3.0 / 0.5 gives 6 cells and not 7
  return max(1, math.ceil(round(extent / h, 9)))


def _slices(delta, size):
  if delta > 0:
    return slice(0, size - delta), slice(delta, size)
  if delta < 0:
    return slice(-delta, size), slice(0, size + delta)
  return slice(None), slice(None)


def voxelize_surface(f, box: Box, h: float) -> VoxelModel:
  """
  Digitize the zero set of ``f`` inside ``box`` with cubes of side ``h``.

  ``f`` is called once with three broadcastable numpy arrays of corner coordinates.
  """
  if not h > 0:
    raise DigitalSpaceError(f"Cube side must be positive, got h={h}")
  shape = tuple(_cells(high - low, h) for low, high in zip(box.lows, box.highs, strict=True))
  axes = [low + h * np.arange(cells + 1) for low, cells in zip(box.lows, shape, strict=True)]
  x, y, z = np.meshgrid(*axes, indexing="ij")
  values = np.broadcast_to(np.asarray(f(x, y, z), dtype=float), x.shape)

  corners = [
    values[i : i + shape[0], j : j + shape[1], k : k + shape[2]] for i, j, k in itertools.product((0, 1), repeat=3)
  ]
  stacked = np.stack(corners)
  selected = (stacked.min(axis=0) <= 0) & (stacked.max(axis=0) >= 0)

  labels = np.full(shape, -1, dtype=np.int64)
  labels[selected] = np.arange(int(selected.sum()))
  edges = set()
  for offset in OFFSETS:
    source, target = zip(*(_slices(delta, size) for delta, size in zip(offset, shape, strict=True)), strict=True)
    a, b = labels[source], labels[target]
    both = (a >= 0) & (b >= 0)
    edges.update(zip(a[both].tolist(), b[both].tolist(), strict=True))

  cubes = [tuple(cube) for cube in np.argwhere(selected).tolist()]
  model = VoxelModel(box, h, cubes, DigitalSpace(range(len(cubes)), edges))
  log.info("Digitized at h=%s: %d of %d cubes kept, %d adjacencies", h, len(cubes), selected.size, len(edges))
  return model


@attr.s(frozen=True)
class Surface:
  name = attr.ib()
  function = attr.ib()
  box = attr.ib()


def sphere(radius=1.0):
  def function(x, y, z):
    return x**2 + y**2 + z**2 - radius**2

  return Surface("sphere", function, Box.cube(-1.5 * radius, 1.5 * radius))


def torus(major=1.0, minor=0.4):
  if not major > minor > 0:
    raise DigitalSpaceError(f"Torus radii must satisfy R > r > 0, got R={major} r={minor}")

  def function(x, y, z):
    return (np.sqrt(x**2 + y**2) - major) ** 2 + z**2 - minor**2

  reach = major + 2 * minor
  return Surface("torus", function, Box(-reach, reach, -reach, reach, -2 * minor, 2 * minor))


def plane(offset=0.5):
  def function(x, y, z):
    return z - offset

  return Surface("plane", function, Box.cube(0.0, 1.0))


SURFACES = {"sphere": sphere, "torus": torus, "plane": plane}


def surface(name, *params):
  try:
    factory = SURFACES[name]
  except KeyError:
    raise DigitalSpaceError(f"Unknown surface {name!r}, choose one of {', '.join(SURFACES)}") from None
  return factory(*(float(param) for param in params))


def thin_model(model: VoxelModel, n=2, seed=None, attempts=8, budget=None):
  """
  Thin the intersection graph of ``model`` by seeded contractible deletions down to a closed ``n``-manifold.

  Returns ``(manifold, trace)``, the manifold keeps the point labels of ``model`` so :meth:`VoxelModel.cube_center`
  still locates its points.
  """
  if model.is_empty:
    raise PreconditionError("Cannot thin an empty voxel model")
  return contractible_thinning(model.space, n, random.Random(seed), attempts=attempts, budget=budget)


@attr.s(frozen=True)
class RefinementReport:
  table = attr.ib()
  models = attr.ib(converter=tuple)
  euler_stable = attr.ib()
  betti_stable = attr.ib()
  empty_levels = attr.ib(converter=tuple, factory=tuple)
  thinned = attr.ib(converter=tuple, factory=tuple)

  def to_dict(self):
    return {
      "levels": self.table.astype(object).where(self.table.notna(), None).to_dict(orient="records"),
      "euler_stable": self.euler_stable,
      "betti_stable": self.betti_stable,
      "empty_levels": list(self.empty_levels),
    }

  def to_text(self):
    lines = [self.table.to_string(index=False)]
    lines.append(f"euler_stable={str(self.euler_stable).lower()}")
    lines.append(f"betti_stable={str(self.betti_stable).lower()}")
    if self.empty_levels:
      lines.append(f"empty_levels={','.join(map(str, self.empty_levels))}")
    return "\n".join(lines) + "\n"


def refine_and_compare(
  f, box: Box, h: float, levels: int, dim=2, budget=None, thin=False, seed=None
) -> RefinementReport:
  """
  Digitize at ``h``, ``h/2``, ... for ``levels`` levels and compare classification and invariants.

  With ``thin`` every level is first thinned to a closed ``dim``-manifold by contractible deletions, seeded with
  ``seed`` plus the level, and the thinned space is what gets classified. A level that cannot be thinned keeps its
  raw graph and shows ``thinned_points`` as missing. Empty levels are reported and left out of the stability flags.
  """
  if levels < 2:
    raise PreconditionError(f"Comparing refinements needs at least 2 levels, got {levels}")
  rows = []
  models = []
  thinned = []
  empty_levels = []
  for level in range(levels):
    side = h / 2**level
    model = voxelize_surface(f, box, side)
    models.append(model)
    row = {"level": level, "h": side, "points": len(model.space), "edges": len(model.space.edges)}
    space = model.space
    if thin:
      row["thinned_points"] = None
    if model.is_empty:
      log.warning("Refinement level %d (h=%s) selected no cubes", level, side)
      empty_levels.append(level)
      if thin:
        thinned.append(None)
      row.update(normal_dimension=None, closed_manifold=None, disk=None, euler=None, betti=None)
      rows.append(row)
      continue
    if thin:
      try:
        space, _ = thin_model(model, dim, seed=None if seed is None else seed + level, budget=budget)
      except PreconditionError as exc:
        log.warning("Refinement level %d (h=%s) could not be thinned: %s", level, side, exc)
        thinned.append(None)
      else:
        row["thinned_points"] = len(space)
        thinned.append(space)
    verdict = classify_space(space, dim=dim, budget=budget)
    report = invariant_report(space)
    row.update(
      normal_dimension=verdict.normal_dimension_text,
      closed_manifold=verdict.is_closed_manifold,
      disk=verdict.is_disk,
      euler=report.euler,
      betti=",".join(map(str, report.betti)),
    )
    rows.append(row)
  table = pd.DataFrame(rows)
  filled = table.dropna(subset=["euler"])
  euler_stable = len(filled) > 0 and filled["euler"].nunique() == 1
  betti_stable = len(filled) > 0 and filled["betti"].nunique() == 1
  log.info("Refinement over %d levels: euler stable=%s, betti stable=%s", levels, euler_stable, betti_stable)
  return RefinementReport(table, models, bool(euler_stable), bool(betti_stable), empty_levels, thinned)
