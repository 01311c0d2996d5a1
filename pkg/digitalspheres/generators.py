"""
Ready made digital spaces: minimal spheres and disks, a few two-spheres of different sizes, a 16 point torus,
a projective plane and flag complexes built from triangle lists.
"""

import itertools
import logging
import random

from digitalspheres.exceptions import PreconditionError
from digitalspheres.space import DigitalSpace
from digitalspheres.space import cone
from digitalspheres.space import join
from digitalspheres.transform import random_expansion


log = logging.getLogger(__name__)

OCTAHEDRON_TRIANGLES = tuple(itertools.product((0, 1), (2, 3), (4, 5)))

PROJECTIVE_PLANE_TRIANGLES = (
  (1, 2, 3),
  (1, 3, 4),
  (1, 4, 5),
  (1, 5, 6),
  (1, 6, 2),
  (2, 3, 5),
  (3, 4, 6),
  (4, 5, 2),
  (5, 6, 3),
  (6, 2, 4),
)


def point(label=0):
  return DigitalSpace({label})


def zero_sphere(a=0, b=1):
  return DigitalSpace({a, b})


def path(npoints):
  return DigitalSpace(range(npoints), {(i, i + 1) for i in range(npoints - 1)})


def cycle(npoints):
  if npoints < 3:
    raise PreconditionError(f"A cycle needs at least 3 points, got {npoints}")
  return DigitalSpace(range(npoints), {(i, (i + 1) % npoints) for i in range(npoints)})


def complete(npoints):
  return DigitalSpace(range(npoints), itertools.combinations(range(npoints), 2))


def minimal_sphere(n):
  """The join of ``n+1`` zero-spheres: points ``2i`` and ``2i+1`` are the only non-adjacent pairs."""
  if n < 0:
    raise PreconditionError(f"Sphere dimension must be non-negative, got n={n}")
  labels = range(2 * n + 2)
  return DigitalSpace(labels, {(u, v) for u, v in itertools.combinations(labels, 2) if u // 2 != v // 2})


def minimal_disk(n):
  """The cone over the minimal ``(n-1)``-sphere, with apex ``2n``."""
  if n < 0:
    raise PreconditionError(f"Disk dimension must be non-negative, got n={n}")
  if n == 0:
    return point()
  return cone(2 * n, minimal_sphere(n - 1))


def octahedron():
  return minimal_sphere(2)


def icosahedron():
  """
  Twelve points: ``0`` on top, ``1..5`` and ``6..10`` the upper and lower rings, ``11`` at the bottom.
  """
  edges = set()
  for i in range(5):
    upper, next_upper = 1 + i, 1 + (i + 1) % 5
    lower, next_lower = 6 + i, 6 + (i + 1) % 5
    edges |= {(0, upper), (upper, next_upper), (lower, next_lower), (lower, 11)}
    edges |= {(upper, lower), (upper, next_lower)}
  return DigitalSpace(range(12), edges)


def suspension(space):
  """``S^0 ⊕ space`` with the two new points labeled after the largest label."""
  start = max(space.vertices) + 1 if space.vertices else 0
  return join(space, zero_sphere(start, start + 1))


def torus_grid(rows=4, cols=4):
  """
  The ``rows x cols`` grid with wrap-around and one diagonal per square, point ``(i, j)`` labeled ``i*cols + j``.

  Every rim is a chordless hexagon, so this is a closed two-manifold with Euler characteristic zero.
  """
  if rows < 4 or cols < 4:
    raise PreconditionError(f"A toroidal grid needs at least 4 rows and columns, got {rows}x{cols}")

  def label(i, j):
    return (i % rows) * cols + j % cols

  edges = set()
  for i in range(rows):
    for j in range(cols):
      here = label(i, j)
      edges |= {(here, label(i + 1, j)), (here, label(i, j + 1)), (here, label(i + 1, j + 1))}
  return DigitalSpace(range(rows * cols), edges)


def from_triangles(triangles):
  """The graph whose points are the corners of ``triangles`` and whose edges are their sides."""
  vertices = set()
  edges = set()
  for triangle in triangles:
    vertices.update(triangle)
    edges.update(itertools.combinations(triangle, 2))
  return DigitalSpace(vertices, edges)


def barycentric_subdivision(triangles):
  """
  The face poset graph of a triangulated surface: one point per vertex, edge and triangle, two points adjacent
  when one face contains the other. Points are labeled vertices first, then edges, then triangles, each group in
  ascending order.
  """
  triangles = sorted({tuple(sorted(triangle)) for triangle in triangles})
  sides = sorted({side for triangle in triangles for side in itertools.combinations(triangle, 2)})
  corners = sorted({corner for triangle in triangles for corner in triangle})
  faces = [(corner,) for corner in corners] + sides + triangles
  index = {face: label for label, face in enumerate(faces)}
  edges = set()
  for face in sides + triangles:
    for size in range(1, len(face)):
      for part in itertools.combinations(face, size):
        edges.add((index[part], index[face]))
  return DigitalSpace(range(len(faces)), edges)


def subdivided_sphere():
  """The subdivided octahedron, a two-sphere on 26 points."""
  return barycentric_subdivision(OCTAHEDRON_TRIANGLES)


def projective_plane():
  """The subdivided six vertex projective plane: a closed two-manifold on 31 points with Euler characteristic 1."""
  return barycentric_subdivision(PROJECTIVE_PLANE_TRIANGLES)


def expanded_sphere(n, expansions, seed=None, budget=None):
  """The minimal ``n``-sphere after ``expansions`` random ball expansions drawn from ``seed``."""
  if n < 1:
    raise PreconditionError(f"Expansions need dimension n >= 1, got n={n}")
  rng = random.Random(seed)
  space = minimal_sphere(n)
  for _ in range(expansions):
    space, _ = random_expansion(space, n, rng, budget)
  log.debug("Expanded the minimal %d-sphere %d times to %d points", n, expansions, len(space))
  return space
