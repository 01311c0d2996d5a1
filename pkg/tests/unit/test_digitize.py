import numpy as np
import pytest

from digitalspheres import generators
from digitalspheres.canonical import is_isomorphic
from digitalspheres.classify import contractible
from digitalspheres.classify import disk_decomposition
from digitalspheres.classify import is_closed_manifold
from digitalspheres.classify import is_sphere
from digitalspheres.digitize import OFFSETS
from digitalspheres.digitize import Box
from digitalspheres.digitize import plane
from digitalspheres.digitize import refine_and_compare
from digitalspheres.digitize import sphere
from digitalspheres.digitize import surface
from digitalspheres.digitize import thin_model
from digitalspheres.digitize import torus
from digitalspheres.digitize import voxelize_surface
from digitalspheres.exceptions import DigitalSpaceError
from digitalspheres.exceptions import PreconditionError
from digitalspheres.invariants import betti_numbers
from digitalspheres.invariants import euler_characteristic
from digitalspheres.space import induced
from digitalspheres.space import remove
from digitalspheres.space import rim
from digitalspheres.transform import compress


def unit_sphere(x, y, z):
  return x**2 + y**2 + z**2 - 1


def test_offsets_cover_half_the_neighbours():
  assert len(OFFSETS) == 13
  assert not {tuple(-value for value in offset) for offset in OFFSETS} & set(OFFSETS)


def test_unit_sphere_at_half_resolution():
  model = voxelize_surface(unit_sphere, Box.cube(-1.5, 1.5), 0.5)
  assert len(model.space) == 80
  assert euler_characteristic(model.space) == 2
  assert betti_numbers(model.space) == [1, 0, 1]


def test_plane_is_two_layers_of_cubes():
  model = voxelize_surface(lambda x, y, z: z - 0.5, Box.cube(0, 1), 0.25)
  assert len(model.space) == 32
  assert {cube[2] for cube in model.cubes} == {1, 2}
  assert betti_numbers(model.space) == [1]


def test_constant_function_selects_nothing():
  model = voxelize_surface(lambda x, y, z: 1.0, Box.cube(-1, 1), 0.5)
  assert model.is_empty
  assert model.space.is_empty


def test_scaling_keeps_the_graph():
  coarse = voxelize_surface(unit_sphere, Box.cube(-1.5, 1.5), 0.5)
  fine = voxelize_surface(lambda x, y, z: unit_sphere(2 * x, 2 * y, 2 * z), Box.cube(-0.75, 0.75), 0.25)
  assert fine.space == coarse.space
  assert fine.cubes == coarse.cubes


def test_adjacency_is_corner_sharing():
  model = voxelize_surface(lambda x, y, z: z - 0.5, Box.cube(0, 1), 0.25)
  for u, v in model.space.edges:
    assert max(abs(a - b) for a, b in zip(model.cubes[u], model.cubes[v], strict=True)) == 1
  # a cube in the middle of a layer touches 8 cubes of its layer and 9 of the other one
  middle = model.cubes.index((1, 1, 1))
  assert model.space.degree(middle) == 17


def test_cube_center():
  model = voxelize_surface(lambda x, y, z: z - 0.5, Box.cube(0, 1), 0.25)
  assert model.cube_center(0) == (0.125, 0.125, 0.375)


@pytest.mark.parametrize(
  "bounds",
  [(0, 0, 0, 1, 0, 1), (0, 1, 1, 0, 0, 1), (0, 1, 0, 1, 2, 2)],
  ids=["x", "y", "z"],
)
def test_degenerate_box(bounds):
  with pytest.raises(DigitalSpaceError):
    Box(*bounds)


def test_non_positive_side():
  with pytest.raises(DigitalSpaceError):
    voxelize_surface(unit_sphere, Box.cube(-1, 1), 0)


def test_box_scaling():
  assert Box.cube(-1, 1).scaled(2) == Box.cube(-2, 2)


def test_surfaces():
  assert sphere(2.0).box == Box.cube(-3, 3)
  assert surface("sphere").function(np.array(1.0), np.array(0.0), np.array(0.0)) == 0
  assert surface("plane", "0.25").function(0, 0, 0.25) == 0
  assert plane().box == Box.cube(0, 1)
  assert torus().box.zmax == pytest.approx(0.8)
  with pytest.raises(DigitalSpaceError):
    torus(1.0, 2.0)
  with pytest.raises(DigitalSpaceError):
    surface("klein-bottle")


def test_refined_sphere_keeps_its_invariants():
  unit = sphere()
  report = refine_and_compare(unit.function, unit.box, 0.5, 2)
  assert list(report.table["points"])[0] == 80
  assert list(report.table["euler"]) == [2, 2]
  assert list(report.table["betti"]) == ["1,0,1", "1,0,1"]
  assert report.euler_stable
  assert report.betti_stable
  assert not report.empty_levels
  assert report.to_dict()["levels"][0]["h"] == 0.5
  assert "euler_stable=true" in report.to_text()


def test_torus_refinement_reports_unstable_betti_numbers():
  ring = torus()
  report = refine_and_compare(ring.function, ring.box, 0.4, 2)
  assert list(report.table["points"]) == [88, 524]
  assert list(report.table["euler"]) == [0, 0]
  # the coarse level does not resolve the hole of the tube yet
  assert list(report.table["betti"]) == ["1,1", "1,2,1"]
  assert report.euler_stable
  assert not report.betti_stable
  assert "betti_stable=false" in report.to_text()


def test_refinement_reports_empty_levels():
  report = refine_and_compare(lambda x, y, z: 1.0, Box.cube(-1, 1), 0.5, 2)
  assert report.empty_levels == (0, 1)
  assert not report.euler_stable
  assert "empty_levels=0,1" in report.to_text()


def test_refinement_needs_two_levels():
  with pytest.raises(PreconditionError):
    refine_and_compare(unit_sphere, Box.cube(-1.5, 1.5), 0.5, 1)


@pytest.fixture(scope="module")
def thinned_unit_sphere():
  model = voxelize_surface(unit_sphere, Box.cube(-1.5, 1.5), 0.5)
  manifold, trace = thin_model(model, seed=0)
  return model, manifold, trace


def test_thinning_reaches_a_two_sphere(thinned_unit_sphere):
  model, manifold, trace = thinned_unit_sphere
  assert len(manifold) < len(model.space)
  assert is_closed_manifold(manifold, 2)
  assert is_sphere(manifold, 2)
  assert euler_characteristic(manifold) == 2
  assert betti_numbers(manifold) == [1, 0, 1]
  assert all(step.is_contractible_move for step in trace.steps)
  assert trace.initial == model.space
  assert trace.replay() == manifold


def test_every_point_of_the_thinned_sphere_leaves_a_disk(subtests, thinned_unit_sphere):
  _, manifold, _ = thinned_unit_sphere
  for v in manifold:
    with subtests.test(point=v):
      rest = remove(manifold, {v})
      assert contractible(rest)
      decomposition = disk_decomposition(rest, 2)
      assert decomposition.is_disk
      assert decomposition.boundary == manifold.neighbors(v)
      assert is_isomorphic(induced(manifold, decomposition.boundary), rim(manifold, v))


def test_thinned_sphere_compresses_to_the_octahedron(thinned_unit_sphere):
  _, manifold, _ = thinned_unit_sphere
  compressed, _ = compress(manifold, 2)
  assert len(compressed) == 6
  assert is_isomorphic(compressed, generators.octahedron())


def test_thinning_needs_cubes():
  with pytest.raises(PreconditionError):
    thin_model(voxelize_surface(lambda x, y, z: 1.0, Box.cube(-1, 1), 0.5))


def test_thinned_refinement_of_the_unit_sphere():
  unit = sphere()
  report = refine_and_compare(unit.function, unit.box, 0.5, 2, thin=True, seed=0)
  assert list(report.table["points"])[0] == 80
  assert list(report.table["closed_manifold"]) == [True, True]
  assert list(report.table["euler"]) == [2, 2]
  assert list(report.table["betti"]) == ["1,0,1", "1,0,1"]
  assert report.betti_stable
  coarse = report.thinned[0]
  assert list(report.table["thinned_points"])[0] == len(coarse)
  assert len(compress(coarse, 2)[0]) == 6
