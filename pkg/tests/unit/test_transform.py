import random

import pytest

from digitalspheres import generators
from digitalspheres.canonical import is_isomorphic
from digitalspheres.classify import is_closed_manifold
from digitalspheres.classify import is_disk
from digitalspheres.classify import is_sphere
from digitalspheres.exceptions import DigitalSpaceError
from digitalspheres.exceptions import PreconditionError
from digitalspheres.exceptions import SpaceParseError
from digitalspheres.invariants import betti_numbers
from digitalspheres.invariants import euler_characteristic
from digitalspheres.space import ball
from digitalspheres.space import cone
from digitalspheres.space import make_space
from digitalspheres.space import remove
from digitalspheres.traces import dump_step
from digitalspheres.traces import dumps_trace
from digitalspheres.traces import loads_steps
from digitalspheres.traces import parse_step
from digitalspheres.traces import read_steps
from digitalspheres.traces import replay_steps
from digitalspheres.traces import write_trace
from digitalspheres.transform import StepKind
from digitalspheres.transform import TransformStep
from digitalspheres.transform import TransformTrace
from digitalspheres.transform import apply_step
from digitalspheres.transform import collapse_disk
from digitalspheres.transform import compress
from digitalspheres.transform import contractible_excursion
from digitalspheres.transform import contractible_thinning
from digitalspheres.transform import contractible_step
from digitalspheres.transform import edge_subdivision_disk
from digitalspheres.transform import expand_ball
from digitalspheres.transform import find_disks
from digitalspheres.transform import least_gluing
from digitalspheres.transform import random_walk


def test_collapse_one_disk_in_a_hexagon(c6):
  result, step = collapse_disk(c6, {0, 1, 2, 3}, 1)
  assert is_isomorphic(result, generators.cycle(5))
  assert step.kind is StepKind.COLLAPSE_DISK
  assert step.boundary == (0, 3)
  assert step.interior == (1, 2)
  assert step.vertex == 1
  assert result.neighbors(1) == {0, 3}


def test_collapsing_a_ball_changes_nothing_up_to_isomorphism(octahedron, icosahedron):
  for space in (octahedron, icosahedron):
    v = space.sorted_vertices[-1]
    result, step = collapse_disk(space, ball(space, v).vertices, 2)
    assert is_isomorphic(result, space)
    assert step.interior == (v,)


def test_collapse_rejects_non_disks(octahedron, c6):
  with pytest.raises(PreconditionError):
    collapse_disk(octahedron, octahedron.vertices, 2)
  with pytest.raises(PreconditionError):
    collapse_disk(c6, {0, 2}, 1)
  with pytest.raises(PreconditionError):
    collapse_disk(c6, {0, 1, 2}, 1, new_label=4)


def test_collapse_inside_a_disk():
  result, step = collapse_disk(generators.path(5), {1, 2, 3, 4}, 1)
  assert is_isomorphic(result, generators.path(4))
  assert step.interior == (2, 3)


def test_collapse_needs_a_manifold_or_disk_around_it(c6):
  tailed = make_space(range(7), [*c6.edges, (0, 6)])
  with pytest.raises(PreconditionError):
    collapse_disk(tailed, {1, 2, 3}, 1)


@pytest.mark.parametrize("npoints, length", [(4, 5), (5, 6)], ids=["four-point-path", "five-point-path"])
def test_expand_square(c4, npoints, length):
  result, step = expand_ball(c4, 0, generators.path(npoints), 1)
  assert is_isomorphic(result, generators.cycle(length))
  assert step.boundary == (1, 3)
  assert len(step.interior) == npoints - 2


def test_expand_octahedron_point(octahedron):
  disk = edge_subdivision_disk(octahedron, 0, 2)
  assert is_disk(disk, 2)
  result, step = expand_ball(octahedron, 0, disk, 2)
  assert len(result) == 7
  assert is_sphere(result, 2)
  assert step.boundary == (2, 3, 4, 5)
  assert step.interior == (0, 6)


def test_expand_rejects(octahedron, c4):
  with pytest.raises(PreconditionError):
    expand_ball(octahedron, 0, generators.path(3), 2)
  with pytest.raises(PreconditionError):
    expand_ball(octahedron, 0, cone(5, generators.cycle(5)), 2)
  with pytest.raises(DigitalSpaceError):
    expand_ball(c4, 9, generators.path(3), 1)
  with pytest.raises(PreconditionError):
    expand_ball(c4, 0, generators.path(4), 1, gluing={0: 1, 3: 1})
  with pytest.raises(PreconditionError):
    expand_ball(c4, 0, generators.path(4), 1, interior_labels={1: 2, 2: 7})


def test_expand_with_explicit_labels(c4):
  result, step = expand_ball(c4, 0, generators.path(4), 1, gluing={0: 3, 3: 1}, interior_labels={1: 10, 2: 11})
  assert result.vertices == {1, 2, 3, 10, 11}
  assert result.neighbors(10) == {3, 11}
  assert step.glue == ((0, 3), (3, 1))


def test_least_gluing(c4):
  assert least_gluing(generators.zero_sphere(), generators.zero_sphere(7, 3)) == {0: 3, 1: 7}
  assert least_gluing(generators.path(3), c4) is None
  assert least_gluing(c4, generators.cycle(4)) == {0: 0, 1: 1, 2: 2, 3: 3}


def test_contractible_point_moves(c4):
  capped = cone(4, c4)
  smaller = contractible_step(capped, TransformStep.delete_point(0))
  assert smaller.vertices == {1, 2, 3, 4}
  with pytest.raises(PreconditionError):
    contractible_step(capped, TransformStep.delete_point(4))


def test_glued_point_keeps_the_homotopy_type(octahedron):
  step = TransformStep.glue_point(6, ball(octahedron, 0).vertices)
  glued = contractible_step(octahedron, step)
  assert len(glued) == 7
  assert euler_characteristic(glued) == 2
  assert betti_numbers(glued) == [1, 0, 1]
  with pytest.raises(PreconditionError):
    contractible_step(octahedron, TransformStep.glue_point(6, {2, 3, 4, 5}))
  with pytest.raises(PreconditionError):
    contractible_step(octahedron, TransformStep.glue_point(0, {2}))


def test_contractible_edge_moves(c4):
  k4 = generators.complete(4)
  cut = contractible_step(k4, TransformStep.delete_edge(1, 0))
  assert cut.edges == k4.edges - {(0, 1)}
  assert contractible_step(cut, TransformStep.glue_edge(0, 1)) == k4
  with pytest.raises(PreconditionError):
    contractible_step(c4, TransformStep.glue_edge(0, 2))
  with pytest.raises(PreconditionError):
    contractible_step(c4, TransformStep.delete_edge(0, 1))
  assert contractible_step(generators.cycle(5), TransformStep.glue_edge(0, 2)).has_edge(0, 2)


def test_contractible_step_rejects_homeomorphic_kinds(c4):
  with pytest.raises(PreconditionError):
    contractible_step(c4, TransformStep(StepKind.COLLAPSE_DISK, n=1, vertex=0))


def test_find_disks_in_the_octahedron(octahedron):
  disks = find_disks(octahedron, 2)
  assert set(disks) == {octahedron.vertices - {v} for v in octahedron}
  assert sorted(disks[0]) == [0, 1, 2, 3, 4]


def test_find_disks_in_a_hexagon(c6):
  disks = find_disks(c6, 1)
  assert [len(points) for points in disks] == [3] * 6 + [4] * 6 + [5] * 6
  assert frozenset({0, 1, 2}) in disks
  assert frozenset({0, 1, 2, 3}) in disks
  assert len(find_disks(c6, 1, size_cap=3)) == 6


def test_find_disks_in_a_disk():
  disks = find_disks(generators.path(4), 1)
  assert frozenset({0, 1, 2, 3}) in disks
  assert frozenset({0}) not in disks


def test_step_inverse_round_trip(octahedron, c6):
  expanded, step = expand_ball(octahedron, 3, edge_subdivision_disk(octahedron, 3, 0), 2)
  assert apply_step(expanded, step.inverse(octahedron)) == octahedron

  collapsed, step = collapse_disk(c6, {2, 3, 4, 5}, 1)
  assert apply_step(collapsed, step.inverse(c6)) == c6

  capped = cone(4, generators.cycle(4))
  step = TransformStep.delete_point(0)
  assert apply_step(contractible_step(capped, step), step.inverse(capped)) == capped


def test_apply_step_checks_recorded_collapse(c6):
  _, step = collapse_disk(c6, {0, 1, 2, 3}, 1)
  wrong = TransformStep(StepKind.COLLAPSE_DISK, n=1, vertex=1, boundary=(0, 2), interior=(1, 3))
  with pytest.raises(PreconditionError):
    apply_step(c6, wrong)
  assert is_isomorphic(apply_step(c6, step), generators.cycle(5))


@pytest.mark.parametrize("expansions", [1, 2, 3, 4, 5], ids=lambda expansions: f"{expansions}-expansions")
def test_compressed_two_sphere_is_the_octahedron(octahedron, expansions):
  sphere = generators.expanded_sphere(2, expansions, seed=expansions)
  assert len(sphere) == 6 + expansions
  compressed, trace = compress(sphere, 2)
  assert len(compressed) == 6
  assert is_isomorphic(compressed, octahedron)
  assert trace.validate()
  for state in trace.states():
    assert euler_characteristic(state) == 2
    assert betti_numbers(state) == [1, 0, 1]


def test_compressed_three_sphere_has_eight_points(three_sphere):
  compressed, trace = compress(generators.expanded_sphere(3, 1, seed=3), 3)
  assert len(compressed) == 8
  assert is_isomorphic(compressed, three_sphere)
  assert len(trace) >= 1


def test_minimal_sphere_is_already_compressed(octahedron):
  compressed, trace = compress(octahedron, 2)
  assert compressed == octahedron
  assert len(trace) == 0


def test_compress_needs_a_closed_manifold():
  with pytest.raises(PreconditionError):
    compress(generators.minimal_disk(2), 2)


def test_trace_dump_and_replay(tmp_path):
  sphere = generators.expanded_sphere(2, 3, seed=11)
  compressed, trace = compress(sphere, 2)
  text = dumps_trace(trace)
  assert text.splitlines()[0] == "# n=2 predicate=closed-manifold points=9->6"
  steps = loads_steps(text)
  assert steps == list(trace.steps)
  assert replay_steps(sphere, steps) == compressed

  path = tmp_path / "trace.txt"
  write_trace(trace, path)
  assert read_steps(path) == steps


def test_expand_step_survives_dump(c4):
  _, step = expand_ball(c4, 0, generators.path(5), 1)
  line = dump_step(step)
  assert line.startswith("expand n=1 v=0 disk=5;")
  assert parse_step(line) == step


@pytest.mark.parametrize(
  "line",
  [
    "shrink v=1", "delete-point 3", "delete-point v=x", "expand n=1 v=0 glue=0:1",
    "collapse n=1 boundary=0,3 interior=1",
  ],
  ids=["unknown", "no-equals", "not-int", "no-disk", "no-new"],
)
def test_parse_step_rejects(line):
  with pytest.raises(SpaceParseError):
    parse_step(line, 4)


def test_replay_rejects_a_foreign_trace(octahedron):
  steps = loads_steps("delete-point v=0\n")
  with pytest.raises(PreconditionError):
    replay_steps(octahedron, steps)


def test_contractible_excursion_returns_home(icosahedron):
  pairs = contractible_excursion(icosahedron, random.Random(5))
  assert pairs[0][1].kind is StepKind.GLUE_POINT
  assert pairs[-1][1].kind is StepKind.DELETE_POINT
  assert pairs[-1][0] == icosahedron


def test_trace_validation_catches_a_bad_final_state(octahedron):
  trace = TransformTrace(octahedron, [], remove(octahedron, {0}), n=2, predicate="closed-manifold")
  with pytest.raises(PreconditionError):
    trace.validate()
  with pytest.raises(ValueError):
    TransformTrace(octahedron, [], octahedron, n=2, predicate="sphere")


WALKS = {
  "octahedron": (generators.octahedron(), 2, 200, 2024),
  "icosahedron": (generators.icosahedron(), 2, 60, 11),
  "torus": (generators.torus_grid(), 2, 40, 12),
  "projective-plane": (generators.projective_plane(), 2, 20, 13),
  "circle": (generators.cycle(6), 1, 40, 7),
  "three-sphere": (generators.minimal_sphere(3), 3, 20, 14),
}


@pytest.mark.parametrize("name", list(WALKS), ids=list(WALKS))
def test_random_walk_keeps_the_topology(subtests, name):
  space, n, count, seed = WALKS[name]
  euler, betti = euler_characteristic(space), betti_numbers(space)
  trace = random_walk(space, n, random.Random(seed), count, size_cap=8)
  assert len(trace) >= count
  assert trace.validate()
  glued = 0
  for position, state in enumerate(trace.states()):
    if position:
      kind = trace.steps[position - 1].kind
      glued += {StepKind.GLUE_POINT: 1, StepKind.DELETE_POINT: -1}.get(kind, 0)
    with subtests.test(msg="state", position=position):
      assert euler_characteristic(state) == euler
      assert betti_numbers(state) == betti
      # only a pending excursion point breaks the manifold
      if not glued:
        assert is_closed_manifold(state, n)


def test_thinning_removes_a_glued_point(octahedron):
  glued = contractible_step(octahedron, TransformStep.glue_point(6, {0, 2, 4}))
  manifold, trace = contractible_thinning(glued, 2, random.Random(3))
  assert manifold == octahedron
  assert trace.steps[-1] == TransformStep.delete_point(6)
  assert all(step.is_contractible_move for step in trace.steps)
  assert trace.replay() == octahedron


def test_thinning_leaves_a_closed_manifold_alone(torus):
  manifold, trace = contractible_thinning(torus, 2, random.Random(0))
  assert manifold == torus
  assert len(trace) == 0


def test_thinning_a_disk_gets_stuck(octahedron):
  with pytest.raises(PreconditionError):
    contractible_thinning(remove(octahedron, {0}), 2, random.Random(0), attempts=2)


def test_thinning_trace_round_trips_through_text(tmp_path, octahedron):
  glued = contractible_step(octahedron, TransformStep.glue_point(6, {0, 2, 4}))
  _, trace = contractible_thinning(glued, 2, random.Random(3))
  path = tmp_path / "thin.trace"
  write_trace(trace, path)
  assert replay_steps(glued, read_steps(path)) == octahedron
