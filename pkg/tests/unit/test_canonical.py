import random

import pytest

from digitalspheres import generators
from digitalspheres.canonical import canonical_form
from digitalspheres.canonical import canonical_key
from digitalspheres.canonical import canonical_labeling
from digitalspheres.canonical import canonical_space
from digitalspheres.canonical import find_isomorphism
from digitalspheres.canonical import is_isomorphic
from digitalspheres.space import join
from digitalspheres.space import make_space
from digitalspheres.space import relabel


CORPUS = {
  "c4": generators.cycle(4),
  "c6": generators.cycle(6),
  "path": generators.path(5),
  "octahedron": generators.octahedron(),
  "icosahedron": generators.icosahedron(),
  "torus": generators.torus_grid(),
  "three-sphere": generators.minimal_sphere(3),
  "subdivided-sphere": generators.subdivided_sphere(),
  "projective-plane": generators.projective_plane(),
}


def _shuffled(space, seed):
  rng = random.Random(seed)
  labels = list(space.sorted_vertices)
  targets = [100 + index for index in range(len(labels))]
  rng.shuffle(targets)
  return relabel(space, dict(zip(labels, targets, strict=True)))


@pytest.mark.parametrize("name", sorted(CORPUS), ids=sorted(CORPUS))
def test_canonical_form_is_stable_under_relabeling(name):
  space = CORPUS[name]
  for seed in range(3):
    shuffled = _shuffled(space, seed)
    assert canonical_form(shuffled) == canonical_form(space)
    assert canonical_key(shuffled) == canonical_key(space)


@pytest.mark.parametrize("name", sorted(CORPUS), ids=sorted(CORPUS))
def test_find_isomorphism_returns_a_witness(name):
  space = CORPUS[name]
  shuffled = _shuffled(space, 7)
  mapping = find_isomorphism(space, shuffled)
  assert mapping is not None
  assert sorted(mapping) == list(space.sorted_vertices)
  assert {tuple(sorted((mapping[u], mapping[v]))) for u, v in space.edges} == set(shuffled.edges)


def test_cycle_is_join_of_zero_spheres():
  square = join(generators.zero_sphere(10, 11), generators.zero_sphere(20, 21))
  assert is_isomorphic(generators.cycle(4), square)


def test_cycle_is_not_a_path():
  assert not is_isomorphic(generators.cycle(4), generators.path(4))
  assert find_isomorphism(generators.cycle(4), generators.path(4)) is None


def test_octahedron_is_complete_tripartite():
  parts = [{0, 1}, {2, 3}, {4, 5}]
  edges = [(u, v) for a in range(3) for b in range(a + 1, 3) for u in parts[a] for v in parts[b]]
  tripartite = make_space(range(6), edges)
  assert is_isomorphic(generators.octahedron(), tripartite)


def test_same_degrees_different_graphs():
  # two triangles against a hexagon: both 2-regular on six points
  triangles = make_space(range(6), [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
  assert not is_isomorphic(triangles, generators.cycle(6))


def test_isomorphism_is_an_equivalence():
  a = generators.minimal_sphere(2)
  b = _shuffled(a, 1)
  c = _shuffled(b, 2)
  assert is_isomorphic(a, a)
  assert is_isomorphic(a, b) and is_isomorphic(b, a)
  assert is_isomorphic(b, c) and is_isomorphic(a, c)


def test_canonical_labeling_is_a_bijection():
  space = generators.icosahedron()
  labeling = canonical_labeling(space)
  assert sorted(labeling.values()) == list(range(len(space)))
  assert is_isomorphic(canonical_space(space), space)


def test_empty_space_key():
  assert canonical_key(make_space([], [])) == "0;"
