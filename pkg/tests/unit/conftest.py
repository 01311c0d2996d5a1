import pytest

from digitalspheres import generators
from digitalspheres.cache import ResultCache
from digitalspheres.cache import set_result_cache
from digitalspheres.config import Settings
from digitalspheres.config import configure
from digitalspheres.formats import write_space


@pytest.fixture(autouse=True)
def default_settings():
  previous = configure(Settings())
  yield
  configure(previous)


@pytest.fixture
def fresh_cache():
  cache = ResultCache()
  previous = set_result_cache(cache)
  yield cache
  set_result_cache(previous)


@pytest.fixture
def c4():
  return generators.cycle(4)


@pytest.fixture
def c6():
  return generators.cycle(6)


@pytest.fixture
def octahedron():
  return generators.octahedron()


@pytest.fixture
def icosahedron():
  return generators.icosahedron()


@pytest.fixture
def torus():
  return generators.torus_grid()


@pytest.fixture
def three_sphere():
  return generators.minimal_sphere(3)


@pytest.fixture
def subdivided_sphere():
  return generators.subdivided_sphere()


@pytest.fixture
def space_file(tmp_path):
  def write(space, name="space.ds"):
    path = tmp_path / name
    write_space(space, path)
    return path

  return write
