"""Digital (graph based) topology: classification, transformations, invariants and sphere recognition."""

from digitalspheres.canonical import canonical_form
from digitalspheres.canonical import find_isomorphism
from digitalspheres.canonical import is_isomorphic
from digitalspheres.classify import classify_space
from digitalspheres.classify import disk_decomposition
from digitalspheres.classify import is_closed_manifold
from digitalspheres.classify import is_contractible
from digitalspheres.classify import is_disk
from digitalspheres.classify import is_sphere
from digitalspheres.classify import normal_dimension
from digitalspheres.invariants import betti_numbers
from digitalspheres.invariants import euler_characteristic
from digitalspheres.invariants import invariant_report
from digitalspheres.recognize import check_sphere_criteria
from digitalspheres.space import DigitalSpace
from digitalspheres.space import join
from digitalspheres.space import make_space
from digitalspheres.transform import collapse_disk
from digitalspheres.transform import compress
from digitalspheres.transform import expand_ball


__version__ = "0.1.0"
