"""
Clique complex invariants: clique counts, Euler characteristic and Betti numbers.

Ranks of boundary maps are computed exactly, over the rationals with fraction-free integer elimination on
sparse rows and over the two-element field with rows packed into Python integers. Before computing homology,
dominated points (``N[v] ⊆ N[u]``) are stripped, which leaves the homotopy type of the clique complex unchanged.
"""

import enum
import logging
from functools import reduce
from math import gcd

import attr
import networkx as nx

from digitalspheres.config import get_settings
from digitalspheres.space import DigitalSpace
from digitalspheres.space import components
from digitalspheres.space import induced


log = logging.getLogger(__name__)


class Field(enum.Enum):
  RATIONAL = "rational"
  TWO = "two"

  @classmethod
  def coerce(cls, value):
    if value is None:
      value = get_settings().field
    return value if isinstance(value, cls) else cls(value)


def cliques_by_size(space: DigitalSpace, max_size=None):
  """Complete subgraphs grouped by size, each as a sorted tuple, ``result[i]`` holding the ``(i+1)``-cliques."""
  by_size = []
  if space.is_empty:
    return by_size
  for clique in nx.enumerate_all_cliques(space.graph):
    size = len(clique)
    if max_size is not None and size > max_size:
      break
    while len(by_size) < size:
      by_size.append([])
    by_size[size - 1].append(tuple(sorted(clique)))
  for simplices in by_size:
    simplices.sort()
  return by_size


def clique_counts(space: DigitalSpace, max_size=None) -> list:
  """``[c_1, c_2, ...]`` where ``c_i`` counts the ``i``-point complete subgraphs."""
  return [len(simplices) for simplices in cliques_by_size(space, max_size)]


def euler_characteristic(space: DigitalSpace) -> int:
  return sum((-1) ** index * count for index, count in enumerate(clique_counts(space)))


def dominated_core(space: DigitalSpace) -> DigitalSpace:
  """Repeatedly delete the smallest dominated point until none is left."""
  closed = {v: set(ns) | {v} for v, ns in space.adjacency.items()}
  removed = True
  while removed:
    removed = False
    for v in sorted(closed):
      if any(closed[v] <= closed[u] for u in closed[v] if u != v):
        for u in closed[v]:
          if u != v:
            closed[u].discard(v)
        del closed[v]
        removed = True
  core = induced(space, closed)
  if len(core) != len(space):
    log.debug("Dominated point removal shrank %r to %r", space, core)
  return core


def _boundary_rows(simplices, faces):
  index = {face: position for position, face in enumerate(faces)}
  for simplex in simplices:
    row = {}
    for position in range(len(simplex)):
      face = simplex[:position] + simplex[position + 1 :]
      row[index[face]] = -1 if position % 2 else 1
    yield row


def _primitive(row):
  divisor = reduce(gcd, (abs(value) for value in row.values()))
  if divisor > 1:
    row = {col: value // divisor for col, value in row.items()}
  return row


def _rank_rational(rows):
  pivots = {}
  for row in rows:
    while row:
      col = max(row)
      pivot = pivots.get(col)
      if pivot is None:
        pivots[col] = _primitive(row)
        break
      a, b = pivot[col], row[col]
      combined = {}
      for c in row.keys() | pivot.keys():
        value = a * row.get(c, 0) - b * pivot.get(c, 0)
        if value:
          combined[c] = value
      row = _primitive(combined) if combined else combined
  return len(pivots)


def _rank_two(rows):
  pivots = {}
  for row in rows:
    bits = 0
    for col in row:
      bits |= 1 << col
    while bits:
      top = bits.bit_length() - 1
      pivot = pivots.get(top)
      if pivot is None:
        pivots[top] = bits
        break
      bits ^= pivot
  return len(pivots)


def boundary_ranks(space: DigitalSpace, field=None) -> list:
  """
  Return ``(ranks, counts)``: ``ranks[k]`` is the rank of ``∂_k`` from ``k``-simplices to ``(k-1)``-simplices
  with ``ranks[0] = 0``, ``counts[k]`` the number of ``k``-simplices.
  """
  field = Field.coerce(field)
  rank = _rank_rational if field is Field.RATIONAL else _rank_two
  by_size = cliques_by_size(space)
  ranks = [0]
  for k in range(1, len(by_size)):
    ranks.append(rank(_boundary_rows(by_size[k], by_size[k - 1])))
  return ranks, [len(simplices) for simplices in by_size]


def betti_numbers(space: DigitalSpace, field=None) -> list:
  """
  Ranks of the clique complex homology over ``field``.

  The list is trimmed after the highest nonzero entry, the empty space gives ``[]``.
  """
  field = Field.coerce(field)
  core = dominated_core(space)
  ranks, counts = boundary_ranks(core, field)
  ranks.append(0)
  betti = [counts[k] - ranks[k] - ranks[k + 1] for k in range(len(counts))]
  while betti and betti[-1] == 0:
    betti.pop()
  return betti


def torsion_coefficients(space: DigitalSpace) -> dict:
  """
  Torsion of the integral homology, ``{k: [d_1, d_2, ...]}`` for every ``H_k`` with invariant factors above one.

  Uses the Smith normal form of the integral boundary matrices.
  """
  from sympy import ZZ
  from sympy.polys.matrices import DomainMatrix
  from sympy.polys.matrices.normalforms import invariant_factors

  by_size = cliques_by_size(dominated_core(space))
  torsion = {}
  for k in range(1, len(by_size)):
    ncols = len(by_size[k - 1])
    dense = []
    for row in _boundary_rows(by_size[k], by_size[k - 1]):
      values = [ZZ(0)] * ncols
      for col, value in row.items():
        values[col] = ZZ(value)
      dense.append(values)
    matrix = DomainMatrix(dense, (len(dense), ncols), ZZ)
    factors = [int(factor) for factor in invariant_factors(matrix)]
    factors = sorted(abs(factor) for factor in factors if abs(factor) > 1)
    if factors:
      torsion[k - 1] = factors
  return torsion


def has_torsion_witness(space: DigitalSpace) -> bool:
  """True when rational and two-element Betti numbers disagree, which only torsion can cause."""
  rational = betti_numbers(space, Field.RATIONAL)
  two = betti_numbers(space, Field.TWO)
  if rational != two:
    log.warning("Torsion witness on %r: rational Betti %s, two-element Betti %s", space, rational, two)
    return True
  return False


@attr.s(frozen=True)
class InvariantReport:
  clique_counts = attr.ib(converter=tuple)
  euler = attr.ib()
  betti = attr.ib(converter=tuple)
  field = attr.ib(converter=Field.coerce)
  components = attr.ib(default=None)
  torsion = attr.ib(default=None)

  @euler.validator
  def _validate_euler(self, attribute, value):
    alternating = sum((-1) ** index * count for index, count in enumerate(self.clique_counts))
    if value != alternating:
      raise ValueError(f"'euler' is {value} but the clique counts give {alternating}")

  def to_dict(self):
    data = {
      "clique_counts": list(self.clique_counts),
      "euler": self.euler,
      "betti": list(self.betti),
      "field": self.field.value,
    }
    if self.components is not None:
      data["components"] = self.components
    if self.torsion is not None:
      data["torsion"] = {str(k): list(v) for k, v in self.torsion.items()}
    return data

  def to_text(self):
    lines = [
      f"clique_counts={','.join(map(str, self.clique_counts))}",
      f"euler={self.euler}",
      f"betti={','.join(map(str, self.betti))}",
      f"field={self.field.value}",
    ]
    if self.components is not None:
      lines.append(f"components={self.components}")
    if self.torsion is not None:
      rendered = ";".join(f"{k}:{','.join(map(str, v))}" for k, v in sorted(self.torsion.items()))
      lines.append(f"torsion={rendered}")
    return "\n".join(lines) + "\n"


def invariant_report(space: DigitalSpace, field=None, torsion=False) -> InvariantReport:
  field = Field.coerce(field)
  counts = clique_counts(space)
  betti = betti_numbers(space, field)
  ncomponents = len(components(space)) if not space.is_empty else 0
  if betti and betti[0] != ncomponents:
    raise AssertionError(f"b_0={betti[0]} disagrees with {ncomponents} connected components")
  return InvariantReport(
    clique_counts=counts,
    euler=sum((-1) ** index * count for index, count in enumerate(counts)),
    betti=betti,
    field=field,
    components=ncomponents,
    torsion=torsion_coefficients(space) if torsion else None,
  )
