import logging

from digitalspheres import generators
from digitalspheres.classify import is_closed_manifold
from digitalspheres.classify import is_disk
from digitalspheres.formats import write_space
from digitalspheres.invariants import invariant_report
from digitalspheres.recognize import is_compressed
from digitalspheres.space import closed_neighborhood
from digitalspheres.space import induced
from digitalspheres.traces import write_trace
from digitalspheres.transform import compress


def compressed_projective_plane(search_cap):
  """Compress the subdivided projective plane and return ``(model, trace, compression report)``."""
  plane = generators.projective_plane()
  if not is_closed_manifold(plane, 2):
    raise RuntimeError("The subdivided projective plane is expected to be a closed two-manifold")
  model, trace = compress(plane, 2, search_cap=search_cap)
  return model, trace, is_compressed(model, 2, size_cap=search_cap)


def non_disk_ball_pairs(model):
  """Adjacent points whose two balls together do not form a two-disk."""
  pairs = []
  for u, v in model.sorted_edges:
    if not is_disk(induced(model, closed_neighborhood(model, {u, v})), 2):
      pairs.append((u, v))
  return pairs


if __name__ == "__main__":
  import argparse

  parser = argparse.ArgumentParser()
  parser.add_argument(
    "--cap",
    metavar="POINTS",
    help="Size cap of the disk search",
    type=int,
    default=12,
  )
  parser.add_argument(
    "--output",
    "-o",
    metavar="OUTPUT_PATH",
    help="Where to write the compressed model",
    type=str,
    default="projective-plane-compressed.ds",
  )
  parser.add_argument(
    "--trace",
    metavar="TRACE_PATH",
    help="Where to write the compression trace",
    type=str,
    default=None,
  )
  args = parser.parse_args()
  logging.basicConfig(level=logging.INFO, format="%(asctime)s %(name)s %(levelname)s %(message)s")

  model, trace, report = compressed_projective_plane(args.cap)
  write_space(model, args.output)
  if args.trace:
    write_trace(trace, args.trace)
  print(f"Compressed 31 points to {len(model)} in {len(trace)} steps: {args.output}")
  print(invariant_report(model, field="two").to_text(), end="")
  print(f"compressed={str(report.compressed).lower()}")
  print(f"Adjacent pairs whose balls do not form a disk: {non_disk_ball_pairs(model)}")
