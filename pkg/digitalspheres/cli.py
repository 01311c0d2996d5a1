"""
Command line interface.

Exit codes: 0 when the command succeeded, 1 on errors (bad usage, unreadable or malformed input, failed
preconditions), 2 when a bounded search gave up before reaching a verdict.
"""

import argparse
import logging
import sys
from pathlib import Path

import attr
import rapidjson

from digitalspheres import generators
from digitalspheres.cache import ResultCache
from digitalspheres.cache import get_result_cache
from digitalspheres.cache import set_result_cache
from digitalspheres.canonical import is_isomorphic
from digitalspheres.classify import classify_space
from digitalspheres.classify import is_contractible
from digitalspheres.classify import Status
from digitalspheres.config import Settings
from digitalspheres.config import configure
from digitalspheres.config import load_settings
from digitalspheres.digitize import refine_and_compare
from digitalspheres.digitize import surface
from digitalspheres.digitize import thin_model
from digitalspheres.digitize import voxelize_surface
from digitalspheres.exceptions import DigitalSpaceError
from digitalspheres.exceptions import SearchBudgetExhausted
from digitalspheres.exceptions import UsageError
from digitalspheres.formats import dumps_space
from digitalspheres.formats import read_space
from digitalspheres.formats import to_dot
from digitalspheres.formats import write_space
from digitalspheres.invariants import invariant_report
from digitalspheres.recognize import CRITERIA
from digitalspheres.recognize import check_sphere_criteria
from digitalspheres.space import join
from digitalspheres.traces import read_steps
from digitalspheres.traces import replay_steps
from digitalspheres.traces import write_trace
from digitalspheres.transform import compress


log = logging.getLogger(__name__)

OK = "ok"
ERROR = "error"
INDETERMINATE = "indeterminate"
EXIT_CODES = {OK: 0, ERROR: 1, INDETERMINATE: 2}

GEN_KINDS = ("sphere", "disk", "join", "torus-grid", "projective-plane", "subdivided-sphere", "icosahedron")


class ArgumentParser(argparse.ArgumentParser):
  def error(self, message):
    raise UsageError(message)


@attr.s(frozen=True)
class CommandResult:
  status = attr.ib(validator=attr.validators.in_(EXIT_CODES))
  payload = attr.ib(factory=dict)
  text = attr.ib(default="")
  json_output = attr.ib(default=False)

  @property
  def exit_code(self):
    return EXIT_CODES[self.status]

  def render(self):
    if self.json_output:
      return rapidjson.dumps({"status": self.status, **self.payload}, number_mode=rapidjson.NM_NATIVE, indent=2) + "\n"
    return self.text


def _space_summary(space):
  return {"points": len(space), "edges": len(space.edges)}


def _emit_space(space, output, payload=None):
  payload = {**_space_summary(space), **(payload or {})}
  if output:
    write_space(space, output)
    payload["output"] = str(output)
    return payload, f"wrote {len(space)} points and {len(space.edges)} edges to {output}\n"
  text = dumps_space(space)
  payload["dspace"] = text
  return payload, text


def cmd_gen(args):
  if args.kind == "sphere":
    space = generators.minimal_sphere(args.n)
  elif args.kind == "disk":
    space = generators.minimal_disk(args.n)
  elif args.kind == "join":
    if len(args.operands) != 2:
      raise UsageError("gen join needs exactly two dspace files")
    first, second = (read_space(operand) for operand in args.operands)
    space = join(first, second, relabel=True)
  elif args.kind == "torus-grid":
    space = generators.torus_grid(args.rows, args.cols)
  elif args.kind == "projective-plane":
    space = generators.projective_plane()
  elif args.kind == "subdivided-sphere":
    space = generators.subdivided_sphere()
  else:
    space = generators.icosahedron()
  if args.expand:
    if args.kind != "sphere":
      raise UsageError("--expand only applies to gen sphere")
    space = generators.expanded_sphere(args.n, args.expand, seed=args.seed)
  payload, text = _emit_space(space, args.output, {"kind": args.kind})
  return CommandResult(OK, payload, text)


def cmd_classify(args):
  verdict = classify_space(read_space(args.file), dim=args.dim)
  return CommandResult(OK, verdict.to_dict(), verdict.to_text())


def cmd_contractible(args):
  result = is_contractible(read_space(args.file))
  status = INDETERMINATE if result.status is Status.INDETERMINATE else OK
  text = f"status={result.status.value}\nexplored={result.explored}\n"
  if result.certificate is not None:
    text += "".join(f"{line}\n" for line in result.certificate.to_list())
  return CommandResult(status, result.to_dict(), text)


def cmd_compress(args):
  space = read_space(args.file)
  compressed, trace = compress(space, args.dim, search_cap=args.cap)
  payload = {"points_before": len(space), "steps": len(trace)}
  if args.trace:
    write_trace(trace, args.trace)
    payload["trace"] = str(args.trace)
  payload, text = _emit_space(compressed, args.output, payload)
  return CommandResult(OK, payload, text)


def cmd_invariants(args):
  report = invariant_report(read_space(args.file), field=args.field, torsion=args.torsion)
  return CommandResult(OK, report.to_dict(), report.to_text())


def cmd_recognize(args):
  verdict = check_sphere_criteria(read_space(args.file), args.dim, size_cap=args.cap, criterion=args.criterion)
  status = INDETERMINATE if verdict.holds is None else OK
  return CommandResult(status, verdict.to_dict(), verdict.to_text())


def cmd_digitize(args):
  shape = surface(args.surface, *args.params)
  if args.levels > 1:
    report = refine_and_compare(
      shape.function, shape.box, args.h, args.levels, dim=args.dim, thin=args.thin, seed=args.seed
    )
    payload = report.to_dict()
    if args.output:
      coarse = report.thinned[0] if args.thin and report.thinned[0] is not None else report.models[0].space
      write_space(coarse, args.output)
      payload["output"] = str(args.output)
    return CommandResult(OK, payload, report.to_text())
  model = voxelize_surface(shape.function, shape.box, args.h)
  payload = {"surface": shape.name, "h": args.h}
  space = model.space
  if args.thin:
    space, trace = thin_model(model, args.dim, seed=args.seed)
    payload.update(points_before=len(model.space), steps=len(trace))
    if args.trace:
      write_trace(trace, args.trace)
      payload["trace"] = str(args.trace)
  payload, text = _emit_space(space, args.output, payload)
  return CommandResult(OK, payload, text)


def cmd_export_dot(args):
  space = read_space(args.file)
  dot = to_dot(space, classify_space(space, dim=args.dim))
  if args.output:
    Path(args.output).write_text(dot)
    return CommandResult(OK, {"output": str(args.output)}, f"wrote {args.output}\n")
  return CommandResult(OK, {"dot": dot}, dot)


def cmd_replay(args):
  steps = read_steps(args.trace)
  space = replay_steps(read_space(args.file), steps)
  payload, text = _emit_space(space, args.output, {"steps": len(steps)})
  return CommandResult(OK, payload, text)


def cmd_compare(args):
  first, second = read_space(args.first), read_space(args.second)
  first_model, _ = compress(first, args.dim, search_cap=args.cap)
  second_model, _ = compress(second, args.dim, search_cap=args.cap)
  same = is_isomorphic(first_model, second_model)
  payload = {
    "isomorphic": same,
    "points": [len(first), len(second)],
    "compressed_points": [len(first_model), len(second_model)],
  }
  text = f"compressed_points={len(first_model)},{len(second_model)}\nisomorphic={str(same).lower()}\n"
  return CommandResult(OK, payload, text)


def build_parser():
  parser = ArgumentParser(prog="digitalspheres", description="Digital spaces: classify, transform, measure, recognize")
  parser.add_argument("--json", action="store_true", help="Print machine readable JSON")
  parser.add_argument("--seed", metavar="SEED", help="Seed for randomized commands", type=int, default=0)
  parser.add_argument(
    "--config",
    metavar="CONFIG_PATH",
    help="JSON settings file, may be given several times, later files win",
    action="append",
    default=[],
  )
  parser.add_argument("--cache-file", metavar="CACHE_PATH", help="Persist proven results to this JSON file")
  parser.add_argument("--budget", metavar="STATES", help="Contractibility search budget", type=int)
  parser.add_argument("--cap", metavar="POINTS", help="Size cap of the disk searches", type=int)
  parser.add_argument("--verbose", "-v", action="count", default=0, help="More logging")
  commands = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)

  gen = commands.add_parser("gen", help="Generate a digital space")
  gen.add_argument("kind", choices=GEN_KINDS)
  gen.add_argument("operands", nargs="*", metavar="FILE", help="Operands of gen join")
  gen.add_argument("-n", metavar="DIM", help="Dimension of gen sphere / gen disk", type=int, default=2)
  gen.add_argument("--rows", type=int, default=4)
  gen.add_argument("--cols", type=int, default=4)
  gen.add_argument("--expand", metavar="K", help="Apply K seeded random ball expansions", type=int, default=0)
  gen.add_argument("--output", "-o", metavar="OUTPUT_PATH")
  gen.set_defaults(handler=cmd_gen)

  classify = commands.add_parser("classify", help="Classify a dspace file")
  classify.add_argument("file")
  classify.add_argument("--dim", type=int)
  classify.set_defaults(handler=cmd_classify)

  contractible = commands.add_parser("contractible", help="Search a contraction to a point")
  contractible.add_argument("file")
  contractible.set_defaults(handler=cmd_contractible)

  compress_ = commands.add_parser("compress", help="Compress a closed manifold")
  compress_.add_argument("file")
  compress_.add_argument("--dim", type=int, required=True)
  compress_.add_argument("--output", "-o", metavar="OUTPUT_PATH")
  compress_.add_argument("--trace", metavar="TRACE_PATH")
  compress_.set_defaults(handler=cmd_compress)

  invariants = commands.add_parser("invariants", help="Clique counts, Euler characteristic, Betti numbers")
  invariants.add_argument("file")
  invariants.add_argument("--field", choices=("rational", "two"))
  invariants.add_argument("--torsion", action="store_true", help="Also compute integral torsion")
  invariants.set_defaults(handler=cmd_invariants)

  recognize = commands.add_parser("recognize", help="Evaluate a sphere criterion")
  recognize.add_argument("file")
  recognize.add_argument("--dim", type=int, required=True)
  recognize.add_argument("--criterion", choices=CRITERIA)
  recognize.set_defaults(handler=cmd_recognize)

  digitize = commands.add_parser("digitize", help="Digitize an implicit surface")
  digitize.add_argument("surface", choices=("sphere", "torus", "plane"))
  digitize.add_argument("params", nargs="*", type=float, metavar="PARAM")
  digitize.add_argument("--h", type=float, default=0.5)
  digitize.add_argument("--levels", type=int, default=1)
  digitize.add_argument("--dim", type=int, default=2)
  digitize.add_argument(
    "--thin",
    action="store_true",
    help="Thin the digitized graph to a closed manifold by seeded contractible deletions",
  )
  digitize.add_argument("--trace", metavar="TRACE_PATH", help="Where to write the thinning trace")
  digitize.add_argument("--output", "-o", metavar="OUTPUT_PATH")
  digitize.set_defaults(handler=cmd_digitize)

  export_dot = commands.add_parser("export-dot", help="Write Graphviz DOT with the classification")
  export_dot.add_argument("file")
  export_dot.add_argument("--dim", type=int)
  export_dot.add_argument("--output", "-o", metavar="OUTPUT_PATH")
  export_dot.set_defaults(handler=cmd_export_dot)

  replay = commands.add_parser("replay", help="Replay a trace file")
  replay.add_argument("trace")
  replay.add_argument("file")
  replay.add_argument("--output", "-o", metavar="OUTPUT_PATH")
  replay.set_defaults(handler=cmd_replay)

  compare = commands.add_parser("compare", help="Compress two closed manifolds and compare the results")
  compare.add_argument("first")
  compare.add_argument("second")
  compare.add_argument("--dim", type=int, required=True)
  compare.set_defaults(handler=cmd_compare)
  return parser


def _settings(args):
  settings = load_settings(*args.config) if args.config else Settings()
  overrides = {}
  if args.budget is not None:
    overrides["contractible_budget"] = args.budget
  if args.cap is not None:
    overrides["disk_size_cap"] = args.cap
  if args.verbose:
    overrides["log_level"] = "DEBUG"
  return attr.evolve(settings, **overrides)


def run(argv=None, setup_logging=False) -> CommandResult:
  try:
    args = build_parser().parse_args(argv)
    settings = _settings(args)
  except (DigitalSpaceError, OSError) as exc:
    return CommandResult(ERROR, {"error": str(exc)}, f"error: {exc}\n")
  if setup_logging:
    logging.basicConfig(level=settings.log_level, format="%(asctime)s %(name)s %(levelname)s %(message)s")

  previous_settings = configure(settings)
  cache_path = args.cache_file or settings.result_cache_file
  previous_cache = set_result_cache(ResultCache(cache_path)) if cache_path else None
  try:
    result = args.handler(args)
  except SearchBudgetExhausted as exc:
    log.warning("%s: %s", args.command, exc)
    result = CommandResult(INDETERMINATE, {"error": str(exc)}, f"indeterminate: {exc}\n")
  except (DigitalSpaceError, OSError) as exc:
    log.debug("%s failed", args.command, exc_info=True)
    result = CommandResult(ERROR, {"error": str(exc)}, f"error: {exc}\n")
  finally:
    if previous_cache is not None:
      get_result_cache().save()
      set_result_cache(previous_cache)
    configure(previous_settings)
  return attr.evolve(result, json_output=args.json)


def main(argv=None):
  result = run(argv, setup_logging=True)
  stream = sys.stdout if result.status != ERROR else sys.stderr
  stream.write(result.render())
  return result.exit_code


if __name__ == "__main__":
  sys.exit(main())
