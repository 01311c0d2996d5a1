import logging
from pathlib import Path

import attr
import rapidjson

from digitalspheres.exceptions import DigitalSpaceError


log = logging.getLogger(__name__)

FIELDS = ("rational", "two")


def _positive(instance, attribute, value):
  if value is not None and value < 1:
    raise DigitalSpaceError(f"'{attribute.name}' must be a positive integer, not {value!r}")


def _optional_int(value):
  return None if value is None else int(value)


@attr.s(frozen=True)
class Settings:
  """
  Tunables shared by the search procedures.

  :keyword int contractible_budget:
      Explored states after which a contractibility search gives up as indeterminate
  :keyword int disk_size_cap:
      Largest vertex set examined by the disk searches
  :keyword int one_sphere_max_len:
      Longest one-sphere enumerated by the recognizers, ``None`` for the number of points
  :keyword str field:
      Default coefficient field for Betti numbers, ``rational`` or ``two``
  """

  contractible_budget = attr.ib(default=1_000_000, converter=int, validator=_positive)
  disk_size_cap = attr.ib(default=12, converter=int, validator=_positive)
  one_sphere_max_len = attr.ib(default=None, converter=_optional_int)
  field = attr.ib(default="rational")
  log_level = attr.ib(default="INFO")
  result_cache_file = attr.ib(default=None)

  @one_sphere_max_len.validator
  def _validate_one_sphere_max_len(self, attribute, value):
    if value is not None and value < 4:
      raise DigitalSpaceError(f"'one_sphere_max_len' must be at least 4, not {value!r}")

  @field.validator
  def _validate_field(self, attribute, value):
    if value not in FIELDS:
      raise DigitalSpaceError(f"'field' must be one of {FIELDS}, not {value!r}")


def read_config(path):
  path = Path(path)
  with path.open("r") as rfh:
    try:
      return rapidjson.load(
        rfh,
        number_mode=rapidjson.NM_NATIVE,
        parse_mode=rapidjson.PM_COMMENTS | rapidjson.PM_TRAILING_COMMAS,
      )
    except rapidjson.JSONDecodeError as exc:
      raise DigitalSpaceError(f"Failed to load JSON from {path}: {exc}") from exc


def load_settings(*paths, base=None):
  """
  Read settings from JSON config files, each one overriding the keys it sets.

  Keys a file leaves out keep the value from ``base`` (the built-in defaults when not given).
  """
  config = {}
  for path in paths:
    config.update(read_config(path))
  known = {field.name for field in attr.fields(Settings)}
  for key in sorted(set(config) - known):
    log.warning("Ignoring unknown setting %r", key)
  overrides = {}
  for name in sorted(known):
    if name in config:
      overrides[name] = config[name]
  return attr.evolve(base or Settings(), **overrides)


_settings = Settings()


def get_settings() -> Settings:
  return _settings


def configure(settings: Settings) -> Settings:
  """Install ``settings`` process wide and return the previous ones."""
  global _settings
  previous, _settings = _settings, settings
  log.debug("Installed settings %s", settings)
  return previous
