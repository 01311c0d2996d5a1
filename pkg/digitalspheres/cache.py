import copy
import logging
from pathlib import Path

import rapidjson


log = logging.getLogger(__name__)

_MISSING = object()


class ResultCache:
  """
  Proven results keyed by namespace and canonical key.

  When a path is given the data is mirrored to a JSON file: it is read again only when the file's mtime changes
  and written only when the data changed since the last load or save.
  """

  def __init__(self, path=None):
    self.path = Path(path) if path is not None else None
    self.data = {}
    self._mtime = None
    self._previous_data = {}
    if self.path is not None:
      try:
        self.load()
      except FileNotFoundError:
        pass

  @staticmethod
  def rapidjson_load_kwargs():
    return {"number_mode": rapidjson.NM_NATIVE}

  @staticmethod
  def rapidjson_dump_kwargs():
    return {"number_mode": rapidjson.NM_NATIVE}

  def load(self):
    if self.path is None:
      return
    if not self._mtime or self.path.stat().st_mtime_ns != self._mtime:
      self._load()

  def save(self):
    if self.path is None:
      return
    if self.data != self._previous_data:
      self._save()

  def get(self, namespace, key, default=None):
    return self.data.get(namespace, {}).get(key, default)

  def lookup(self, namespace, key):
    """Return ``(found, value)``, ``None`` is a legitimate stored value."""
    value = self.data.get(namespace, {}).get(key, _MISSING)
    if value is _MISSING:
      return False, None
    return True, value

  def put(self, namespace, key, value):
    bucket = self.data.setdefault(namespace, {})
    stored = bucket.setdefault(key, value)
    if stored != value:
      log.warning("Conflicting cached results for %s %s: kept %r, got %r", namespace, key, stored, value)
    return stored

  def clear(self):
    self.data = {}

  def _load(self):
    # This method only exists to simplify unit testing
    with self.path.open("r") as rfh:
      try:
        data = rapidjson.load(rfh, **self.rapidjson_load_kwargs())
      except rapidjson.JSONDecodeError as exc:
        log.error("Failed to load JSON from %s: %s", self.path, exc)
      else:
        self.data = data
        self._previous_data = copy.deepcopy(self.data)
        self._mtime = self.path.stat().st_mtime_ns

  def _save(self):
    # This method only exists to simplify unit testing
    with self.path.open("w") as wfh:
      rapidjson.dump(self.data, wfh, **self.rapidjson_dump_kwargs())
    self._mtime = self.path.stat().st_mtime_ns
    self._previous_data = copy.deepcopy(self.data)


_result_cache = ResultCache()


def get_result_cache() -> ResultCache:
  return _result_cache


def set_result_cache(cache: ResultCache) -> ResultCache:
  """Install ``cache`` process wide and return the previous one."""
  global _result_cache
  previous, _result_cache = _result_cache, cache
  return previous
