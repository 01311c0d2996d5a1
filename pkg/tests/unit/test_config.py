import logging
from pathlib import Path

import pytest

from digitalspheres.config import Settings
from digitalspheres.config import configure
from digitalspheres.config import get_settings
from digitalspheres.config import load_settings
from digitalspheres.exceptions import DigitalSpaceError


REPO_ROOT = Path(__file__).parents[2]


def test_defaults_file_matches_built_in_defaults():
  assert load_settings(REPO_ROOT / "configs" / "defaults.json") == Settings()


def test_later_files_override_earlier_ones():
  settings = load_settings(REPO_ROOT / "configs" / "defaults.json", REPO_ROOT / "configs" / "exhaustive.json")
  assert settings.disk_size_cap == 16
  assert settings.contractible_budget == 5_000_000
  assert settings.field == "rational"


def test_keys_left_out_keep_the_base(tmp_path):
  path = tmp_path / "partial.json"
  path.write_text('{\n  // only the field\n  "field": "two",\n}\n')
  base = Settings(disk_size_cap=9)
  settings = load_settings(path, base=base)
  assert settings.field == "two"
  assert settings.disk_size_cap == 9


def test_unknown_keys_are_ignored_with_a_warning(tmp_path, caplog):
  path = tmp_path / "typo.json"
  path.write_text('{"disk_size_capp": 3}')
  with caplog.at_level(logging.WARNING):
    settings = load_settings(path)
  assert settings == Settings()
  assert "disk_size_capp" in caplog.text


def test_malformed_json(tmp_path):
  path = tmp_path / "broken.json"
  path.write_text('{"field": }')
  with pytest.raises(DigitalSpaceError):
    load_settings(path)


@pytest.mark.parametrize(
  "overrides",
  [{"contractible_budget": 0}, {"disk_size_cap": -1}, {"one_sphere_max_len": 3}, {"field": "reals"}],
  ids=["budget", "cap", "max-len", "field"],
)
def test_invalid_settings(overrides):
  with pytest.raises(DigitalSpaceError):
    Settings(**overrides)


def test_configure_returns_previous():
  custom = Settings(disk_size_cap=5)
  previous = configure(custom)
  try:
    assert get_settings() is custom
  finally:
    assert configure(previous) is custom
