import pytest

from skewspec.errors import ConfigError
from skewspec.services.config_service import Config, ConfigService


def test_defaults():
    config = ConfigService(environ={}).from_environment()
    assert config == Config(tolerance=1e-8, size_limit=4096, output="text", workers=1, seed=42)


def test_environment_overrides_defaults():
    environ = {"SKEWSPEC_LIMIT": "64", "SKEWSPEC_TOL": "1e-6", "SKEWSPEC_OUTPUT": "json",
               "SKEWSPEC_WORKERS": "", "UNRELATED": "x"}
    config = ConfigService(environ=environ).from_environment()
    assert config.size_limit == 64
    assert config.tolerance == 1e-6
    assert config.output == "json"
    assert config.workers == 1


def test_flags_override_environment():
    service = ConfigService(environ={"SKEWSPEC_LIMIT": "64", "SKEWSPEC_OUTPUT": "json"})
    config = service.resolve(size_limit=128, output=None, tolerance=None, seed=7)
    assert config.size_limit == 128
    assert config.output == "json"
    assert config.seed == 7


@pytest.mark.parametrize("environ", [
    {"SKEWSPEC_LIMIT": "lots"},
    {"SKEWSPEC_LIMIT": "0"},
    {"SKEWSPEC_TOL": "-1"},
    {"SKEWSPEC_OUTPUT": "xml"},
    {"SKEWSPEC_WORKERS": "0"},
])
def test_invalid_values_raise(environ):
    with pytest.raises(ConfigError):
        ConfigService(environ=environ).from_environment()


def test_dotenv_file_is_loaded(tmp_path, monkeypatch):
    (tmp_path / ".env").write_text("SKEWSPEC_LIMIT=256\n", encoding="utf-8")
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("SKEWSPEC_LIMIT", raising=False)
    assert ConfigService().from_environment().size_limit == 256
