import logging
import os
from dataclasses import dataclass, replace
from typing import Any, Mapping, Optional

from dotenv import find_dotenv, load_dotenv

from skewspec.errors import ConfigError

logger = logging.getLogger(__name__)

OUTPUT_FORMATS = ("text", "json", "csv")


@dataclass(frozen=True)
class Config:
    """
    Run-wide settings shared by every command.

    :param tolerance: Absolute tolerance for spectrum comparisons.
    :param size_limit: Largest graph order any command will build.
    :param output: Report format, one of ``text``, ``json`` or ``csv``.
    :param workers: Processes used by the orientation search.
    :param seed: RNG seed for randomized verification.
    """

    tolerance: float = 1e-8
    size_limit: int = 4096
    output: str = "text"
    workers: int = 1
    seed: int = 42

    def __post_init__(self):
        if not self.tolerance > 0:
            raise ConfigError(f"tolerance must be positive, got {self.tolerance}")
        if self.size_limit <= 0:
            raise ConfigError(f"size limit must be positive, got {self.size_limit}")
        if self.output not in OUTPUT_FORMATS:
            raise ConfigError(f"output must be one of {', '.join(OUTPUT_FORMATS)}, got {self.output!r}")
        if self.workers < 1:
            raise ConfigError(f"workers must be at least 1, got {self.workers}")


class ConfigService:
    """
    Resolves the run configuration.

    Values come from the built-in defaults, then from the environment
    (a ``.env`` file is loaded first when present), then from explicit
    command-line overrides.
    """

    ENV_KEYS = {
        "size_limit": ("SKEWSPEC_LIMIT", int),
        "tolerance": ("SKEWSPEC_TOL", float),
        "output": ("SKEWSPEC_OUTPUT", str),
        "workers": ("SKEWSPEC_WORKERS", int),
    }

    def __init__(self, environ: Optional[Mapping[str, str]] = None, use_dotenv: bool = True):
        """
        Initializes the ConfigService with an environment to read from.

        :param environ: The variables to read; defaults to ``os.environ``.
        :param use_dotenv: Whether to load a ``.env`` file into ``os.environ`` first.
        """
        if use_dotenv and environ is None:
            load_dotenv(find_dotenv(usecwd=True))
        self.environ = os.environ if environ is None else environ

    def from_environment(self) -> Config:
        """
        Builds a Config from the defaults and the environment.

        :return: The resolved configuration.
        :raises ConfigError: if a variable does not parse or is out of range.
        """
        values = {}
        for field_name, (key, convert) in self.ENV_KEYS.items():
            raw = self.environ.get(key)
            if raw is None or raw == "":
                continue
            try:
                values[field_name] = convert(raw)
            except ValueError:
                raise ConfigError(f"{key}={raw!r} is not a valid {convert.__name__}")
            logger.debug("%s taken from environment: %r", field_name, values[field_name])
        return Config(**values)

    def resolve(self, **overrides: Any) -> Config:
        """
        Applies command-line overrides on top of the environment.

        :param overrides: Config fields; ``None`` values are ignored.
        :return: The resolved configuration.
        """
        config = self.from_environment()
        explicit = {key: value for key, value in overrides.items() if value is not None}
        return replace(config, **explicit) if explicit else config
