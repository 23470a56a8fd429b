"""Runtime settings"""

import logging
import os
from dataclasses import dataclass, field
from typing import Dict, Mapping

import dotenv

from concat_reach_core.errors import ConcatReachError
from concat_reach_core.transformation import MAX_STATES

log = logging.getLogger(__name__)

ENV_PREFIX = "CONCAT_REACH_"


def _default_workers() -> int:
    return min(os.cpu_count() or 1, 8)


@dataclass
class Settings:
    """Settings shared by the CLI and the sweep

    Attributes:
        workers (int): Sweep process pool size
        max_enumerate (int): Largest word length the enumerate command accepts
        max_states (int): Largest operand size accepted when parsing
        log_level (str): Logging level name used by the CLI
    """

    workers: int = field(default_factory=_default_workers)
    max_enumerate: int = 12
    max_states: int = MAX_STATES
    log_level: str = "WARNING"


_INTEGER_KEYS = ("workers", "max_enumerate", "max_states")


def _integer(key: str, value: str) -> int:
    try:
        number = int(value)
    except (TypeError, ValueError) as ex:
        raise ConcatReachError(f"setting {key} must be an integer, got {value!r}") from ex
    if number < 1:
        raise ConcatReachError(f"setting {key} must be positive, got {number}")
    return number


def _settings_from(values: Mapping[str, str]) -> Dict[str, object]:
    options: Dict[str, object] = {}
    for raw_key, value in values.items():
        if value is None:
            continue
        key = raw_key.upper()
        if not key.startswith(ENV_PREFIX):
            continue
        name = key[len(ENV_PREFIX):].lower()
        if name in _INTEGER_KEYS:
            options[name] = _integer(name, value)
        elif name == "log_level":
            options[name] = str(value).upper()
        else:
            log.debug("Ignoring unknown setting: %s", raw_key)
    return options


def load_settings(env_file: str = ".env", env: Mapping[str, str] = None) -> Settings:
    """Load settings from an env file, the process environment and explicit
    overrides (later sources win)

    Only keys prefixed with CONCAT_REACH_ are considered, e.g.
    CONCAT_REACH_WORKERS=4.

    Args:
        env_file (str, optional): Environment file. Defaults to '.env'.
        env (Mapping[str, str], optional): Overrides applied last.
            Defaults to None.

    Returns:
        Settings: Resolved settings

    Raises:
        ConcatReachError: A numeric setting is malformed
    """
    env_options: Dict[str, str] = {}

    if env_file and os.path.exists(env_file):
        log.info("Loading settings from file: %s", env_file)
        env_options = dotenv.dotenv_values(env_file) or {}

    env_options = {**env_options, **os.environ}

    if env is not None:
        log.info("Using additional custom settings")
        env_options = {**env_options, **env}

    if (max_states := env_options.get(ENV_PREFIX + "MAX_STATES")) is not None:
        if _integer("max_states", max_states) > MAX_STATES:
            raise ConcatReachError(f"setting max_states cannot exceed {MAX_STATES}")

    return Settings(**_settings_from(env_options))
