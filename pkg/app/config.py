import logging
import os
from typing import Any, Dict, Optional

import tomli

from app.models import VerifierSettings

logger = logging.getLogger(__name__)

CONFIG_ENV = "BOREL_COADJOINT_CONFIG"
SEED_ENV = "BOREL_COADJOINT_SEED"
DEFAULT_CONFIG_PATH = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "config.toml")


def config_path() -> str:
    return os.environ.get(CONFIG_ENV, DEFAULT_CONFIG_PATH)


def load_config(path: Optional[str] = None) -> Dict[str, Any]:
    """Load configuration from TOML file"""
    path = path or config_path()
    try:
        with open(path, "rb") as f:
            return tomli.load(f)
    except FileNotFoundError:
        logger.warning("config file %s not found, using built-in defaults", path)
    except tomli.TOMLDecodeError as e:
        logger.warning("could not parse %s (%s), using built-in defaults", path, e)
    return {}


# Global configuration
config = load_config()
SETTINGS = VerifierSettings()


def init_config(data: Optional[Dict[str, Any]] = None) -> VerifierSettings:
    """Build SETTINGS from the loaded TOML (or ``data``), environment overrides last"""
    global SETTINGS
    data = config if data is None else data
    general = data.get("general", {})
    suites = data.get("suites", {})
    self_test = data.get("self_test", {})

    values: Dict[str, Any] = {}
    for key in ("default_samples", "default_seed", "oracle_rank_limit", "coefficient_range",
                "genericity_threshold", "workers"):
        if key in general:
            values[key] = general[key]
    for key in ("random_points", "shift_samples", "large_rank", "large_rank_samples"):
        if key in suites:
            values[key] = suites[key]
    if "exhaustive_max_rank" in self_test:
        values["self_test_exhaustive_max_rank"] = self_test["exhaustive_max_rank"]
    if "sampled_triples" in self_test:
        values["self_test_sampled_triples"] = self_test["sampled_triples"]

    env_seed = os.environ.get(SEED_ENV)
    if env_seed is not None:
        try:
            values["default_seed"] = int(env_seed)
        except ValueError:
            logger.warning("ignoring non-integer %s=%r", SEED_ENV, env_seed)

    SETTINGS = VerifierSettings(**values)
    logger.info("settings: %s", SETTINGS.model_dump())
    return SETTINGS


def reload_config(path: Optional[str] = None) -> VerifierSettings:
    """Reload configuration from TOML file"""
    global config
    config = load_config(path)
    return init_config()


def get_settings() -> VerifierSettings:
    return SETTINGS
