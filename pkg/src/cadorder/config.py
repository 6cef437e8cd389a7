"""
Run configuration: defaults, overlaid by a YAML file, overlaid by command line flags.
"""

from pathlib import Path
from typing import Any, Mapping, Optional

import yaml
from munch import Munch

from .result import USAGE, Ok, Result

HEURISTIC_NAMES = ("brown", "sotd", "greedy-sotd", "mods", "gmods", "logmods", "random", "virtual-best")

DEFAULTS = {
    "heuristics": list(HEURISTIC_NAMES),
    "seed": 0,
    "step_time_limit": 10.0,
    "enumeration_cap": 7,
    "log_base": 10.0,
    "degree_offset": 0,
    "include_cost": True,
    "min_optimal_seconds": 0.0,
    "near_optimal_threshold": 0.2,
    "strategies_path": None,
}

# value checks applied after every overlay
_CHECKS = {
    "step_time_limit": (lambda v: v > 0, "must be positive"),
    "enumeration_cap": (lambda v: isinstance(v, int) and v >= 1, "must be an integer >= 1"),
    "log_base": (lambda v: v > 1, "must be greater than 1"),
    "degree_offset": (lambda v: isinstance(v, int) and v >= 0, "must be a non-negative integer"),
    "min_optimal_seconds": (lambda v: v >= 0, "must be non-negative"),
    "near_optimal_threshold": (lambda v: v >= 0, "must be non-negative"),
    "seed": (lambda v: isinstance(v, int), "must be an integer"),
}


def default_config() -> Munch:
    return Munch.fromDict(DEFAULTS)


def load_config_file(path: Path) -> Result[dict]:
    try:
        with open(path, "r", encoding="utf-8") as f:
            content = yaml.safe_load(f)
    except (OSError, yaml.YAMLError) as e:
        return Result.error(f"failed to load config file {path}", e, kind=USAGE)
    if content is None:
        return Ok({})
    if not isinstance(content, dict):
        return Result.error(f"config file {path} must hold a mapping, got {type(content).__name__}", kind=USAGE)
    return Ok(content)


def make_config(path: Optional[Path] = None, overrides: Optional[Mapping[str, Any]] = None) -> Result[Munch]:
    """Build the run configuration; None overrides mean 'flag not given'"""
    config = default_config()

    if path is not None:
        res = load_config_file(path)
        if not res:
            return Result.error("make_config: failed to read config file", res)
        for key, value in res.unwrapped.items():
            key = key.replace("-", "_")
            if key not in DEFAULTS:
                return Result.error(f"unknown config key '{key}' in {path}", kind=USAGE)
            config[key] = value

    for key, value in (overrides or {}).items():
        if value is not None:
            config[key] = value

    for key, (check, message) in _CHECKS.items():
        try:
            ok = check(config[key])
        except TypeError:
            ok = False
        if not ok:
            return Result.error(f"config value {key}={config[key]!r} {message}", kind=USAGE)
    return Ok(config)
