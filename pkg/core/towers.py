"""
Tower files: JSON documents ``{"schema": ..., "levels": [{name, minpoly}]}``.

Towers are looked up by file path, or by name (``q_w`` -> ``q_w.json``) in the
directories of ``settings.tower_dirs``.
"""

import logging
import os
from functools import lru_cache
from typing import List

import orjson

from core.config import settings
from core.exceptions import FieldError
from core.field import FieldTower

logger = logging.getLogger(__name__)


def _locate(name_or_path: str) -> str:
    if os.path.isfile(name_or_path):
        return name_or_path
    filename = name_or_path if name_or_path.endswith(".json") else f"{name_or_path}.json"
    for directory in settings.tower_dirs:
        candidate = os.path.join(directory, filename)
        if os.path.isfile(candidate):
            return candidate
    raise FieldError(f"tower {name_or_path!r} not found in {settings.tower_dirs}", code="tower_not_found")


@lru_cache(maxsize=64)
def _load(path: str) -> FieldTower:
    try:
        with open(path, "rb") as fh:
            data = orjson.loads(fh.read())
    except (OSError, orjson.JSONDecodeError) as e:
        logger.error(f"Error reading tower file {path}: {e}")
        raise FieldError(f"cannot read tower file {path}: {e}", code="tower_not_found") from e
    label = os.path.splitext(os.path.basename(path))[0]
    return FieldTower.from_json(data, label=label)


def load_tower(name_or_path: str) -> FieldTower:
    """
    Load a tower by name or path. Repeated loads return the same object.

    Args:
        name_or_path: A tower file path, or a builtin / search-path tower name

    Returns:
        The FieldTower
    """
    return _load(os.path.abspath(_locate(name_or_path)))


def available_towers() -> List[str]:
    names = set()
    for directory in settings.tower_dirs:
        if os.path.isdir(directory):
            names.update(os.path.splitext(f)[0] for f in os.listdir(directory) if f.endswith(".json"))
    return sorted(names)
