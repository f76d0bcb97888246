"""Bundled parameter presets (presets.yaml)."""
import logging
import os
from typing import Dict, List

import yaml

from coset_qkd.errors import ValidationError

logger = logging.getLogger("coset-qkd")


def get_presets_path() -> str:
    current = os.path.dirname(os.path.abspath(__file__))
    return os.path.join(current, "presets.yaml")


def _load_all() -> Dict[str, Dict[str, object]]:
    if not hasattr(_load_all, "_cache"):
        with open(get_presets_path(), "r", encoding="utf-8") as f:
            data = yaml.safe_load(f) or {}
        presets = data.get("presets")
        if not isinstance(presets, dict):
            raise ValidationError("presets.yaml has no 'presets' mapping")
        _load_all._cache = presets
        logger.debug(f"Loaded {len(presets)} parameter presets")
    return _load_all._cache


def list_presets() -> List[str]:
    return sorted(_load_all())


def load_preset(name: str) -> Dict[str, str]:
    """Preset values as strings, the same shape load_params_file returns."""
    presets = _load_all()
    if name not in presets:
        raise ValidationError(f"unknown preset {name!r}; available: {', '.join(sorted(presets))}")
    return {key: str(value) for key, value in presets[name].items()}
