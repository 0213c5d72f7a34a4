# tools/data_loader.py
"""
Settings and input document loading.

Run settings come from a JSON file (config/solver_settings.json unless
FRACTS_CONFIG names another) merged over built-in defaults. Input documents
are parsed as JSON and validated against the pydantic schemas; GridFunction
CSVs are read with pandas and aligned against the grid they belong to.
"""

import json
import os
from typing import Any, Dict, Optional, Type, TypeVar

import numpy as np
import pandas as pd
from pydantic import BaseModel

from core.delta_calculus import GridFunction
from core.errors import InputError
from core.timescale import SNAP_TOLERANCE, Grid

DEFAULT_CONFIG_PATH = "config/solver_settings.json"

DEFAULT_SETTINGS: Dict[str, Any] = {
    "grid_N": 64,
    "tol": 1e-10,
    "max_iters": 200,
    "damping": 1.0,
    "trace_tol": 0.05,
    "seed": 0,
    "control_max_rounds": 50,
    "audit_workers": 4,
    "output_dir": "output",
    "log_dir": "logs",
    "float_format": "%.17g",
}

Model = TypeVar("Model", bound=BaseModel)


def load_config(config_path: Optional[str] = None) -> Dict[str, Any]:
    """Load run settings; keys missing from the file keep their defaults."""
    config_path = config_path or os.getenv("FRACTS_CONFIG") or DEFAULT_CONFIG_PATH
    settings = dict(DEFAULT_SETTINGS)
    if not os.path.exists(config_path):
        if config_path != DEFAULT_CONFIG_PATH:
            raise InputError(f"settings file not found: {config_path}")
        return settings
    with open(config_path, "r", encoding="utf-8") as f:
        try:
            loaded = json.load(f)
        except json.JSONDecodeError as exc:
            raise InputError(f"settings file {config_path} is not valid JSON: {exc}") from None
    unknown = sorted(set(loaded) - set(DEFAULT_SETTINGS))
    if unknown:
        raise InputError(f"settings file {config_path} has unknown keys: {unknown}")
    settings.update(loaded)
    return settings


def read_json(filepath: str) -> Dict[str, Any]:
    try:
        with open(filepath, "r", encoding="utf-8") as f:
            document = json.load(f)
    except FileNotFoundError:
        raise InputError(f"input file not found: {filepath}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"input file {filepath} is not valid JSON: {exc}") from None
    if not isinstance(document, dict):
        raise InputError(f"input file {filepath} must hold a JSON object")
    return document


def load_document(filepath: str, model: Type[Model], overrides: Optional[Dict[str, Any]] = None) -> Model:
    """Read a JSON document, apply flag overrides and validate it (pydantic.ValidationError on failure)."""
    document = read_json(filepath)
    document.update({k: v for k, v in (overrides or {}).items() if v is not None})
    return model.model_validate(document)


def read_grid_function_csv(filepath: str, grid: Grid) -> GridFunction:
    """Read a ``t,value`` CSV whose rows must be exactly the grid nodes."""
    try:
        df = pd.read_csv(filepath)
    except FileNotFoundError:
        raise InputError(f"function CSV not found: {filepath}") from None
    if list(df.columns) != ["t", "value"]:
        raise InputError(f"function CSV {filepath} must have header t,value, got {list(df.columns)}")
    t = pd.to_numeric(df["t"], errors="coerce").to_numpy(dtype=float)
    values = pd.to_numeric(df["value"], errors="coerce").to_numpy(dtype=float)
    if np.isnan(t).any():
        raise InputError(f"function CSV {filepath} has non-numeric t in row {int(np.flatnonzero(np.isnan(t))[0]) + 1}")
    if t.size != grid.size:
        raise InputError(f"function CSV {filepath} has {t.size} rows, the grid has {grid.size} nodes")
    off = np.flatnonzero(np.abs(t - grid.t) > SNAP_TOLERANCE)
    if off.size:
        row = int(off[0])
        raise InputError(f"function CSV {filepath} row {row + 1}: t={t[row]!r} is not grid node {grid.t[row]!r}")
    return GridFunction(grid, values)
