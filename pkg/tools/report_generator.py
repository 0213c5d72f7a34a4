# tools/report_generator.py
"""
Artifact writers.

CSVs go through pandas with a fixed float format and no index; JSON reports
are sorted, indented and free of timestamps, so identical runs give
byte-identical files.
"""

import json
import math
import os
from typing import Any, Dict

import numpy as np
import pandas as pd

FLOAT_FORMAT = "%.17g"


def to_serializable(obj: Any, float_format: str = FLOAT_FORMAT) -> Any:
    """
    Recursively convert numpy scalars/arrays, tuples and report objects to JSON-safe values.

    Floats are rounded through ``float_format``; non-finite floats become None.
    """
    if hasattr(obj, "to_dict") and not isinstance(obj, (pd.DataFrame, pd.Series)):
        return to_serializable(obj.to_dict(), float_format)
    if isinstance(obj, dict):
        return {str(k): to_serializable(v, float_format) for k, v in obj.items()}
    if isinstance(obj, np.ndarray):
        return [to_serializable(item, float_format) for item in obj.tolist()]
    if isinstance(obj, (list, tuple)):
        return [to_serializable(item, float_format) for item in obj]
    if isinstance(obj, np.generic):
        obj = obj.item()
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, int)):
        return obj
    if isinstance(obj, float):
        return float(float_format % obj) if math.isfinite(obj) else None
    return str(obj)


def write_json_report(document: Any, output_path: str, float_format: str = FLOAT_FORMAT) -> str:
    os.makedirs(os.path.dirname(output_path) or ".", exist_ok=True)
    with open(output_path, "w", encoding="utf-8") as f:
        json.dump(to_serializable(document, float_format), f, indent=2, sort_keys=True, allow_nan=False)
        f.write("\n")
    return output_path


def write_frame_csv(frame: pd.DataFrame, output_path: str, float_format: str = FLOAT_FORMAT) -> str:
    os.makedirs(os.path.dirname(output_path) or ".", exist_ok=True)
    frame.to_csv(output_path, index=False, float_format=float_format, na_rep="nan", lineterminator="\n")
    return output_path


def write_text(text: str, output_path: str) -> str:
    os.makedirs(os.path.dirname(output_path) or ".", exist_ok=True)
    with open(output_path, "w", encoding="utf-8") as f:
        f.write(text)
    return output_path


def artifact_summary(files: Dict[str, str]) -> str:
    """One line per written artifact, for the CLI's stdout."""
    return "\n".join(f"{label}: {path}" for label, path in sorted(files.items()))
