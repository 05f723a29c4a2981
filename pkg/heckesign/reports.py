"""
Deterministic JSON and CSV report files.

JSON is written with sorted keys, two-space indentation and a trailing
newline; floats keep their shortest round-trip repr. CSV uses "\\n" line
endings. Nothing time- or host-dependent is ever written, so the same
inputs always give byte-identical files.

"""
import csv
import io
import json
import logging
from pathlib import Path

import numpy as np


logger = logging.getLogger(__name__)


def to_plain(obj):
    """
    Convert numpy scalars and arrays, tuples and objects with as_dict()
    into plain JSON-serializable Python values.
    """
    if hasattr(obj, "as_dict"):
        return to_plain(obj.as_dict())
    if isinstance(obj, dict):
        return {str(k): to_plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_plain(obj.tolist())
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    return obj


def dumps(obj):
    return json.dumps(to_plain(obj), sort_keys=True, indent=2) + "\n"


def write_json(path, obj):
    """
    Write obj as a deterministic JSON document and return the path.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(obj), encoding="utf-8", newline="\n")
    logger.debug("wrote %s", path)
    return path


def csv_text(header, rows):
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(value) for value in row])
    return buffer.getvalue()


def write_csv(path, header, rows):
    """
    Write a header line and rows as CSV and return the path.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(csv_text(header, rows), encoding="utf-8", newline="\n")
    logger.debug("wrote %s", path)
    return path


def _cell(value):
    if isinstance(value, (np.integer, np.floating)):
        value = value.item()
    if isinstance(value, float):
        return repr(value)
    return value
