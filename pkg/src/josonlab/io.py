"""Versioned CSV and JSON emitters.

Every CSV starts with a schema comment line ``# josonlab <name> v<version>``
followed by the column header.  Floats are written with shortest
round-trip formatting, so reruns with identical inputs produce
byte-identical files.
"""

import csv
import json

import numpy as np


def _fmt(value):
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return str(value)


def write_csv(path, name, version, columns, rows):
    """Write rows (iterable of sequences) under a versioned schema header."""
    with open(path, "w", newline="") as fh:
        fh.write(f"# josonlab {name} v{version}\n")
        writer = csv.writer(fh)
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


def write_json(path, payload):
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True, default=_json_default)
        fh.write("\n")


def _json_default(obj):
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"cannot serialize {type(obj)}")


def read_csv(path):
    """Read back a schema-tagged CSV: (schema line, columns, rows as strings)."""
    with open(path, newline="") as fh:
        schema = fh.readline().strip()
        reader = csv.reader(fh)
        columns = next(reader)
        rows = [row for row in reader]
    return schema, columns, rows
