"""Loading and schema validation for exported data files."""

from __future__ import annotations

import csv
import json
import os

# Expected header line per CSV kind; the schemas/ directory documents the
# same contracts in prose and must stay in sync (tested).
CSV_HEADERS = {
    "nodes": "m,x,theta",
    "cdf": "x,F",
    "growth": "M,N,log10_B,log10_Q,log10_witness,status",
    "scaling": "N,M_star",
    "contour": "M,N,log10_B,status",
    "remez_convergence": "variant,iteration,lvalue",
    "lsq": "M,N,kappa,sup_error_exp,sup_error_runge",
    "mockcheb": "n,x_star,z_left,z_right",
}


class SchemaError(ValueError):
    """Raised when a data file does not match its documented schema."""


def read_csv(path: str, kind: str) -> list[dict]:
    """Read a CSV export, validating the header against the schema.

    Empty fields become None; numeric-looking fields are converted.
    """
    expected = CSV_HEADERS[kind]
    with open(path, newline="") as fh:
        first = fh.readline().rstrip("\n")
        if first != expected:
            raise SchemaError(
                f"{path}: header {first!r} does not match {kind!r} schema {expected!r}"
            )
        reader = csv.DictReader(fh, fieldnames=expected.split(","))
        rows = []
        for raw in reader:
            row = {}
            for key, value in raw.items():
                if value is None or value == "":
                    row[key] = None
                else:
                    try:
                        row[key] = int(value)
                    except ValueError:
                        try:
                            row[key] = float(value)
                        except ValueError:
                            row[key] = value
            rows.append(row)
    return rows


def read_json(path: str, required_keys: tuple[str, ...]) -> dict:
    with open(path) as fh:
        doc = json.load(fh)
    missing = [k for k in required_keys if k not in doc]
    if missing:
        raise SchemaError(f"{path}: missing keys {missing}")
    return doc


def find_one(data_dir: str, patterns: tuple[str, ...]) -> str:
    """First existing file among the given names/glob-free candidates."""
    for name in patterns:
        path = os.path.join(data_dir, name)
        if os.path.exists(path):
            return path
    raise FileNotFoundError(
        f"none of {', '.join(patterns)} found in {data_dir}"
    )
