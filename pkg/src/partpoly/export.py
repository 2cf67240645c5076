"""Flat-file output: coefficient rows as CSV, reports as JSON."""

from __future__ import annotations

import csv
import io
import json
from typing import Iterable, TextIO

from .laurent import LaurentPoly

__all__ = ["write_rows_csv", "rows_csv", "read_rows_csv", "write_json", "to_jsonable"]


def write_rows_csv(rows: Iterable[tuple[int, LaurentPoly]], fh: TextIO) -> None:
    """Write ``n, m, count`` lines (exact decimal integers) for every nonzero coefficient."""
    out = csv.writer(fh, lineterminator="\n")
    out.writerow(["n", "m", "count"])
    for n, poly in rows:
        for m, c in poly.items():
            out.writerow([n, m, c])


def rows_csv(rows: Iterable[tuple[int, LaurentPoly]]) -> str:
    buf = io.StringIO()
    write_rows_csv(rows, buf)
    return buf.getvalue()


def read_rows_csv(fh: TextIO) -> dict[int, LaurentPoly]:
    reader = csv.DictReader(fh)
    if reader.fieldnames != ["n", "m", "count"]:
        raise ValueError(f"unexpected header {reader.fieldnames}")
    acc: dict[int, dict[int, int]] = {}
    for rec in reader:
        acc.setdefault(int(rec["n"]), {})[int(rec["m"])] = int(rec["count"])
    return {n: LaurentPoly(terms) for n, terms in acc.items()}


def to_jsonable(obj):
    """Convert reports to JSON-ready data; big integers become decimal strings."""
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    if isinstance(obj, LaurentPoly):
        return {"min_exp": obj.min_exp, "coeffs": [str(c) for c in obj.dense]}
    if isinstance(obj, bool) or obj is None or isinstance(obj, (float, str)):
        return obj
    if isinstance(obj, int):
        return str(obj) if abs(obj) >= 2**53 else obj
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def write_json(obj, fh: TextIO) -> None:
    json.dump(to_jsonable(obj), fh, sort_keys=True, indent=2)
    fh.write("\n")
