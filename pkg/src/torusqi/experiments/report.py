"""Report container and deterministic CSV/JSON renderings.

CSV flattens every row to the fixed column set
(j, p, error, comparator, ratio, slope, tag); fields a row kind does not
carry stay empty.  JSON keeps the full row dicts plus metadata, rendered
with sorted keys and 15-significant-digit floats so byte-identical reruns
are byte-identical files.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Mapping

CSV_COLUMNS = ("j", "p", "error", "comparator", "ratio", "slope", "tag")


@dataclass(frozen=True)
class ExperimentReport:
    metadata: Dict
    rows: List[Dict]


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        if math.isnan(value):
            return "nan"
        return "%.15g" % value
    return str(value)


def render_csv(report: ExperimentReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in report.rows:
        writer.writerow([_fmt(row.get(col)) for col in CSV_COLUMNS])
    return buf.getvalue()


def _jsonable(obj):
    if isinstance(obj, float):
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        if math.isnan(obj):
            return "nan"
        return float("%.15g" % obj)
    if isinstance(obj, Mapping):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def render_json(report: ExperimentReport) -> str:
    payload = {"metadata": _jsonable(report.metadata), "rows": _jsonable(report.rows)}
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def config_hash(config_dict: Mapping) -> str:
    canonical = json.dumps(_jsonable(config_dict), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode()).hexdigest()


def write_report(report: ExperimentReport, out_dir, label: str, fmt: str) -> Path:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    if fmt == "csv":
        path = out / f"{label}.csv"
        path.write_text(render_csv(report))
    elif fmt == "json":
        path = out / f"{label}.json"
        path.write_text(render_json(report))
    else:
        raise ValueError(f"format must be csv or json, got {fmt!r}")
    return path
