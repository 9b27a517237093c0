"""Reading and writing sweep tables, transition events and parallelism reports."""

import csv
import io
import json
import math

from .events import TransitionEvent
from .exceptions import ConfigError
from .measures import MEASURE_NAMES, MeasureSet
from .state import EvalPoint
from .sweep import SweepRow, SweepTable

COLUMNS = ("omega", "t", "epsilon") + MEASURE_NAMES + ("error",)
HEADER = ",".join(COLUMNS)
EVENT_COLUMNS = ("measure", "kind", "omega", "t", "epsilon", "i", "j")


def format_float(value):
    """12 significant digits, always recognisable as a float (``1.0`` not ``1``)."""
    value = float(value)
    if math.isnan(value):
        return "nan"
    text = format(value, ".12g")
    if not any(ch in text for ch in ".eni"):
        text += ".0"
    return text


def _rounded(value):
    value = float(value)
    return None if math.isnan(value) else float(format_float(value))


def table_to_csv(table):
    buf = io.StringIO()
    for key in ("tool", "version", "panels", "config", "timestamp"):
        if key in table.metadata:
            value = table.metadata[key]
            text = json.dumps(value, sort_keys=True) if isinstance(value, (dict, list)) else value
            buf.write(f"# {key}: {text}\n")
    buf.write(HEADER + "\n")
    for row in table.rows:
        fields = [format_float(v) for v in row.values()]
        fields.append(row.error.replace(",", ";").replace("\n", " "))
        buf.write(",".join(fields) + "\n")
    return buf.getvalue()


def table_to_json(table):
    rows = []
    for row in table.rows:
        record = {name: _rounded(v) for name, v in zip(COLUMNS, row.values())}
        record["error"] = row.error
        rows.append(record)
    return json.dumps({"metadata": table.metadata, "columns": list(COLUMNS), "rows": rows},
                      indent=2, sort_keys=True) + "\n"


def _metadata_value(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def table_from_csv(text):
    metadata = {}
    lines = []
    for line in text.splitlines():
        if line.startswith("#"):
            key, _, value = line[1:].strip().partition(": ")
            metadata[key] = _metadata_value(value)
        elif line.strip():
            lines.append(line)
    if not lines or lines[0].strip() != HEADER:
        raise ConfigError(f"unexpected CSV header; expected {HEADER!r}")
    rows = []
    for record in csv.DictReader(lines):
        try:
            point = EvalPoint(float(record["omega"]), float(record["t"]), float(record["epsilon"]))
            measures = MeasureSet(*(float(record[name]) for name in MEASURE_NAMES))
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad CSV row {record}: {exc}") from None
        rows.append(SweepRow(point, measures, record.get("error") or ""))
    if "panels" in metadata:
        metadata["panels"] = int(metadata["panels"])
    return SweepTable(rows, metadata)


def table_from_json(text):
    data = json.loads(text)
    rows = []
    for record in data["rows"]:
        nan = lambda v: math.nan if v is None else float(v)  # noqa: E731
        point = EvalPoint(nan(record["omega"]), nan(record["t"]), nan(record["epsilon"]))
        measures = MeasureSet(*(nan(record[name]) for name in MEASURE_NAMES))
        rows.append(SweepRow(point, measures, record.get("error", "")))
    return SweepTable(rows, data.get("metadata", {}))


def read_table(path):
    with open(path) as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        return table_from_json(text)
    return table_from_csv(text)


def events_to_csv(events):
    lines = [",".join(EVENT_COLUMNS)]
    for ev in events:
        lines.append(",".join([ev.measure, ev.kind, format_float(ev.omega), format_float(ev.t),
                               format_float(ev.epsilon), str(ev.bracket[0]), str(ev.bracket[1])]))
    return "\n".join(lines) + "\n"


def events_to_json(events):
    payload = [
        {"measure": ev.measure, "kind": ev.kind, "omega": ev.omega, "t": _rounded(ev.t),
         "epsilon": _rounded(ev.epsilon), "bracket": list(ev.bracket)}
        for ev in events
    ]
    return json.dumps(payload, indent=2) + "\n"


def events_from_csv(text):
    events = []
    for record in csv.DictReader(text.splitlines()):
        events.append(TransitionEvent(record["measure"], record["kind"], float(record["omega"]),
                                      float(record["t"]), float(record["epsilon"]),
                                      (int(record["i"]), int(record["j"]))))
    return events


def report_to_json(report):
    return json.dumps(report.to_dict(), indent=2) + "\n"


def report_to_csv(report):
    lines = ["measure_a,measure_b,pearson,sign_agreement"]
    for a, b, r, s in report.pairs():
        lines.append(",".join([a, b, "undefined" if r is None else format_float(r),
                               "undefined" if s is None else format_float(s)]))
    return "\n".join(lines) + "\n"


def write_text(text, path=None, stream=None):
    """Write to ``path`` or, when it is None, to ``stream``."""
    if path is None:
        stream.write(text)
        return
    with open(path, "w", newline="") as fh:
        fh.write(text)


def emit(obj, fmt="csv", path=None, stream=None):
    """Serialise a table, report or event list and write it out."""
    if fmt not in ("csv", "json"):
        raise ConfigError(f"unknown format {fmt!r}")
    if isinstance(obj, SweepTable):
        text = table_to_csv(obj) if fmt == "csv" else table_to_json(obj)
    elif isinstance(obj, list):
        text = events_to_csv(obj) if fmt == "csv" else events_to_json(obj)
    else:
        text = report_to_csv(obj) if fmt == "csv" else report_to_json(obj)
    write_text(text, path, stream)
    return text
