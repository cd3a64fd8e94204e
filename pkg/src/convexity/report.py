"""Edge-list ingestion and deterministic table output (CSV and JSON)."""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .graph import Graph, build_graph, largest_component

FORMATS = ("edgelist", "pajek-arcs")


class DataError(ValueError):
    """Malformed or unusable input data."""


# ---------------------------------------------------------------------------
# ingestion
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Reduction:
    nodes_read: int
    edges_read: int
    nodes_kept: int
    edges_kept: int

    def summary(self) -> str:
        return (f"read {self.nodes_read} nodes, {self.edges_read} edges; "
                f"largest component keeps {self.nodes_kept} nodes, "
                f"{self.edges_kept} edges (dropped "
                f"{self.nodes_read - self.nodes_kept} nodes, "
                f"{self.edges_read - self.edges_kept} edges)")


def _pair(tokens, lineno):
    if len(tokens) < 2:
        raise DataError(f"line {lineno}: expected two node ids")
    try:
        u, v = int(tokens[0]), int(tokens[1])
    except ValueError:
        raise DataError(f"line {lineno}: node ids must be integers") from None
    if u < 0 or v < 0:
        raise DataError(f"line {lineno}: node ids must be non-negative")
    return u, v


def parse_edgelist(text: str) -> list[tuple[int, int]]:
    """Pairs from ``u v`` or ``u,v`` lines; extra columns are ignored."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line[0] in "#%":
            continue
        out.append(_pair(line.replace(",", " ").split(), lineno))
    return out


def parse_pajek(text: str) -> list[tuple[int, int]]:
    """Pairs from the ``*Arcs``/``*Edges`` sections of a Pajek network file."""
    out = []
    section = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line[0] == "%":
            continue
        if line[0] == "*":
            section = line.split()[0].lower()
            continue
        if section in ("*arcs", "*edges"):
            out.append(_pair(line.split(), lineno))
    return out


def read_graph(path, fmt: str = "edgelist") -> tuple[Graph, Reduction]:
    """Simple undirected graph reduced to its largest component."""
    if fmt not in FORMATS:
        raise DataError(f"unknown format {fmt!r}")
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc.strerror}") from None
    pairs = parse_edgelist(text) if fmt == "edgelist" else parse_pajek(text)
    try:
        full = build_graph(pairs)
    except ValueError as exc:
        raise DataError(str(exc)) from None
    if full.m == 0:
        raise DataError("empty graph")
    g, _ = largest_component(full)
    return g, Reduction(full.n, full.m, g.n, g.m)


def file_digest(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def fingerprint(config: dict, input_digest: str | None) -> str:
    blob = json.dumps({"config": config, "input": input_digest},
                      sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


# ---------------------------------------------------------------------------
# tables
# ---------------------------------------------------------------------------

@dataclass
class Table:
    name: str
    columns: list[str]
    rows: list[list] = field(default_factory=list)

    def add(self, *values):
        if len(values) != len(self.columns):
            raise ValueError(f"{self.name}: expected {len(self.columns)} values")
        self.rows.append([_plain(v) for v in values])

    def column(self, name):
        j = self.columns.index(name)
        return [r[j] for r in self.rows]


def _plain(v):
    if isinstance(v, (np.integer, bool)):
        return int(v)
    if isinstance(v, np.floating):
        return float(v)
    return v


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _parse_cell(s: str):
    if s == "":
        return None
    try:
        return int(s)
    except ValueError:
        pass
    try:
        return float(s)
    except ValueError:
        return s


def _atomic_write(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def csv_text(table: Table, meta: dict) -> str:
    buf = io.StringIO()
    head = " ".join(f"{k}={v}" for k, v in meta.items())
    buf.write(f"# {head}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(table.columns)
    for row in table.rows:
        w.writerow([_cell(v) for v in row])
    return buf.getvalue()


def write_tables(outdir, command: str, tables: list[Table], meta: dict,
                 as_json: bool = False) -> list[Path]:
    """Write ``tables`` under ``outdir``; the first is the command's main table.

    CSV: ``<command>.csv`` plus ``<command>_<table>.csv`` for the others.
    JSON: everything in ``<command>.json``.
    """
    outdir = Path(outdir)
    if as_json:
        doc = {"meta": meta,
               "tables": {t.name: {"columns": t.columns, "rows": t.rows} for t in tables}}
        path = outdir / f"{command}.json"
        _atomic_write(path, json.dumps(doc, indent=1, sort_keys=False) + "\n")
        return [path]
    paths = []
    for i, t in enumerate(tables):
        path = outdir / (f"{command}.csv" if i == 0 else f"{command}_{t.name}.csv")
        _atomic_write(path, csv_text(t, meta))
        paths.append(path)
    return paths


def read_csv_table(path, name: str | None = None) -> tuple[dict, Table]:
    """Inverse of the CSV writer: header metadata (as strings) and the typed table."""
    text = Path(path).read_text()
    first, _, body = text.partition("\n")
    if not first.startswith("# "):
        raise DataError(f"{path}: missing metadata header")
    meta = {}
    for item in first[2:].split():
        k, _, v = item.partition("=")
        meta[k] = v
    rows = list(csv.reader(io.StringIO(body)))
    table = Table(name or Path(path).stem, rows[0])
    table.rows = [[_parse_cell(c) for c in r] for r in rows[1:]]
    return meta, table


def read_json_tables(path) -> tuple[dict, dict[str, Table]]:
    doc = json.loads(Path(path).read_text())
    tables = {}
    for name, t in doc["tables"].items():
        tab = Table(name, t["columns"])
        tab.rows = t["rows"]
        tables[name] = tab
    return doc["meta"], tables


def same_rows(a: Table, b: Table) -> bool:
    """Cell-wise equality treating NaN as equal to NaN."""
    if a.columns != b.columns or len(a.rows) != len(b.rows):
        return False
    for ra, rb in zip(a.rows, b.rows):
        for x, y in zip(ra, rb):
            if isinstance(x, float) and isinstance(y, float) and math.isnan(x) and math.isnan(y):
                continue
            if x != y or type(x) is not type(y):
                return False
    return True
