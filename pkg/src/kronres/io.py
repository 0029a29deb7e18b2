"""Graph and matrix files.

Graphs are JSON objects ``{"n": int, "edges": [[from, to, weight], ...]}``
or tab-separated edge lists with a header line. Both use 1-based node labels
on disk; in memory nodes are 0-based. Matrices are written as CSV with 17
significant digits.
"""

import csv
import io
import json
import math
from pathlib import Path

import numpy as np

from .exceptions import GraphFormatError
from .graph import build_graph

__all__ = [
    "graph_to_dict",
    "graph_from_dict",
    "read_graph",
    "write_graph",
    "parse_tsv",
    "format_matrix_csv",
    "write_matrix_csv",
    "json_number",
    "matrix_to_json",
]


def graph_to_dict(g):
    return {"n": g.n, "edges": [[i + 1, j + 1, w] for i, j, w in g.edges()]}


def graph_from_dict(data):
    if not isinstance(data, dict) or "n" not in data or "edges" not in data:
        raise GraphFormatError('graph JSON must be an object with "n" and "edges"')
    n = data["n"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise GraphFormatError(f'"n" must be an integer, got {n!r}')
    edges = []
    for edge in data["edges"]:
        if not isinstance(edge, (list, tuple)) or len(edge) != 3:
            raise GraphFormatError(f"edge must be [from, to, weight], got {edge!r}")
        i, j, w = edge
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in (i, j)):
            raise GraphFormatError(f"edge endpoints must be integer labels, got {edge!r}")
        if not isinstance(w, (int, float)) or isinstance(w, bool):
            raise GraphFormatError(f"edge weight must be a number, got {edge!r}")
        edges.append((i - 1, j - 1, w))
    return build_graph(n, edges)


def parse_tsv(text):
    """Edge list ``from<TAB>to<TAB>weight`` after one header line.

    The node count is the largest label that appears.
    """
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise GraphFormatError("empty TSV edge list")
    edges = []
    for lineno, line in enumerate(lines[1:], start=2):
        fields = line.split("\t")
        if len(fields) != 3:
            raise GraphFormatError(f"line {lineno}: expected 3 tab-separated fields")
        try:
            i, j, w = int(fields[0]), int(fields[1]), float(fields[2])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: cannot parse {line!r}") from None
        edges.append((i - 1, j - 1, w))
    n = max((max(i, j) + 1 for i, j, _ in edges), default=1)
    return build_graph(n, edges)


def read_graph(path):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise GraphFormatError(f"cannot read {path}: {exc.strerror}") from None
    if path.suffix.lower() in (".tsv", ".txt"):
        return parse_tsv(text)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    return graph_from_dict(data)


def write_graph(g, path):
    Path(path).write_text(json.dumps(graph_to_dict(g), indent=2) + "\n")


def json_number(x):
    """Float for JSON; infinities become ``"inf"`` and NaN ``"undefined"``."""
    x = float(x)
    if math.isnan(x):
        return "undefined"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return float(f"{x:.17g}") + 0.0  # normalizes -0.0


def matrix_to_json(m):
    return [[json_number(v) for v in row] for row in np.atleast_2d(m)]


def format_matrix_csv(m):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for row in np.atleast_2d(m):
        writer.writerow([f"{float(v):.17g}" for v in row])
    return buf.getvalue()


def write_matrix_csv(m, path):
    Path(path).write_text(format_matrix_csv(m))
