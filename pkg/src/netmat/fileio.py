"""Text serialization for graphs, trajectories, and matrices.

Formats:

  graph file        optional header ``nodes: lbl1 lbl2 ...`` fixing label
                    order and declaring isolated nodes, then one ``src dst``
                    edge per line; ``#`` starts a comment
  trajectory file   one trajectory per line as whitespace-separated node
                    labels; ``#`` starts a comment
  matrix CSV        header row and column of node labels, unreachable cells
                    spelled as the literal token ``INF``
  matrix JSON       {"n": ..., "labels": [...], "cells": [[...]]} with null
                    encoding unreachable cells

All writers emit LF newlines and a fixed ordering, so serialization is
byte-stable for equal inputs.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

from .errors import ParseError, TrajectoryError
from .matrices import INF, CountMatrix
from .structure import Graph
from .utilization import Trajectory, validate_trajectory

__all__ = [
    "graph_to_text",
    "graph_from_text",
    "load_graph",
    "trajectories_to_text",
    "trajectories_from_text",
    "load_trajectories",
    "matrix_to_csv",
    "matrix_from_csv",
    "matrix_to_json_obj",
    "matrix_from_json_obj",
]


def _strip_comment(raw: str) -> str:
    return raw.split("#", 1)[0].strip()


def graph_to_text(g: Graph) -> str:
    lines = ["nodes: " + " ".join(g.labels)]
    lines.extend(f"{g.labels[i]} {g.labels[j]}" for i, j in sorted(g.edges))
    return "\n".join(lines) + "\n"


def graph_from_text(text: str, source: str = "<graph>") -> Graph:
    labels: list[str] = []
    index: dict[str, int] = {}
    edges: set[tuple[int, int]] = set()
    header_seen = False
    edges_seen = False

    def intern(token: str, line_no: int) -> int:
        if token in index:
            return index[token]
        if header_seen:
            raise ParseError(
                f"label {token!r} is not declared in the nodes: header", source, line_no
            )
        index[token] = len(labels)
        labels.append(token)
        return index[token]

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line:
            continue
        if line.startswith("nodes:"):
            if header_seen:
                raise ParseError("duplicate nodes: header", source, line_no)
            if edges_seen:
                raise ParseError("nodes: header must precede edge lines", source, line_no)
            for token in line[len("nodes:") :].split():
                if token in index:
                    raise ParseError(f"duplicate node label {token!r}", source, line_no)
                index[token] = len(labels)
                labels.append(token)
            header_seen = True
            continue
        edges_seen = True
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected 'src dst', got {line!r}", source, line_no)
        i = intern(parts[0], line_no)
        j = intern(parts[1], line_no)
        if i == j:
            raise ParseError(f"self-loop {parts[0]!r} is not allowed", source, line_no)
        if (i, j) in edges:
            raise ParseError(f"duplicate edge {parts[0]} {parts[1]}", source, line_no)
        edges.add((i, j))
    if not labels:
        raise ParseError("graph file declares no nodes", source)
    try:
        return Graph(tuple(labels), frozenset(edges))
    except ValueError as e:
        raise ParseError(str(e), source) from e


def load_graph(path: str | Path) -> Graph:
    path = Path(path)
    return graph_from_text(path.read_text(encoding="utf-8"), source=str(path))


def trajectories_to_text(trajectories, labels: tuple[str, ...]) -> str:
    lines = [" ".join(labels[v] for v in t.nodes) for t in trajectories]
    return "\n".join(lines) + ("\n" if lines else "")


def trajectories_from_text(
    text: str, graph: Graph, source: str = "<trajectories>"
) -> tuple[Trajectory, ...]:
    index = {lbl: i for i, lbl in enumerate(graph.labels)}
    out: list[Trajectory] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line:
            continue
        nodes = []
        for token in line.split():
            if token not in index:
                raise ParseError(f"unknown node label {token!r}", source, line_no)
            nodes.append(index[token])
        try:
            t = Trajectory(tuple(nodes))
            validate_trajectory(t, graph)
        except TrajectoryError as e:
            raise ParseError(f"{type(e).__name__}: {e}", source, line_no) from e
        out.append(t)
    return tuple(out)


def load_trajectories(path: str | Path, graph: Graph) -> tuple[Trajectory, ...]:
    path = Path(path)
    return trajectories_from_text(
        path.read_text(encoding="utf-8"), graph, source=str(path)
    )


def _cell_token(v) -> str:
    return "INF" if v is INF else str(v)


def matrix_to_csv(m: CountMatrix, labels: tuple[str, ...]) -> str:
    if len(labels) != m.n:
        raise ValueError(f"{len(labels)} labels for a {m.n}x{m.n} matrix")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([""] + list(labels))
    for label, row in zip(labels, m.cells):
        writer.writerow([label] + [_cell_token(v) for v in row])
    return buf.getvalue()


def _parse_cell(token: str, source: str, line_no: int):
    token = token.strip()
    if token == "INF":
        return INF
    try:
        value = int(token)
    except ValueError:
        raise ParseError(f"bad cell value {token!r}", source, line_no) from None
    if value < 0:
        raise ParseError(f"negative cell value {value}", source, line_no)
    return value


def matrix_from_csv(
    text: str, source: str = "<matrix>"
) -> tuple[CountMatrix, tuple[str, ...]]:
    rows = [r for r in csv.reader(io.StringIO(text)) if r]
    if not rows:
        raise ParseError("empty matrix file", source)
    header = rows[0]
    if header[0].strip():
        raise ParseError("top-left header cell must be empty", source, 1)
    labels = tuple(h.strip() for h in header[1:])
    n = len(labels)
    if n == 0:
        raise ParseError("matrix header declares no labels", source, 1)
    if len(rows) - 1 != n:
        raise ParseError(f"expected {n} data rows, found {len(rows) - 1}", source)
    cells = []
    for i, row in enumerate(rows[1:]):
        line_no = i + 2
        if len(row) != n + 1:
            raise ParseError(
                f"expected {n + 1} columns, found {len(row)}", source, line_no
            )
        if row[0].strip() != labels[i]:
            raise ParseError(
                f"row label {row[0].strip()!r} does not match column label {labels[i]!r}",
                source,
                line_no,
            )
        cells.append(tuple(_parse_cell(tok, source, line_no) for tok in row[1:]))
    try:
        return CountMatrix(tuple(cells)), labels
    except ValueError as e:
        raise ParseError(str(e), source) from e


def matrix_to_json_obj(m: CountMatrix, labels: tuple[str, ...]) -> dict:
    if len(labels) != m.n:
        raise ValueError(f"{len(labels)} labels for a {m.n}x{m.n} matrix")
    return {
        "n": m.n,
        "labels": list(labels),
        "cells": [[None if v is INF else v for v in row] for row in m.cells],
    }


def matrix_from_json_obj(
    obj, source: str = "<matrix>"
) -> tuple[CountMatrix, tuple[str, ...]]:
    try:
        n = obj["n"]
        labels = tuple(obj["labels"])
        raw = obj["cells"]
    except (KeyError, TypeError) as e:
        raise ParseError(f"matrix JSON missing field: {e}", source) from e
    if len(labels) != n or len(raw) != n:
        raise ParseError(f"matrix JSON shape disagrees with n={n}", source)
    cells = []
    for row in raw:
        if len(row) != n:
            raise ParseError(f"matrix JSON row of length {len(row)}, expected {n}", source)
        cells.append(tuple(INF if v is None else v for v in row))
    try:
        return CountMatrix(tuple(cells)), labels
    except (ValueError, TypeError) as e:
        raise ParseError(str(e), source) from e


def matrix_from_json(text: str, source: str = "<matrix>"):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e}", source) from e
    return matrix_from_json_obj(obj, source)
