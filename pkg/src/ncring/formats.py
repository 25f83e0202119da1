"""Ring spec files, DOT export and CSV invariant rows.

A ring spec file is JSON with a version header::

    {"format": "ncg-ring/1",
     "name": "row_ring(2)",
     "shape": [2, 2],
     "structure_constants": [[[1, 0], [0, 1]], [[0, 0], [0, 0]]],
     "unity": null}

``full_table`` (order x order element ranks) may replace
``structure_constants``.
"""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path

from .errors import MalformedTable
from .graph import GraphClassification, NonCommutingGraph, classify
from .ring import DEFAULT_ORDER_CAP, FiniteRing, center, validate

FORMAT = "ncg-ring/1"


def ring_to_dict(R: FiniteRing, full_table: bool = False) -> dict:
    d = {"format": FORMAT, "name": R.name, "shape": list(R.shape.moduli)}
    if full_table:
        d["full_table"] = R.mul_table.tolist()
    else:
        d["structure_constants"] = [[list(c) for c in row] for row in R.constants]
    d["unity"] = list(R.coords(R.unity)) if R.has_unity else None
    return d


def ring_from_dict(d: dict, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteRing:
    if d.get("format") != FORMAT:
        raise MalformedTable(f"expected format {FORMAT!r}, got {d.get('format')!r}")
    if "shape" not in d:
        raise MalformedTable("missing field 'shape'")
    has_sc, has_ft = "structure_constants" in d, "full_table" in d
    if has_sc == has_ft:
        raise MalformedTable("exactly one of 'structure_constants' or 'full_table' is required")
    return validate(d["shape"], structure_constants=d.get("structure_constants"),
                    full_table=d.get("full_table"), unity=d.get("unity"),
                    name=str(d.get("name", "R")), order_cap=order_cap)


def dumps_ring(R: FiniteRing, full_table: bool = False) -> str:
    d = ring_to_dict(R, full_table)
    lines = [f"  {json.dumps(k)}: {json.dumps(v, separators=(', ', ': '))}" for k, v in d.items()]
    return "{\n" + ",\n".join(lines) + "\n}\n"


def loads_ring(text: str, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteRing:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedTable(f"not valid JSON: {exc}") from None
    if not isinstance(d, dict):
        raise MalformedTable("ring spec must be a JSON object")
    return ring_from_dict(d, order_cap)


def write_ring(R: FiniteRing, path: str | Path, full_table: bool = False) -> None:
    Path(path).write_text(dumps_ring(R, full_table), encoding="utf-8")


def read_ring(path: str | Path, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteRing:
    return loads_ring(Path(path).read_text(encoding="utf-8"), order_cap)


def ring_files(directory: str | Path) -> list[Path]:
    return sorted(Path(directory).glob("*.ring"))


def to_dot(G: NonCommutingGraph) -> str:
    out = [f"graph {json.dumps(G.ring_ref)} {{", "  node [shape=circle];"]
    for i, v in enumerate(G.vertices):
        label = f"{v}: {G.labels[i]}" if G.labels else str(v)
        out.append(f'  "{v}" [label={json.dumps(label)}];')
    for i, j in G.edges():
        out.append(f'  "{G.vertices[i]}" -- "{G.vertices[j]}";')
    out.append("}")
    return "\n".join(out) + "\n"


INVARIANT_COLUMNS = ["name", "order", "center", "unity", "vertices", "edges", "min_degree",
                     "max_degree", "diameter", "connected", "complete", "star", "lollipop",
                     "complete_bipartite", "empty"]


def format_diameter(d: float) -> str:
    return "inf" if d == math.inf else str(int(d))


def invariant_row(R: FiniteRing, G: NonCommutingGraph, c: GraphClassification | None = None) -> dict:
    c = classify(G) if c is None else c
    row = {"name": R.name, "order": R.order, "center": len(center(R)), "unity": R.has_unity,
           "vertices": G.n, "edges": G.edge_count, "min_degree": c.min_degree,
           "max_degree": c.max_degree, "diameter": format_diameter(c.diameter)}
    row.update(c.flags())
    return row


def rows_to_csv(rows: list[dict], columns: list[str]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n", extrasaction="ignore")
    w.writeheader()
    for r in rows:
        w.writerow(r)
    return buf.getvalue()
