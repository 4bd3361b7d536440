"""Pajek, DOT and coordinate exports."""

from __future__ import annotations

import csv
import io
import re
from typing import Mapping

from .graph import HomogeneityGraph


def _pajek_quote(label: str) -> str:
    return '"' + label.replace('"', '""') + '"'


def export_pajek(graph: HomogeneityGraph) -> str:
    lines = [f"*Vertices {len(graph.nodes)}"]
    lines += [f"{i} {_pajek_quote(v)}" for i, v in enumerate(graph.nodes, start=1)]
    lines.append("*Edges")
    lines += [f"{i + 1} {j + 1}" for i, j in graph.sorted_edges()]
    return "\n".join(lines) + "\n"


_VERTEX = re.compile(r'^(\d+)\s+"((?:[^"]|"")*)"\s*$')


def read_pajek(text: str) -> HomogeneityGraph:
    """Parse the subset of Pajek written by :func:`export_pajek`."""
    lines = [ln.rstrip("\r") for ln in text.split("\n") if ln.strip()]
    if not lines or not lines[0].lower().startswith("*vertices"):
        raise ValueError("missing *Vertices header")
    n = int(lines[0].split()[1])
    labels = []
    for ln in lines[1:1 + n]:
        m = _VERTEX.match(ln)
        if not m or int(m.group(1)) != len(labels) + 1:
            raise ValueError(f"bad vertex line: {ln!r}")
        labels.append(m.group(2).replace('""', '"'))
    rest = lines[1 + n:]
    if not rest or rest[0].lower() != "*edges":
        raise ValueError("missing *Edges section")
    pairs = []
    for ln in rest[1:]:
        i, j = (int(t) for t in ln.split()[:2])
        pairs.append((labels[i - 1], labels[j - 1]))
    return HomogeneityGraph.from_pairs(labels, pairs)


def _dot_quote(label: str) -> str:
    return '"' + label.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(graph: HomogeneityGraph, name: str = "homogeneity") -> str:
    lines = [f"graph {_dot_quote(name)} {{"]
    lines += [f"  {_dot_quote(v)};" for v in graph.nodes]
    lines += [f"  {_dot_quote(graph.nodes[i])} -- {_dot_quote(graph.nodes[j])};" for i, j in graph.sorted_edges()]
    lines.append("}")
    return "\n".join(lines) + "\n"


def _coord(v: float) -> str:
    text = f"{v:.6f}"
    return "0.000000" if text == "-0.000000" else text


def layout_to_csv(positions: Mapping[str, tuple[float, float]], order=None) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["label", "x", "y"])
    for label in (order if order is not None else positions):
        x, y = positions[label]
        w.writerow([label, _coord(x), _coord(y)])
    return buf.getvalue()
