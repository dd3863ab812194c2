"""Deterministic renderings: JSON, an indented text view, and Graphviz DOT."""
from __future__ import annotations

import json
from typing import Iterable, Optional

from .closure import GeneratorReport
from .finite import FinitePoset

HIGHLIGHTS = ("gamma", "phi", "maximal")


def dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def render_text(obj, indent: int = 0) -> str:
    """Readable view of a JSON-like value; never parsed back."""
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for key in sorted(obj):
            val = obj[key]
            if isinstance(val, (dict, list)) and val and not _flat(val):
                lines.append(f"{pad}{key}:")
                lines.append(render_text(val, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_scalar(val)}")
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, (dict, list)) and not _flat(item):
                lines.append(f"{pad}-")
                lines.append(render_text(item, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(item)}")
    else:
        lines.append(f"{pad}{_scalar(obj)}")
    return "\n".join(lines)


def _flat(val) -> bool:
    if isinstance(val, list):
        return all(not isinstance(v, (dict, list)) or (isinstance(v, list) and _flat(v)) for v in val)
    return False


def _scalar(val) -> str:
    if isinstance(val, bool):
        return "yes" if val else "no"
    if val is None:
        return "-"
    if isinstance(val, list):
        return "[" + ", ".join(_scalar(v) for v in val) + "]"
    if isinstance(val, dict):
        return "{}"
    return str(val)


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(
    p: FinitePoset,
    report: Optional[GeneratorReport] = None,
    highlight: Iterable[str] = (),
    name: str = "L",
) -> str:
    """Hasse diagram, bottom to top.  Γ is filled, Φ gets a double border and
    each node lists the maximal substructures (by index) that contain it."""
    highlight = set(highlight)
    unknown = highlight - set(HIGHLIGHTS)
    if unknown:
        raise ValueError(f"unknown highlight {sorted(unknown)}")
    if highlight and report is None:
        raise ValueError("highlighting needs a report")
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=circle];"]
    for i in range(p.size):
        attrs = [f"label={_quote(p.label(i))}"]
        if "gamma" in highlight and i in report.gamma:
            attrs.append('style=filled fillcolor="lightblue"')
        if "phi" in highlight and i in report.phi:
            attrs.append("peripheries=2")
        if "maximal" in highlight:
            inside = [str(j) for j, m in enumerate(sorted(report.maximal_substructures, key=lambda m: m.to_list())) if i in m]
            attrs.append(f"tooltip={_quote('maximal: ' + ','.join(inside))}")
        lines.append(f"  n{i} [{' '.join(attrs)}];")
    for a, b in p.covers():
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def report_json(report: GeneratorReport, p: FinitePoset) -> dict:
    d = report.to_json()
    if p.labels is not None:
        d["labels"] = list(p.labels)
    return d
