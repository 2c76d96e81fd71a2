"""JSON and DOT formats for graphs, ideals and certificates.

Graph JSON::

    {"vertices": ["u", "v"],
     "edges": [{"src": "u", "dst": "v", "mult": 1, "id": "e0"},
               {"src": "u", "dst": "u", "mult": "omega"}]}

Ideal JSON::

    {"H": ["v1"], "S": [], "field": "Q",
     "cycles": [{"cycle": ["w1#0"], "poly": "(1+x)^2"}]}

A cycle is a list of edge labels ``bundle#index`` or, when each step is a
unique single edge, a list of vertices.  ``poly`` is polynomial text or a
constant-first coefficient list.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .field_poly import QQ, Field, Poly, PolyParseError, parse_poly
from .graph import OMEGA, PRIME, Cycle, Graph, GraphError
from .ideal import Ideal, IdealError, make_ideal

__all__ = [
    "InputError",
    "dumps",
    "graph_from_json",
    "graph_to_json",
    "ideal_from_json",
    "ideal_to_json",
    "load_json",
    "to_dot",
]


class InputError(ValueError):
    """Malformed input file; the message names the location."""


def load_json(source: str | Path, text: str | None = None) -> Any:
    if text is None:
        try:
            text = Path(source).read_text()
        except OSError as exc:
            raise InputError(f"{source}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _mult_to_json(m) -> int | str:
    return "omega" if m == OMEGA else int(m)


def graph_to_json(g: Graph) -> dict:
    return {
        "vertices": list(g.vertices),
        "edges": [{"id": b.id, "src": b.src, "dst": b.dst, "mult": _mult_to_json(b.mult)}
                  for b in g.bundles],
    }


def graph_from_json(data: Any, where: str = "graph") -> Graph:
    if not isinstance(data, dict) or "vertices" not in data:
        raise InputError(f"{where}: expected an object with a 'vertices' list")
    verts = data["vertices"]
    if not isinstance(verts, list) or not all(isinstance(v, str) for v in verts):
        raise InputError(f"{where}: 'vertices' must be a list of strings")
    edges = []
    for k, e in enumerate(data.get("edges", [])):
        if not isinstance(e, dict) or "src" not in e or "dst" not in e:
            raise InputError(f"{where}: edge {k} needs 'src' and 'dst'")
        mult = e.get("mult", 1)
        if mult in ("omega", "ω", "inf"):
            mult = OMEGA
        elif not isinstance(mult, int) or isinstance(mult, bool):
            raise InputError(f"{where}: edge {k} has bad multiplicity {mult!r}")
        edges.append((e["src"], e["dst"], mult, str(e.get("id", f"e{k}"))))
    try:
        return Graph.build(verts, edges)
    except GraphError as exc:
        raise InputError(f"{where}: {exc}") from exc


def ideal_to_json(I: Ideal) -> dict:
    return {
        "H": sorted(I.H),
        "S": sorted(I.S),
        "cycles": [{"cycle": c.labels(), "poly": str(f)} for c, f in I.parts],
        "field": str(I.field),
        "proper": I.is_proper,
    }


def ideal_from_json(g: Graph, data: Any, field: Field | None = None, where: str = "ideal") -> Ideal:
    if not isinstance(data, dict):
        raise InputError(f"{where}: expected an object")
    try:
        K = Field.parse(data["field"]) if "field" in data else (field or QQ)
    except ValueError as exc:
        raise InputError(f"{where}: {exc}") from exc
    if field is not None and K != field:
        raise InputError(f"{where}: ideal is over {K} but {field} was requested")
    parts = []
    for k, item in enumerate(data.get("cycles", [])):
        try:
            c = Cycle.parse(g, item["cycle"])
            poly = item["poly"]
            f = Poly.from_json(K, poly) if isinstance(poly, list) else parse_poly(str(poly), K)
        except (KeyError, TypeError) as exc:
            raise InputError(f"{where}: cycle entry {k} needs 'cycle' and 'poly'") from exc
        except (GraphError, PolyParseError, ValueError) as exc:
            raise InputError(f"{where}: cycle entry {k}: {exc}") from exc
        parts.append((c, f))
    H, S = data.get("H", []), data.get("S", [])
    try:
        if frozenset(H) == g.vertex_set:
            return Ideal(g, K, g.vertex_set, frozenset())
        return make_ideal(g, H, S, parts, K)
    except (IdealError, GraphError) as exc:
        raise InputError(f"{where}: {exc}") from exc


def _dot_id(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g: Graph, name: str = "E") -> str:
    """Graphviz text; omega bundles are labelled "ω", other multiplicities
    above one by their count.  Primed vertices keep their trailing "'"."""
    lines = [f"digraph {_dot_id(name)} {{"]
    for v in g.vertices:
        attrs = ' [style=dashed]' if v.endswith(PRIME) else ""
        lines.append(f"  {_dot_id(v)}{attrs};")
    for b in g.bundles:
        label = "ω" if b.is_omega else (str(b.mult) if b.mult > 1 else "")
        attr = f' [label={_dot_id(label)}]' if label else ""
        lines.append(f"  {_dot_id(b.src)} -> {_dot_id(b.dst)}{attr};  // {b.id}")
    lines.append("}")
    return "\n".join(lines) + "\n"
