"""JSON and DOT serialization for graphs, JSON/text I/O for matrices.

Graph JSON round-trips bit-exactly: dumps(load(dumps(g))) == dumps(g).
"""

from __future__ import annotations

import json

from dynagrid.graph import Graph, GridCoord


def graph_to_dict(g: Graph) -> dict:
    nodes = []
    for name in g.nodes():
        entry: dict = {"id": name}
        role = g.role(name)
        if role is not None:
            entry["role"] = role
        ij = g.matrix_ij(name)
        if ij is not None:
            entry["ij"] = list(ij)
        coord = g.coord(name)
        if coord is not None:
            entry["coord"] = [coord.row, coord.col]
        nodes.append(entry)
    edges = [[u, v, w] for u, v, w in g.edges()]
    out = {"directed": g.directed, "nodes": nodes, "edges": edges}
    if g.weight_bound is not None:
        out["weight_bound"] = g.weight_bound
    return out


def graph_from_dict(d: dict) -> Graph:
    g = Graph(directed=d["directed"], weight_bound=d.get("weight_bound"))
    for entry in d["nodes"]:
        coord = entry.get("coord")
        ij = entry.get("ij")
        g.add_node(entry["id"], role=entry.get("role"),
                   ij=tuple(ij) if ij is not None else None,
                   coord=GridCoord(*coord) if coord is not None else None)
    for u, v, w in d["edges"]:
        g.add_edge(u, v, w)
    return g.freeze()


def dumps_canonical(obj) -> str:
    """Deterministic JSON used everywhere a byte-stable artifact is needed."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def graph_to_json(g: Graph) -> str:
    return dumps_canonical(graph_to_dict(g))


def graph_from_json(text: str) -> Graph:
    return graph_from_dict(json.loads(text))


def graph_to_dot(g: Graph, name: str = "g") -> str:
    """DOT export with roles as shapes and lattice coords as pin positions."""
    kind = "digraph" if g.directed else "graph"
    arrow = "->" if g.directed else "--"
    lines = [f'{kind} "{name}" {{', "  node [shape=circle];"]
    for n in g.nodes():
        attrs = [f'label="{n}"']
        coord = g.coord(n)
        if coord is not None:
            # DOT y grows upward; our rows grow downward.
            attrs.append(f'pos="{coord.col},{-coord.row}!"')
        role = g.role(n)
        if role in ("a", "b", "s", "t"):
            attrs.append("shape=doublecircle")
        lines.append(f'  "{n}" [{", ".join(attrs)}];')
    for u, v, w in g.edges():
        lines.append(f'  "{u}" {arrow} "{v}" [label="{w}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- matrices --------------------------------------------------------------


def matrix_to_json(m: list[list[int]]) -> str:
    return dumps_canonical(m)


def matrix_from_json(text: str) -> list[list[int]]:
    m = json.loads(text)
    _check_rectangular(m)
    return m


def matrix_to_text(m: list[list[int]]) -> str:
    return "\n".join(" ".join(str(x) for x in row) for row in m) + "\n"


def matrix_from_text(text: str) -> list[list[int]]:
    rows = [line.split() for line in text.splitlines() if line.strip()]
    m = [[int(x) for x in row] for row in rows]
    _check_rectangular(m)
    return m


def _check_rectangular(m) -> None:
    if not m or not m[0]:
        raise ValueError("matrix must be non-empty")
    width = len(m[0])
    for row in m:
        if len(row) != width:
            raise ValueError("ragged matrix rows")
