"""Serialisation: graph JSON / DOT, vertex-set files, design files."""

from __future__ import annotations

import json

from .coverings import CoveringDesign
from .errors import InvalidParameterError
from .graphs import Graph, TokenGraph


def _label(v) -> str:
    members = v if isinstance(v, tuple) else (v,)
    return "{" + ",".join(map(str, members)) + "}"


def graph_to_json(tg: TokenGraph) -> dict:
    G = tg.graph
    return {
        "family": tg.family,
        "n": tg.n,
        "k": tg.k,
        "vertices": [list(v) for v in G.vertices],
        "edges": [[i, j] for i, j in G.edges()],
    }


def graph_to_dot(tg: TokenGraph) -> str:
    G = tg.graph
    lines = [f'graph "F{tg.k}({tg.family}{tg.n})" {{']
    for i, v in enumerate(G.vertices):
        lines.append(f'  {i} [label="{_label(v)}"];')
    for i, j in G.edges():
        lines.append(f"  {i} -- {j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_from_json(data: dict) -> Graph:
    """Rebuild an explicit graph from the JSON graph format."""
    try:
        verts = [tuple(sorted(int(x) for x in v)) for v in data["vertices"]]
        adj = [[] for _ in verts]
        for i, j in data["edges"]:
            i, j = int(i), int(j)
            if not (0 <= i < len(verts) and 0 <= j < len(verts)):
                raise InvalidParameterError(f"edge [{i},{j}] references a missing vertex rank")
            adj[i].append(j)
            adj[j].append(i)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InvalidParameterError):
            raise
        raise InvalidParameterError(f"malformed graph JSON: {exc}") from None
    return Graph(verts, adj)


def vertex_set_from_json(data) -> list[tuple]:
    """Accepts a certificate object (uses its ``set``) or a bare list of vertices."""
    if isinstance(data, dict):
        if "set" not in data:
            raise InvalidParameterError("vertex-set JSON object has no 'set' field")
        data = data["set"]
    if not isinstance(data, list):
        raise InvalidParameterError("vertex set must be a JSON list")
    try:
        return [tuple(sorted(int(x) for x in v)) for v in data]
    except (TypeError, ValueError):
        raise InvalidParameterError("vertex set entries must be lists of integers") from None


def design_from_json(data: dict) -> CoveringDesign:
    try:
        return CoveringDesign(int(data["n"]), int(data["k"]), int(data["l"]),
                              [tuple(b) for b in data["blocks"]], bool(data.get("exact", False)))
    except (KeyError, TypeError, ValueError):
        raise InvalidParameterError("malformed design JSON") from None


def design_from_text(text: str, n: int, k: int, l: int) -> CoveringDesign:
    blocks = [tuple(int(x) for x in line.split()) for line in text.splitlines() if line.strip()]
    return CoveringDesign(n, k, l, blocks)


def dumps(obj) -> str:
    return json.dumps(obj, indent=None, separators=(",", ":")) + "\n"
