"""JSON graph files (slg-1, scg-1), DOT export and run manifests."""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass, field
from importlib import metadata
from typing import Any

from .colored import SignedColoredGraph, edge_key
from .errors import StructureError
from .labeled import SLabeledGraph
from .tau import full_mask, tau_elements, tau_mask

SLG = "slg-1"
SCG = "scg-1"

Graph = SLabeledGraph | SignedColoredGraph


# -- serialization -----------------------------------------------------------

def to_json(G: Graph) -> dict:
    verts = [{"id": v, "tau": tau_elements(G.tau[v])} for v in G.vertices]
    if isinstance(G, SLabeledGraph):
        order = {v: k for k, v in enumerate(G.vertices)}
        edges = [{"src": u, "dst": v, "weight": w}
                 for (u, v), w in sorted(G.weights.items(), key=lambda e: (order[e[0][0]], order[e[0][1]]))]
        doc = {"format_version": SLG, "rank": G.rank, "vertices": verts, "edges": edges}
        if G.generators != full_mask(G.rank):
            doc["generators"] = tau_elements(G.generators)
        return doc
    order = {v: k for k, v in enumerate(G.vertices)}
    edges = []
    for (a, b), colors in G.beta.items():
        if order[a] > order[b]:
            a, b = b, a
        edges.append({"a": a, "b": b, "beta": tau_elements(colors)})
    edges.sort(key=lambda e: (order[e["a"]], order[e["b"]]))
    return {"format_version": SCG, "rank": G.rank, "vertices": verts, "edges": edges}


def dumps(G: Graph) -> str:
    return json.dumps(to_json(G), indent=2) + "\n"


def _field(obj: Any, key: str, where: str, kind: type | tuple[type, ...]):
    if not isinstance(obj, dict) or key not in obj:
        raise StructureError(f"missing field '{where}{key}'")
    value = obj[key]
    if not isinstance(value, kind) or isinstance(value, bool) and kind is not bool:
        raise StructureError(f"field '{where}{key}' has the wrong type")
    return value


def _int_list(values: Any, where: str, lo: int, hi: int) -> list[int]:
    if not isinstance(values, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in values):
        raise StructureError(f"field '{where}' must be a list of integers")
    if any(not lo <= x <= hi for x in values):
        raise StructureError(f"field '{where}' has entries outside [{lo}, {hi}]")
    if len(set(values)) != len(values):
        raise StructureError(f"field '{where}' has repeated entries")
    return values


def from_json(doc: Any) -> Graph:
    fmt = _field(doc, "format_version", "", str)
    if fmt not in (SLG, SCG):
        raise StructureError(f"field 'format_version' must be {SLG!r} or {SCG!r}, got {fmt!r}")
    rank = _field(doc, "rank", "", int)
    if rank < 0:
        raise StructureError("field 'rank' must be non-negative")
    raw_vertices = _field(doc, "vertices", "", list)
    ids: list[str] = []
    tau = {}
    for k, rec in enumerate(raw_vertices):
        where = f"vertices[{k}]."
        v = _field(rec, "id", where, str)
        if v in tau:
            raise StructureError(f"field '{where}id' repeats id {v!r}")
        ids.append(v)
        tau[v] = tau_mask(_int_list(_field(rec, "tau", where, list), where + "tau", 1, rank))
    raw_edges = _field(doc, "edges", "", list)
    if fmt == SLG:
        weights = {}
        for k, rec in enumerate(raw_edges):
            where = f"edges[{k}]."
            u = _field(rec, "src", where, str)
            v = _field(rec, "dst", where, str)
            w = _field(rec, "weight", where, int)
            for name, x in (("src", u), ("dst", v)):
                if x not in tau:
                    raise StructureError(f"field '{where}{name}' names unknown vertex {x!r}")
            if w <= 0:
                raise StructureError(f"field '{where}weight' must be a positive integer")
            if (u, v) in weights:
                raise StructureError(f"field '{where}' repeats the ordered pair ({u!r}, {v!r})")
            weights[u, v] = w
        gens = None
        if "generators" in doc:
            gens = tau_mask(_int_list(doc["generators"], "generators", 1, rank))
        return SLabeledGraph(rank, tuple(ids), tau, weights, gens)
    beta = {}
    for k, rec in enumerate(raw_edges):
        where = f"edges[{k}]."
        a = _field(rec, "a", where, str)
        b = _field(rec, "b", where, str)
        for name, x in (("a", a), ("b", b)):
            if x not in tau:
                raise StructureError(f"field '{where}{name}' names unknown vertex {x!r}")
        if a == b:
            raise StructureError(f"field '{where}b' makes a loop at {a!r}")
        key = edge_key(a, b)
        if key in beta:
            raise StructureError(f"field '{where}' repeats the pair ({a!r}, {b!r})")
        beta[key] = tau_mask(_int_list(_field(rec, "beta", where, list), where + "beta", 1, max(rank - 1, 0)))
    return SignedColoredGraph(rank, tuple(ids), tau, beta)


def loads(text: str) -> Graph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StructureError(f"malformed JSON: {exc}") from exc
    return from_json(doc)


def load(path: str) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def save(G: Graph, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(G))


# -- DOT ---------------------------------------------------------------------

def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _set(values: list[int]) -> str:
    return "{" + ",".join(map(str, values)) + "}"


def export_dot(G: Graph, name: str = "G") -> str:
    """Deterministic DOT text; simple edges use dir=none, arcs are directed."""
    lines = [f"digraph {_quote(name)} {{"]
    for v in G.vertices:
        label = _quote(v)[:-1] + "\\n" + _set(tau_elements(G.tau[v])) + '"'
        lines.append(f"  {_quote(v)} [label={label}];")
    if isinstance(G, SignedColoredGraph):
        order = {v: k for k, v in enumerate(G.vertices)}
        for (a, b), colors in sorted(G.beta.items(), key=lambda e: (order[e[0][0]], order[e[0][1]])):
            if order[a] > order[b]:
                a, b = b, a
            label = " ".join(f"a{i}" for i in tau_elements(colors))
            lines.append(f"  {_quote(a)} -> {_quote(b)} [dir=none, label={_quote(label)}];")
    else:
        order = {v: k for k, v in enumerate(G.vertices)}
        done = set()
        for (u, v), w in sorted(G.weights.items(), key=lambda e: (order[e[0][0]], order[e[0][1]])):
            back = G.m(v, u)
            if back:
                if (v, u) in done:
                    continue
                done.add((u, v))
                label = str(w) if w == back else f"{w}/{back}"
                lines.append(f"  {_quote(u)} -> {_quote(v)} [dir=none, label={_quote(label)}];")
            else:
                lines.append(f"  {_quote(u)} -> {_quote(v)} [label={_quote(str(w))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- manifests ---------------------------------------------------------------

def canonical(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def digest(obj: Any) -> str:
    return hashlib.sha256(canonical(obj).encode()).hexdigest()


def tool_version() -> str:
    try:
        return metadata.version("artifact")
    except metadata.PackageNotFoundError:
        return "unknown"


@dataclass
class RunManifest:
    command: list[str]
    config: dict
    result: Any
    wall_time: float = 0.0
    version: str = field(default_factory=tool_version)

    @property
    def digest(self) -> str:
        return digest(self.result)

    def to_json(self) -> dict:
        return {"command": self.command, "config": self.config, "tool_version": self.version,
                "wall_time": round(self.wall_time, 6), "result_digest": self.digest}


class Stopwatch:
    def __enter__(self):
        self.start = time.perf_counter()
        self.elapsed = 0.0
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        return False
