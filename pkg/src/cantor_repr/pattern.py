"""Geometric patterns: finite graphs, single points, and (nested) clusters.

Patterns are read from JSON documents::

    {"type": "graph", "nodes": ["c", "a"], "arcs": [{"id": 1, "from": "c", "to": "a"}]}
    {"type": "point", "node": "x"}
    {"type": "cluster", "children": [<pattern>, ...]}

Query points name a location by the cluster path (1-based child indices)
followed by either an arc parameter ``{"arc": i, "t": "p/q"}`` or a node
``{"node": id}``.  Arc ``i`` runs from its ``from`` node at ``t = 0`` to
its ``to`` node at ``t = 1``.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Optional, Union

from .errors import (
    DanglingReference,
    DuplicateArc,
    EmptyCluster,
    PatternError,
    UnresolvablePath,
)

NodeId = Hashable
_RATIONAL = re.compile(r"\s*-?\d+\s*(/\s*\d+\s*)?")


@dataclass(frozen=True)
class Arc:
    id: int
    src: NodeId
    dst: NodeId

    @property
    def is_loop(self) -> bool:
        return self.src == self.dst


@dataclass(frozen=True)
class Graph:
    """A connected finite graph; ``arcs[i - 1]`` is the arc with index ``i``."""

    nodes: tuple[NodeId, ...]
    arcs: tuple[Arc, ...]

    @property
    def r(self) -> int:
        return len(self.arcs)

    def arc(self, index: int) -> Arc:
        if not 1 <= index <= self.r:
            raise UnresolvablePath(f"arc {index} out of range 1..{self.r}")
        return self.arcs[index - 1]


@dataclass(frozen=True)
class Point:
    """A one-point continuum."""

    node: NodeId


@dataclass(frozen=True)
class Cluster:
    """Direct sum of child patterns, indexed 1..s."""

    children: tuple["Pattern", ...]

    @property
    def s(self) -> int:
        return len(self.children)


Pattern = Union[Graph, Point, Cluster]


@dataclass(frozen=True)
class PatternPoint:
    """A location in a pattern: an arc-interior point or a node."""

    path: tuple[int, ...] = ()
    arc: Optional[int] = None
    t: Optional[Fraction] = None
    node: Optional[NodeId] = None

    def __post_init__(self):
        if (self.arc is None) == (self.node is None):
            raise PatternError("a query point names exactly one of arc or node")
        if self.arc is not None:
            if self.t is None:
                raise PatternError("an arc query needs a parameter t")
            if not 0 <= self.t <= 1:
                raise PatternError(f"t = {self.t} lies outside [0, 1]")
        elif self.t is not None:
            raise PatternError("a node query takes no parameter t")

    @property
    def is_node(self) -> bool:
        return self.node is not None

    def to_doc(self) -> dict:
        doc: dict = {"path": list(self.path)}
        if self.is_node:
            doc["node"] = self.node
        else:
            doc["arc"] = self.arc
            doc["t"] = f"{self.t.numerator}/{self.t.denominator}"
        return doc

    def __str__(self) -> str:
        where = f"node {self.node!r}" if self.is_node else f"arc {self.arc} t={self.t}"
        return f"[{'.'.join(map(str, self.path))}] {where}"


# ---------------------------------------------------------------- validation


def _node_id(value, where: str) -> NodeId:
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise PatternError(f"{where}: node ids must be strings or integers, got {value!r}")
    return value


def _is_connected(nodes, arcs) -> bool:
    adj: dict = {n: set() for n in nodes}
    for a in arcs:
        adj[a.src].add(a.dst)
        adj[a.dst].add(a.src)
    start = nodes[0]
    seen = {start}
    stack = [start]
    while stack:
        for m in adj[stack.pop()]:
            if m not in seen:
                seen.add(m)
                stack.append(m)
    return len(seen) == len(nodes)


def make_graph(nodes, arcs) -> Graph:
    """Build a :class:`Graph` from node ids and ``(id, from, to)`` triples,
    enforcing every structural invariant."""
    nodes = tuple(nodes)
    if len(set(nodes)) != len(nodes):
        raise PatternError("duplicate node id")
    declared = set(nodes)
    built: dict[int, Arc] = {}
    for aid, src, dst in arcs:
        if isinstance(aid, bool) or not isinstance(aid, int):
            raise PatternError(f"arc id must be an integer, got {aid!r}")
        if aid in built:
            raise DuplicateArc(f"duplicate arc index {aid}")
        for end in (src, dst):
            if end not in declared:
                raise DanglingReference(f"arc {aid} references undeclared node {end!r}")
        built[aid] = Arc(aid, src, dst)
    r = len(built)
    if r < 1:
        raise PatternError("a graph needs at least one arc")
    if sorted(built) != list(range(1, r + 1)):
        raise PatternError(f"arc indices must be exactly 1..{r}, got {sorted(built)}")
    ordered = tuple(built[i] for i in range(1, r + 1))
    used = {a.src for a in ordered} | {a.dst for a in ordered}
    for n in nodes:
        if n not in used:
            raise PatternError(f"node {n!r} is not an endpoint of any arc")
    if not _is_connected(nodes, ordered):
        raise PatternError("graph is disconnected; express components as a cluster")
    return Graph(nodes, ordered)


def from_doc(doc, where: str = "$") -> Pattern:
    """Validate a decoded JSON value and build the pattern it describes."""
    if not isinstance(doc, dict):
        raise PatternError(f"{where}: expected an object")
    kind = doc.get("type")
    if kind == "graph":
        nodes = doc.get("nodes")
        arcs = doc.get("arcs")
        if not isinstance(nodes, list) or not isinstance(arcs, list):
            raise PatternError(f"{where}: graph needs 'nodes' and 'arcs' lists")
        triples = []
        for k, a in enumerate(arcs):
            if not isinstance(a, dict) or not {"id", "from", "to"} <= a.keys():
                raise PatternError(f"{where}.arcs[{k}]: arc needs 'id', 'from', 'to'")
            triples.append(
                (a["id"], _node_id(a["from"], where), _node_id(a["to"], where))
            )
        try:
            return make_graph([_node_id(n, where) for n in nodes], triples)
        except PatternError as exc:
            raise type(exc)(f"{where}: {exc}") from None
    if kind == "point":
        if "node" not in doc:
            raise PatternError(f"{where}: point needs 'node'")
        return Point(_node_id(doc["node"], where))
    if kind == "cluster":
        children = doc.get("children")
        if not isinstance(children, list):
            raise PatternError(f"{where}: cluster needs a 'children' list")
        if not children:
            raise EmptyCluster(f"{where}: cluster has no children")
        return Cluster(
            tuple(from_doc(c, f"{where}.children[{k}]") for k, c in enumerate(children))
        )
    raise PatternError(f"{where}: unknown pattern type {kind!r}")


def _loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise PatternError(f"malformed JSON: {exc.msg}", exc.lineno, exc.colno) from None


def parse_pattern(document) -> Pattern:
    """Parse a pattern from JSON text (or an already-decoded dict)."""
    if isinstance(document, (str, bytes)):
        document = _loads(document)
    return from_doc(document)


def serialize(p: Pattern) -> dict:
    if isinstance(p, Graph):
        return {
            "type": "graph",
            "nodes": list(p.nodes),
            "arcs": [{"id": a.id, "from": a.src, "to": a.dst} for a in p.arcs],
        }
    if isinstance(p, Point):
        return {"type": "point", "node": p.node}
    return {"type": "cluster", "children": [serialize(c) for c in p.children]}


def _parse_t(value) -> Fraction:
    if isinstance(value, bool):
        raise PatternError(f"t must be 'p/q' or an integer, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str) and _RATIONAL.fullmatch(value):
        try:
            return Fraction(value.replace(" ", ""))
        except ZeroDivisionError:
            raise PatternError(f"t has zero denominator: {value!r}") from None
    raise PatternError(f"t must be 'p/q' or an integer, got {value!r}")


def point_from_doc(doc) -> PatternPoint:
    if not isinstance(doc, dict):
        raise PatternError("a query point must be an object")
    path = doc.get("path", [])
    if not isinstance(path, list) or not all(
        isinstance(i, int) and not isinstance(i, bool) for i in path
    ):
        raise PatternError(f"path must be a list of integers, got {path!r}")
    if "node" in doc:
        if "arc" in doc or "t" in doc:
            raise PatternError("a query point names exactly one of arc or node")
        return PatternPoint(tuple(path), node=_node_id(doc["node"], "point"))
    if "arc" not in doc or "t" not in doc:
        raise PatternError("a query point needs 'node', or 'arc' and 't'")
    arc = doc["arc"]
    if isinstance(arc, bool) or not isinstance(arc, int):
        raise PatternError(f"arc must be an integer, got {arc!r}")
    return PatternPoint(tuple(path), arc=arc, t=_parse_t(doc["t"]))


def parse_points(document) -> list[PatternPoint]:
    """Parse a query-point document: one point object or a list of them."""
    if isinstance(document, (str, bytes)):
        document = _loads(document)
    if isinstance(document, dict):
        document = [document]
    if not isinstance(document, list):
        raise PatternError("expected a query point or a list of them")
    return [point_from_doc(d) for d in document]


# ------------------------------------------------------------------- queries


def incidences(g: Graph, node: NodeId) -> list[tuple[int, int]]:
    """``(arc index, endpoint parameter)`` pairs at ``node``; a loop contributes both ends."""
    if node not in g.nodes:
        raise UnresolvablePath(f"unknown node {node!r}")
    out = []
    for a in g.arcs:
        if a.src == node:
            out.append((a.id, 0))
        if a.dst == node:
            out.append((a.id, 1))
    return out


def is_tree(g: Graph) -> bool:
    # Graphs are connected by construction; a loop arc is already a cycle.
    return g.r == len(g.nodes) - 1


def resolve(p: Pattern, path) -> Pattern:
    """Follow 1-based cluster child indices down to a sub-pattern."""
    for depth, i in enumerate(path):
        if not isinstance(p, Cluster):
            raise UnresolvablePath(f"path {list(path)}: step {depth + 1} enters a non-cluster")
        if not 1 <= i <= p.s:
            raise UnresolvablePath(f"path {list(path)}: child {i} out of range 1..{p.s}")
        p = p.children[i - 1]
    return p


def leaves(p: Pattern, path: tuple[int, ...] = ()):
    """Yield ``(path, leaf)`` for every graph or point leaf, depth-first in child order."""
    if isinstance(p, Cluster):
        for i, c in enumerate(p.children, 1):
            yield from leaves(c, path + (i,))
    else:
        yield path, p
