"""Compile pattern points into fibers of {0,1}^N and decode them back.

A graph with arcs ``1..r`` splits the space into the cones of
``partition_words(r)`` = ``0, 10, 110, ..., 1^(r-2)0, 1^(r-1)``; arc ``i``
owns cone ``i`` and a point at parameter ``t`` on it is the fiber of ``t``
under the binary-expansion quotient, prefixed by the arc's word.  A node is
the union of the endpoint sequences (``0...`` at ``t = 0``, ``1...`` at
``t = 1``) of its incident arcs.  Clusters of ``s`` children apply the same
split one level up, prefixing every address of child ``i`` with word ``i``.
A one-point child is its whole cone; the fiber stores the representative
``word + 000...``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import EndpointIsNode, InvalidInput, NoMatch, UnresolvablePath
from .interval import as_unit_rational, binary_value, fiber_unit_interval
from .pattern import (
    Cluster,
    Pattern,
    PatternPoint,
    Point,
    incidences,
    leaves,
    resolve,
)
from .sequence import ONE, ZERO, Fiber, apply_word, cone_contains, shift

ENDPOINT_REDIRECTED = "endpoint-redirected"


@dataclass(frozen=True)
class AddressEntry:
    """One compiled row: the (normalized) point, its fiber, and the full
    prefix words the fiber elements were built under."""

    point: PatternPoint
    fiber: Fiber
    words: tuple[str, ...]
    flags: tuple[str, ...] = ()

    def to_doc(self) -> dict:
        doc = {
            "point": self.point.to_doc(),
            "fiber": self.fiber.to_strings(),
            "words": list(self.words),
        }
        if self.flags:
            doc["flags"] = list(self.flags)
        return doc


def partition_words(r: int) -> list[str]:
    if r < 1:
        raise InvalidInput(f"partition size must be >= 1, got {r}")
    return ["1" * (i - 1) + "0" for i in range(1, r)] + ["1" * (r - 1)]


def _word(words: list[str], i: int) -> str:
    if not 1 <= i <= len(words):
        raise UnresolvablePath(f"arc {i} out of range 1..{len(words)}")
    return words[i - 1]


def represent_arc_point(words: list[str], i: int, t) -> Fiber:
    t = as_unit_rational(t)
    if t in (0, 1):
        raise EndpointIsNode(f"t = {t} is an endpoint of arc {i}; query the node instead")
    w = _word(words, i)
    return Fiber.of(apply_word(w, e) for e in fiber_unit_interval(t))


def represent_node(words: list[str], inc: Iterable[tuple[int, int]]) -> Fiber:
    inc = list(inc)
    if not inc:
        raise InvalidInput("a node needs at least one incident arc")
    elems = [apply_word(_word(words, i), ONE if end else ZERO) for i, end in inc]
    fiber = Fiber.of(elems)
    if len(fiber) != len(elems):
        raise InvalidInput(f"repeated incidence in {inc}")
    return fiber


def _unique(seq):
    return tuple(dict.fromkeys(seq))


def _leaf_entry(leaf, prefix: str, q: PatternPoint) -> AddressEntry:
    path = q.path
    if isinstance(leaf, Point):
        if q.arc is not None or q.node != leaf.node:
            raise UnresolvablePath(f"{q}: the point at this path is {leaf.node!r}")
        return AddressEntry(q, Fiber((apply_word(prefix, ZERO),)), (prefix,))

    words = partition_words(leaf.r)
    flags: tuple[str, ...] = ()
    if q.arc is not None:
        arc = leaf.arc(q.arc)
        if q.t not in (0, 1):
            fiber = represent_arc_point(words, q.arc, q.t)
            return AddressEntry(
                q,
                Fiber.of(apply_word(prefix, e) for e in fiber),
                (prefix + words[q.arc - 1],),
            )
        node = arc.src if q.t == 0 else arc.dst
        flags = (f"{ENDPOINT_REDIRECTED}: arc {q.arc} t={q.t}",)
        q = PatternPoint(path, node=node)

    inc = incidences(leaf, q.node)
    fiber = represent_node(words, inc)
    return AddressEntry(
        q,
        Fiber.of(apply_word(prefix, e) for e in fiber),
        _unique(prefix + words[i - 1] for i, _ in inc),
        flags,
    )


def cluster_prefix(p: Pattern, path) -> str:
    """Concatenated cluster words along an already-resolved ``path``."""
    prefix = ""
    for i in path:
        prefix += partition_words(p.s)[i - 1]
        p = p.children[i - 1]
    return prefix


def represent_point(p: Pattern, q: PatternPoint) -> AddressEntry:
    """Address of ``q`` in ``p``.

    Arc queries at ``t`` = 0 or 1 are answered with the owning node's full
    representation; the returned entry's point is that node and its flags
    record the redirect.
    """
    leaf = resolve(p, q.path)
    if isinstance(leaf, Cluster):
        raise UnresolvablePath(f"path {list(q.path)} ends at a cluster, not a graph or point")
    return _leaf_entry(leaf, cluster_prefix(p, q.path), q)


def decode_detail(p: Pattern, fiber: Fiber, accept_cone: bool = False) -> tuple[PatternPoint, str]:
    """Invert :func:`represent_point`, also reporting the matching rule.

    The rule is ``"exact"`` when ``fiber`` equals the compiled fiber of the
    returned point.  With ``accept_cone`` a single sequence anywhere in a
    one-point child's cone decodes to that point under rule ``"cone"``.
    """
    elems = list(fiber)
    path: list[int] = []
    node = p
    while isinstance(node, Cluster):
        words = partition_words(node.s)
        first = elems[0]
        i = next(k for k, w in enumerate(words, 1) if cone_contains(w, first))
        w = words[i - 1]
        if not all(cone_contains(w, e) for e in elems):
            raise NoMatch(f"fiber {fiber.to_strings()} straddles several clusters")
        elems = [shift(e, len(w)) for e in elems]
        path.append(i)
        node = node.children[i - 1]

    if isinstance(node, Point):
        q = PatternPoint(tuple(path), node=node.node)
        if elems == [ZERO]:
            return q, "exact"
        if accept_cone and len(elems) == 1:
            return q, "cone"
        raise NoMatch(f"fiber {fiber.to_strings()} is not the representative of point {node.node!r}")

    words = partition_words(node.r)
    first = elems[0]
    i = next(k for k, w in enumerate(words, 1) if cone_contains(w, first))
    t = binary_value(shift(first, len(words[i - 1])))
    arc = node.arcs[i - 1]
    if t == 0:
        q = PatternPoint(tuple(path), node=arc.src)
    elif t == 1:
        q = PatternPoint(tuple(path), node=arc.dst)
    else:
        q = PatternPoint(tuple(path), arc=i, t=t)
    if represent_point(p, q).fiber != fiber:
        raise NoMatch(f"fiber {fiber.to_strings()} matches no point of the pattern")
    return q, "exact"


def decode_representation(p: Pattern, fiber: Fiber, accept_cone: bool = False) -> PatternPoint:
    return decode_detail(p, fiber, accept_cone)[0]


def table_points(p: Pattern, d: int) -> list[PatternPoint]:
    """Sample points in table order: per leaf, nodes in declaration order,
    then arc points ``t = k/d`` by arc index and ``t``."""
    if d < 2:
        raise InvalidInput(f"sample denominator must be >= 2, got {d}")
    out = []
    for path, leaf in leaves(p):
        if isinstance(leaf, Point):
            out.append(PatternPoint(path, node=leaf.node))
            continue
        out.extend(PatternPoint(path, node=n) for n in leaf.nodes)
        for a in leaf.arcs:
            out.extend(PatternPoint(path, arc=a.id, t=Fraction(k, d)) for k in range(1, d))
    return out


def enumerate_table(p: Pattern, d: int) -> list[AddressEntry]:
    """All nodes and all arc points ``t = k/d``, in deterministic order."""
    return [represent_point(p, q) for q in table_points(p, d)]


def table_doc(entries: Iterable[AddressEntry]) -> list[dict]:
    return [e.to_doc() for e in entries]
