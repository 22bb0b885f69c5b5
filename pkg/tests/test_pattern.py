import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cantor_repr import (
    Cluster,
    DanglingReference,
    DuplicateArc,
    EmptyCluster,
    Graph,
    PatternError,
    Point,
    UnresolvablePath,
    incidences,
    parse_pattern,
    parse_points,
)
from cantor_repr.pattern import is_tree, make_graph, resolve, serialize

THREE_OD = {
    "type": "graph",
    "nodes": ["c", "a", "b", "d"],
    "arcs": [
        {"id": 1, "from": "c", "to": "a"},
        {"id": 2, "from": "c", "to": "b"},
        {"id": 3, "from": "c", "to": "d"},
    ],
}


def test_parse_three_od():
    g = parse_pattern(json.dumps(THREE_OD))
    assert isinstance(g, Graph)
    assert g.r == 3 and len(g.nodes) == 4
    assert is_tree(g)


def test_parse_point_cluster():
    doc = {"type": "cluster", "children": [{"type": "point", "node": f"x{i}"} for i in (1, 2, 3)]}
    p = parse_pattern(doc)
    assert isinstance(p, Cluster) and p.s == 3
    assert all(isinstance(c, Point) for c in p.children)


@pytest.mark.parametrize(
    "doc, exc",
    [
        ({"type": "graph", "nodes": ["a"], "arcs": [{"id": 1, "from": "a", "to": "z"}]}, DanglingReference),
        (
            {"type": "graph", "nodes": ["a", "b"], "arcs": [{"id": 1, "from": "a", "to": "b"}, {"id": 1, "from": "b", "to": "a"}]},
            DuplicateArc,
        ),
        ({"type": "cluster", "children": []}, EmptyCluster),
        ({"type": "graph", "nodes": ["a", "b"], "arcs": [{"id": 2, "from": "a", "to": "b"}]}, PatternError),
        ({"type": "graph", "nodes": ["a", "b", "c"], "arcs": [{"id": 1, "from": "a", "to": "b"}]}, PatternError),
        (
            {"type": "graph", "nodes": ["a", "b", "c", "d"], "arcs": [{"id": 1, "from": "a", "to": "b"}, {"id": 2, "from": "c", "to": "d"}]},
            PatternError,
        ),
        ({"type": "graph", "nodes": [], "arcs": []}, PatternError),
        ({"type": "blob"}, PatternError),
        ({"type": "point"}, PatternError),
    ],
)
def test_schema_violations(doc, exc):
    with pytest.raises(exc):
        parse_pattern(doc)


def test_malformed_json_reports_position():
    with pytest.raises(PatternError) as info:
        parse_pattern('{"type": "graph",\n "nodes": [}')
    assert info.value.line == 2


def test_incidences():
    g = parse_pattern(THREE_OD)
    assert incidences(g, "c") == [(1, 0), (2, 0), (3, 0)]
    assert incidences(g, "b") == [(2, 1)]
    loop = make_graph(["n"], [(1, "n", "n")])
    assert incidences(loop, "n") == [(1, 0), (1, 1)]
    assert not is_tree(loop)
    with pytest.raises(UnresolvablePath):
        incidences(g, "zz")


def test_corpus_incidence_sum_and_round_trip(corpus):
    for name, p in corpus.items():
        assert parse_pattern(json.dumps(serialize(p))) == p, name
        for leaf in _graphs(p):
            assert sum(len(incidences(leaf, n)) for n in leaf.nodes) == 2 * leaf.r


def _graphs(p):
    if isinstance(p, Graph):
        yield p
    elif isinstance(p, Cluster):
        for c in p.children:
            yield from _graphs(c)


def test_tree_detection(corpus):
    expected = {"arc": True, "three_od": True, "four_od": True, "triangle": False, "circle": False}
    for name, tree in expected.items():
        assert is_tree(corpus[name]) is tree
    assert all(is_tree(g) for g in corpus["polycrystal"].children)


@st.composite
def random_graphs(draw):
    n = draw(st.integers(1, 6))
    nodes = list(range(n))
    arcs = [(i, draw(st.integers(0, i - 1)), i) for i in range(1, n)]
    for _ in range(draw(st.integers(0 if n > 1 else 1, 4))):
        arcs.append((len(arcs) + 1, draw(st.sampled_from(nodes)), draw(st.sampled_from(nodes))))
    arcs = [(k, a, b) for k, (_, a, b) in enumerate(arcs, 1)]
    return make_graph(nodes, arcs)


@given(random_graphs())
def test_random_graph_round_trip(g):
    assert parse_pattern(serialize(g)) == g
    assert sum(len(incidences(g, n)) for n in g.nodes) == 2 * g.r


def test_parse_points():
    pts = parse_points('[{"path": [1], "arc": 2, "t": "1/2"}, {"path": [], "node": "c"}]')
    assert pts[0].arc == 2 and str(pts[0].t) == "1/2" and pts[0].path == (1,)
    assert pts[1].node == "c"
    assert parse_points('{"node": "c"}')[0].path == ()
    for bad in ('{"arc": 1, "t": 0.5}', '{"arc": 1}', '{"arc": 1, "t": "3/2"}', '{"node": "c", "t": "1/2"}', "[1]"):
        with pytest.raises(PatternError):
            parse_points(bad)


def test_resolve(corpus):
    h = corpus["hierarchy"]
    assert isinstance(resolve(h, [2, 3]), Point)
    with pytest.raises(UnresolvablePath):
        resolve(h, [5])
    with pytest.raises(UnresolvablePath):
        resolve(h, [1, 1, 1])
