import pytest
from hypothesis import given, strategies as st

from kpvcr.graph import build_from_edges, build_path, classify, ShapeKind
from kpvcr.oracle import oracle_min_cover_size
from kpvcr.reconfig import Rule
from kpvcr.reductions import (GadgetKind, build_gadget, gadget_reconf_graph, orientation_graph,
                              pendant_transform, port_signature, valid_orientations)

K3 = build_from_edges(3, [(0, 1), (1, 2), (0, 2)])


def test_pendant_on_triangle():
    pt = pendant_transform(K3, 3)
    assert pt.result.n == 6
    assert pt.pendant_map == ((3,), (4,), (5,))
    assert set(pt.result.edges) == set(K3.edges) | {(0, 3), (1, 4), (2, 5)}


def test_pendant_k2_and_k5():
    assert pendant_transform(K3, 2).result == K3
    pt = pendant_transform(build_path(2), 5)
    assert pt.pendant_map == ((2, 3), (4, 5))
    assert classify(pt.result).kind is ShapeKind.PATH
    with pytest.raises(ValueError):
        pendant_transform(K3, 1)


@given(st.integers(1, 6), st.integers(2, 6))
def test_pendant_shape(n, k):
    g = build_path(n)
    pt = pendant_transform(g, k)
    m = (k - 1) // 2
    assert pt.result.n == n * (1 + m) and len(pt.result.edges) == len(g.edges) + n * m
    for x, path in enumerate(pt.pendant_map):
        prev = x
        for v in path:
            assert v in pt.result.adjacency[prev]
            prev = v
        if path:
            assert pt.result.degree(path[-1]) == 1


def test_gadget_sizes():
    a, o = build_gadget("and", 3), build_gadget(GadgetKind.OR, 3)
    assert a.graph.n == 15 and o.graph.n == 16
    assert a.weights == (1, 1, 2) and o.weights == (2, 2, 2)
    assert classify(o.graph).kind is ShapeKind.GENERAL
    for g in (a, o):
        for port in g.ports:
            assert len(port.vertices) == 2 * g.k - 2
            assert port.outward in g.graph.adjacency[port.inward]
            assert set(g.graph.adjacency[port.inward]) & set(g.main)
    with pytest.raises(ValueError):
        build_gadget("and", 2)


def test_orientation_counts():
    assert len(valid_orientations("and")) == 5
    assert len(valid_orientations("or")) == 7
    assert len(orientation_graph("and")[1]) == 5
    assert len(orientation_graph("or")[1]) == 9


@pytest.mark.parametrize("kind", ["and", "or"])
@pytest.mark.parametrize("k", [3, 4])
def test_quotient_matches_orientation_graph(kind, k):
    g = build_gadget(kind, k)
    budget = oracle_min_cover_size(g.graph, k)
    q = gadget_reconf_graph(g, budget)
    nodes, edges = orientation_graph(kind)
    assert set(q.nodes) == set(nodes)
    assert q.edges == edges
    assert all(q.internally_connected.values())
    assert gadget_reconf_graph(g, budget, Rule.ts()).edges == edges


def test_or_cover_count():
    g = build_gadget("or", 3)
    q = gadget_reconf_graph(g, oracle_min_cover_size(g.graph, 3))
    assert len(q.states) == 18 and len(q.classes) == 7
    g = build_gadget("and", 3)
    assert len(gadget_reconf_graph(g, oracle_min_cover_size(g.graph, 3)).states) == 7


def test_port_signature_raw_tuple():
    g = build_gadget("and", 3)
    p0 = g.ports[0]
    sig = port_signature(g, {p0.inward, p0.outward})
    assert sig[0] == (p0.inward, p0.outward) and sig[1] == () and sig[2] == ()


def test_tar_quotient_rejected():
    with pytest.raises(ValueError):
        gadget_reconf_graph(build_gadget("and", 3), 4, Rule.tar(5))


def test_or_main_part_is_a_cycle():
    g = build_gadget("or", 3)
    sub = [e for e in g.graph.edges if e[0] in g.main and e[1] in g.main]
    assert classify(build_from_edges(4, sub)).kind is ShapeKind.CYCLE
