import math

import pytest
from hypothesis import given

import naive
from corpus import corpus
from ftoracle.errors import ContractError
from ftoracle.exact import build_exact, exact_query
from ftoracle.graph import UNREACHABLE, parse_graph
from ftoracle.spt import build_spt
from test_graph import A_TEXT, E_TEXT, graphs


def table(text):
    g = parse_graph(text)
    return build_exact(g, build_spt(g))


def test_examples():
    a, e = table(A_TEXT), table(E_TEXT)
    assert a.row(0, 1).tolist() == [0, 7, 6, 5]
    assert e.row(0, 1).tolist() == [0, 22, 12]
    assert e.row(2, 1).tolist() == [0, 1, 12]
    assert exact_query(e, (0, 1), 2) == 12
    assert exact_query(a, (2, 3), 1) == 1
    assert exact_query(table("2 1 0\n0 1 3"), (0, 1), 1) == UNREACHABLE


def test_non_tree_edge_rejected():
    with pytest.raises(ContractError):
        table(A_TEXT).row(3, 0)


def test_rows_match_reference_dijkstra():
    for g, spt, tbl in corpus()[:40]:
        for r in range(1, g.n):
            u, v = spt.edge_of(r)
            assert tbl.rows[r - 1].tolist() == naive.dijkstra(g.n, g.edges, g.source, skip=[(u, v)])[0]


@given(graphs(connected=True))
def test_invariants(g):
    spt = build_spt(g)
    tbl = build_exact(g, spt)
    for r in range(1, g.n):
        v = spt.child_of(r)
        row = tbl.rows[r - 1]
        for t in range(g.n):
            assert row[t] >= spt.dist[t]
            if not spt.is_descendant(t, v):
                assert row[t] == spt.dist[t]
            else:
                assert math.isinf(row[t]) or row[t] >= spt.dist[t]
