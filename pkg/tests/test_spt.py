import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import naive
from ftoracle.errors import BuildError, ContractError
from ftoracle.graph import Graph, parse_graph
from ftoracle.randgraph import random_tree
from ftoracle.spt import INF_RANK, Spt, build_spt, is_descendant, level_ancestor, rank_precedes, tree_distance
from test_graph import A_TEXT, E_TEXT, graphs

trees = st.builds(lambda n, seed, shape: random_tree(n, seed, shape),
                  st.integers(1, 120), st.integers(0, 2**32 - 1),
                  st.sampled_from(["recursive", "deep", "path", "star"]))


def test_build_spt_examples():
    a = build_spt(parse_graph(A_TEXT))
    assert a.parent.tolist() == [-1, 0, 1, 2]
    assert [a.rank(0, 1), a.rank(1, 2), a.rank(2, 3)] == [1, 2, 3]
    assert a.rank(3, 0) is None and a.rank(2, 1) == 2
    e = build_spt(parse_graph(E_TEXT))
    assert e.parent.tolist() == [-1, 0, 1]
    assert (e.rank(0, 1), e.rank(1, 2)) == (1, 2)
    assert e.edge_of(2) == (1, 2) and e.child_of(1) == 1


def test_single_vertex_tree():
    s = build_spt(Graph.from_edges(1, []))
    assert s.n == 1 and s.order.tolist() == [0] and s.level_ancestor(0, 0) == 0


def test_unreachable_vertex_is_a_build_error():
    with pytest.raises(BuildError, match="unreachable"):
        build_spt(parse_graph("3 1 0\n0 1 1"))


def test_descendant_and_distance_examples():
    a = build_spt(parse_graph(A_TEXT))
    assert is_descendant(a, 3, 1) and not is_descendant(a, 1, 3)
    assert all(is_descendant(a, v, v) for v in range(4))
    assert tree_distance(a, 1, 3) == 2 and tree_distance(a, 2, 2) == 0
    e = build_spt(parse_graph(E_TEXT))
    assert tree_distance(e, 1, 2) == 10
    with pytest.raises(ContractError):
        tree_distance(a, 3, 1)


def test_level_ancestor_examples():
    a = build_spt(parse_graph(A_TEXT))
    assert level_ancestor(a, 3, 0) == 3 and level_ancestor(a, 3, 2) == 1
    with pytest.raises(ContractError):
        level_ancestor(a, 3, 4)
    with pytest.raises(ContractError):
        level_ancestor(a, 3, -1)


def test_rank_order_sentinel():
    assert rank_precedes(3, INF_RANK) and rank_precedes(3, 3) and not rank_precedes(4, 3)


def test_bad_parent_arrays():
    with pytest.raises(BuildError):
        Spt.from_parent([-1, -1], [0, 0])
    with pytest.raises(BuildError):
        Spt.from_parent([-1, 2, 1], [0, 0, 0])  # 1 and 2 form a cycle


@given(trees)
def test_tree_invariants(s):
    parent = s.parent.tolist()
    order = naive.preorder(parent)
    assert s.order.tolist() == order
    ranks = [s.pre_in[v] for v in range(s.n) if parent[v] >= 0]
    assert sorted(ranks) == list(range(1, s.n))
    for x in range(s.n):
        anc = naive.ancestors(parent, x)
        assert s.depth[x] == len(anc) - 1
        # ranks strictly increase downward
        r = [s.pre_in[a] for a in anc[:-1]]
        assert r == sorted(r, reverse=True) and len(set(r)) == len(r)
        for v in range(s.n):
            assert s.is_descendant(x, v) == (v in anc)
    for v in range(s.n):
        assert s.size[v] == len(naive.subtree(parent, v))


@given(trees, st.data())
def test_level_ancestor_matches_walk(s, data):
    x = data.draw(st.integers(0, s.n - 1))
    h = data.draw(st.integers(0, int(s.depth[x])))
    assert s.level_ancestor(x, h) == naive.walk_up(s.parent.tolist(), x, h)


@given(trees, st.data())
def test_path_and_additivity(s, data):
    x = data.draw(st.integers(0, s.n - 1))
    y = data.draw(st.integers(0, s.n - 1))
    assert s.path(x, y) == naive.tree_path(s.parent.tolist(), x, y)
    anc = naive.ancestors(s.parent.tolist(), x)
    z = anc[data.draw(st.integers(0, len(anc) - 1))]
    mid = anc[data.draw(st.integers(0, anc.index(z)))]
    assert s.tree_distance(z, x) == s.tree_distance(z, mid) + s.tree_distance(mid, x)


def test_level_ancestor_on_long_path():
    s = random_tree(3000, 5, "path")
    rng = np.random.default_rng(0)
    parent = s.parent.tolist()
    for x in rng.integers(0, s.n, 300):
        h = int(rng.integers(0, s.depth[x] + 1))
        assert s.level_ancestor(int(x), h) == naive.walk_up(parent, int(x), h)
