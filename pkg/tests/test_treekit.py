import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import naive
from ftoracle.graph import parse_graph
from ftoracle.randgraph import random_tree
from ftoracle.spt import INF_RANK, Spt, build_spt
from ftoracle.treekit import HeavyPaths, argmin_tables, build_bvq, bvq_min
from test_graph import E_TEXT
from test_spt import trees


def chain(labels):
    n = len(labels)
    return build_bvq(Spt.from_parent([-1] + list(range(n - 1)), np.arange(n, dtype=float)), labels)


def test_examples():
    ix = chain([5, 1, 3])
    assert bvq_min(ix, 0, 2) == (1, 1)
    assert bvq_min(ix, 2, 2) == (2, 3)
    e = build_spt(parse_graph(E_TEXT))
    ix = build_bvq(e, [INF_RANK, INF_RANK, 1])
    assert bvq_min(ix, 1, 2) == (2, 1)
    flat = build_bvq(e, [INF_RANK] * 3)
    assert all(flat.min(x, y)[1] == INF_RANK for x in range(3) for y in range(3))


def test_ties_go_to_first_endpoint():
    ix = chain([4, 2, 7, 2, 9])
    assert ix.min(0, 4) == (1, 2)
    assert ix.min(4, 0) == (3, 2)


def test_label_shape_checked():
    with pytest.raises(ValueError):
        build_bvq(build_spt(parse_graph(E_TEXT)), [1, 2])


@given(st.lists(st.integers(0, 5), min_size=1, max_size=70))
def test_argmin_tables(lab):
    lab = np.array(lab)
    n = lab.shape[0]
    lg = np.zeros(n + 1, np.int64)
    lg[2:] = np.floor(np.log2(np.arange(2, n + 1)))
    lo, hi = argmin_tables(lab, lg)
    for j in range(lo.shape[0]):
        for i in range(n - (1 << j) + 1):
            seg = lab[i:i + (1 << j)]
            where = np.flatnonzero(seg == seg.min()) + i
            assert lo[j, i] == where[0] and hi[j, i] == where[-1]


@given(trees)
def test_heavy_paths_are_contiguous(s):
    hp = HeavyPaths.of(s)
    assert sorted(hp.hpos.tolist()) == list(range(s.n))
    assert np.array_equal(hp.vert_at[hp.hpos], np.arange(s.n))
    for x in range(s.n):
        h = hp.head[x]
        # a chain occupies consecutive positions from its head downward
        assert hp.hpos[x] - hp.hpos[h] == s.depth[x] - s.depth[h]
        assert h in naive.ancestors(s.parent.tolist(), x)


@given(trees, st.data())
def test_matches_path_walk(s, data):
    n = s.n
    labels = data.draw(st.lists(st.sampled_from([1, 2, 3, 5, INF_RANK]), min_size=n, max_size=n))
    ix = build_bvq(s, labels)
    parent = s.parent.tolist()
    for _ in range(20):
        x = data.draw(st.integers(0, n - 1))
        y = data.draw(st.integers(0, n - 1))
        assert ix.min(x, y) == naive.path_min(parent, labels, x, y)
        assert ix.min(x, y)[1] == ix.min(y, x)[1]


def test_large_random_trees():
    rng = np.random.default_rng(3)
    for shape in ("recursive", "deep", "path"):
        s = random_tree(256, rng, shape)
        labels = rng.integers(1, 40, 256)
        ix = build_bvq(s, labels)
        parent = s.parent.tolist()
        lab = labels.tolist()
        for _ in range(500):
            x, y = (int(a) for a in rng.integers(0, 256, 2))
            assert ix.min(x, y) == naive.path_min(parent, lab, x, y)
