import math

import numpy as np
import pytest

import naive
from ftoracle.errors import LowerBoundError, ParameterError
from ftoracle.lowerbound import (LowerBoundParams, check_separation, default_y, enumerate_distinguishability,
                                 failure_profile, gen_lower_bound, read_metadata, write_metadata)
from ftoracle.spt import build_spt


def make(eta, k=1, delta=1, gamma=1, y=1):
    return gen_lower_bound(LowerBoundParams(eta, k, delta, gamma, y))


def test_recurrence_examples():
    inst = make(4)
    assert inst.x.tolist() == [3, 5, 7, 9]
    assert inst.z[-1] == 10
    assert 2 * inst.y > inst.params.beta(inst.z[-1]) == 1
    two = make(2)
    assert two.x.tolist() == [3, 5] and two.graph.n == 7
    # delta = 1 makes beta the constant k: an arithmetic progression
    inst = make(5, k=3, gamma=0.5, y=2)
    assert np.allclose(np.diff(inst.x), 3.5)


def test_instance_shape():
    inst = make(3)
    g = inst.graph
    assert g.n == 10 and g.source == inst.u[-1]
    assert g.m == 3 + 3 + 3 + 9
    for i in range(1, 4):
        a, b = inst.path_edge(i)
        assert g.ew[g.edge_index(a, b)] == 0
        assert g.ew[g.edge_index(int(inst.u[i]), int(inst.v[i - 1]))] == inst.x[i - 1]
    for t in inst.t:
        assert g.ew[g.edge_index(int(inst.u[0]), int(t))] == inst.y
        for v in inst.v:
            assert g.ew[g.edge_index(int(t), int(v))] == inst.y


def test_base_distances_and_tree():
    inst = make(4)
    spt = build_spt(inst.graph)
    assert (spt.dist[inst.t] == 1).all() and (spt.dist[inst.v] == 2).all()
    # every path edge sits in the tree, so its failure is a tree failure
    for i in range(1, 5):
        assert spt.rank(*inst.path_edge(i)) is not None


@pytest.mark.parametrize("eta", [2, 3, 4])
def test_separation_passes(eta):
    rep = check_separation(make(eta))
    assert rep.passed and rep.base_ok and rep.condition_ok
    first = rep.checks[0]
    assert (first.i, first.h, first.replacement, first.deprived) == (1, 1, 4, 6)
    assert first.threshold == 5
    assert rep.lines()[-1] == f"{eta * eta}/{eta * eta} pairs pass"


def test_separation_matches_reference():
    inst = make(3)
    g = inst.graph
    for c in check_separation(inst).checks:
        a, b = inst.path_edge(c.i)
        vi, th = int(inst.v[c.i - 1]), int(inst.t[c.h - 1])
        assert naive.dijkstra(g.n, g.edges, g.source, skip=[(a, b)])[0][th] == c.replacement
        assert naive.dijkstra(g.n, g.edges, g.source, skip=[(a, b), (vi, th)])[0][th] == c.deprived


def test_last_spoke_binds_on_two_y():
    # the alternative for i = eta is x_eta + 3y, so the margin there is exactly 2y - beta
    inst = make(3)
    last = [c for c in check_separation(inst).checks if c.i == 3]
    assert all(c.deprived - c.replacement == 2 * inst.y for c in last)


def test_separation_reports_failures():
    inst = make(3, k=1, y=1)
    # a thinner margin than beta breaks check (b) for the last spoke
    bad = LowerBoundParams(3, 1, 1, 1, 1)
    object.__setattr__(bad, "k", 2.5)
    broken = type(inst)(bad, inst.y, inst.graph, inst.x, inst.z, inst.u, inst.t, inst.v, inst.bipartite)
    rep = check_separation(broken)
    assert not rep.passed and rep.failures


@pytest.mark.parametrize("eta", [2, 3])
def test_enumeration_distinguishes_all_subsets(eta):
    en = enumerate_distinguishability(make(eta))
    assert en.subsets == 2 ** (eta * eta)
    assert en.pairs == en.subsets * (en.subsets - 1) // 2
    assert en.passed


def test_enumeration_profile_marks_missing_edges():
    inst = make(2)
    full = failure_profile(inst, np.ones(4, bool))
    assert full.tolist() == [4, 4, 6, 6]
    keep = np.array([False, True, True, True])  # drop (t_1, v_1)
    prof = failure_profile(inst, keep)
    assert prof[0] > full[0] + 1  # i=1, h=1 is now far


def test_enumeration_limited():
    with pytest.raises(ParameterError):
        enumerate_distinguishability(make(4))


@pytest.mark.parametrize("kw, err", [
    (dict(eta=1, k=2), ParameterError),
    (dict(eta=3, k=0.5), ParameterError),
    (dict(eta=3, delta=0), ParameterError),
    (dict(eta=3, gamma=2), ParameterError),
    (dict(eta=3, y=0.5), ParameterError),
    (dict(eta=4, k=3, y=1), LowerBoundError),  # 2y = 2 <= beta = 3
])
def test_invalid_parameters(kw, err):
    p = dict(eta=3, k=1, delta=1, gamma=1, y=None)
    p.update(kw)
    with pytest.raises(err):
        gen_lower_bound(LowerBoundParams(**p))


def test_default_y_exceeds_feasibility_bound():
    for delta in (1.0, 0.9, 0.75, 0.5):
        p = LowerBoundParams(3, 1, delta, 1)
        y = default_y(p)
        n = p.n
        bound = (p.k / 2) ** (1 / delta) * (4 * (2 * n) ** (p.k + 2 + 2 / delta)) ** (1 / delta - 1)
        assert y > bound and (y == 1 or y / 2 <= bound)
        assert math.log2(y) == int(math.log2(y))
        inst = gen_lower_bound(p)
        assert inst.z[-1] <= 4 * y * (2 * n) ** (p.k + 2 + 2 / delta)
        assert check_separation(inst).passed


def test_weights_capped():
    with pytest.raises(LowerBoundError, match="2\\^53"):
        gen_lower_bound(LowerBoundParams(6, 1, 0.2, 1))


def test_metadata_round_trip(tmp_path):
    inst = make(4)
    path = tmp_path / "lb.meta"
    write_metadata(inst, path)
    meta = read_metadata(path)
    assert meta["eta"] == "4" and meta["n"] == "13"
    assert [float(x) for x in meta["x"].split(",")] == [3, 5, 7, 9]
    assert float(meta["beta_z_eta"]) == 1
