import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_colorings, brute_component_labels
from ecreconf.egraph import (
    Budget,
    BudgetExceeded,
    ColoredMultigraph,
    Edge,
    GraphBuilder,
    Reach,
    StateIndex,
    coloring_array,
    coloring_from_json,
    coloring_neighbors,
    coloring_to_json,
    count_colorings,
    enumerate_colorings,
    graph_from_json,
    graph_to_json,
    hash_rows,
    is_proper,
    is_valid_witness,
    iter_colorings,
    random_walk,
    reachable,
    reconfiguration_graph,
    witness_from_json,
    witness_to_json,
)


@st.composite
def small_graphs(draw, max_vertices=5, max_edges=6, max_k=4):
    k = draw(st.integers(2, max_k))
    n = draw(st.integers(2, max_vertices))
    vs = [f"v{i}" for i in range(n)]
    m = draw(st.integers(1, max_edges))
    b = GraphBuilder(k)
    for v in vs:
        b.vertex(v)
    for i in range(m):
        u, w = draw(st.lists(st.sampled_from(vs), min_size=2, max_size=2, unique=True))
        lst = draw(st.lists(st.integers(1, k), min_size=1, max_size=k, unique=True))
        b.edge(f"x{i}", u, w, lst)
    return b.build()


def path_graph():
    b = GraphBuilder(3)
    b.edge("x", "a", "b", [1, 2])
    b.edge("y", "b", "c", [1, 2, 3])
    return b.build()


def test_graph_validation():
    with pytest.raises(ValueError):
        ColoredMultigraph(["a"], [Edge("e", "a", "a")], [(1,)], 2)
    with pytest.raises(ValueError):
        ColoredMultigraph(["a", "b"], [Edge("e", "a", "b")], [(3,)], 2)
    with pytest.raises(ValueError):
        ColoredMultigraph(["a", "b"], [Edge("e", "a", "b")], [(1, 2)], 2, frozen={"e": 1})
    with pytest.raises(ValueError):
        ColoredMultigraph(["a", "b"], [Edge("e", "a", "b"), Edge("e", "a", "b")], [(1,), (2,)], 2)


def test_parallel_edges_conflict():
    b = GraphBuilder(2)
    b.edge("p", "a", "b", [1, 2])
    b.edge("q", "a", "b", [1, 2])
    g = b.build()
    assert not is_proper(g, (1, 1))
    assert sorted(iter_colorings(g)) == [(1, 2), (2, 1)]


@settings(max_examples=80)
@given(small_graphs())
def test_census_matches_brute_force(g):
    brute = sorted(brute_colorings(g))
    rows, n = enumerate_colorings(g)
    assert n == len(brute)
    assert [tuple(int(c) for c in r) for r in rows] == brute  # lexicographic order too
    assert list(iter_colorings(g)) == brute


@settings(max_examples=40)
@given(small_graphs())
def test_explicit_order_matches_backtracking_stream(g):
    order = list(range(len(g.edges)))[::-1]
    rows = coloring_array(g, order=order)
    assert [tuple(int(c) for c in r) for r in rows] == list(iter_colorings(g, order=order))


@settings(max_examples=60)
@given(small_graphs())
def test_neighbors_symmetric_and_proper(g):
    for f in iter_colorings(g):
        for h in coloring_neighbors(g, f):
            assert is_proper(g, h)
            assert f in coloring_neighbors(g, h)


@settings(max_examples=60)
@given(small_graphs(), st.data())
def test_bfs_agrees_with_component_oracle(g, data):
    states = brute_colorings(g)
    if not states:
        return
    labels = brute_component_labels(states)
    a = data.draw(st.integers(0, len(states) - 1))
    b = data.draw(st.integers(0, len(states) - 1))
    res = reachable(g, states[a], states[b])
    assert (res.status is Reach.REACHABLE) == (labels[a] == labels[b])
    if res.status is Reach.REACHABLE:
        assert res.witness[0] == states[a] and res.witness[-1] == states[b]
        assert is_valid_witness(g, res.witness)
    rg = reconfiguration_graph(g)
    comp = rg.components()
    idx = StateIndex(rg.colorings)
    ia, ib = idx.lookup(np.asarray([states[a], states[b]], dtype=np.uint8))
    assert (comp[ia] == comp[ib]) == (labels[a] == labels[b])


def test_restricted_bfs_keeps_other_edges_fixed():
    g = path_graph()
    res = reachable(g, (1, 2), (2, 1), movable=["x"])
    assert res.status is Reach.UNREACHABLE
    res = reachable(g, (1, 2), (2, 1))
    assert res.status is Reach.REACHABLE and res.witness == [(1, 2), (1, 3), (2, 3), (2, 1)]


def test_identity_and_improper_inputs():
    g = path_graph()
    res = reachable(g, (1, 2), (1, 2))
    assert res.status is Reach.REACHABLE and res.steps == []
    with pytest.raises(ValueError):
        reachable(g, (1, 1), (1, 2))


def test_budget_exceeded_is_not_unreachable():
    b = GraphBuilder(4)
    for i in range(6):
        b.edge(f"x{i}", f"a{i}", f"b{i}", [1, 2, 3, 4])
    g = b.build()
    res = reachable(g, (1,) * 6, (4,) * 6, budget=Budget(max_states=50))
    assert res.status is Reach.BUDGET_EXCEEDED
    with pytest.raises(BudgetExceeded):
        count_colorings(g, Budget(max_states=100))
    with pytest.raises(BudgetExceeded):
        count_colorings(g, Budget(max_bytes=1000))


def test_frozen_star_never_moves():
    b = GraphBuilder(5)
    for c in range(1, 6):
        b.edge(f"s{c}", "center", f"leaf{c}", frozen=c)
    b.edge("x", "leaf1", "z", [1, 2, 3])
    g = b.build()
    rows = coloring_array(g)
    assert len(rows) == 2  # x avoids 1, the frozen color at leaf1
    rg = reconfiguration_graph(g)
    assert set(rg.moved.tolist()) <= {g.edge_index("x")}


def test_hash_lookup_survives_collisions(monkeypatch):
    rows = np.asarray(list(itertools.product([1, 2, 3], repeat=3)), dtype=np.uint8)
    import ecreconf.egraph as eg

    monkeypatch.setattr(eg, "hash_rows", lambda r, keys=None: np.zeros(len(r), dtype=np.uint64))
    idx = StateIndex(rows)
    probe = rows[[5, 0, 26]]
    assert idx.lookup(probe).tolist() == [5, 0, 26]
    assert idx.lookup(np.asarray([[4, 4, 4]], dtype=np.uint8)).tolist() == [-1]


def test_hashes_are_deterministic():
    rows = np.asarray(list(itertools.product([1, 2, 3, 4], repeat=4)), dtype=np.uint8)
    h = hash_rows(rows)
    assert len(np.unique(h)) == len(rows)
    assert (h == hash_rows(rows)).all()


def test_json_round_trips():
    g = path_graph()
    g2 = graph_from_json(graph_to_json(g))
    assert g2.edges == g.edges and g2.lists == g.lists and g2.k == g.k
    f = (1, 3)
    assert coloring_from_json(g, coloring_to_json(g, f)) == f
    w = reachable(g, (1, 2), (2, 1)).witness
    assert witness_from_json(g, w[0], witness_to_json(g, w)) == w


def test_instance_json_default_list_and_frozen():
    g = graph_from_json(
        {"vertices": ["a", "b", "c"], "edges": [{"id": "e", "u": "a", "v": "b"}, {"id": "s", "u": "b", "v": "c", "frozen": 2}], "k": 3}
    )
    assert g.list_of("e") == (1, 2, 3) and g.frozen == {"s": 2}
    with pytest.raises(ValueError):
        graph_from_json({"vertices": [], "edges": []})


def test_dot_labels_are_packed_colorings():
    dot = reconfiguration_graph(path_graph()).to_dot("p")
    assert dot.startswith("graph p {") and '"12" -- "13"' in dot


@settings(max_examples=30)
@given(small_graphs(), st.integers(0, 2**32 - 1))
def test_random_walk_stays_proper(g, seed):
    states = brute_colorings(g)
    if not states:
        return
    prev = list(states[0])
    for i, c, f in random_walk(g, states[0], 50, np.random.default_rng(seed)):
        assert is_proper(g, f)
        assert sum(x != y for x, y in zip(prev, f)) == 1 and f[i] == c
        prev = list(f)
