import json
import subprocess
import sys
from pathlib import Path

import pytest

from ecreconf.egraph import GraphBuilder, coloring_array, count_colorings, reconfiguration_graph
from ecreconf.gadgets import (
    GADGET_NAMES,
    GadgetError,
    Variant,
    gadget_from_json,
    gadget_to_json,
    load_gadget,
    make_color_gadget,
)
from ecreconf.interface import Kind

ROOT = Path(__file__).resolve().parents[1]


def test_color_gadget_shape():
    cg = make_color_gadget(5, {1, 3}, "v")
    assert len(cg.edges) == 5 and cg.colors == (1, 2, 3, 4, 5)
    ends = {c: e.v for e, c in zip(cg.edges, cg.colors)}
    assert ends[1] == ends[3] == "v"
    assert len({ends[c] for c in (2, 4, 5)}) == 3


def test_color_gadget_restricts_palette():
    b = GraphBuilder(5)
    b.edge("e", "v", "w")
    make_color_gadget(5, {1, 3}, "v").add_to(b)
    g = b.build()
    rows = coloring_array(g)
    assert sorted(int(r[g.edge_index("e")]) for r in rows) == [2, 4, 5]
    assert g.degree("v*") == 5


def test_color_gadget_frozen_under_enumeration():
    b = GraphBuilder(7)
    cg = make_color_gadget(7, {2, 5, 6, 7}, "v")
    cg.add_to(b)
    b.edge("e", "v", "w")
    g = b.build()
    rows = coloring_array(g)
    star = [g.edge_index(e.id) for e in cg.edges]
    assert (rows[:, star] == list(cg.colors)).all()
    assert sorted(int(r[g.edge_index("e")]) for r in rows) == [1, 3, 4]
    assert reconfiguration_graph(g).is_connected()


@pytest.mark.parametrize("k,forbidden", [(4, {1}), (5, set()), (5, {1, 2, 3, 4, 5}), (5, {0}), (5, {6})])
def test_color_gadget_errors(k, forbidden):
    with pytest.raises(ValueError):
        make_color_gadget(k, forbidden, "v")


@pytest.mark.parametrize("variant", list(Variant))
@pytest.mark.parametrize("name", GADGET_NAMES)
def test_load_matches_checksum_and_invariants(name, variant):
    g = load_gadget(name, variant)
    assert count_colorings(g.graph) == g.checksum
    assert g.alphabet == (1, 4)
    assert len(set(g.boundary)) == len(g.boundary)
    assert g.kind is Kind(name.upper())
    if variant is Variant.LIST:
        assert max(max(l) for l in g.graph.lists) <= 4
        assert g.graph.max_degree() <= 3


@pytest.mark.parametrize("name", GADGET_NAMES)
def test_list_gadgets_ignore_k(name):
    a, b = load_gadget(name, "list", 4), load_gadget(name, "list", 9)
    assert a.graph.lists == b.graph.lists and b.k == 9 and b.graph.k == 9


@pytest.mark.parametrize("name", GADGET_NAMES)
def test_nonlist_scaling_with_k(name):
    sizes = []
    for k in range(5, 10):
        g = load_gadget(name, "nonlist", k)
        assert g.graph.max_degree() == k
        assert count_colorings(g.graph) == g.checksum  # census does not depend on k
        sizes.append(len(g.graph.edges))
    steps = {b - a for a, b in zip(sizes, sizes[1:])}
    assert len(steps) == 1  # exactly linear in k


def test_load_errors(tmp_path):
    with pytest.raises(GadgetError):
        load_gadget("and", "nonlist", 4)
    with pytest.raises(GadgetError):
        load_gadget("xor", "list")
    with pytest.raises(ValueError):
        load_gadget("and", "sideways")
    data = json.loads((ROOT / "src/ecreconf/gadget_data/list_and.json").read_text())
    bad = dict(data, checksum=data["checksum"] + 1)
    with pytest.raises(GadgetError, match="census"):
        gadget_from_json(bad)
    with pytest.raises(GadgetError):
        gadget_from_json({k: v for k, v in data.items() if k != "boundary"})
    with pytest.raises(GadgetError):
        gadget_from_json(dict(data, boundary=["e1", "e1", "e2"]))
    with pytest.raises(GadgetError):
        gadget_from_json(dict(data, boundary=["e1", "e2"]))


@pytest.mark.parametrize("variant", list(Variant))
@pytest.mark.parametrize("name", GADGET_NAMES)
def test_json_round_trip(name, variant):
    g = load_gadget(name, variant)
    g2 = gadget_from_json(gadget_to_json(g))
    assert g2.graph.edges == g.graph.edges and g2.graph.lists == g.graph.lists
    assert g2.ports == g.ports and g2.attachments == g.attachments


def test_data_files_match_derivation_script():
    out = subprocess.run(
        [sys.executable, str(ROOT / "scripts/derive_gadgets.py"), "--check"], capture_output=True, text=True
    )
    assert out.returncode == 0, out.stdout + out.stderr
