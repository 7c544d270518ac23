import itertools
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import ncl_machines
from oracles import brute_ncl_components, brute_ncl_valid
from ecreconf.ncl import (
    AND,
    NEUTRAL,
    OR,
    NclEdge,
    NclMachine,
    all_configurations,
    all_orientations,
    configuration_neighbors,
    is_valid_configuration,
    is_valid_ncl_witness,
    machine_from_json,
    machine_to_json,
    mixed_machine,
    ncl_reachable,
    orientation_from_json,
    orientation_to_json,
    triple_or_machine,
    two_and_machine,
    validate_machine,
)


def test_sample_machines_are_valid():
    for m in (triple_or_machine(), two_and_machine(), mixed_machine()):
        assert validate_machine(m) == []


def test_validate_reports_bad_profiles():
    m = NclMachine((("u", AND), ("v", AND)), tuple(NclEdge(f"e{i}", "u", "v", 2) for i in range(3)))
    problems = validate_machine(m)
    assert len(problems) == 2 and all("AND" in p for p in problems)
    m = NclMachine((("u", OR), ("v", OR)), (NclEdge("e", "u", "v", 2),))
    assert any("degree" in p for p in validate_machine(m))


def test_loops_and_unknown_endpoints_rejected():
    with pytest.raises(ValueError):
        NclMachine((("u", OR),), (NclEdge("e", "u", "u", 2),))
    with pytest.raises(ValueError):
        NclMachine((("u", OR),), (NclEdge("e", "u", "w", 2),))


def test_neutral_counts_nowhere():
    m = triple_or_machine()
    assert is_valid_configuration(m, ("u", "v", NEUTRAL))
    assert not is_valid_configuration(m, ("u", "u", NEUTRAL))
    assert not is_valid_configuration(m, ("u", "v", NEUTRAL), allow_neutral=False)


def test_triple_or_has_six_configurations():
    assert len(all_configurations(triple_or_machine())) == 6


def test_two_and_configurations_are_isolated():
    m = two_and_machine()
    cs = all_configurations(m)
    assert len(cs) == 2
    assert all(configuration_neighbors(m, c) == set() for c in cs)
    assert not ncl_reachable(m, *cs).reachable


@settings(max_examples=40)
@given(ncl_machines(max_edges=9))
def test_validity_matches_brute_force(m):
    for o in all_orientations(m):
        assert is_valid_configuration(m, o) == brute_ncl_valid(m, o)


@settings(max_examples=40)
@given(ncl_machines(max_edges=9))
def test_neighbors_symmetric(m):
    for c in all_configurations(m):
        for d in configuration_neighbors(m, c):
            assert c in configuration_neighbors(m, d)


@settings(max_examples=25)
@given(ncl_machines(max_edges=9), st.data())
def test_reachability_matches_component_oracle(m, data):
    comp = brute_ncl_components(m)
    states = sorted(comp)
    if not states:
        return
    a = data.draw(st.sampled_from(states))
    b = data.draw(st.sampled_from(states))
    res = ncl_reachable(m, a, b)
    assert res.reachable == (comp[a] == comp[b])
    if res.reachable:
        assert res.witness[0] == a and res.witness[-1] == b
        assert is_valid_ncl_witness(m, res.witness)


def test_reachable_rejects_invalid_endpoints():
    m = triple_or_machine()
    with pytest.raises(ValueError):
        ncl_reachable(m, ("u", "u", "u"), ("u", "v", "v"))


def test_json_round_trip():
    m = mixed_machine()
    m2 = machine_from_json(json.dumps(machine_to_json(m)))
    assert m2.vertices == m.vertices and m2.edges == m.edges
    for c in all_configurations(m)[:3]:
        assert orientation_from_json(m, orientation_to_json(m, c)) == c


def test_orientation_json_rejects_bad_heads():
    m = triple_or_machine()
    with pytest.raises(ValueError):
        orientation_from_json(m, {"e1": "u", "e2": "w", "e3": "v"})
    with pytest.raises(ValueError):
        orientation_from_json(m, {"e1": "u", "e2": "v"})


def test_witness_checker_rejects_double_flips():
    m = triple_or_machine()
    assert not is_valid_ncl_witness(m, [("u", "u", "v"), ("v", "v", "v")])
    assert is_valid_ncl_witness(m, [("u", "u", "v"), ("v", "u", "v")])
