"""Nondeterministic Constraint Logic machines built from AND/OR vertices.

An orientation is a tuple aligned with ``machine.edges`` holding, for every
edge, the id of the vertex it points to, or ``NEUTRAL`` for an edge that
counts towards neither endpoint.
"""
from __future__ import annotations

import itertools
import json
import random
from collections import Counter, deque
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

NEUTRAL = "NEUTRAL"
AND, OR = "AND", "OR"

Orientation = tuple[str, ...]

_PROFILES = {AND: [1, 1, 2], OR: [2, 2, 2]}


@dataclass(frozen=True)
class NclEdge:
    id: str
    u: str
    v: str
    weight: int


@dataclass(frozen=True, eq=False)
class NclMachine:
    vertices: tuple[tuple[str, str], ...]  # (id, AND|OR)
    edges: tuple[NclEdge, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple((str(v), str(k)) for v, k in self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        ids = [v for v, _ in self.vertices]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate vertex identifiers")
        eids = [e.id for e in self.edges]
        if len(set(eids)) != len(eids):
            raise ValueError("duplicate edge identifiers")
        for e in self.edges:
            if e.u not in ids or e.v not in ids:
                raise ValueError(f"edge {e.id} has an unknown endpoint")
            if e.u == e.v:
                raise ValueError(f"edge {e.id} is a loop")
        object.__setattr__(self, "_eindex", {eid: i for i, eid in enumerate(eids)})

    @property
    def vertex_ids(self) -> list[str]:
        return [v for v, _ in self.vertices]

    def kind(self, v: str) -> str:
        return dict(self.vertices)[v]

    def edge_index(self, eid: str) -> int:
        try:
            return self._eindex[eid]
        except KeyError:
            raise KeyError(f"unknown NCL edge {eid!r}") from None

    def incident(self, v: str) -> list[int]:
        return [i for i, e in enumerate(self.edges) if v in (e.u, e.v)]

    def orientation(self, mapping: Mapping[str, str]) -> Orientation:
        """Build an orientation from ``edge id -> head`` (or NEUTRAL)."""
        unknown = set(mapping) - set(self._eindex)
        if unknown:
            raise KeyError(f"orientation names unknown edges {sorted(unknown)}")
        out = []
        for e in self.edges:
            if e.id not in mapping:
                raise ValueError(f"orientation misses edge {e.id}")
            head = mapping[e.id]
            if head not in (e.u, e.v, NEUTRAL):
                raise ValueError(f"edge {e.id} cannot point to {head!r}")
            out.append(head)
        return tuple(out)

    def as_mapping(self, o: Sequence[str]) -> dict[str, str]:
        return {e.id: h for e, h in zip(self.edges, o)}


def validate_machine(m: NclMachine) -> list[str]:
    """Every degree and weight-profile violation, one message per vertex."""
    problems = []
    weights: dict[str, list[int]] = {v: [] for v in m.vertex_ids}
    for e in m.edges:
        if e.weight not in (1, 2):
            problems.append(f"edge {e.id}: weight {e.weight} not in {{1,2}}")
        weights[e.u].append(e.weight)
        weights[e.v].append(e.weight)
    for v, kind in m.vertices:
        if kind not in _PROFILES:
            problems.append(f"vertex {v}: unknown kind {kind!r}")
            continue
        ws = weights[v]
        if len(ws) != 3:
            problems.append(f"vertex {v}: degree {len(ws)} != 3")
        elif sorted(ws) != _PROFILES[kind]:
            problems.append(f"vertex {v}: {kind} weights {sorted(ws)} != {_PROFILES[kind]}")
    return problems


def _coerce(m: NclMachine, o) -> Orientation:
    if isinstance(o, Mapping):
        return m.orientation(o)
    o = tuple(o)
    if len(o) != len(m.edges):
        raise ValueError(f"orientation has {len(o)} entries, machine has {len(m.edges)} edges")
    for e, h in zip(m.edges, o):
        if h not in (e.u, e.v, NEUTRAL):
            raise ValueError(f"edge {e.id} cannot point to {h!r}")
    return o


def as_orientation(m: NclMachine, o) -> Orientation:
    """Accept a tuple aligned with ``m.edges`` or an ``edge id -> head`` mapping."""
    return _coerce(m, o)


def in_weights(m: NclMachine, o) -> Counter:
    o = _coerce(m, o)
    acc: Counter = Counter({v: 0 for v in m.vertex_ids})
    for e, h in zip(m.edges, o):
        if h != NEUTRAL:
            acc[h] += e.weight
    return acc


def is_valid_configuration(m: NclMachine, o, allow_neutral: bool = True) -> bool:
    """In-weight at least two at every vertex; NEUTRAL edges count nowhere."""
    o = _coerce(m, o)
    if not allow_neutral and NEUTRAL in o:
        return False
    return all(w >= 2 for w in in_weights(m, o).values())


def is_strict(o: Sequence[str]) -> bool:
    return NEUTRAL not in o


def _flip(m: NclMachine, o: Orientation, i: int) -> Orientation:
    e = m.edges[i]
    head = e.v if o[i] == e.u else e.u
    return o[:i] + (head,) + o[i + 1 :]


def configuration_neighbors(m: NclMachine, o) -> set[Orientation]:
    """Valid strict configurations one edge reversal away from ``o``."""
    o = _coerce(m, o)
    if not is_strict(o) or not is_valid_configuration(m, o):
        raise ValueError("configuration_neighbors needs a valid strict configuration")
    out = set()
    for i in range(len(m.edges)):
        p = _flip(m, o, i)
        if is_valid_configuration(m, p):
            out.add(p)
    return out


def all_orientations(m: NclMachine) -> Iterator[Orientation]:
    """Every strict orientation (2^|E| of them), in a fixed order."""
    choices = [(e.u, e.v) for e in m.edges]
    return itertools.product(*choices)


def all_configurations(m: NclMachine) -> list[Orientation]:
    return [o for o in all_orientations(m) if is_valid_configuration(m, o)]


@dataclass
class NclReach:
    reachable: bool
    witness: list[Orientation] | None


def ncl_reachable(m: NclMachine, c0, cr) -> NclReach:
    """Breadth-first search over strict configurations; witness is a shortest path."""
    c0, cr = _coerce(m, c0), _coerce(m, cr)
    for name, c in (("c0", c0), ("cr", cr)):
        if not is_strict(c) or not is_valid_configuration(m, c):
            raise ValueError(f"{name} is not a valid strict configuration")
    parent: dict[Orientation, Orientation | None] = {c0: None}
    queue = deque([c0])
    while queue:
        cur = queue.popleft()
        if cur == cr:
            path = []
            node: Orientation | None = cur
            while node is not None:
                path.append(node)
                node = parent[node]
            return NclReach(True, path[::-1])
        for nxt in sorted(configuration_neighbors(m, cur)):
            if nxt not in parent:
                parent[nxt] = cur
                queue.append(nxt)
    return NclReach(False, None)


def flipped_edge(m: NclMachine, a: Sequence[str], b: Sequence[str]) -> int | None:
    """Index of the single edge on which ``a`` and ``b`` differ, else None."""
    diff = [i for i, (x, y) in enumerate(zip(a, b)) if x != y]
    return diff[0] if len(diff) == 1 else None


def is_valid_ncl_witness(m: NclMachine, witness: Sequence[Sequence[str]]) -> bool:
    for o in witness:
        if not is_strict(o) or not is_valid_configuration(m, o):
            return False
    return all(flipped_edge(m, a, b) is not None for a, b in zip(witness, witness[1:]))


# -- JSON ----------------------------------------------------------------------


def machine_to_json(m: NclMachine) -> dict:
    return {
        "vertices": [{"id": v, "kind": k} for v, k in m.vertices],
        "edges": [{"id": e.id, "u": e.u, "v": e.v, "weight": e.weight} for e in m.edges],
    }


def machine_from_json(data: dict | str) -> NclMachine:
    if isinstance(data, str):
        data = json.loads(data)
    try:
        vertices = [(str(v["id"]), v["kind"]) for v in data["vertices"]]
        edges = [NclEdge(str(e["id"]), str(e["u"]), str(e["v"]), int(e["weight"])) for e in data["edges"]]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"ill-formed NCL machine: {exc}") from exc
    return NclMachine(tuple(vertices), tuple(edges))


def orientation_to_json(m: NclMachine, o: Sequence[str]) -> dict:
    return m.as_mapping(o)


def orientation_from_json(m: NclMachine, data: Mapping[str, str]) -> Orientation:
    return m.orientation({str(k): str(v) for k, v in data.items()})


# -- small machines used throughout the tests and scripts ---------------------


def triple_or_machine() -> NclMachine:
    """Two OR vertices joined by three parallel weight-2 edges."""
    return NclMachine(
        (("u", OR), ("v", OR)),
        tuple(NclEdge(f"e{i}", "u", "v", 2) for i in (1, 2, 3)),
    )


def two_and_machine() -> NclMachine:
    """Two AND vertices joined by one weight-2 and two weight-1 edges."""
    return NclMachine(
        (("u", AND), ("v", AND)),
        (NclEdge("a", "u", "v", 2), NclEdge("b", "u", "v", 1), NclEdge("c", "u", "v", 1)),
    )


def mixed_machine() -> NclMachine:
    """Four vertices: two AND joined to two OR, every vertex of degree three.

    AND vertices x, y share their weight-1 edges; each sends its weight-2
    edge to an OR vertex, and the OR vertices p, q are joined twice.
    """
    return NclMachine(
        (("x", AND), ("y", AND), ("p", OR), ("q", OR)),
        (
            NclEdge("xy1", "x", "y", 1),
            NclEdge("xy2", "x", "y", 1),
            NclEdge("xp", "x", "p", 2),
            NclEdge("yq", "y", "q", 2),
            NclEdge("pq1", "p", "q", 2),
            NclEdge("pq2", "p", "q", 2),
        ),
    )



def random_machine(rng: random.Random, max_edges: int = 12, tries: int = 1000) -> NclMachine:
    """A random AND/OR machine with at most ``max_edges`` edges.

    Weight-1 edges form disjoint cycles through the AND vertices; the other
    half-edges are paired uniformly into weight-2 edges, retrying on loops.
    """
    sizes = [
        (a, o)
        for a in [0] + list(range(2, max_edges + 1))
        for o in range(max_edges + 1)
        if a + o >= 2 and (a + 3 * o) % 2 == 0 and a + (a + 3 * o) // 2 <= max_edges
    ]
    if not sizes:
        raise ValueError(f"no AND/OR machine has at most {max_edges} edges")
    for _ in range(tries):
        n_and, n_or = rng.choice(sizes)
        ands = [f"a{i}" for i in range(n_and)]
        ors = [f"o{i}" for i in range(n_or)]
        order = ands[:]
        rng.shuffle(order)
        edges = []
        i = 0
        while i < len(order):
            rest = len(order) - i
            size = rest if rest <= 3 else rng.randint(2, rest - 2)
            cyc = order[i : i + size]
            edges += [(cyc[j], cyc[(j + 1) % size], 1) for j in range(size)]
            i += size
        half = ands + [v for v in ors for _ in range(3)]
        rng.shuffle(half)
        edges += [(a, b, 2) for a, b in zip(half[::2], half[1::2])]
        if all(a != b for a, b, _ in edges):
            return NclMachine(
                tuple((v, AND) for v in ands) + tuple((v, OR) for v in ors),
                tuple(NclEdge(f"e{i}", a, b, w) for i, (a, b, w) in enumerate(edges)),
            )
    raise RuntimeError("could not draw a loop-free machine")
