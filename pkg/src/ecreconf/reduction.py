"""Compile NCL machines into edge-coloring reconfiguration instances.

Every NCL edge ``e = uv`` becomes the path ``u u' v' v``: the connector
edges ``e@u`` and ``e@v`` plus a link edge.  The link edge is replaced by
a link gadget and the star of connectors around each NCL vertex by an AND
or OR gadget, glued along the connectors.  A connector colored 1 points
into its NCL vertex and one colored 4 points away.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .egraph import (
    Budget,
    Coloring,
    ColoredMultigraph,
    Edge,
    GraphBuilder,
    Reach,
    coloring_array,
    is_proper,
    is_valid_witness,
    reachable,
)
from .gadgets import Gadget, GadgetError, Variant, expand_color_gadgets, load_gadget
from .interface import ALPHABET, IN, OUT
from .ncl import (
    AND,
    NEUTRAL,
    NclMachine,
    Orientation,
    all_configurations as all_configs,
    as_orientation,
    flipped_edge,
    is_valid_configuration,
    is_valid_ncl_witness,
    machine_from_json,
    machine_to_json,
    validate_machine,
)
from .verify import verify

__all__ = [
    "Skeleton",
    "Placement",
    "ReductionArtifact",
    "ProjectionError",
    "EmbeddingError",
    "LiftError",
    "subdivide",
    "connector_id",
    "compile",
    "embed_configuration",
    "project_coloring",
    "lift_witness",
    "project_witness",
    "size_report",
    "placement_to_json",
    "artifact_from_placement",
    "soundness_walk",
]


class ProjectionError(ValueError):
    """A coloring whose connectors do not read as a valid NCL configuration."""


class EmbeddingError(ValueError):
    pass


class LiftError(RuntimeError):
    """A local search failed to realize an NCL flip."""


def connector_id(edge: str, vertex: str) -> str:
    return f"{edge}@{vertex}"


# -- skeleton ------------------------------------------------------------------


@dataclass(frozen=True)
class Skeleton:
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    link_edges: Mapping[str, str]  # NCL edge -> link edge id
    connectors: Mapping[tuple[str, str], str]  # (NCL edge, NCL vertex) -> connector id

    def role(self, eid: str) -> str:
        return "link" if eid in set(self.link_edges.values()) else "connector"


def _require_valid(m: NclMachine) -> None:
    problems = validate_machine(m)
    if problems:
        raise ValueError("invalid NCL machine: " + "; ".join(problems))


def subdivide(m: NclMachine) -> Skeleton:
    """Replace every NCL edge uv by the path u u' v' v."""
    _require_valid(m)
    vertices = list(m.vertex_ids)
    edges, links, conns = [], {}, {}
    for e in m.edges:
        pu, pv = f"{connector_id(e.id, e.u)}'", f"{connector_id(e.id, e.v)}'"
        vertices += [pu, pv]
        for end, port in ((e.u, pu), (e.v, pv)):
            cid = connector_id(e.id, end)
            edges.append(Edge(cid, end, port))
            conns[e.id, end] = cid
        edges.append(Edge(e.id, pu, pv))
        links[e.id] = e.id
    return Skeleton(tuple(vertices), tuple(edges), links, conns)


# -- compiled artifact ----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Placement:
    """One gadget copy inside a compiled instance."""

    name: str  # NCL vertex or edge it stands for
    prefix: str
    gadget: Gadget
    connectors: tuple[str, ...]  # compiled connector ids, in gadget boundary order
    ncl_edges: tuple[str, ...]  # NCL edge behind each connector
    internal: tuple[str, ...]  # compiled ids of the gadget's non-boundary core edges
    stars: tuple[str, ...]  # compiled ids of its color-gadget star edges

    def compiled_id(self, gadget_edge: str) -> str:
        b = self.gadget.boundary
        return self.connectors[b.index(gadget_edge)] if gadget_edge in b else self.prefix + gadget_edge


@dataclass(frozen=True, eq=False)
class ReductionArtifact:
    machine: NclMachine
    variant: Variant
    k: int
    graph: ColoredMultigraph
    links: Mapping[str, Placement]  # NCL edge -> link gadget
    vertices: Mapping[str, Placement]  # NCL vertex -> AND/OR gadget

    def connector(self, edge: str, vertex: str) -> str:
        return connector_id(edge, vertex)

    def placements(self) -> list[Placement]:
        return list(self.vertices.values()) + list(self.links.values())

    def connector_columns(self) -> tuple[np.ndarray, np.ndarray]:
        """Column indices of the u-side and v-side connector of every NCL edge."""
        u = [self.graph.edge_index(connector_id(e.id, e.u)) for e in self.machine.edges]
        v = [self.graph.edge_index(connector_id(e.id, e.v)) for e in self.machine.edges]
        return np.asarray(u), np.asarray(v)


def _vertex_connector_order(m: NclMachine, v: str) -> list[int]:
    """AND: the two weight-1 edges (machine order) then the weight-2 edge; OR: machine order."""
    inc = m.incident(v)
    if m.kind(v) == AND:
        return [i for i in inc if m.edges[i].weight == 1] + [i for i in inc if m.edges[i].weight == 2]
    return inc


@functools.lru_cache(maxsize=None)
def _verified(name: str, variant: Variant, k: int) -> Gadget:
    g = load_gadget(name, variant, k)
    report = verify(g)
    if not report.passed:
        raise GadgetError(f"{g.label} fails verification: {report.to_json()}")
    return g


def _outer_vertices(g: Gadget) -> set[str]:
    outer = {g.outer(i) for i in range(len(g.boundary))}
    core = set(g.core)
    for x in outer:
        deg = sum(1 for i in g.graph.incident(x) if g.graph.edges[i].id in core)
        if deg != 1:
            raise GadgetError(f"{g.label}: outer endpoint {x} must meet only its boundary edge")
    return outer


def _place(b: GraphBuilder, g: Gadget, name: str, prefix: str, connectors, ncl_edges) -> Placement:
    outer = _outer_vertices(g)
    internal = []
    for eid in g.internal_edges():
        e = g.graph.edges[g.graph.edge_index(eid)]
        lst = g.graph.list_of(eid) if g.variant is Variant.LIST else None
        internal.append(b.edge(prefix + eid, prefix + e.u, prefix + e.v, lst))
    for p in g.ports:
        b.vertex(prefix + p)
    stars = []
    inner_att = {v: f for v, f in g.attachments.items() if v not in outer}
    for cg in expand_color_gadgets(inner_att, b.k, prefix):
        cg.add_to(b)
        stars += [e.id for e in cg.edges]
    return Placement(name, prefix, g, tuple(connectors), tuple(ncl_edges), tuple(internal), tuple(stars))


def compile(m: NclMachine, variant: Variant | str = Variant.LIST, k: int | None = None) -> ReductionArtifact:
    """Replace link edges and vertex stars of the subdivided machine by gadgets."""
    _require_valid(m)
    variant = Variant.parse(variant)
    k = variant.min_k if k is None else int(k)
    if k < variant.min_k:
        raise ValueError(f"{variant.value} reduction needs k >= {variant.min_k}, got {k}")
    gadgets = {name: _verified(name, variant, k) for name in ("link", "and", "or")}
    b = GraphBuilder(k)

    vertices = {}
    for v in m.vertex_ids:
        g = gadgets["and" if m.kind(v) == AND else "or"]
        order = _vertex_connector_order(m, v)
        ncl_edges = [m.edges[i].id for i in order]
        vertices[v] = _place(b, g, v, f"{v}/", [connector_id(e, v) for e in ncl_edges], ncl_edges)

    links = {}
    for e in m.edges:
        g = gadgets["link"]
        links[e.id] = _place(b, g, e.id, f"{e.id}/", [connector_id(e.id, e.u), connector_id(e.id, e.v)], [e.id, e.id])

    for e in m.edges:
        link = links[e.id]
        for i, end in enumerate((e.u, e.v)):
            cid = connector_id(e.id, end)
            vp = vertices[end]
            j = vp.connectors.index(cid)
            lst = None
            if variant is Variant.LIST:
                lst = vp.gadget.graph.list_of(vp.gadget.boundary[j])
                other = link.gadget.graph.list_of(link.gadget.boundary[i])
                if lst != other:
                    raise GadgetError(f"connector {cid}: lists {lst} and {other} disagree")
            b.edge(cid, vp.prefix + vp.gadget.ports[j], link.prefix + link.gadget.ports[i], lst)

    return ReductionArtifact(m, variant, k, b.build(), links, vertices)


# -- embedding and projection --------------------------------------------------------


@functools.lru_cache(maxsize=None)
def _class_representatives(g: Gadget) -> dict[tuple[int, ...], dict[str, int]]:
    """Lexicographically least coloring of each boundary class (gadget edge order)."""
    rows = coloring_array(g.graph)
    cols = [g.graph.edge_index(x) for x in g.boundary]
    reps: dict[tuple[int, ...], dict[str, int]] = {}
    for r in rows:  # rows are already sorted
        key = tuple(int(c) for c in r[cols])
        if key not in reps:
            reps[key] = g.graph.as_mapping(r)
    return reps


def _assemble(art: ReductionArtifact, conn: Mapping[str, int]) -> Coloring:
    """Full coloring from connector colors, each gadget at its class representative."""
    color = dict(art.graph.frozen)
    color.update(conn)
    for p in art.placements():
        key = tuple(conn[c] for c in p.connectors)
        reps = _class_representatives(p.gadget)
        if key not in reps:
            raise EmbeddingError(f"{p.gadget.label} at {p.name} has no coloring with boundary {key}")
        rep = reps[key]
        for eid in p.gadget.internal_edges():
            color[p.prefix + eid] = rep[eid]
    return art.graph.coloring(color)


def _connector_colors(art: ReductionArtifact, o: Sequence[str]) -> dict[str, int]:
    conn = {}
    for e, head in zip(art.machine.edges, o):
        for end in (e.u, e.v):
            conn[connector_id(e.id, end)] = IN if head == end else OUT
    return conn


def embed_configuration(art: ReductionArtifact, c) -> Coloring:
    """Canonical coloring of a valid strict configuration."""
    o = as_orientation(art.machine, c)
    if NEUTRAL in o or not is_valid_configuration(art.machine, o):
        raise EmbeddingError("embedding needs a valid strict configuration")
    return _assemble(art, _connector_colors(art, o))


def _project_unchecked(art: ReductionArtifact, f: Sequence[int]) -> Orientation:
    out = []
    for e in art.machine.edges:
        cu = f[art.graph.edge_index(connector_id(e.id, e.u))]
        cv = f[art.graph.edge_index(connector_id(e.id, e.v))]
        if cu not in ALPHABET or cv not in ALPHABET:
            raise ProjectionError(f"edge {e.id}: connector colors ({cu}, {cv}) leave {{1, 4}}")
        if cu == IN and cv == IN:
            raise ProjectionError(f"edge {e.id}: both connectors point inward")
        out.append(e.u if cu == IN else e.v if cv == IN else NEUTRAL)
    o = tuple(out)
    if not is_valid_configuration(art.machine, o):
        raise ProjectionError(f"projection {art.machine.as_mapping(o)} violates an in-weight constraint")
    return o


def project_coloring(art: ReductionArtifact, f: Sequence[int]) -> Orientation:
    """Read the (possibly NEUTRAL-containing) NCL configuration off the connectors."""
    if not is_proper(art.graph, f):
        raise ValueError("project_coloring needs a proper coloring")
    return _project_unchecked(art, f)


# -- witness translation --------------------------------------------------------


def _local_search(art, f, target, movable, budget, what):
    res = reachable(art.graph, f, target, budget, movable=movable)
    if res.status is not Reach.REACHABLE:
        raise LiftError(f"{what}: local search ended {res.status.value} after {res.visited} states")
    return res.witness


def lift_witness(art: ReductionArtifact, witness: Sequence, budget: Budget | None = None) -> list[Coloring]:
    """Coloring sequence realizing an NCL witness flip by flip.

    A flip of ``e`` from head ``h`` to head ``t`` runs two local searches:
    first connector ``e@h`` turns to 4 (the neutral state), touching only
    the gadget at ``h``, the link gadget and that connector; then ``e@t``
    turns to 1 in the same way on the ``t`` side.
    """
    m = art.machine
    ws = [as_orientation(m, o) for o in witness]
    if not ws:
        raise ValueError("empty NCL witness")
    if not is_valid_ncl_witness(m, ws):
        raise ValueError("not a valid strict NCL witness")
    f = embed_configuration(art, ws[0])
    out = [f]
    conn = _connector_colors(art, ws[0])
    for a, b in zip(ws, ws[1:]):
        i = flipped_edge(m, a, b)
        e = m.edges[i]
        link = art.links[e.id]
        for end, color in ((a[i], OUT), (b[i], IN)):
            cid = connector_id(e.id, end)
            conn[cid] = color
            target = _assemble(art, conn)
            vp = art.vertices[end]
            movable = [*vp.internal, *link.internal, cid]
            path = _local_search(art, f, target, movable, budget, f"flip of {e.id} at {end}")
            out += path[1:]
            f = target
    return out


def project_witness(art: ReductionArtifact, colorings: Sequence[Sequence[int]]) -> list[Orientation]:
    """Strict NCL witness read off a coloring sequence.

    NEUTRAL readings keep the edge's last strict direction; consecutive
    repeats are dropped.
    """
    seq = [tuple(int(c) for c in f) for f in colorings]
    if not seq:
        raise ValueError("empty coloring witness")
    if not is_valid_witness(art.graph, seq):
        raise ValueError("not a proper single-recolor sequence")
    proj = [_project_unchecked(art, f) for f in seq]
    if NEUTRAL in proj[0] or NEUTRAL in proj[-1]:
        raise ValueError("coloring witness must start and end at strict configurations")
    cur = list(proj[0])
    out = [tuple(cur)]
    for p in proj[1:]:
        changed = False
        for i, h in enumerate(p):
            if h != NEUTRAL and h != cur[i]:
                cur[i] = h
                changed = True
        if changed:
            out.append(tuple(cur))
    if not is_valid_ncl_witness(art.machine, out):
        raise ProjectionError("projected sequence is not a valid NCL witness")
    return out


# -- reports and serialization ------------------------------------------------------


def size_report(art: ReductionArtifact) -> dict:
    g = art.graph
    top = g.max_degree()
    centers = {p.prefix + v + "*" for p in art.placements() for v in p.gadget.attachments} & set(g.vertices)
    per_gadget: dict[str, dict] = {}
    for p in art.placements():
        rec = per_gadget.setdefault(p.gadget.name, {"copies": 0})
        rec["copies"] += 1
        rec["internal_edges_per_copy"] = len(p.internal)
        rec["star_edges_per_copy"] = len(p.stars)
    return {
        "variant": art.variant.value,
        "k": art.k,
        "vertices": len(g.vertices),
        "edges": len(g.edges),
        "frozen_edges": len(g.frozen),
        "connectors": 2 * len(art.machine.edges),
        "max_degree": top,
        "color_gadget_centers": len(centers),
        "centers_at_max_degree": sum(g.degree(c) == top for c in centers),
        "other_vertices_at_max_degree": sum(g.degree(v) == top for v in g.vertices if v not in centers),
        "per_gadget": per_gadget,
    }


def placement_to_json(art: ReductionArtifact) -> dict:
    def rec(p: Placement):
        return {
            "gadget": p.gadget.name,
            "prefix": p.prefix,
            "connectors": list(p.connectors),
            "ncl_edges": list(p.ncl_edges),
            "internal": list(p.internal),
            "stars": list(p.stars),
        }

    return {
        "variant": art.variant.value,
        "k": art.k,
        "machine": machine_to_json(art.machine),
        "vertices": {v: rec(p) for v, p in art.vertices.items()},
        "links": {e: rec(p) for e, p in art.links.items()},
    }


def artifact_from_placement(data: Mapping) -> ReductionArtifact:
    """Rebuild an artifact from its placement map (compilation is deterministic)."""
    try:
        m = machine_from_json(data["machine"])
        return compile(m, data["variant"], data["k"])
    except KeyError as exc:
        raise ValueError(f"placement map lacks {exc}") from None


def soundness_walk(art: ReductionArtifact, steps: int, seed: int = 0, start=None) -> dict:
    """Random walk from an embedded configuration, projecting every state.

    The projection depends only on connector colors, so it is re-read after
    each connector move; any ``(1,1)`` pair, off-alphabet color or invalid
    configuration raises :class:`ProjectionError`.
    """
    from .egraph import random_walk

    m = art.machine
    start = start if start is not None else sorted(all_configs(m))[0]
    f0 = embed_configuration(art, start)
    cu, cv = art.connector_columns()
    owner = {int(c): i for i, c in enumerate(cu)} | {int(c): i for i, c in enumerate(cv)}
    seen = {as_orientation(m, start)}
    moves = connector_moves = neutral_states = 0
    for i, _, f in random_walk(art.graph, f0, steps, np.random.default_rng(seed)):
        moves += 1
        if i not in owner:
            continue
        connector_moves += 1
        o = _project_unchecked(art, f)
        neutral_states += NEUTRAL in o
        seen.add(o)
    return {
        "moves": moves,
        "connector_moves": connector_moves,
        "neutral_states": neutral_states,
        "distinct_projections": len(seen),
    }
