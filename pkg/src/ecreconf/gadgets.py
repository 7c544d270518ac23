"""Link, AND and OR gadgets stored as data, plus the color-gadget star.

Gadget files live in ``gadget_data/<variant>_<name>.json``.  LIST files are
plain instances with explicit lists.  NONLIST files give the core edges
without lists and a ``color_gadgets`` table saying which colors (within
1..5) each vertex forbids; loading at a given k attaches one frozen star
per listed vertex which also forbids 6..k.
"""
from __future__ import annotations

import enum
import functools
import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Iterable, Mapping

from .egraph import Budget, ColoredMultigraph, Edge, GraphBuilder, count_colorings
from .interface import ALPHABET, InterfaceSpec, Kind, derive_interface

__all__ = [
    "Variant",
    "Gadget",
    "ColorGadget",
    "GadgetError",
    "GADGET_NAMES",
    "make_color_gadget",
    "expand_color_gadgets",
    "gadget_from_json",
    "gadget_to_json",
    "load_gadget",
    "derive_interface",
]

GADGET_NAMES = ("link", "and", "or")
LIST_COLORS = 4
BASE_COLORS = 5  # colors a NONLIST attachment may name; 6..k are always forbidden


class Variant(str, enum.Enum):
    LIST = "LIST"
    NONLIST = "NONLIST"

    @classmethod
    def parse(cls, s: "Variant | str") -> "Variant":
        return s if isinstance(s, cls) else cls(str(s).upper().replace("-", ""))

    @property
    def min_k(self) -> int:
        return LIST_COLORS if self is Variant.LIST else BASE_COLORS


class GadgetError(ValueError):
    """Gadget data missing, malformed, or failing its census checksum."""


@dataclass(frozen=True)
class ColorGadget:
    """A star whose k edges are frozen to the k colors."""

    center: str
    attach_at: str
    forbidden: tuple[int, ...]
    vertices: tuple[str, ...]  # center first, then fresh leaves
    edges: tuple[Edge, ...]
    colors: tuple[int, ...]  # frozen color of each edge

    def add_to(self, b: GraphBuilder) -> None:
        for v in self.vertices:
            b.vertex(v)
        for e, c in zip(self.edges, self.colors):
            b.edge(e.id, e.u, e.v, frozen=c)


def make_color_gadget(k: int, forbidden: Iterable[int], attach_at: str, prefix: str | None = None) -> ColorGadget:
    """Star with center ``prefix`` forbidding ``forbidden`` at ``attach_at``.

    The star edge frozen to each forbidden color runs to ``attach_at``
    (parallel edges when several colors are forbidden); the others end at
    fresh leaves, so the center always has degree k.
    """
    forbidden = tuple(sorted(set(forbidden)))
    if k < BASE_COLORS:
        raise ValueError(f"color gadgets need k >= {BASE_COLORS}, got {k}")
    if not forbidden:
        raise ValueError("a color gadget must forbid at least one color")
    if forbidden[0] < 1 or forbidden[-1] > k:
        raise ValueError(f"forbidden colors {forbidden} outside 1..{k}")
    if len(forbidden) == k:
        raise ValueError("forbidding all k colors leaves no color for edges at the attachment")
    center = prefix if prefix is not None else f"{attach_at}*"
    vertices, edges = [center], []
    for c in range(1, k + 1):
        if c in forbidden:
            end = attach_at
        else:
            end = f"{center}leaf{c}"
            vertices.append(end)
        edges.append(Edge(f"{center}{c}", center, end))
    return ColorGadget(center, attach_at, forbidden, tuple(vertices), tuple(edges), tuple(range(1, k + 1)))


def expand_color_gadgets(attachments: Mapping[str, Iterable[int]], k: int, prefix: str = "") -> list[ColorGadget]:
    """One star per attached vertex, forbidding its colors plus 6..k."""
    extra = range(BASE_COLORS + 1, k + 1)
    return [
        make_color_gadget(k, set(f) | set(extra), prefix + v, prefix=f"{prefix}{v}*")
        for v, f in attachments.items()
    ]


@dataclass(frozen=True, eq=False)
class Gadget:
    name: str
    kind: Kind
    variant: Variant
    k: int
    graph: ColoredMultigraph
    boundary: tuple[str, ...]
    ports: tuple[str, ...]  # endpoint of each boundary edge inside this gadget
    core: tuple[str, ...]  # edge ids other than color-gadget star edges
    attachments: Mapping[str, tuple[int, ...]] = field(default_factory=dict)
    checksum: int | None = None
    reference_census: int | None = None
    alphabet: tuple[int, ...] = ALPHABET

    def __post_init__(self):
        ids = set(self.graph.edge_ids)
        if len(set(self.boundary)) != len(self.boundary):
            raise GadgetError(f"{self.label}: boundary edges repeat")
        if missing := [b for b in self.boundary if b not in ids]:
            raise GadgetError(f"{self.label}: boundary edges {missing} not in graph")
        if len(self.ports) != len(self.boundary):
            raise GadgetError(f"{self.label}: one port per boundary edge is required")
        for b, p in zip(self.boundary, self.ports):
            e = self.graph.edges[self.graph.edge_index(b)]
            if p not in (e.u, e.v):
                raise GadgetError(f"{self.label}: port {p} is not an endpoint of {b}")
        if self.variant is Variant.LIST and max(c for l in self.graph.lists for c in l) > LIST_COLORS:
            raise GadgetError(f"{self.label}: LIST gadgets must use colors within 1..{LIST_COLORS}")
        if len(self.boundary) != self.spec().arity:
            raise GadgetError(f"{self.label}: {len(self.boundary)} boundary edges for a {self.kind.value} gadget")

    @property
    def label(self) -> str:
        return f"{self.variant.value.lower()}-{self.name}"

    def spec(self) -> InterfaceSpec:
        return derive_interface(self.kind)

    def outer(self, i: int) -> str:
        """Endpoint of boundary edge ``i`` that belongs to the neighbouring gadget."""
        e = self.graph.edges[self.graph.edge_index(self.boundary[i])]
        return e.v if e.u == self.ports[i] else e.u

    def internal_edges(self) -> list[str]:
        """Core edges other than the boundary."""
        b = set(self.boundary)
        return [eid for eid in self.core if eid not in b]

    def core_list(self, eid: str) -> tuple[int, ...]:
        return self.graph.list_of(eid)


def _build_graph(data: Mapping, variant: Variant, k: int):
    b = GraphBuilder(k)
    for v in data["vertices"]:
        b.vertex(str(v))
    core = []
    for rec in data["edges"]:
        lst = rec.get("list")
        if variant is Variant.NONLIST and lst is not None:
            raise GadgetError("NONLIST gadget edges carry no lists")
        b.edge(str(rec["id"]), str(rec["u"]), str(rec["v"]), lst)
        core.append(str(rec["id"]))
    attachments = {}
    if variant is Variant.NONLIST:
        attachments = {str(v): tuple(sorted(f)) for v, f in data.get("color_gadgets", {}).items()}
        for v, f in attachments.items():
            if v not in b._vset:
                raise GadgetError(f"color gadget attached at unknown vertex {v}")
            if not f or min(f) < 1 or max(f) > BASE_COLORS:
                raise GadgetError(f"attachment at {v} must forbid colors within 1..{BASE_COLORS}")
        for cg in expand_color_gadgets(attachments, k):
            cg.add_to(b)
    return b.build(), tuple(core), attachments


def gadget_from_json(data: Mapping, k: int | None = None, check_census: bool = True) -> Gadget:
    try:
        variant = Variant.parse(data["variant"])
        kind = Kind(data["interface"])
        k = variant.min_k if k is None else int(k)
        if k < variant.min_k:
            raise GadgetError(f"{variant.value} gadgets need k >= {variant.min_k}, got {k}")
        graph, core, attachments = _build_graph(data, variant, k)
        boundary = tuple(data["boundary"])
        ports = tuple(data["ports"][b] for b in boundary)
        g = Gadget(
            name=str(data.get("name", kind.value.lower())),
            kind=kind,
            variant=variant,
            k=k,
            graph=graph,
            boundary=boundary,
            ports=ports,
            core=core,
            attachments=attachments,
            checksum=data.get("checksum"),
            reference_census=data.get("reference_census"),
        )
    except GadgetError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise GadgetError(f"ill-formed gadget data: {exc}") from exc
    if check_census and g.checksum is not None:
        n = count_colorings(g.graph, Budget(max_states=max(10**6, 10 * g.checksum)))
        if n != g.checksum:
            raise GadgetError(f"{g.label}: census {n} does not match checksum {g.checksum}")
    return g


def gadget_to_json(g: Gadget) -> dict:
    """Inverse of :func:`gadget_from_json` (star edges are folded back into ``color_gadgets``)."""
    core = set(g.core)
    used = {x for e in g.graph.edges if e.id in core for x in (e.u, e.v)}
    edges = []
    for e, lst in zip(g.graph.edges, g.graph.lists):
        if e.id not in core:
            continue
        rec = {"id": e.id, "u": e.u, "v": e.v}
        if g.variant is Variant.LIST:
            rec["list"] = list(lst)
        edges.append(rec)
    out = {
        "name": g.name,
        "interface": g.kind.value,
        "variant": g.variant.value,
        "k": g.variant.min_k,
        "vertices": [v for v in g.graph.vertices if v in used],
        "edges": edges,
        "boundary": list(g.boundary),
        "ports": dict(zip(g.boundary, g.ports)),
        "checksum": g.checksum,
        "reference_census": g.reference_census,
    }
    if g.variant is Variant.NONLIST:
        out["color_gadgets"] = {v: list(f) for v, f in g.attachments.items()}
    return out


def gadget_path(name: str, variant: Variant | str):
    variant = Variant.parse(variant)
    return resources.files("ecreconf") / "gadget_data" / f"{variant.value.lower()}_{name.lower()}.json"


@functools.lru_cache(maxsize=None)
def _load_cached(name: str, variant: Variant, k: int) -> Gadget:
    path = gadget_path(name, variant)
    try:
        data = json.loads(path.read_text())
    except FileNotFoundError:
        raise GadgetError(f"no gadget data for {variant.value} {name}") from None
    except json.JSONDecodeError as exc:
        raise GadgetError(f"{path}: {exc}") from None
    return gadget_from_json(data, k)


def load_gadget(name: str, variant: Variant | str = Variant.LIST, k: int | None = None) -> Gadget:
    variant = Variant.parse(variant)
    if name.lower() not in GADGET_NAMES:
        raise GadgetError(f"unknown gadget {name!r}; expected one of {GADGET_NAMES}")
    k = variant.min_k if k is None else int(k)
    if k < variant.min_k:
        raise GadgetError(f"{variant.value} gadgets need k >= {variant.min_k}, got {k}")
    return _load_cached(name.lower(), variant, k)
