"""Exhaustive verification of gadget behaviour against an interface spec."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .egraph import Budget, ColoredMultigraph, StateIndex, coloring_array, neighbor_pairs
from .interface import ALPHABET, InterfaceSpec
from scipy import sparse
from scipy.sparse import csgraph


@dataclass
class VerificationReport:
    name: str
    census: int
    expected_census: int | None
    classes: dict[tuple[int, ...], int]
    alphabet_ok: bool
    alphabet_violation: tuple[int, ...] | None
    internal_ok: bool
    internal_counterexample: tuple[tuple[int, ...], tuple[int, ...]] | None
    quotient: list[tuple[tuple[int, ...], tuple[int, ...]]]
    external_ok: bool
    missing_nodes: list[tuple[int, ...]] = field(default_factory=list)
    extra_nodes: list[tuple[int, ...]] = field(default_factory=list)
    missing_edges: list[tuple[tuple[int, ...], tuple[int, ...]]] = field(default_factory=list)
    extra_edges: list[tuple[tuple[int, ...], tuple[int, ...]]] = field(default_factory=list)
    # census quoted for the original drawing; informational, never part of ``passed``
    reference_census: int | None = None

    @property
    def census_ok(self) -> bool:
        return self.expected_census is None or self.census == self.expected_census

    @property
    def passed(self) -> bool:
        return self.census_ok and self.alphabet_ok and self.internal_ok and self.external_ok

    def to_json(self) -> dict:
        def key(t):
            return "".join(map(str, t))

        return {
            "gadget": self.name,
            "passed": self.passed,
            "census": self.census,
            "expected_census": self.expected_census,
            "census_ok": self.census_ok,
            "reference_census": self.reference_census,
            "classes": {key(t): n for t, n in sorted(self.classes.items())},
            "boundary_alphabet_ok": self.alphabet_ok,
            "boundary_alphabet_violation": list(self.alphabet_violation) if self.alphabet_violation else None,
            "internal_connectedness_ok": self.internal_ok,
            "internal_counterexample": [list(x) for x in self.internal_counterexample]
            if self.internal_counterexample
            else None,
            "quotient_edges": [[key(a), key(b)] for a, b in self.quotient],
            "external_adjacency_ok": self.external_ok,
            "diff": {
                "missing_nodes": [key(t) for t in self.missing_nodes],
                "extra_nodes": [key(t) for t in self.extra_nodes],
                "missing_edges": [[key(a), key(b)] for a, b in self.missing_edges],
                "extra_edges": [[key(a), key(b)] for a, b in self.extra_edges],
            },
        }


@dataclass
class ClassPartition:
    graph: ColoredMultigraph
    boundary: tuple[int, ...]  # edge indices
    colorings: np.ndarray
    labels: np.ndarray  # class id per coloring
    keys: list[tuple[int, ...]]  # boundary tuple per class id

    def sizes(self) -> dict[tuple[int, ...], int]:
        counts = np.bincount(self.labels, minlength=len(self.keys))
        return {k: int(n) for k, n in zip(self.keys, counts)}

    def members(self, key: tuple[int, ...]) -> np.ndarray:
        return self.colorings[self.labels == self.keys.index(key)]


def boundary_classes(
    graph: ColoredMultigraph, boundary: list[str] | tuple[str, ...], budget: Budget | None = None,
    colorings: np.ndarray | None = None,
) -> ClassPartition:
    """Partition every proper coloring by the colors on the boundary edges."""
    bidx = tuple(graph.edge_index(b) for b in boundary)
    rows = coloring_array(graph, budget) if colorings is None else colorings
    if len(rows) == 0:
        return ClassPartition(graph, bidx, rows, np.zeros(0, dtype=np.int64), [])
    uniq, labels = np.unique(rows[:, list(bidx)], axis=0, return_inverse=True)
    keys = [tuple(int(c) for c in r) for r in uniq]
    return ClassPartition(graph, bidx, rows, labels.ravel(), keys)


def _components(n: int, pairs: np.ndarray) -> np.ndarray:
    adj = sparse.coo_matrix((np.ones(len(pairs), dtype=np.int8), (pairs[:, 0], pairs[:, 1])), shape=(n, n))
    return csgraph.connected_components(adj, directed=False)[1]


def check_boundary_alphabet(part: ClassPartition, alphabet=ALPHABET) -> tuple[bool, tuple[int, ...] | None]:
    for key in part.keys:
        if any(c not in alphabet for c in key):
            return False, key
    return True, None


def check_internal_connectedness(part: ClassPartition, index: StateIndex | None = None):
    """Each class must be connected using recolors of non-boundary edges only.

    Returns ``(ok, counterexample)`` where the counterexample is a pair of
    colorings with equal boundary colors lying in different components.
    """
    g, rows = part.graph, part.colorings
    inner = [i for i in range(len(g.edges)) if i not in part.boundary]
    pairs, _ = neighbor_pairs(g, rows, inner, index)
    comp = _components(len(rows), pairs)
    # pick the first coloring of each class and compare component labels
    for cid in range(len(part.keys)):
        members = np.nonzero(part.labels == cid)[0]
        labels = comp[members]
        bad = np.nonzero(labels != labels[0])[0]
        if len(bad):
            a, b = rows[members[0]], rows[members[bad[0]]]
            return False, (tuple(int(x) for x in a), tuple(int(x) for x in b))
    return True, None


def quotient_edges(part: ClassPartition, index: StateIndex | None = None):
    """Pairs of boundary assignments joined by a single boundary recolor."""
    g, rows = part.graph, part.colorings
    pairs, _ = neighbor_pairs(g, rows, list(part.boundary), index)
    if len(pairs) == 0:
        return set()
    cls = np.unique(np.sort(part.labels[pairs], axis=1), axis=0)
    return {tuple(sorted((part.keys[a], part.keys[b]))) for a, b in cls if a != b}


def check_external_adjacency(part: ClassPartition, spec: InterfaceSpec, index: StateIndex | None = None):
    nodes = set(part.keys)
    edges = quotient_edges(part, index)
    want_edges = {tuple(sorted(p)) for p in spec.adjacency}
    diff = {
        "missing_nodes": sorted(spec.allowed - nodes),
        "extra_nodes": sorted(nodes - spec.allowed),
        "missing_edges": sorted(want_edges - edges),
        "extra_edges": sorted(edges - want_edges),
    }
    ok = not any(diff.values())
    return ok, sorted(edges), diff


def verify_graph(
    name: str,
    graph: ColoredMultigraph,
    boundary,
    spec: InterfaceSpec,
    expected_census: int | None = None,
    budget: Budget | None = None,
) -> VerificationReport:
    part = boundary_classes(graph, boundary, budget)
    index = StateIndex(part.colorings) if len(part.colorings) else None
    alpha_ok, alpha_bad = check_boundary_alphabet(part)
    if len(part.colorings):
        int_ok, cex = check_internal_connectedness(part, index)
        ext_ok, quotient, diff = check_external_adjacency(part, spec, index)
    else:
        int_ok, cex = True, None
        ext_ok, quotient = False, []
        diff = {"missing_nodes": sorted(spec.allowed), "extra_nodes": [], "missing_edges": [], "extra_edges": []}
    return VerificationReport(
        name=name,
        census=len(part.colorings),
        expected_census=expected_census,
        classes=part.sizes(),
        alphabet_ok=alpha_ok,
        alphabet_violation=alpha_bad,
        internal_ok=int_ok,
        internal_counterexample=cex,
        quotient=quotient,
        external_ok=ext_ok,
        **diff,
    )


def verify(gadget, spec: InterfaceSpec | None = None, budget: Budget | None = None) -> VerificationReport:
    """Run every check on a loaded gadget against ``spec`` (default: its own kind)."""
    spec = spec if spec is not None else gadget.spec()
    report = verify_graph(gadget.label, gadget.graph, gadget.boundary, spec, gadget.checksum, budget)
    report.reference_census = gadget.reference_census
    return report


def quotient_dot(report: VerificationReport, name: str = "quotient") -> str:
    """DOT of the realized boundary classes joined by single boundary recolors."""
    def key(t):
        return "".join(map(str, t))

    lines = [f"graph {name} {{"]
    for t, n in sorted(report.classes.items()):
        lines.append(f'  "{key(t)}" [label="{key(t)} ({n})"];')
    for a, b in report.quotient:
        lines.append(f'  "{key(a)}" -- "{key(b)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
