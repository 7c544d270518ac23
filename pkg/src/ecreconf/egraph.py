"""Colored multigraphs, proper (list) edge-colorings and their reconfiguration.

A coloring is stored as a tuple of colors aligned with ``graph.edges``.  Bulk
operations (enumeration, reconfiguration graphs, BFS) work on ``uint8``
arrays with one row per coloring, in the same column order.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np
from scipy import sparse
from scipy.sparse import csgraph

Coloring = tuple[int, ...]

DEFAULT_MAX_STATES = 10**8


class BudgetExceeded(RuntimeError):
    """Raised when an exhaustive search would visit more states than allowed."""

    def __init__(self, visited: int, budget: "Budget"):
        super().__init__(f"state budget exhausted after {visited} states ({budget})")
        self.visited = visited
        self.budget = budget


@dataclass(frozen=True)
class Budget:
    max_states: int = DEFAULT_MAX_STATES
    max_bytes: int | None = None

    def check(self, states: int, width: int) -> None:
        if states > self.max_states:
            raise BudgetExceeded(states, self)
        # rough per-state footprint: the row itself plus hash/parent bookkeeping
        if self.max_bytes is not None and states * (width + 120) > self.max_bytes:
            raise BudgetExceeded(states, self)


@dataclass(frozen=True)
class Edge:
    id: str
    u: str
    v: str


@dataclass(frozen=True, eq=False)
class ColoredMultigraph:
    """Multigraph whose edges carry color lists drawn from ``1..k``.

    Parallel edges are allowed and conflict with each other; loops are not.
    ``frozen`` maps an edge id to a color, and such an edge's list must be
    exactly that color.
    """

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    lists: tuple[tuple[int, ...], ...]
    k: int
    frozen: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        object.__setattr__(self, "lists", tuple(tuple(sorted(set(l))) for l in self.lists))
        object.__setattr__(self, "frozen", dict(self.frozen))
        if len(self.lists) != len(self.edges):
            raise ValueError("one color list per edge is required")
        vset = set(self.vertices)
        if len(vset) != len(self.vertices):
            raise ValueError("duplicate vertex identifiers")
        ids = [e.id for e in self.edges]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate edge identifiers")
        for e, lst in zip(self.edges, self.lists):
            if e.u == e.v:
                raise ValueError(f"edge {e.id} is a loop")
            if e.u not in vset or e.v not in vset:
                raise ValueError(f"edge {e.id} has an unknown endpoint")
            if not lst or lst[0] < 1 or lst[-1] > self.k:
                raise ValueError(f"edge {e.id} has list {lst} outside 1..{self.k}")
        for eid, c in self.frozen.items():
            if eid not in ids:
                raise ValueError(f"frozen edge {eid} does not exist")
            if self.lists[ids.index(eid)] != (c,):
                raise ValueError(f"frozen edge {eid} must have list [{c}]")
        index = {eid: i for i, eid in enumerate(ids)}
        incident: dict[str, list[int]] = {v: [] for v in self.vertices}
        for i, e in enumerate(self.edges):
            incident[e.u].append(i)
            incident[e.v].append(i)
        adjacent = []
        for i, e in enumerate(self.edges):
            nb = set(incident[e.u]) | set(incident[e.v])
            nb.discard(i)
            adjacent.append(tuple(sorted(nb)))
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_incident", {v: tuple(l) for v, l in incident.items()})
        object.__setattr__(self, "_adjacent", tuple(adjacent))
        # padded adjacency for vectorized move generation; index len(edges) is a blank column
        width = max((len(a) for a in adjacent), default=0)
        table = np.full((len(adjacent), max(width, 1)), len(adjacent), dtype=np.int64)
        for i, a in enumerate(adjacent):
            table[i, : len(a)] = a
        object.__setattr__(self, "_adj_table", table)

    # -- structure -----------------------------------------------------------

    @property
    def edge_ids(self) -> list[str]:
        return [e.id for e in self.edges]

    def edge_index(self, eid: str) -> int:
        try:
            return self._index[eid]
        except KeyError:
            raise KeyError(f"unknown edge {eid!r}") from None

    def incident(self, v: str) -> tuple[int, ...]:
        return self._incident[v]

    def adjacent(self, i: int) -> tuple[int, ...]:
        """Indices of edges sharing at least one endpoint with edge ``i``."""
        return self._adjacent[i]

    def degree(self, v: str) -> int:
        return len(self._incident[v])

    def max_degree(self) -> int:
        return max((len(l) for l in self._incident.values()), default=0)

    def list_of(self, eid: str) -> tuple[int, ...]:
        return self.lists[self.edge_index(eid)]

    def with_k(self, k: int) -> "ColoredMultigraph":
        return ColoredMultigraph(self.vertices, self.edges, self.lists, k, self.frozen)

    # -- coloring conversion ---------------------------------------------------

    def coloring(self, mapping: Mapping[str, int]) -> Coloring:
        missing = [eid for eid in self.edge_ids if eid not in mapping]
        if missing:
            raise ValueError(f"coloring misses edges {missing}")
        extra = set(mapping) - set(self._index)
        if extra:
            raise KeyError(f"coloring names unknown edges {sorted(extra)}")
        return tuple(int(mapping[eid]) for eid in self.edge_ids)

    def as_mapping(self, f: Sequence[int]) -> dict[str, int]:
        return {eid: int(c) for eid, c in zip(self.edge_ids, f)}


def _check_total(g: ColoredMultigraph, f: Sequence[int]) -> None:
    if len(f) != len(g.edges):
        raise ValueError(f"coloring has {len(f)} entries, graph has {len(g.edges)} edges")


def is_proper(g: ColoredMultigraph, f: Sequence[int]) -> bool:
    _check_total(g, f)
    for c, lst in zip(f, g.lists):
        if c not in lst:
            return False
    for v in g.vertices:
        seen = [f[i] for i in g.incident(v)]
        if len(seen) != len(set(seen)):
            return False
    return True


def _require_proper(g: ColoredMultigraph, f: Sequence[int], what: str = "coloring") -> None:
    if not is_proper(g, f):
        raise ValueError(f"{what} is not a proper list edge-coloring")


def _movable_indices(g: ColoredMultigraph, movable: Iterable[str] | None) -> list[int]:
    if movable is None:
        return list(range(len(g.edges)))
    return sorted(g.edge_index(eid) for eid in movable)


def recolor_options(g: ColoredMultigraph, f: Sequence[int], i: int) -> list[int]:
    """Colors edge ``i`` may switch to while keeping ``f`` proper."""
    used = {f[j] for j in g.adjacent(i)}
    return [c for c in g.lists[i] if c != f[i] and c not in used]


def coloring_neighbors(
    g: ColoredMultigraph, f: Sequence[int], movable: Iterable[str] | None = None
) -> set[Coloring]:
    """All proper colorings differing from ``f`` on exactly one (movable) edge."""
    _require_proper(g, f)
    f = tuple(f)
    out = set()
    for i in _movable_indices(g, movable):
        for c in recolor_options(g, f, i):
            out.add(f[:i] + (c,) + f[i + 1 :])
    return out


def iter_colorings(g: ColoredMultigraph, order: Sequence[int] | None = None) -> Iterator[Coloring]:
    """Backtracking enumeration of proper colorings.

    Edges are assigned in ``order`` (default: graph order) with colors
    ascending, so the default stream is lexicographic.
    """
    m = len(g.edges)
    order = list(range(m)) if order is None else list(order)
    if sorted(order) != list(range(m)):
        raise ValueError("order must be a permutation of the edge indices")
    pos = {e: p for p, e in enumerate(order)}
    earlier = [[j for j in g.adjacent(e) if pos[j] < pos[e]] for e in order]
    f = [0] * m

    def rec(p: int) -> Iterator[Coloring]:
        if p == m:
            yield tuple(f)
            return
        e = order[p]
        used = {f[j] for j in earlier[p]}
        for c in g.lists[e]:
            if c not in used:
                f[e] = c
                yield from rec(p + 1)
        f[e] = 0

    yield from rec(0)


def _search_order(g: ColoredMultigraph) -> list[int]:
    """Most-constrained-first edge order: short lists, then most placed neighbours."""
    m = len(g.edges)
    placed = np.zeros(m, dtype=bool)
    links = np.zeros(m, dtype=np.int64)
    order = []
    for _ in range(m):
        free = np.nonzero(~placed)[0]
        best = min(free, key=lambda i: (len(g.lists[i]) > 1, -links[i], len(g.lists[i]), i))
        order.append(int(best))
        placed[best] = True
        for j in g.adjacent(best):
            links[j] += 1
    return order


def coloring_array(
    g: ColoredMultigraph, budget: Budget | None = None, order: Sequence[int] | None = None
) -> np.ndarray:
    """All proper colorings as an ``(N, |E|)`` uint8 array.

    With an explicit ``order`` rows come in the same order as
    :func:`iter_colorings`.  By default a pruning-friendly order is used
    internally and the rows are returned in lexicographic order of the
    graph's own edge order.
    """
    budget = budget or Budget()
    m = len(g.edges)
    resort = order is None
    order = _search_order(g) if order is None else list(order)
    pos = {e: p for p, e in enumerate(order)}
    rows = np.zeros((1, m), dtype=np.uint8)
    for p, e in enumerate(order):
        lst = np.asarray(g.lists[e], dtype=np.uint8)
        earlier = [j for j in g.adjacent(e) if pos[j] < p]
        budget.check(len(rows) * len(lst), m)
        cand = np.repeat(rows, len(lst), axis=0)
        cand[:, e] = np.tile(lst, len(rows))
        ok = np.ones(len(cand), dtype=bool)
        for j in earlier:
            ok &= cand[:, j] != cand[:, e]
        rows = cand[ok]
        budget.check(len(rows), m)
    if resort and m and len(rows) > 1:
        rows = rows[np.lexsort(rows.T[::-1])]
    return rows


def enumerate_colorings(g: ColoredMultigraph, budget: Budget | None = None) -> tuple[np.ndarray, int]:
    """Exhaustive census: the coloring array and its row count."""
    rows = coloring_array(g, budget)
    return rows, len(rows)


def count_colorings(g: ColoredMultigraph, budget: Budget | None = None) -> int:
    return len(coloring_array(g, budget))


# -- hashing of packed colorings -------------------------------------------

_MASK = np.uint64(0xFFFFFFFFFFFFFFFF)


def _mix64(x: np.ndarray) -> np.ndarray:
    # splitmix64 finalizer
    x = x ^ (x >> np.uint64(30))
    x = x * np.uint64(0xBF58476D1CE4E5B9)
    x = x ^ (x >> np.uint64(27))
    x = x * np.uint64(0x94D049BB133111EB)
    return x ^ (x >> np.uint64(31))


def _column_keys(width: int) -> np.ndarray:
    rng = np.random.default_rng(0x5EED)
    return rng.integers(1, 2**63, size=width, dtype=np.uint64) | np.uint64(1)


def hash_rows(rows: np.ndarray, keys: np.ndarray | None = None) -> np.ndarray:
    """64-bit hash of each packed coloring row (XOR of mixed per-cell values)."""
    if keys is None:
        keys = _column_keys(rows.shape[1])
    out = np.empty(len(rows), dtype=np.uint64)
    step = max(1, (1 << 22) // max(1, rows.shape[1]))
    with np.errstate(over="ignore"):
        for s in range(0, len(rows), step):
            z = _mix64(rows[s : s + step].astype(np.uint64) * keys)
            out[s : s + step] = _mix64(np.bitwise_xor.reduce(z, axis=1))
    return out


class StateIndex:
    """Lookup from coloring rows to their position in a fixed array.

    Rows are found by hash; every hit is confirmed by comparing the full
    row, so hash collisions cost time but never produce wrong answers.
    """

    def __init__(self, rows: np.ndarray):
        self.rows = rows
        self.keys = _column_keys(rows.shape[1])
        h = hash_rows(rows, self.keys)
        self.order = np.argsort(h, kind="stable")
        self.sorted_hashes = h[self.order]

    def lookup(self, cand: np.ndarray) -> np.ndarray:
        """Index of each candidate row, or -1 when absent."""
        if len(cand) == 0:
            return np.zeros(0, dtype=np.int64)
        h = hash_rows(cand, self.keys)
        pos = np.searchsorted(self.sorted_hashes, h)
        pos_c = np.minimum(pos, len(self.sorted_hashes) - 1)
        hit = self.sorted_hashes[pos_c] == h
        idx = np.where(hit, self.order[pos_c], -1)
        good = hit.copy()
        good[hit] = np.all(self.rows[idx[hit]] == cand[hit], axis=1)
        # colliding hashes: scan the run of equal hashes
        for t in np.nonzero(hit & ~good)[0]:
            idx[t] = -1
            p = pos_c[t]
            while p < len(self.sorted_hashes) and self.sorted_hashes[p] == h[t]:
                r = self.order[p]
                if np.array_equal(self.rows[r], cand[t]):
                    idx[t] = r
                    break
                p += 1
        return idx


def _moves(g: ColoredMultigraph, rows: np.ndarray, movable: Sequence[int]):
    """Yield (row_indices, edges, color, candidate_rows) covering every legal recolor.

    Work is batched per target color over all movable edges at once.
    """
    mov = np.asarray([e for e in movable if len(g.lists[e]) > 1], dtype=np.int64)
    if len(mov) == 0 or len(rows) == 0:
        return
    adj = g._adj_table[mov]
    allowed = {c: np.asarray([c in g.lists[e] for e in mov]) for c in range(1, g.k + 1)}
    ext = np.concatenate([rows, np.zeros((len(rows), 1), dtype=rows.dtype)], axis=1)
    chunk = max(1, (1 << 24) // (len(mov) * adj.shape[1]))
    for start in range(0, len(rows), chunk):
        blk = ext[start : start + chunk]
        nb = blk[:, adj]
        cur = blk[:, mov]
        for c, ok_edge in allowed.items():
            if not ok_edge.any():
                continue
            ok = (cur != c) & ok_edge & ~(nb == c).any(axis=2)
            r, j = np.nonzero(ok)
            if len(r) == 0:
                continue
            e = mov[j]
            cand = rows[start + r]
            cand[np.arange(len(r)), e] = c
            yield start + r, e, c, cand


@dataclass
class ReconfigurationGraph:
    """Colorings of a graph joined by single-recolor adjacency."""

    graph: ColoredMultigraph
    colorings: np.ndarray
    pairs: np.ndarray  # (M, 2) with pairs[:, 0] < pairs[:, 1]
    moved: np.ndarray  # edge index recolored along each pair

    @property
    def num_nodes(self) -> int:
        return len(self.colorings)

    @property
    def num_edges(self) -> int:
        return len(self.pairs)

    def components(self) -> np.ndarray:
        n = self.num_nodes
        adj = sparse.coo_matrix(
            (np.ones(len(self.pairs), dtype=np.int8), (self.pairs[:, 0], self.pairs[:, 1])), shape=(n, n)
        )
        _, labels = csgraph.connected_components(adj, directed=False)
        return labels

    def is_connected(self) -> bool:
        return self.num_nodes <= 1 or len(np.unique(self.components())) == 1

    def to_dot(self, name: str = "reconfiguration") -> str:
        lines = [f"graph {name} {{"]
        for r in self.colorings:
            lines.append(f'  "{pack_label(r)}";')
        for a, b in self.pairs:
            lines.append(f'  "{pack_label(self.colorings[a])}" -- "{pack_label(self.colorings[b])}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


def pack_label(row: Sequence[int]) -> str:
    return "".join(str(int(c)) if c < 10 else f"({int(c)})" for c in row)


def neighbor_pairs(
    g: ColoredMultigraph, rows: np.ndarray, movable: Sequence[int], index: StateIndex | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """Single-recolor adjacencies among ``rows`` through edges in ``movable``.

    Returns ``(pairs, moved_edge)`` with each unordered pair listed once.
    """
    index = index or StateIndex(rows)
    out_pairs, out_edges = [], []
    for sel, e, c, cand in _moves(g, rows, movable):
        # each unordered pair is generated from both sides; keep the upward recolor
        up = rows[sel, e] < c
        sel, e, cand = sel[up], e[up], cand[up]
        if len(sel) == 0:
            continue
        j = index.lookup(cand)
        if np.any(j < 0):
            raise ValueError("row set is not closed under recoloring")
        out_pairs.append(np.stack([sel, j], axis=1))
        out_edges.append(e)
    if not out_pairs:
        return np.zeros((0, 2), dtype=np.int64), np.zeros(0, dtype=np.int64)
    pairs = np.concatenate(out_pairs)
    pairs = np.sort(pairs, axis=1)
    return pairs, np.concatenate(out_edges)


def reconfiguration_graph(
    g: ColoredMultigraph,
    restriction: Iterable[str] | None = None,
    budget: Budget | None = None,
    rows: np.ndarray | None = None,
) -> ReconfigurationGraph:
    """Full reconfiguration graph; ``restriction`` limits which edges may be recolored."""
    if rows is None:
        rows = coloring_array(g, budget)
    movable = _movable_indices(g, restriction)
    pairs, moved = neighbor_pairs(g, rows, movable)
    return ReconfigurationGraph(g, rows, pairs, moved)


# -- reachability ------------------------------------------------------------


class Reach(enum.Enum):
    REACHABLE = "REACHABLE"
    UNREACHABLE = "UNREACHABLE"
    BUDGET_EXCEEDED = "BUDGET_EXCEEDED"


@dataclass
class ReachResult:
    status: Reach
    witness: list[Coloring] | None
    visited: int

    @property
    def steps(self) -> list[tuple[int, int]] | None:
        """The witness as (edge index, new color) moves."""
        if self.witness is None:
            return None
        return witness_steps(self.witness)


def witness_steps(witness: Sequence[Sequence[int]]) -> list[tuple[int, int]]:
    steps = []
    for a, b in zip(witness, witness[1:]):
        diff = [i for i, (x, y) in enumerate(zip(a, b)) if x != y]
        if len(diff) != 1:
            raise ValueError("consecutive colorings must differ on exactly one edge")
        steps.append((diff[0], int(b[diff[0]])))
    return steps


def is_valid_witness(g: ColoredMultigraph, witness: Sequence[Sequence[int]], movable: Iterable[str] | None = None) -> bool:
    """Every coloring proper and consecutive ones differ on one (movable) edge."""
    allowed = set(_movable_indices(g, movable))
    for f in witness:
        if not is_proper(g, f):
            return False
    for a, b in zip(witness, witness[1:]):
        diff = [i for i, (x, y) in enumerate(zip(a, b)) if x != y]
        if len(diff) != 1 or diff[0] not in allowed:
            return False
    return True


def reachable(
    g: ColoredMultigraph,
    f0: Sequence[int],
    fr: Sequence[int],
    budget: Budget | None = None,
    movable: Iterable[str] | None = None,
    witness: bool = True,
) -> ReachResult:
    """Breadth-first search between two proper colorings.

    The search is level-synchronous over packed rows.  Exceeding the budget
    gives ``BUDGET_EXCEEDED``, never ``UNREACHABLE``.
    """
    budget = budget or Budget()
    _require_proper(g, f0, "f0")
    _require_proper(g, fr, "fr")
    f0, fr = tuple(int(c) for c in f0), tuple(int(c) for c in fr)
    if f0 == fr:
        return ReachResult(Reach.REACHABLE, [f0] if witness else None, 1)
    mov = _movable_indices(g, movable)
    frozen_cols = [i for i in range(len(g.edges)) if i not in set(mov)]
    if any(f0[i] != fr[i] for i in frozen_cols):
        return ReachResult(Reach.UNREACHABLE, None, 1)

    m = len(g.edges)
    keys = _column_keys(m)
    target = np.asarray(fr, dtype=np.uint8)
    store = [np.asarray([f0], dtype=np.uint8)]
    parents = [np.array([-1], dtype=np.int64)]
    seen: dict[int, int] = {int(hash_rows(store[0], keys)[0]): 0}
    spill: dict[bytes, int] = {}
    total = 1
    frontier = store[0]
    frontier_base = 0

    def stored_row(i: int) -> np.ndarray:
        for chunk in store:
            if i < len(chunk):
                return chunk[i]
            i -= len(chunk)
        raise IndexError(i)

    while len(frontier):
        batches, origins = [], []
        for sel, e, c, cand in _moves(g, frontier, mov):
            batches.append(cand)
            origins.append(sel + frontier_base)
        if not batches:
            break
        cand = np.concatenate(batches)
        origin = np.concatenate(origins)
        _, first = np.unique(cand.view(np.dtype((np.void, m))).ravel(), return_index=True)
        first.sort()
        cand, origin = cand[first], origin[first]
        hashes = hash_rows(cand, keys)
        picked: list[int] = []
        for t, h in enumerate(hashes.tolist()):
            j = seen.get(h)
            if j is None:
                seen[h] = total + len(picked)
                picked.append(t)
                continue
            other = stored_row(j) if j < total else cand[picked[j - total]]
            if np.array_equal(other, cand[t]):
                continue
            # genuine 64-bit collision: fall back to exact keys
            key = cand[t].tobytes()
            if key not in spill:
                spill[key] = total + len(picked)
                picked.append(t)
        fresh = np.asarray(picked, dtype=np.int64)
        new = cand[fresh]
        if len(new) == 0:
            break
        store.append(new)
        parents.append(origin[fresh])
        frontier_base = total
        total += len(new)
        frontier = new
        hit = np.nonzero(np.all(new == target, axis=1))[0]
        if len(hit):
            if not witness:
                return ReachResult(Reach.REACHABLE, None, total)
            par = np.concatenate(parents)
            path = []
            i = frontier_base + int(hit[0])
            while i >= 0:
                path.append(tuple(int(c) for c in stored_row(i)))
                i = int(par[i])
            return ReachResult(Reach.REACHABLE, path[::-1], total)
        try:
            budget.check(total, m)
        except BudgetExceeded:
            return ReachResult(Reach.BUDGET_EXCEEDED, None, total)
    return ReachResult(Reach.UNREACHABLE, None, total)



# -- construction and serialization -----------------------------------------


class GraphBuilder:
    """Accumulates vertices and edges, then freezes them into a graph."""

    def __init__(self, k: int):
        self.k = k
        self.vertices: list[str] = []
        self._vset: set[str] = set()
        self.edges: list[Edge] = []
        self.lists: list[tuple[int, ...]] = []
        self.frozen: dict[str, int] = {}

    def vertex(self, v: str) -> str:
        if v not in self._vset:
            self._vset.add(v)
            self.vertices.append(v)
        return v

    def edge(self, eid: str, u: str, v: str, lst: Iterable[int] | None = None, frozen: int | None = None) -> str:
        self.vertex(u)
        self.vertex(v)
        if frozen is not None:
            lst = (frozen,)
            self.frozen[eid] = frozen
        elif lst is None:
            lst = range(1, self.k + 1)
        self.edges.append(Edge(eid, u, v))
        self.lists.append(tuple(lst))
        return eid

    def build(self) -> ColoredMultigraph:
        return ColoredMultigraph(self.vertices, self.edges, self.lists, self.k, self.frozen)


def graph_to_json(g: ColoredMultigraph) -> dict:
    edges = []
    for e, lst in zip(g.edges, g.lists):
        rec = {"id": e.id, "u": e.u, "v": e.v, "list": list(lst)}
        if e.id in g.frozen:
            rec["frozen"] = g.frozen[e.id]
        edges.append(rec)
    return {"vertices": list(g.vertices), "edges": edges, "k": g.k}


def graph_from_json(data: Mapping) -> ColoredMultigraph:
    """Parse instance JSON; an edge without ``list`` may take every color in ``1..k``."""
    try:
        b = GraphBuilder(int(data["k"]))
        for v in data["vertices"]:
            b.vertex(str(v))
        for rec in data["edges"]:
            b.edge(str(rec["id"]), str(rec["u"]), str(rec["v"]), rec.get("list"), rec.get("frozen"))
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed instance JSON: {exc!r}") from None
    return b.build()


def coloring_to_json(g: ColoredMultigraph, f: Sequence[int]) -> dict[str, int]:
    return g.as_mapping(f)


def coloring_from_json(g: ColoredMultigraph, data: Mapping[str, int]) -> Coloring:
    return g.coloring(data)


def witness_to_json(g: ColoredMultigraph, witness: Sequence[Sequence[int]]) -> list[list]:
    return [[g.edges[i].id, c] for i, c in witness_steps(witness)]


def witness_from_json(g: ColoredMultigraph, f0: Sequence[int], steps: Sequence[Sequence]) -> list[Coloring]:
    """Replay ``(edge id, new color)`` steps from ``f0`` into a coloring sequence."""
    out = [tuple(int(c) for c in f0)]
    for eid, c in steps:
        f = list(out[-1])
        f[g.edge_index(eid)] = int(c)
        out.append(tuple(f))
    return out


def random_walk(
    g: ColoredMultigraph, f0: Sequence[int], steps: int, rng: np.random.Generator | None = None,
    max_proposals: int | None = None,
) -> Iterator[tuple[int, int, list[int]]]:
    """Lazy random walk over proper colorings.

    Each proposal picks a uniform edge with at least two usable colors and a
    uniform usable color from its list, and is applied when legal.  Yields ``(edge, new color, f)`` per
    accepted move, where ``f`` is the live coloring list (do not keep it).
    Stops after ``steps`` accepted moves or ``max_proposals`` proposals.
    """
    _require_proper(g, f0, "f0")
    rng = rng or np.random.default_rng(0)
    f = [int(c) for c in f0]
    # colors held by an adjacent frozen edge can never be used
    fixed = [{g.lists[j][0] for j in g.adjacent(i) if len(g.lists[j]) == 1} for i in range(len(g.edges))]
    options = [tuple(c for c in l if c not in fixed[i]) for i, l in enumerate(g.lists)]
    free = [i for i, l in enumerate(options) if len(l) > 1]
    if not free:
        return
    max_proposals = 200 * steps if max_proposals is None else max_proposals
    done = tried = 0
    batch = 4096
    while done < steps and tried < max_proposals:
        picks = rng.integers(0, len(free), size=batch)
        rolls = rng.random(batch)
        for p, r in zip(picks.tolist(), rolls.tolist()):
            tried += 1
            i = free[p]
            lst = options[i]
            c = lst[int(r * len(lst))]
            if c != f[i] and all(f[j] != c for j in g.adjacent(i)):
                f[i] = c
                done += 1
                yield i, c, f
                if done >= steps:
                    return
            if tried >= max_proposals:
                return
