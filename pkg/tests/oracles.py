"""Deliberately naive reference implementations used to cross-check the engine.

Nothing here shares code with the package beyond its data classes.
"""
from __future__ import annotations

import itertools
from collections import deque


def brute_colorings(g):
    """All proper colorings by filtering the full product of lists."""
    out = []
    for f in itertools.product(*g.lists):
        ok = True
        for v in g.vertices:
            cols = [f[i] for i, e in enumerate(g.edges) if v in (e.u, e.v)]
            if len(cols) != len(set(cols)):
                ok = False
                break
        if ok:
            out.append(tuple(f))
    return out


def one_recolor_apart(a, b):
    return sum(x != y for x, y in zip(a, b)) == 1


def brute_component_labels(states, movable_cols=None):
    """Component id per state under single-recolor adjacency (quadratic scan)."""
    n = len(states)
    label = [-1] * n
    cur = 0
    for s in range(n):
        if label[s] >= 0:
            continue
        label[s] = cur
        queue = deque([s])
        while queue:
            a = queue.popleft()
            for b in range(n):
                if label[b] < 0 and one_recolor_apart(states[a], states[b]):
                    diff = next(i for i, (x, y) in enumerate(zip(states[a], states[b])) if x != y)
                    if movable_cols is None or diff in movable_cols:
                        label[b] = cur
                        queue.append(b)
        cur += 1
    return label


def brute_interface(kind):
    """Allowed boundary tuples and single-coordinate adjacencies from the in-weight rule."""
    if kind == "LINK":
        allowed = {t for t in itertools.product((1, 4), repeat=2) if t != (1, 1)}
    else:
        weights = (1, 1, 2) if kind == "AND" else (2, 2, 2)
        allowed = {
            t for t in itertools.product((1, 4), repeat=3) if sum(w for w, x in zip(weights, t) if x == 1) >= 2
        }
    edges = {
        frozenset((a, b)) for a in allowed for b in allowed if sum(x != y for x, y in zip(a, b)) == 1
    }
    return allowed, edges


def brute_ncl_valid(m, o):
    need = {v: 0 for v, _ in m.vertices}
    for e, h in zip(m.edges, o):
        if h != "NEUTRAL":
            need[h] += e.weight
    return all(w >= 2 for w in need.values())


def brute_ncl_components(m):
    """Components of valid strict orientations under single reversals."""
    states = [o for o in itertools.product(*[(e.u, e.v) for e in m.edges]) if brute_ncl_valid(m, o)]
    labels = brute_component_labels(states)
    return dict(zip(states, labels))
