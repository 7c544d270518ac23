"""Rebuild the gadget data files and check each one with the verifier.

    python scripts/derive_gadgets.py [--out DIR] [--check]

Most gadgets are assembled from "domino" chains.  A chain is given by a
color sequence x0, x1, ..., xn.  Edge j of the chain may take the colors
x(j) or x(j+1), so a chain has essentially one degree of freedom: a prefix of
its edges sits on the left color and the rest on the right.  Pinning the
first edge to x1 forces every edge right; pinning the last edge to x(n-1)
forces every edge left.  Hence the two ends of a chain behave like a NAND,
and gates are built by letting chains meet at shared vertices.

In LIST gadgets a chain edge carries the 2-list directly (consecutive
triples of the sequence must be distinct).  NONLIST gadgets have no lists.
Each chain vertex instead gets a color gadget forbidding the two colors
outside its 3-window of the sequence, so every consecutive 4 colors must be
distinct.  Connector edges are confined to {1, 4} the same way: the
link-side endpoint forbids {2, 5} and the vertex-side endpoint forbids
{3, 5} or {3}.

With --check, the script compares fresh output with the files on disk and
exits 1 on any difference.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from ecreconf.gadgets import gadget_from_json
from ecreconf.verify import verify

DATA = Path(__file__).resolve().parents[1] / "src" / "ecreconf" / "gadget_data"

LINK_SIDE = (2, 5)
VERTEX_SIDE = (3, 5)

# censuses quoted for the original gadget drawings, kept for comparison
REFERENCE = {
    ("LIST", "link"): None,
    ("LIST", "and"): None,
    ("LIST", "or"): 1575,
    ("NONLIST", "link"): 6,
    ("NONLIST", "and"): 40,
    ("NONLIST", "or"): 477192,
}


def list_chain(name, start, end, seq):
    vs = [start] + [f"{name}{j}" for j in range(1, len(seq) - 1)] + [end]
    return [(f"{name}_{j}", vs[j], vs[j + 1], sorted({seq[j], seq[j + 1]})) for j in range(len(seq) - 1)]


def window_forbidden(seq):
    """Forbidden pair of each interior chain vertex: colors outside its 3-window."""
    return [tuple(c for c in range(1, 6) if c not in seq[j : j + 3]) for j in range(len(seq) - 2)]


def nonlist_chain(name, start, end, seq):
    forb = window_forbidden(seq)
    vs = [start] + [f"{name}{j}" for j in range(1, len(forb) + 1)] + [end]
    edges = [(f"{name}_{j}", vs[j], vs[j + 1]) for j in range(len(vs) - 1)]
    return edges, {f"{name}{j}": f for j, f in enumerate(forb, 1)}


def _connectors(n, link_side_port):
    """Boundary edges e_i = (a_i, b_i); ports are b_i for links and a_i otherwise."""
    edges = [(f"e{i}", f"a{i}", f"b{i}") for i in range(1, n + 1)]
    ports = {f"e{i}": (f"b{i}" if link_side_port else f"a{i}") for i in range(1, n + 1)}
    return edges, ports


def list_link():
    edges, ports = _connectors(2, link_side_port=True)
    edges = [(*e, [1, 4]) for e in edges] + [
        ("i0", "x0", "b1", [2, 3]),
        ("i1", "x1", "b1", [1, 2]),
        ("i3", "b2", "x0", [1, 3]),
    ]
    return "LINK", edges, ports, None


def list_and():
    edges, _ = _connectors(3, link_side_port=False)
    edges = [(*e, [1, 4]) for e in edges] + [
        ("i0", "b1", "b2", [3, 4]),
        ("i1", "b1", "x0", [2, 3]),
        ("i2", "b3", "x0", [2, 4]),
    ]
    # this gadget keeps its internal wiring at the b-side endpoints
    ports = {f"e{i}": f"b{i}" for i in (1, 2, 3)}
    return "AND", edges, ports, None


def list_or():
    edges, ports = _connectors(3, link_side_port=False)
    edges = [(*e, [1, 4]) for e in edges] + [("h3", "v", "m", [1, 2, 3, 4])]
    for spec in (
        ("p", "a1", "m", (4, 2, 3, 4, 1)),
        ("q", "a2", "m", (4, 2, 1, 4, 2, 3)),
        ("r", "a3", "v", (4, 2, 1, 4)),
        ("t", "a3", "v", (2, 3, 4, 1, 3, 2)),
    ):
        edges += list_chain(*spec)
    return "OR", edges, ports, None


def nonlist_link():
    edges, ports = _connectors(2, link_side_port=True)
    edges += [
        ("s0", "b1", "v1"),
        ("m1", "v1", "v2"),
        ("m2", "v2", "v3"),
        ("m3", "v3", "v4"),
        ("m4", "v4", "v5"),
        ("s5", "v5", "b2"),
    ]
    att = {
        "a1": VERTEX_SIDE, "a2": VERTEX_SIDE, "b1": LINK_SIDE, "b2": LINK_SIDE,
        "v1": (4, 5), "v2": (1, 5), "v3": (1, 3), "v4": (1, 2), "v5": (2, 4),
    }
    return "LINK", edges, ports, att


def nonlist_and():
    edges, ports = _connectors(3, link_side_port=False)
    att = {"b1": LINK_SIDE, "b2": LINK_SIDE, "b3": LINK_SIDE, "a1": VERTEX_SIDE, "a2": VERTEX_SIDE, "a3": (3,)}
    for name, end, seq in (("p", "a1", (4, 2, 3, 1, 5, 2, 4)), ("q", "a2", (2, 5, 3, 4, 1, 5, 2, 4))):
        es, at = nonlist_chain(name, "a3", end, seq)
        edges += es
        att.update(at)
    return "AND", edges, ports, att


def nonlist_or():
    edges, ports = _connectors(3, link_side_port=False)
    edges += [("h3", "v", "m")]
    att = {"b1": LINK_SIDE, "b2": LINK_SIDE, "b3": LINK_SIDE, "a1": VERTEX_SIDE, "a2": VERTEX_SIDE,
           "a3": (3,), "v": (3,), "m": (3,)}
    for name, s, t, seq in (
        ("p", "a1", "m", (4, 2, 3, 1, 5, 2, 3, 4, 1)),
        ("q", "a2", "m", (4, 2, 5, 1, 3, 2, 5)),
        ("r", "a3", "v", (4, 2, 3, 1, 4)),
        ("t", "a3", "v", (2, 5, 3, 1, 2, 4, 3, 5, 2)),
    ):
        es, at = nonlist_chain(name, s, t, seq)
        edges += es
        att.update(at)
    return "OR", edges, ports, att


BUILDERS = {
    ("LIST", "link"): list_link,
    ("LIST", "and"): list_and,
    ("LIST", "or"): list_or,
    ("NONLIST", "link"): nonlist_link,
    ("NONLIST", "and"): nonlist_and,
    ("NONLIST", "or"): nonlist_or,
}


def to_record(variant, name):
    kind, edges, ports, att = BUILDERS[variant, name]()
    vertices = []
    for e in edges:
        for x in e[1:3]:
            if x not in vertices:
                vertices.append(x)
    recs = []
    for e in edges:
        rec = {"id": e[0], "u": e[1], "v": e[2]}
        if variant == "LIST":
            rec["list"] = list(e[3])
        recs.append(rec)
    data = {
        "name": name,
        "interface": kind,
        "variant": variant,
        "k": 4 if variant == "LIST" else 5,
        "vertices": vertices,
        "edges": recs,
        "boundary": [f"e{i}" for i in range(1, len(ports) + 1)],
        "ports": ports,
        "checksum": None,
        "reference_census": REFERENCE[variant, name],
    }
    if att is not None:
        data["color_gadgets"] = {v: list(f) for v, f in att.items()}
    report = verify(gadget_from_json(data, check_census=False))
    data["checksum"] = report.census
    return data, report


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=DATA)
    ap.add_argument("--check", action="store_true", help="compare with existing files instead of writing")
    args = ap.parse_args(argv)
    status = 0
    for variant, name in BUILDERS:
        data, report = to_record(variant, name)
        text = json.dumps(data, indent=1) + "\n"
        path = args.out / f"{variant.lower()}_{name}.json"
        ref = data["reference_census"]
        line = (
            f"{variant:8s} {name:5s} census={report.census:<6d} reference={ref} "
            f"classes={len(report.classes)} verified={report.passed}"
        )
        print(line)
        if not report.passed:
            status = 1
        if args.check:
            if not path.exists() or path.read_text() != text:
                print(f"  {path} is stale", file=sys.stderr)
                status = 1
        else:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
