"""Command-line front end: ``ecreconf <command> ...``.

Every command prints one JSON document on stdout and a one-line summary on
stderr.  Exit status: 0 pass/reachable/agree, 1 fail/unreachable/disagree,
2 budget exceeded, 3 input error.
"""
from __future__ import annotations

import argparse
import enum
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .egraph import (
    DEFAULT_MAX_STATES,
    Budget,
    BudgetExceeded,
    Reach,
    coloring_from_json,
    graph_from_json,
    graph_to_json,
    reachable,
    reconfiguration_graph,
    witness_to_json,
)
from .gadgets import GADGET_NAMES, GadgetError, Variant, load_gadget
from .ncl import machine_from_json, ncl_reachable, orientation_from_json, orientation_to_json
from .reduction import (
    EmbeddingError,
    LiftError,
    ProjectionError,
    compile,
    embed_configuration,
    placement_to_json,
    project_witness,
    size_report,
)
from .verify import quotient_dot, verify


class Exit(enum.IntEnum):
    OK = 0
    FAIL = 1
    BUDGET = 2
    INPUT = 3


class InputError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    variant: Variant
    k: int
    budget: Budget
    witness: bool
    dot: Path | None

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        try:
            variant = Variant.parse(getattr(args, "variant", "list"))
        except ValueError:
            raise InputError(f"unknown variant {args.variant!r}") from None
        k = args.k if getattr(args, "k", None) is not None else variant.min_k
        if k < variant.min_k:
            raise InputError(f"{variant.value} needs k >= {variant.min_k}, got {k}")
        if args.budget_states < 1:
            raise InputError("--budget-states must be positive")
        return cls(variant, k, Budget(max_states=args.budget_states), not args.no_witness, args.dot)


def _read_json(path: str | Path):
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise InputError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None


def _write_dot(cfg: RunConfig, text: str) -> None:
    if cfg.dot is not None:
        cfg.dot.write_text(text)


# -- commands ----------------------------------------------------------------------


def cmd_verify_gadget(args, cfg: RunConfig):
    g = load_gadget(args.name, cfg.variant, cfg.k)
    report = verify(g, budget=cfg.budget)
    if cfg.dot is not None:
        _write_dot(cfg, quotient_dot(report, name=g.label.replace("-", "_")))
    out = report.to_json()
    out.update(variant=cfg.variant.value, k=cfg.k)
    summary = f"{g.label} k={cfg.k}: census {report.census}, {'PASS' if report.passed else 'FAIL'}"
    return out, Exit.OK if report.passed else Exit.FAIL, summary


def cmd_compile(args, cfg: RunConfig):
    m = machine_from_json(_read_json(args.machine))
    art = compile(m, cfg.variant, cfg.k)
    instance, placement = graph_to_json(art.graph), placement_to_json(art)
    out = {"report": size_report(art)}
    for flag, key, payload in ((args.instance, "instance", instance), (args.placement, "placement", placement)):
        if flag:
            Path(flag).write_text(json.dumps(payload, indent=1, sort_keys=True) + "\n")
            out[key] = str(flag)
        else:
            out[key] = payload
    r = out["report"]
    return out, Exit.OK, f"compiled: {r['vertices']} vertices, {r['edges']} edges, max degree {r['max_degree']}"


def cmd_solve(args, cfg: RunConfig):
    g = graph_from_json(_read_json(args.instance))
    try:
        f0 = coloring_from_json(g, _read_json(args.f0))
        fr = coloring_from_json(g, _read_json(args.fr))
        res = reachable(g, f0, fr, cfg.budget, witness=cfg.witness)
    except (KeyError, ValueError) as exc:
        raise InputError(str(exc)) from None
    out = {"status": res.status.value, "visited": res.visited}
    if res.witness is not None:
        out["witness"] = witness_to_json(g, res.witness)
    code = {Reach.REACHABLE: Exit.OK, Reach.UNREACHABLE: Exit.FAIL, Reach.BUDGET_EXCEEDED: Exit.BUDGET}[res.status]
    return out, code, f"{res.status.value} after {res.visited} states"


def cmd_oracle_check(args, cfg: RunConfig):
    m = machine_from_json(_read_json(args.machine))
    try:
        c0 = orientation_from_json(m, _read_json(args.c0))
        cr = orientation_from_json(m, _read_json(args.cr))
        ncl = ncl_reachable(m, c0, cr)
    except (KeyError, ValueError) as exc:
        raise InputError(str(exc)) from None
    art = compile(m, cfg.variant, cfg.k)
    f0, fr = embed_configuration(art, c0), embed_configuration(art, cr)
    res = reachable(art.graph, f0, fr, cfg.budget, witness=cfg.witness)
    out = {
        "variant": cfg.variant.value,
        "k": cfg.k,
        "ncl": "REACHABLE" if ncl.reachable else "UNREACHABLE",
        "coloring": res.status.value,
        "visited": res.visited,
    }
    if ncl.witness is not None:
        out["ncl_witness"] = [orientation_to_json(m, o) for o in ncl.witness]
    if res.status is Reach.BUDGET_EXCEEDED:
        return out, Exit.BUDGET, f"coloring search exceeded the budget after {res.visited} states"
    agree = ncl.reachable == (res.status is Reach.REACHABLE)
    if res.witness is not None:
        projected = project_witness(art, res.witness)
        out["projected_witness"] = [orientation_to_json(m, o) for o in projected]
        agree = agree and projected[0] == c0 and projected[-1] == cr
    out["agree"] = agree
    return out, Exit.OK if agree else Exit.FAIL, f"NCL {out['ncl']}, coloring {out['coloring']}: {'agree' if agree else 'DISAGREE'}"


def cmd_export_dot(args, cfg: RunConfig):
    if args.target.lower() in GADGET_NAMES:
        g = load_gadget(args.target, cfg.variant, cfg.k)
        name = g.label.replace("-", "_")
        if args.quotient:
            report = verify(g, budget=cfg.budget)
            text = quotient_dot(report, name=name)
            nodes = len(report.classes)
        else:
            rg = reconfiguration_graph(g.graph, budget=cfg.budget)
            text, nodes = rg.to_dot(name), rg.num_nodes
    else:
        graph = graph_from_json(_read_json(args.target))
        if args.quotient:
            raise InputError("--quotient applies to gadgets only")
        rg = reconfiguration_graph(graph, budget=cfg.budget)
        text, nodes = rg.to_dot(), rg.num_nodes
    if cfg.dot is None:
        out = {"nodes": nodes, "dot": text}
    else:
        _write_dot(cfg, text)
        out = {"nodes": nodes, "dot_path": str(cfg.dot)}
    return out, Exit.OK, f"{nodes}-node DOT"


# -- argument parsing ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--variant", default="list", help="list | nonlist (default: list)")
    common.add_argument("-k", type=int, default=None, help="number of colors (default: 4 list, 5 nonlist)")
    common.add_argument("--budget-states", type=int, default=DEFAULT_MAX_STATES, help="state budget for searches")
    common.add_argument("--no-witness", action="store_true", help="skip witness reconstruction")
    common.add_argument("--dot", type=Path, default=None, help="write a DOT rendering to this path")

    ap = argparse.ArgumentParser(prog="ecreconf", description="Edge-coloring reconfiguration and NCL reduction tools.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-gadget", parents=[common], help="verify a link/and/or gadget")
    p.add_argument("name", help="link | and | or")
    p.set_defaults(func=cmd_verify_gadget)

    p = sub.add_parser("compile", parents=[common], help="compile an NCL machine into a coloring instance")
    p.add_argument("machine", help="NCL machine JSON")
    p.add_argument("--instance", help="write instance JSON here instead of stdout")
    p.add_argument("--placement", help="write the gadget placement map here instead of stdout")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("solve", parents=[common], help="decide reachability between two colorings")
    p.add_argument("instance")
    p.add_argument("f0")
    p.add_argument("fr")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("oracle-check", parents=[common], help="compare NCL and compiled reachability")
    p.add_argument("machine")
    p.add_argument("c0", help="orientation JSON (edge id -> head vertex)")
    p.add_argument("cr")
    p.set_defaults(func=cmd_oracle_check)

    p = sub.add_parser("export-dot", parents=[common], help="DOT of a gadget or instance reconfiguration graph")
    p.add_argument("target", help="gadget name or instance JSON path")
    p.add_argument("--quotient", action="store_true", help="gadget quotient over boundary classes instead")
    p.set_defaults(func=cmd_export_dot)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig.from_args(args)
        out, code, summary = args.func(args, cfg)
    except BudgetExceeded as exc:
        out, code, summary = {"status": "BUDGET_EXCEEDED", "visited": exc.visited}, Exit.BUDGET, str(exc)
    except (ProjectionError, LiftError) as exc:
        # the reduction itself misbehaved: a gadget defect, not bad input
        out, code, summary = {"error": str(exc), "kind": type(exc).__name__}, Exit.FAIL, f"error: {exc}"
    except (InputError, GadgetError, EmbeddingError, ValueError) as exc:
        out, code, summary = {"error": str(exc)}, Exit.INPUT, f"error: {exc}"
    json.dump(out, sys.stdout, indent=1, sort_keys=True)
    sys.stdout.write("\n")
    print(summary, file=sys.stderr)
    return int(code)


if __name__ == "__main__":
    sys.exit(main())
