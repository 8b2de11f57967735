"""Command-line driver.  Exit 0 = pass, 1 = rule failure or mismatch, 2 = usage error."""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
import time

from . import graphio
from .colored import SignedColoredGraph, as_labeled, simple_part
from .deg import build_G_lambda, check_deg_axioms
from .errors import DomainError, ResourceError, StructureError
from .iso import find_isomorphism, find_scg_isomorphism, find_simple_isomorphism
from .kl import OVERRIDE_ENV, build_left_wgraph, cells, csv_rows, kl_table
from .labeled import RULES, SLabeledGraph, check_admissible, check_molecular, restrict, simple_component_sets
from .search import RULE_FLAGS, SearchConfig, enumerate_molecule_simple_parts
from .tau import full_mask, tau_mask
from .verify import run_battery

log = logging.getLogger("wgraphs")

PASS, FAIL, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _int_list(text: str, name: str) -> list[int]:
    try:
        values = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"field '{name}' must be a comma separated list of integers, got {text!r}")
    return values


def _partition(text: str) -> tuple[int, ...]:
    parts = _int_list(text, "lambda")
    if not parts:
        raise UsageError("field 'lambda' is empty")
    return tuple(parts)


def _emit(result: dict, args, started: float) -> None:
    manifest = graphio.RunManifest(sys.argv[1:] if args.argv is None else args.argv,
                                   _config_echo(args), result, time.perf_counter() - started)
    json.dump({"result": result, "manifest": manifest.to_json()}, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _config_echo(args) -> dict:
    skip = {"func", "argv", "quiet"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _as_labeled(G) -> SLabeledGraph:
    return as_labeled(G) if isinstance(G, SignedColoredGraph) else G


def _as_colored(G) -> SignedColoredGraph:
    return G if isinstance(G, SignedColoredGraph) else simple_part(G)


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
        log.info("wrote %s", path)


# -- deg ---------------------------------------------------------------------

def cmd_deg_gen(args, started):
    G = build_G_lambda(_partition(args.shape))
    if args.dot:
        _write(args.dot, graphio.export_dot(G, f"G_{args.shape}"))
    if args.out or not args.dot:
        _write(args.out, graphio.dumps(G))
    return PASS


def cmd_deg_check(args, started):
    G = _as_colored(graphio.load(args.file))
    rep = check_deg_axioms(G, 5 if args.weak else 6)
    _emit(rep.to_json(), args, started)
    return PASS if rep.passed else FAIL


# -- mol ---------------------------------------------------------------------

def _rules(text: str) -> list[str]:
    rules = [r.strip().upper() for r in text.split(",") if r.strip()]
    unknown = [r for r in rules if r not in RULES]
    if unknown:
        raise UsageError(f"field '--rules' has unknown rules {unknown}; choose from {list(RULES)}")
    return rules


def cmd_mol_check(args, started):
    G = _as_labeled(graphio.load(args.file))
    reports = check_admissible(G) + check_molecular(G, _rules(args.rules))
    ok = all(r.passed for r in reports)
    _emit({"status": "pass" if ok else "fail", "reports": [r.to_json() for r in reports]}, args, started)
    return PASS if ok else FAIL


def cmd_mol_restrict(args, started):
    G = _as_labeled(graphio.load(args.file))
    J = _int_list(args.j, "--j")
    bad = [j for j in J if not 1 <= j <= G.rank]
    if bad:
        raise UsageError(f"field '--j' has generators {bad} outside 1..{G.rank} (rank of the file)")
    R = restrict(G, tau_mask(J))
    if args.out:
        _write(args.out, graphio.dumps(R))
    _emit({"graph": graphio.to_json(R), "components": simple_component_sets(R)}, args, started)
    return PASS


def cmd_mol_components(args, started):
    G = _as_labeled(graphio.load(args.file))
    comps = simple_component_sets(G)
    _emit({"count": len(comps), "components": comps}, args, started)
    return PASS


# -- kl ----------------------------------------------------------------------

def _allow_large(args) -> bool:
    return bool(os.environ.get(OVERRIDE_ENV))


def cmd_kl_wgraph(args, started):
    G = build_left_wgraph(args.m, _allow_large(args))
    if args.csv:
        with open(args.csv, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["u", "w", "P"])
            writer.writerows(csv_rows(args.m))
        log.info("wrote %s", args.csv)
    if args.dot:
        _write(args.dot, graphio.export_dot(G, f"W_{args.m}"))
    if args.out:
        _write(args.out, graphio.dumps(G))
        _emit({"vertices": len(G.vertices), "weights": len(G.weights), "file": args.out}, args, started)
    elif not args.dot:
        sys.stdout.write(graphio.dumps(G))
    return PASS


def cmd_kl_cells(args, started):
    if args.verify:
        res = run_battery(args.m, _allow_large(args))
        _emit(res.to_json(), args, started)
        return PASS if res.passed else FAIL
    d = cells(build_left_wgraph(args.m, _allow_large(args)))
    _emit({"cell_count": len(d),
           "cells": [{"vertices": c, "shape": list(s) if s else None} for c, s in zip(d.cells, d.shapes)]},
          args, started)
    return PASS


# -- search ------------------------------------------------------------------

def cmd_search(args, started):
    rules = frozenset(r.strip().lower() for r in args.rules.split(",") if r.strip())
    unknown = sorted(rules - set(RULE_FLAGS))
    if unknown:
        raise UsageError(f"field '--rules' has unknown flags {unknown}; choose from {list(RULE_FLAGS)}")
    cfg = SearchConfig(args.rank, args.cap, rules)
    res = enumerate_molecule_simple_parts(cfg, jobs=args.jobs)
    classes = [{"graph": graphio.to_json(G), "match": list(lam) if lam else "non-standard"}
               for G, lam in zip(res.classes, res.matches)]
    ok = res.saturated and all(res.matches)
    _emit({"status": "pass" if ok else "fail", "rank": res.rank, "cap": cfg.max_vertices,
           "rules": sorted(cfg.rules), "class_count": len(classes), "saturated": res.saturated,
           "cap_hit": res.cap_hit, "stats": vars(res.stats), "classes": classes}, args, started)
    return PASS if ok else FAIL


# -- iso ---------------------------------------------------------------------

def cmd_iso(args, started):
    G, H = graphio.load(args.f1), graphio.load(args.f2)
    if G.rank != H.rank:
        _emit({"status": "fail", "reason": f"rank {G.rank} differs from rank {H.rank}"}, args, started)
        return FAIL
    if args.simple_part:
        psi = find_simple_isomorphism(G, H)
    elif isinstance(G, SignedColoredGraph) and isinstance(H, SignedColoredGraph):
        psi = find_scg_isomorphism(G, H)
    elif isinstance(G, SLabeledGraph) and isinstance(H, SLabeledGraph):
        psi = find_isomorphism(G, H)
    else:
        raise UsageError("files have different formats; use --simple-part to compare simple parts")
    result = {"status": "pass" if psi is not None else "fail", "mapping": psi}
    _emit(result, args, started)
    return PASS if psi is not None else FAIL


# -- parser ------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="wgraphs", description="W-graphs, molecules and dual equivalence graphs.")
    p.add_argument("--quiet", action="store_true", help="suppress progress on standard error")
    sub = p.add_subparsers(dest="group", required=True, parser_class=_Parser)

    deg = sub.add_parser("deg", help="standard dual equivalence graphs").add_subparsers(
        dest="action", required=True, parser_class=_Parser)
    g = deg.add_parser("gen", help="build G_lambda")
    g.add_argument("shape", help="partition as a comma list, e.g. 3,2")
    g.add_argument("--out")
    g.add_argument("--dot")
    g.set_defaults(func=cmd_deg_gen)
    c = deg.add_parser("check", help="check the DEG axioms")
    c.add_argument("file")
    c.add_argument("--weak", action="store_true", help="axioms 1-5 only")
    c.set_defaults(func=cmd_deg_check)

    mol = sub.add_parser("mol", help="S-labeled graphs and molecular rules").add_subparsers(
        dest="action", required=True, parser_class=_Parser)
    c = mol.add_parser("check")
    c.add_argument("file")
    c.add_argument("--rules", default=",".join(r.lower() for r in RULES))
    c.set_defaults(func=cmd_mol_check)
    r = mol.add_parser("restrict")
    r.add_argument("file")
    r.add_argument("--j", required=True, help="generators to keep, e.g. 1,2")
    r.add_argument("--out")
    r.set_defaults(func=cmd_mol_restrict)
    c = mol.add_parser("components")
    c.add_argument("file")
    c.set_defaults(func=cmd_mol_components)

    kl = sub.add_parser("kl", help="Kazhdan-Lusztig W-graphs").add_subparsers(
        dest="action", required=True, parser_class=_Parser)
    w = kl.add_parser("wgraph")
    w.add_argument("m", type=int)
    w.add_argument("--out")
    w.add_argument("--csv")
    w.add_argument("--dot")
    w.set_defaults(func=cmd_kl_wgraph)
    c = kl.add_parser("cells")
    c.add_argument("m", type=int)
    c.add_argument("--verify", action="store_true", help="run the full invariant battery")
    c.set_defaults(func=cmd_kl_cells)

    se = sub.add_parser("search", help="molecule search").add_subparsers(
        dest="action", required=True, parser_class=_Parser)
    e = se.add_parser("enumerate")
    e.add_argument("rank", type=int)
    e.add_argument("--cap", type=int)
    e.add_argument("--rules", default="br,cr")
    e.add_argument("--jobs", type=int, default=1)
    e.set_defaults(func=cmd_search)

    i = sub.add_parser("iso", help="find an isomorphism between two graph files")
    i.add_argument("f1")
    i.add_argument("f2")
    i.add_argument("--simple-part", action="store_true")
    i.set_defaults(func=cmd_iso)
    return p


def main(argv: list[str] | None = None) -> int:
    started = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return USAGE
    args.argv = argv
    logging.basicConfig(level=logging.WARNING if args.quiet else logging.INFO,
                        format="%(message)s", stream=sys.stderr, force=True)
    try:
        return args.func(args, started)
    except (UsageError, StructureError, DomainError, ResourceError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
