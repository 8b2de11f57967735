"""Invariant battery over the cells of the KL W-graph of S_m."""

from __future__ import annotations

from dataclasses import dataclass, field

from .colored import simple_part
from .deg import build_G_lambda
from .iso import find_simple_isomorphism
from .kl import (
    build_left_wgraph,
    cells,
    involution_count,
    kl_table,
    knuth_agreement_violations,
)
from .labeled import check_molecular, simple_components
from .transport import bond_transport, cabling, lpr_path_arcs, polygon_transport


@dataclass
class BatteryResult:
    m: int
    checks: dict[str, dict] = field(default_factory=dict)
    cells: list[dict] = field(default_factory=list)

    def record(self, name: str, seen: int, violations: list) -> None:
        self.checks[name] = {"seen": seen, "violations": violations[:20],
                             "violation_count": len(violations)}

    @property
    def passed(self) -> bool:
        return all(not c["violation_count"] for c in self.checks.values())

    def to_json(self) -> dict:
        return {"m": self.m, "status": "pass" if self.passed else "fail",
                "cell_count": len(self.cells), "cells": self.cells, "checks": self.checks}


def degree_bound_violations(m: int, allow_large: bool = False) -> tuple[int, list[dict]]:
    table = kl_table(m, allow_large)
    seen = 0
    bad = []
    for u, w, p in table.pairs():
        if u == w:
            if p != (1,):
                bad.append({"u": u, "w": w, "poly": list(p)})
            continue
        seen += 1
        d = table.length[table.index[w]] - table.length[table.index[u]]
        if 2 * (len(p) - 1) > d - 1:
            bad.append({"u": list(u), "w": list(w), "poly": list(p)})
    return seen, bad


def run_battery(m: int, allow_large: bool = False, transport: bool = True) -> BatteryResult:
    G = build_left_wgraph(m, allow_large)
    d = cells(G)
    res = BatteryResult(m)

    expected = involution_count(m)
    res.record("cell_count", 1, [] if len(d) == expected else
               [{"expected": expected, "found": len(d)}])
    res.record("degree_bound", *degree_bound_violations(m, allow_large))
    res.record("knuth_agreement", len(d), knuth_agreement_violations(G))

    single, rules_bad, iso_bad = [], [], []
    molecules = []
    for cell, graph, shape in zip(d.cells, d.graphs, d.shapes):
        mols = simple_components(graph)
        molecules.extend(mols)
        entry = {"size": len(cell), "shape": list(shape) if shape else None,
                 "molecules": len(mols), "representative": cell[0]}
        if len(mols) != 1:
            single.append({"cell": cell[0], "molecules": len(mols)})
        for mol in mols:
            failed = [r.to_json() for r in check_molecular(mol) if not r.passed]
            if failed:
                rules_bad.append({"molecule": mol.vertices[0], "reports": failed})
        if shape is None:
            iso_bad.append({"cell": cell[0], "detail": "vertices have different RSK shapes"})
        elif find_simple_isomorphism(simple_part(graph), build_G_lambda(shape)) is None:
            iso_bad.append({"cell": cell[0], "shape": list(shape)})
        entry["passed"] = len(mols) == 1
        res.cells.append(entry)
    res.record("one_molecule_per_cell", len(d), single)
    res.record("molecular_rules", len(molecules), rules_bad)
    res.record("simple_part_is_standard", len(d), iso_bad)

    if transport:
        for name, fn in (("bond_transport", bond_transport),
                         ("polygon_transport_2", lambda M: polygon_transport(M, 2)),
                         ("polygon_transport_3", lambda M: polygon_transport(M, 3)),
                         ("lpr_path_arcs", lpr_path_arcs),
                         ("cabling", cabling)):
            seen, bad = 0, []
            for mol in molecules:
                s, b = fn(mol)
                seen += s
                bad.extend(b)
            res.record(name, seen, bad)
    return res
