"""Result tables and their CSV / JSON / Markdown renderings.

Exact scalars are always written as ``p/q`` (or an integer); never as decimals.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional

from .feynman import CLASS_NAMES as LEG_CLASS_NAMES
from .feynman import LegContext, stratum_potential, verify_relation, verify_report
from .genus0 import cp1_potential, cp2_potential, cp3_rational_table, km_cp2
from .genus1 import (
    cp1_elliptic_potential,
    cp2_elliptic_potential,
    cp3_elliptic_table,
    ehx_cp2,
    elliptic_curve_f1,
    elliptic_curve_sigma,
    getzler_cp2,
    space_curve_counts,
)
from .severi import ch_compute, gw_from_severi, z_from_f
from .series import TruncSeries
from . import strata

__all__ = [
    "CheckFailed",
    "Table",
    "cp2_table",
    "cp3_table",
    "p1_table",
    "elliptic_curve_table",
    "severi_table",
    "strata_matrix_table",
    "strata_relations_table",
    "verify_table",
    "fmt",
    "parse_exact",
]


class CheckFailed(AssertionError):
    """An internal consistency check failed; the message names the identity."""


def fmt(v: Any) -> str:
    return str(v)


def parse_exact(s: Any) -> Fraction:
    return Fraction(s) if not isinstance(s, Fraction) else s


@dataclass
class Table:
    """Named columns, rows of cells; ``exact`` lists the columns holding rationals."""

    name: str
    columns: List[str]
    rows: List[List[Any]]
    exact: List[str] = field(default_factory=list)
    json_override: Optional[Dict[str, Any]] = None

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        for row in self.rows:
            w.writerow([fmt(v) for v in row])
        return buf.getvalue()

    def to_markdown(self) -> str:
        lines = [
            "| " + " | ".join(self.columns) + " |",
            "|" + "|".join("---" for _ in self.columns) + "|",
        ]
        for row in self.rows:
            lines.append("| " + " | ".join(fmt(v) for v in row) + " |")
        return "\n".join(lines) + "\n"

    def to_json_obj(self) -> Dict[str, Any]:
        if self.json_override is not None:
            return self.json_override
        return {
            "table": self.name,
            "columns": self.columns,
            "exact": self.exact,
            "rows": [[_json_cell(v) for v in row] for row in self.rows],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), indent=2, sort_keys=False) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Table":
        obj = json.loads(text)
        exact = set(obj["exact"])
        idx = [i for i, c in enumerate(obj["columns"]) if c in exact]
        rows = []
        for row in obj["rows"]:
            row = list(row)
            for i in idx:
                row[i] = parse_exact(row[i])
            rows.append(row)
        return cls(obj["table"], list(obj["columns"]), rows, list(obj["exact"]))

    def render(self, fmt_name: str) -> str:
        if fmt_name == "csv":
            return self.to_csv()
        if fmt_name == "json":
            return self.to_json()
        if fmt_name == "markdown":
            return self.to_markdown()
        raise ValueError(f"unknown format {fmt_name!r}")


def _json_cell(v: Any) -> Any:
    if isinstance(v, Fraction):
        return str(v)
    return v


# -- individual tables -----------------------------------------------------------

def cp2_table(n_max: int, method: str = "getzler") -> Table:
    """Rational and elliptic plane-curve counts ``n, N0, N1``."""
    N0 = km_cp2(n_max)
    if method == "getzler":
        N1 = getzler_cp2(n_max, N0)
    elif method == "ehx":
        N1 = ehx_cp2(n_max, N0)
    elif method == "severi":
        table = ch_compute(n_max)
        N1 = {d: gw_from_severi(d, 1, table) for d in range(1, n_max + 1)}
        for d in range(1, n_max + 1):
            if gw_from_severi(d, 0, table) != N0[d]:
                raise CheckFailed(f"genus-0 Severi degree differs from the WDVV value at d={d}")
    else:
        raise ValueError(f"unknown method {method!r}")
    rows = [[n, N0[n], N1[n]] for n in range(1, n_max + 1)]
    return Table("cp2", ["n", "N0", "N1"], rows, ["N0", "N1"])


def cp3_table(n_max: int) -> Table:
    """``N0_{ab}``, ``N1_{ab}`` and the elliptic space-curve count per ``(a, b)``."""
    N0 = cp3_rational_table(n_max)
    N1 = cp3_elliptic_table(n_max, N0)
    counts = space_curve_counts(N0, N1)
    rows = []
    for n in range(1, n_max + 1):
        for a in range(4 * n, -1, -2):
            b = (4 * n - a) // 2
            rows.append([n, a, b, N0[(a, b)], N1[(a, b)], counts[(a, b)]])
    return Table("cp3", ["n", "a", "b", "N0", "N1", "count"], rows, ["N0", "N1", "count"])


def _monomial(series: TruncSeries, e: tuple) -> str:
    parts = []
    for name, k in zip(series.names, e):
        if k == 1:
            parts.append(name)
        elif k:
            parts.append(f"{name}^{k}")
    return "*".join(parts) or "1"


def p1_table() -> Table:
    """Stratum potentials of the nine classes on the projective line."""
    F0, F1 = cp1_potential(), cp1_elliptic_potential()
    residual = verify_relation(F0, F1, None)
    if not residual.is_zero():
        raise CheckFailed("relation residual on the projective line is nonzero")
    ctx = LegContext(F0, F1, None)
    classes = strata.build_invariant_classes()
    rows = []
    for name in LEG_CLASS_NAMES:
        pot = stratum_potential(classes[name], ctx)
        if pot.is_zero():
            rows.append([name, "0", Fraction(0)])
        for e, c in sorted(pot.items()):
            rows.append([name, _monomial(pot, e), c])
    return Table("p1", ["class", "monomial", "coefficient"], rows, ["coefficient"])


def elliptic_curve_table(beta_max: int) -> Table:
    sigma = elliptic_curve_sigma(beta_max)
    f1 = elliptic_curve_f1(beta_max)
    rows = [[b, sigma[b], f1[b]] for b in range(1, beta_max + 1)]
    return Table("elliptic-curve", ["beta", "sigma", "F1"], rows, ["F1"])


def severi_table(d_max: int) -> Table:
    table = z_from_f(ch_compute(d_max))
    rows = []
    keys = set(table.irreducible) | set(table.all_curves)
    for key in sorted(keys, key=lambda k: (k.d, k.delta, k.alpha.parts, k.beta.parts)):
        n_all = table.all_curves.get(key, Fraction(0))
        n_irr = table.irreducible.get(key, Fraction(0))
        for v in (n_all, n_irr):
            if v.denominator != 1 or v < 0:
                raise CheckFailed(f"Severi degree {v} at {key} is not a non-negative integer")
        rows.append([key.d, key.delta, str(key.alpha), str(key.beta), n_all, n_irr])
    return Table("severi", ["d", "delta", "alpha", "beta", "N", "N0"], rows, ["N", "N0"])


def strata_matrix_table() -> Table:
    classes = strata.build_invariant_classes()
    M = strata.intersection_matrix(classes)
    try:
        strata.nullspace_relations(M)
    except ValueError as exc:
        raise CheckFailed(str(exc)) from None
    full = strata.complete_matrix(M)
    rows = [[name] + list(full[i]) for i, name in enumerate(strata.CLASS_NAMES)]
    known = [[name] + list(M[i]) for i, name in enumerate(strata.ROW_CLASSES)]
    return Table(
        "strata-matrix",
        ["class"] + list(strata.CLASS_NAMES),
        known,
        list(strata.CLASS_NAMES),
        json_override={
            "classes": list(strata.CLASS_NAMES),
            "matrix": [[str(v) for v in row[1:]] for row in known],
            "completed": [[str(v) for v in row[1:]] for row in rows],
            "relations": [list(strata.TRIVIAL_RELATION), list(strata.NEW_RELATION)],
        },
    )


def strata_relations_table() -> Table:
    M = strata.intersection_matrix()
    try:
        basis = strata.nullspace_relations(M)
    except ValueError as exc:
        raise CheckFailed(str(exc)) from None
    rels = [list(strata.TRIVIAL_RELATION), list(strata.NEW_RELATION)]
    for r in rels:
        if not strata.in_span(basis, r):
            raise CheckFailed(f"relation {r} is not in the nullspace")
    rows = [[label] + r for label, r in zip(("trivial", "new"), rels)]
    return Table(
        "strata-relations",
        ["relation"] + list(strata.CLASS_NAMES),
        rows,
        [],
        json_override={
            "classes": list(strata.CLASS_NAMES),
            "matrix": [[str(v) for v in row] for row in M],
            "relations": rels,
        },
    )


def verify_table(variety: str, q_cap: int) -> Table:
    if variety == "cp1":
        F0, F1 = cp1_potential(), cp1_elliptic_potential()
    elif variety == "cp2":
        N0 = km_cp2(q_cap)
        F0, F1 = cp2_potential(N0), cp2_elliptic_potential(getzler_cp2(q_cap, N0))
    else:
        raise ValueError(f"unknown variety {variety!r}")
    report = verify_report(F0, F1, q_cap)
    residual = sum(bad for _, _, bad in report)
    if residual:
        first = next(k for k, _, bad in report if bad)
        raise CheckFailed(f"relation residual on {variety} is nonzero at q^{first}")
    rows = [[k, checked, bad] for k, checked, bad in report]
    return Table(
        "verify",
        ["q_order", "monomials_checked", "residual_monomials"],
        rows,
        [],
        json_override={"variety": variety, "q_cap": q_cap, "residual_monomials": residual},
    )
