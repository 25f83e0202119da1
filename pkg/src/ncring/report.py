"""Per-ring verification and report rendering."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from decimal import ROUND_HALF_EVEN, Context, Decimal
from fractions import Fraction
from typing import Iterable

from .formats import format_diameter
from .graph import build_graph, classify, degree_formula_check
from .probability import bound_suite, commuting_probability, scan_trivial_center, verify_edge_identity
from .ring import FiniteRing

_CTX = Context(prec=60)


def approx(q: Fraction, places: int = 6) -> str:
    """Decimal rendering, fixed places, round-half-even."""
    d = _CTX.divide(Decimal(q.numerator), Decimal(q.denominator))
    return str(d.quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_EVEN, context=_CTX))


def verify_ring(R: FiniteRing) -> dict:
    """Every per-ring check; ``failures`` lists the names of failed verdicts."""
    G = build_graph(R)
    c = classify(G)
    s = commuting_probability(R)
    ident = verify_edge_identity(R, G, s, strict=False)
    row = {
        "name": R.name, "order": R.order, "center": s.center_order, "unity": R.has_unity,
        "vertices": G.n, "edges": G.edge_count, "commuting_pairs": s.commuting_pairs,
        "pr": str(s.pr), "pr_approx": approx(s.pr),
        "min_degree": c.min_degree, "max_degree": c.max_degree,
        "diameter": format_diameter(c.diameter), "flags": c.flags(),
        "edge_identity": ident.holds, "degree_formula": degree_formula_check(R, G),
        "bounds": {}, "equalities": [],
    }
    failures = []
    if not ident.holds:
        failures.append("edge_identity")
    if not row["degree_formula"]:
        failures.append("degree_formula")
    if R.is_commutative:
        if not c.is_empty or G.n:
            failures.append("commutative_not_empty")
    else:
        structural = {
            "connected": c.connected,
            "min_degree>=2": c.min_degree >= 2,
            "not_star": not c.is_star,
            "not_lollipop": not c.is_lollipop,
            "not_complete_bipartite": not c.is_complete_bipartite,
            "not_complete_if_unital": not (R.has_unity and c.is_complete),
        }
        row["structural"] = structural
        failures += [k for k, ok in structural.items() if not ok]
        rep = bound_suite(R, G, s)
        for r in rep.records:
            row["bounds"][r.bound_id] = {"holds": r.holds, "lhs": str(r.lhs), "relation": r.relation,
                                         "rhs": str(r.rhs), "slack": str(r.slack),
                                         "external": r.external}
            if not r.holds:
                failures.append(r.bound_id)
        row["equalities"] = rep.equalities()
    row["failures"] = failures
    return row


@dataclass
class VerificationReport:
    rows: list[dict] = field(default_factory=list)
    trivial_center: dict | None = None

    @property
    def failures(self) -> int:
        return sum(bool(r["failures"]) for r in self.rows) + bool(
            self.trivial_center and self.trivial_center["matches"])

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def summary(self) -> dict:
        return {
            "rings_checked": len(self.rows),
            "failures": self.failures,
            "boundary_equalities": {r["name"]: r["equalities"] for r in self.rows if r["equalities"]},
            "trivial_center_scan": self.trivial_center,
        }

    def to_json(self) -> str:
        return json.dumps({"rows": self.rows, "summary": self.summary()}, indent=2) + "\n"


def verify_rings(rings: Iterable[FiniteRing], scan: bool = False) -> VerificationReport:
    rings = list(rings)
    report = VerificationReport([verify_ring(R) for R in rings])
    if scan:
        res = scan_trivial_center(rings, strict=False)
        report.trivial_center = {
            "scanned": res.rings_scanned, "trivial_center": res.trivial_center_rings,
            "matches": res.matches,
            "nearest": None if res.nearest is None else [res.nearest[0], str(res.nearest[1])],
        }
    return report


BOUND_IDS = ["B1", "B2", "B3", "B4", "B5", "B6"]


def render_table(report: VerificationReport) -> str:
    head = ["ring", "|R|", "|Z|", "1?", "|V|", "|E|", "Pr", "Pr~", "E-id", "deg"] + BOUND_IDS + ["result"]
    body = []
    for r in report.rows:
        cells = [r["name"], str(r["order"]), str(r["center"]), "y" if r["unity"] else "n",
                 str(r["vertices"]), str(r["edges"]), r["pr"], r["pr_approx"],
                 _mark(r["edge_identity"]), _mark(r["degree_formula"])]
        for b in BOUND_IDS:
            rec = r["bounds"].get(b)
            if rec is None:
                cells.append("-")
            else:
                cells.append(("ok" if rec["holds"] else "FAIL") + (f" ({rec['slack']})"))
        cells.append("FAIL: " + ",".join(r["failures"]) if r["failures"] else "pass")
        body.append(cells)
    widths = [max(len(x) for x in col) for col in zip(head, *body)]
    lines = ["  ".join(x.ljust(w) for x, w in zip(row, widths)).rstrip() for row in [head] + body]
    s = report.summary()
    lines.append("")
    lines.append(f"rings checked: {s['rings_checked']}, failures: {s['failures']}")
    for name, eq in s["boundary_equalities"].items():
        lines.append(f"equality witness: {name}: {', '.join(eq)}")
    if report.trivial_center is not None:
        t = report.trivial_center
        lines.append(f"trivial-centre scan: {t['trivial_center']} rings with |Z| = 1, "
                     f"{len(t['matches'])} matches, nearest {t['nearest']}")
    lines.append("(Pr~ columns are approximate; exact values in the Pr column)")
    return "\n".join(lines) + "\n"


def _mark(ok: bool) -> str:
    return "ok" if ok else "FAIL"
