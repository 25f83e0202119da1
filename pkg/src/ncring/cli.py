"""Command-line entry point.

Exit status: 0 success, 1 a verification failed (or input was rejected),
2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import formats
from .errors import NCRingError
from .families import (
    FAMILY_KINDS,
    CensusOptions,
    FamilySpec,
    abelian_shapes,
    build_family,
    canonical_form,
    enumerate_rings,
    opposite,
)
from .graph import build_graph, classify
from .isoclinism import scan_isoclinic_pairs, verify_isoclinism_theorem
from .report import render_table, verify_rings
from .ring import center


def _shape(text: str) -> tuple[int, ...]:
    try:
        shape = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad shape {text!r}; expected e.g. 2,2") from None
    if not shape:
        raise argparse.ArgumentTypeError("empty shape")
    return shape


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_ring_validate(args) -> int:
    R = formats.read_ring(args.spec)
    print(f"{R.name}: valid ring of order {R.order}, shape {list(R.shape.moduli)}, "
          f"|Z| = {len(center(R))}, unity = {R.coords(R.unity) if R.has_unity else None}, "
          f"{'commutative' if R.is_commutative else 'non-commutative'}")
    return 0


def cmd_ring_build(args) -> int:
    spec = FamilySpec(args.family, n=args.n, m=args.m, shape=args.shape,
                      operands=[formats.read_ring(p) for p in args.operand or []])
    R = build_family(spec)
    if args.opposite:
        R = opposite(R)
    if args.name:
        R.name = args.name
    text = formats.dumps_ring(R, full_table=args.full_table)
    _emit(text, args.out)
    if args.out:
        print(f"wrote {R.name} (order {R.order}) to {args.out}", file=sys.stderr)
    return 0


def cmd_enumerate(args) -> int:
    if args.shape is None and args.max_order is None:
        print("enumerate: give --shape or --max-order", file=sys.stderr)
        return 2
    shapes = [args.shape] if args.shape else [s for n in range(2, args.max_order + 1)
                                              for s in abelian_shapes(n)]
    rings = []
    for shape in shapes:
        limit = None if args.limit is None else args.limit - len(rings)
        if limit is not None and limit <= 0:
            break
        rings.extend(enumerate_rings(CensusOptions(
            shape, dedupe_isomorphism=args.dedupe, require_noncommutative=args.noncommutative,
            require_unity=args.unital, limit=limit)))
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    def key(R):
        return (R.shape.moduli, canonical_form(R) if args.dedupe else R.mul_table.tobytes())

    index = {key(R): i for i, R in enumerate(rings)}
    rows = []
    for i, R in enumerate(rings):
        formats.write_ring(R, out / f"ring_{i:04d}.ring")
        op = index.get(key(opposite(R)))
        rows.append({"index": i, "name": R.name, "shape": ",".join(map(str, R.shape.moduli)),
                     "order": R.order, "center": len(center(R)), "unity": R.has_unity,
                     "commutative": R.is_commutative, "opposite_index": "" if op is None else op})
    cols = ["index", "name", "shape", "order", "center", "unity", "commutative", "opposite_index"]
    summary = formats.rows_to_csv(rows, cols)
    (out / "summary.csv").write_text(summary, encoding="utf-8")
    sys.stdout.write(summary)
    print(f"{len(rings)} rings written to {out}", file=sys.stderr)
    return 0


def cmd_graph_analyze(args) -> int:
    R = formats.read_ring(args.spec)
    G = build_graph(R)
    text = formats.rows_to_csv([formats.invariant_row(R, G, classify(G))], formats.INVARIANT_COLUMNS)
    _emit(text, args.out)
    return 0


def cmd_graph_export_dot(args) -> int:
    R = formats.read_ring(args.spec)
    _emit(formats.to_dot(build_graph(R)), args.out)
    return 0


def cmd_verify(args) -> int:
    if (args.spec is None) == (args.census is None):
        print("verify: give exactly one of a ring spec or --census DIR", file=sys.stderr)
        return 2
    if args.census:
        paths = formats.ring_files(args.census)
        if not paths:
            print(f"verify: no .ring files in {args.census}", file=sys.stderr)
            return 2
        rings = [formats.read_ring(p) for p in paths]
    else:
        rings = [formats.read_ring(args.spec)]
    report = verify_rings(rings, scan=args.census is not None)
    sys.stdout.write(render_table(report))
    if args.report:
        Path(args.report).write_text(report.to_json(), encoding="utf-8")
    return 0 if report.ok else 1


def _print_theorem_report(rep) -> None:
    v = rep.verdict
    print(f"{rep.ring1} vs {rep.ring2}: {'Z-isoclinic' if v.isoclinic else 'not Z-isoclinic'}"
          f" (phi candidates examined {v.examined}, rejected {v.rejected})")
    if not v.isoclinic:
        print(f"  reason: {v.reason}")
        return
    w = v.witness
    print("  phi (coset representative -> coset representative):")
    for a, b in w.phi.items():
        print(f"    {a} -> {b}")
    print("  psi (commutator subgroup):")
    for a, b in w.psi.items():
        print(f"    {a} -> {b}")
    print(f"  Pr equal: {rep.pr_equal}")
    if rep.centers_equal:
        print(f"  |Z| equal; graphs isomorphic: {rep.graphs_isomorphic}; "
              f"witness-induced map is a graph isomorphism: {rep.witness_map_is_isomorphism}")
    for note in rep.notes:
        print(f"  note: {note}")


def cmd_isoclinic(args) -> int:
    if args.census:
        rings = [formats.read_ring(p) for p in formats.ring_files(args.census)]
        scan = scan_isoclinic_pairs(rings, strict=False)
        for rep in scan.isoclinic:
            _print_theorem_report(rep)
        bad = [r for r in scan.isoclinic if not r.ok]
        print(f"pairs considered {scan.pairs_considered}, searched {scan.pairs_searched}, "
              f"isoclinic {len(scan.isoclinic)} ({len(scan.same_center)} with equal |Z|), "
              f"failures {len(bad)}")
        return 1 if bad else 0
    if len(args.specs) != 2:
        print("isoclinic: give two ring specs or --census DIR", file=sys.stderr)
        return 2
    R1, R2 = (formats.read_ring(p) for p in args.specs)
    rep = verify_isoclinism_theorem(R1, R2, strict=False)
    _print_theorem_report(rep)
    return 0 if rep.ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ncring", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    ring = sub.add_parser("ring", help="validate or build ring spec files")
    rsub = ring.add_subparsers(dest="ring_command", required=True)
    v = rsub.add_parser("validate")
    v.add_argument("spec")
    v.set_defaults(func=cmd_ring_validate)
    b = rsub.add_parser("build")
    b.add_argument("--family", required=True, choices=FAMILY_KINDS)
    b.add_argument("--n", type=int, default=2)
    b.add_argument("--m", type=int, default=2)
    b.add_argument("--shape", type=_shape)
    b.add_argument("--operand", action="append", help="ring spec (repeat for products)")
    b.add_argument("--opposite", action="store_true")
    b.add_argument("--name")
    b.add_argument("--full-table", action="store_true")
    b.add_argument("--out")
    b.set_defaults(func=cmd_ring_build)

    e = sub.add_parser("enumerate", help="census of all rings on a shape")
    e.add_argument("--shape", type=_shape)
    e.add_argument("--max-order", type=int)
    e.add_argument("--noncommutative", action="store_true")
    e.add_argument("--unital", action="store_true")
    e.add_argument("--dedupe", action="store_true")
    e.add_argument("--limit", type=int)
    e.add_argument("--out", required=True)
    e.set_defaults(func=cmd_enumerate)

    g = sub.add_parser("graph", help="non-commuting graph tools")
    gsub = g.add_subparsers(dest="graph_command", required=True)
    a = gsub.add_parser("analyze")
    a.add_argument("spec")
    a.add_argument("--out")
    a.set_defaults(func=cmd_graph_analyze)
    d = gsub.add_parser("export-dot")
    d.add_argument("spec")
    d.add_argument("--out")
    d.set_defaults(func=cmd_graph_export_dot)

    vf = sub.add_parser("verify", help="identity, structure and bound checks")
    vf.add_argument("spec", nargs="?")
    vf.add_argument("--census")
    vf.add_argument("--report", help="write the JSON report here")
    vf.set_defaults(func=cmd_verify)

    i = sub.add_parser("isoclinic", help="Z-isoclinism and the graph theorem")
    i.add_argument("specs", nargs="*")
    i.add_argument("--census")
    i.set_defaults(func=cmd_isoclinic)
    return p


def run(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (NCRingError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
