"""Command-line interface: ``conelab group|cone|check|repro``.

Exit codes: 0 when every verdict is ``holds`` or ``not_applicable``, 1 on a
violation or failed criterion, 2 on bad input.
"""

from __future__ import annotations

import argparse
import sys
import warnings
from fractions import Fraction
from typing import Sequence

from conelab import __version__, acceptance
from conelab import cone as cones
from conelab import exact
from conelab.catalog import CatalogEntry, available_entries, entry_data, load_entry
from conelab.classes import free_class
from conelab.errors import ConelabError, InputError
from conelab.lattice import IntegerMatrix, quotient_from_relations, smith_normal_form
from conelab.serialize import (Document, cone_data, dumps, matrix_data, presentation_data, read_cone, reader,
                               report_data, vector_data)
from conelab.theorems import (DEFAULT_BOUND, DEFAULT_HORIZON, TheoremReport, Verdict, alternating_stream,
                              chi_halfspace_report, line_constraints_check, linear_stream, prop16_separation,
                              prop44_boundary_check, stream_divergence_monitor, symmetry_check, theorem1_report,
                              theorem3_walk, theorem11_entry_indices)

EXIT_OK, EXIT_VIOLATED, EXIT_INPUT = 0, 1, 2
T11_HORIZON = 64
CHECKS = ("t1", "t3", "t11", "p16", "p44", "sym", "line", "chi", "stream")


# ---------------------------------------------------------------------------
# output


class Output:
    def __init__(self, args: argparse.Namespace, argv: Sequence[str]):
        self.structured = args.format == "structured"
        self.argv = list(argv)
        self.config = {"format": args.format, "seed": str(args.seed)}

    def emit(self, inputs: dict, result: dict, text_lines: list[str]) -> None:
        if self.structured:
            sys.stdout.write(dumps({"command": ["conelab", *self.argv], "version": __version__,
                                    "config": self.config, "inputs": inputs, "result": result}))
        else:
            print("\n".join(text_lines))


def _text_tree(value, indent: int = 2) -> list[str]:
    pad = " " * indent
    out = []
    if isinstance(value, dict):
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v:
                out.append(f"{pad}{k}:")
                out.extend(_text_tree(v, indent + 2))
            else:
                out.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(value, list):
        for v in value:
            if isinstance(v, (dict, list)) and v:
                out.append(f"{pad}-")
                out.extend(_text_tree(v, indent + 2))
            else:
                out.append(f"{pad}- {_scalar(v)}")
    else:
        out.append(f"{pad}{_scalar(value)}")
    return out


def _scalar(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, list):
        return "[]"
    if isinstance(v, dict):
        return "{}"
    return str(v)


def _report_text(r: TheoremReport) -> list[str]:
    data = report_data(r)
    return [f"{r.theorem_id}: {r.verdict}", f"  {r.citation}", "  certificate:",
            *_text_tree(data["certificate"], 4)]


# ---------------------------------------------------------------------------
# group


def cmd_group(args, out: Output) -> int:
    doc = Document.from_path(args.file)
    r = reader(doc)
    key = "relations" if r.has("relations") else "matrix"
    rows = r.get(key).int_matrix()
    if args.action == "snf":
        if not rows:
            raise r.fail("matrix has no rows", (key,))
        m = IntegerMatrix.from_rows(rows)
        d, u, v = smith_normal_form(m)
        q = quotient_from_relations(m.cols, m)
        result = {"d": matrix_data(d), "u": matrix_data(u), "v": matrix_data(v),
                  "cokernel": presentation_data(q.presentation)}
        lines = ["d = " + _fmt_matrix(d.tolist()), "u = " + _fmt_matrix(u.tolist()),
                 "v = " + _fmt_matrix(v.tolist()), f"cokernel: {q.presentation.describe()}"]
        out.emit({"matrix": matrix_data(m)}, result, lines)
        return EXIT_OK
    gens = r.get("generators").integer() if r.has("generators") else (len(rows[0]) if rows else None)
    if gens is None:
        raise r.fail("give 'generators' when there are no relations")
    labels = [x.text() for x in r.get("labels").items()] if r.has("labels") else []
    m = IntegerMatrix.from_rows(rows, gens) if rows else IntegerMatrix(0, gens, ())
    for i, row in enumerate(rows):
        if len(row) != gens:
            raise r.fail(f"row {i + 1} has {len(row)} entries but there are {gens} generators", (key, i))
    q = quotient_from_relations(gens, m)
    pres = presentation_data(q.presentation)
    lines = [f"free rank: {q.presentation.free_rank}",
             f"torsion orders: {list(q.presentation.torsion_orders)}",
             f"group: {q.presentation.describe()}"]
    if labels:
        images = {}
        for i, name in enumerate(labels):
            e = q.element_from_generators([int(j == i) for j in range(gens)])
            images[name] = {"free": [str(x) for x in e.free_part], "torsion": [str(x) for x in e.torsion_part]}
            lines.append(f"  {name} -> free {list(e.free_part)} torsion {list(e.torsion_part)}")
        pres["generator_images"] = images
    out.emit({"generators": str(gens), "relations": matrix_data(rows), "labels": labels}, pres, lines)
    return EXIT_OK


def _fmt_matrix(rows) -> str:
    return "[" + ", ".join(exact.format_vector(r) for r in rows) + "]"


# ---------------------------------------------------------------------------
# cone


def _parse_point(text: str | None, dim: int) -> tuple[Fraction, ...]:
    if text is None:
        raise InputError("--point is required")
    x = exact.parse_vector(text)
    if len(x) != dim:
        raise InputError(f"point {exact.format_vector(x)} has length {len(x)}, cone lives in dimension {dim}")
    return x


def cmd_cone(args, out: Output) -> int:
    c = read_cone(reader(Document.from_path(args.file)))
    inputs = cone_data(c)
    if args.action == "facets":
        normals, eqs = cones.facets(c)
        result = {"normals": matrix_data(normals), "span_equations": matrix_data(eqs)}
        lines = ["normals:", *([f"  {exact.format_vector(n)}" for n in normals] or ["  (none)"]),
                 "span equations:", *([f"  {exact.format_vector(e)}" for e in eqs] or ["  (none)"])]
    elif args.action == "contains":
        x = _parse_point(args.point, c.ambient_dim)
        inputs["point"] = vector_data(x)
        result = {"contains": cones.contains(c, x), "interior": cones.interior_contains(c, x),
                  "relative_interior": cones.relative_interior_contains(c, x)}
        lines = [f"contains: {_scalar(result['contains'])}", f"interior: {_scalar(result['interior'])}",
                 f"relative interior: {_scalar(result['relative_interior'])}"]
    elif args.action == "lineality":
        basis = cones.lineality_space(c)
        result = {"lineality_basis": matrix_data(basis), "strongly_convex": not basis}
        lines = [f"strongly convex: {_scalar(not basis)}",
                 *[f"  {exact.format_vector(b)}" for b in basis]]
    else:
        level = exact.as_fraction(args.level)
        if not 0 <= args.rank_coordinate < c.ambient_dim:
            raise InputError(f"rank coordinate {args.rank_coordinate} out of range")
        cert = cones.level_set_diameter_bounded(c, args.rank_coordinate, level)
        inputs.update({"rank_coordinate": str(args.rank_coordinate), "level": exact.format_rational(level)})
        if cert.bounded:
            result = {"bounded": True, "vertices": matrix_data(cert.vertices),
                      "squared_diameter": exact.format_rational(cert.squared_diameter)}
            lines = ["bounded: yes", *[f"  vertex {exact.format_vector(v)}" for v in cert.vertices],
                     f"squared diameter: {exact.format_rational(cert.squared_diameter)}"]
        else:
            result = {"bounded": False, "recession_direction": vector_data(cert.recession_direction)}
            lines = ["bounded: no", f"recession direction: {exact.format_vector(cert.recession_direction)}"]
    out.emit(inputs, result, lines)
    return EXIT_OK


# ---------------------------------------------------------------------------
# check


def _int_set(text: str) -> frozenset[int]:
    return frozenset(exact.as_int(x) for x in exact.parse_vector(text))


def _labels(text: str | None) -> list[str] | None:
    return None if text is None else [s.strip() for s in text.split(",") if s.strip()]


def _pick_classes(entry: CatalogEntry, labels: list[str] | None, rank: int | None = None):
    if labels is not None:
        return [entry.class_by_label(x) for x in labels]
    return entry.mcm_classes(rank)


def _need_ring(entry: CatalogEntry):
    if entry.ring is None:
        raise InputError(f"{entry.name} records facts only; it has no ring data to check")
    return entry.ring


def run_check(args, entry: CatalogEntry, config: dict) -> TheoremReport:
    ring = _need_ring(entry)
    which = args.theorem
    if which == "t1":
        rank = args.rank or 1
        config["rank"] = str(rank)
        return theorem1_report(_pick_classes(entry, _labels(args.classes), rank), rank, ring)
    if which == "p16":
        return prop16_separation(_pick_classes(entry, _labels(args.classes)) if args.classes else entry.classes)
    if which == "sym":
        return symmetry_check(_pick_classes(entry, _labels(args.classes)), ring)
    if which in ("t3", "line"):
        line = entry.line_by_label(args.line)
        if args.declared_mcm is not None:
            line = line.with_declared(_int_set(args.declared_mcm))
        config["line"] = line.label
        if which == "line":
            return line_constraints_check(line)
        config["depth"] = str(args.depth)
        return theorem3_walk(line, ring, args.depth)
    if which == "chi":
        chi = entry.chi_by_label(args.functional)
        probe = chi.probe if chi.probe is not None else ring.kernel_group.zero()
        if args.probe is not None:
            coords = [exact.as_int(x) for x in exact.parse_vector(args.probe)]
            pres = ring.kernel_group
            if len(coords) != pres.length:
                raise InputError(f"probe needs {pres.length} coordinates")
            probe = pres.element(coords[:pres.free_rank], coords[pres.free_rank:])
        config["functional"] = chi.label
        return chi_halfspace_report(chi.values, _pick_classes(entry, _labels(args.classes)), probe, ring.zeta)
    if which == "p44":
        label = args.class_label or (entry.betti[0].label if entry.betti else None)
        if label is None:
            raise InputError(f"{entry.name}: no Betti data declared")
        config["class"] = label
        if args.length is not None:
            config["length"] = str(args.length)
        return prop44_boundary_check(entry.class_by_label(label).rank, entry.betti_for(label), args.length)
    if which == "t11":
        label = args.class_label or (entry.betti[0].label if entry.betti else None)
        if label is None:
            raise InputError(f"{entry.name}: no Betti data declared")
        horizon = args.horizon if args.horizon is not None else T11_HORIZON
        if args.cone is not None:
            v = read_cone(reader(Document.from_path(args.cone)))
        else:
            v = cones.RationalCone(ring.dimension, [m.realify() for m in entry.mcm_classes()])
        config.update({"class": label, "horizon": str(horizon), "cone": cone_data(v),
                       "unbounded_rank": args.unbounded_rank})
        return theorem11_entry_indices(entry.class_by_label(label), entry.betti_for(label), v, horizon,
                                       args.unbounded_rank)
    # stream
    base = entry.class_by_label(args.class_label) if args.class_label else free_class(ring)
    pres = ring.kernel_group
    if args.step is not None:
        coords = [exact.as_int(x) for x in exact.parse_vector(args.step)]
        if len(coords) != pres.length:
            raise InputError(f"step needs {pres.length} coordinates")
        step = pres.element(coords[:pres.free_rank], coords[pres.free_rank:])
    elif pres.free_rank:
        step = pres.free_generator(0)
    else:
        raise InputError(f"{entry.name}: k(R) has free rank 0, give --step")
    horizon = args.horizon if args.horizon is not None else DEFAULT_HORIZON
    bound = exact.as_fraction(args.bound) if args.bound is not None else DEFAULT_BOUND
    stream = (linear_stream if args.stream_kind == "linear" else alternating_stream)(base, step)
    rank = args.rank if args.rank is not None else base.rank
    config.update({"class": base.label, "step": [str(x) for x in step.coordinates()],
                   "stream_kind": args.stream_kind, "rank": str(rank), "horizon": str(horizon),
                   "bound": exact.format_rational(bound)})
    return stream_divergence_monitor(stream, rank, horizon, bound)


def cmd_check(args, out: Output) -> int:
    entry = load_entry(args.entry)
    config = {}
    report = run_check(args, entry, config)
    out.config.update(config)
    out.emit(entry_data(entry), report_data(report), _report_text(report))
    return EXIT_VIOLATED if report.verdict is Verdict.VIOLATED else EXIT_OK


# ---------------------------------------------------------------------------
# repro


def cmd_repro(args, out: Output) -> int:
    target = args.target
    if target == "all":
        results = acceptance.run_all(args.seed)
        for name in available_entries():
            results.extend(acceptance.entry_suite(load_entry(name)))
    else:
        results = acceptance.entry_suite(load_entry(target))
    failed = [r for r in results if not r.passed]
    lines = [f"seed {args.seed}", *[r.line() for r in results],
             f"{len(results) - len(failed)}/{len(results)} passed"]
    out.emit({"target": target}, {"results": [{"key": r.key, "title": r.title, "passed": r.passed,
                                               "detail": r.detail} for r in results],
                                  "passed": not failed}, lines)
    return EXIT_VIOLATED if failed else EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "structured"), default=argparse.SUPPRESS,
                        help="output format (default text)")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help=f"seed for randomized suites (default {acceptance.DEFAULT_SEED})")

    p = argparse.ArgumentParser(prog="conelab", parents=[common],
                                description="Exact class groups, cones of module classes and their validators.")
    p.add_argument("--version", action="version", version=f"conelab {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("group", parents=[common], help="Smith normal form and group presentations")
    g.add_argument("action", choices=("snf", "present"))
    g.add_argument("file")

    c = sub.add_parser("cone", parents=[common], help="facets, membership, lineality and slices of a cone")
    c.add_argument("action", choices=("facets", "contains", "lineality", "slice"))
    c.add_argument("file")
    c.add_argument("--point", help="vector such as [2, 1/2]")
    c.add_argument("--rank-coordinate", type=int, default=0)
    c.add_argument("--level", default="1")

    k = sub.add_parser("check", parents=[common], help="run a validator on a catalog entry or entry file")
    k.add_argument("theorem", choices=CHECKS)
    k.add_argument("entry", help="catalog entry name or path to an entry file")
    k.add_argument("--rank", type=int)
    k.add_argument("--horizon", type=int)
    k.add_argument("--bound")
    k.add_argument("--line", help="divisor line label")
    k.add_argument("--declared-mcm", help="override the declared MCM indices, e.g. 0,2")
    k.add_argument("--depth", type=int, default=5, help="relations to emit in the line walk")
    k.add_argument("--class", dest="class_label", help="class label (t11, p44, stream)")
    k.add_argument("--classes", help="comma-separated class labels to use instead of the MCM classes")
    k.add_argument("--functional", help="chi functional label")
    k.add_argument("--probe", help="kernel coordinates of the chi probe")
    k.add_argument("--step", help="kernel coordinates of the stream step")
    k.add_argument("--stream-kind", choices=("linear", "alternating"), default="linear")
    k.add_argument("--cone", help="file with the subcone V for t11 (default: cone of the MCM classes)")
    k.add_argument("--unbounded-rank", action="store_true", help="declare unbounded syzygy ranks for t11")
    k.add_argument("--length", type=int, help="syzygy range for p44")

    r = sub.add_parser("repro", parents=[common], help="run the acceptance suite")
    r.add_argument("target", nargs="?", default="all", help="'all' or a catalog entry name")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    args.format = getattr(args, "format", "text")
    args.seed = getattr(args, "seed", acceptance.DEFAULT_SEED)
    out = Output(args, argv)
    handler = {"group": cmd_group, "cone": cmd_cone, "check": cmd_check, "repro": cmd_repro}[args.command]
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore" if out.structured else "default")
            return handler(args, out)
    except (ConelabError, ValueError) as exc:
        print(f"conelab: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
